#pragma once

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "uorbits/action.hpp"

namespace uorbits {

/// the two readings of the supplementary-condition rule; Conjunctive requires
/// a minor condition in the same column and a minor or left main condition to
/// the right, Disjunctive lets a minor condition to the right suffice alone
enum class SupplParse { Conjunctive, Disjunctive };

struct Classification {
    std::vector<Position> mc, lmc, rmc, minc, suppl, places;
    std::vector<Position> limb_circ, limb, j_set;
    PosSet core_set;
    CharLabel verge;
    bool staircase = false;
    bool main_separated = false;
    bool is_core = false;
    bool is_verge = false;
};

inline Classification classify(const Context& ctx, const CharLabel& A,
                               SupplParse parse = SupplParse::Conjunctive) {
    const TypeParams& tp = ctx.tp;
    Classification cls;
    cls.core_set = PosSet(tp.N);

    // rightmost nonzero entry per row
    std::vector<int> main_col(static_cast<size_t>(tp.N) + 1, 0);
    for (int t = 0; t < ctx.m(); ++t) {
        if (A.v[static_cast<size_t>(t)] == 0) continue;
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        if (p.j > main_col[static_cast<size_t>(p.i)]) main_col[static_cast<size_t>(p.i)] = p.j;
    }
    PosSet mc_set(tp.N), minc_set(tp.N), lmc_set(tp.N);
    std::vector<char> col_has_main(static_cast<size_t>(tp.N) + 1, 0);
    cls.staircase = true;
    for (int i = 1; i <= tp.N; ++i) {
        int j = main_col[static_cast<size_t>(i)];
        if (j == 0) continue;
        Position p{i, j};
        cls.mc.push_back(p);
        mc_set.insert(p);
        if (col_has_main[static_cast<size_t>(j)]) cls.staircase = false;
        col_has_main[static_cast<size_t>(j)] = 1;
        if (tp.in_tril(i, j)) { cls.lmc.push_back(p); lmc_set.insert(p); }
        else cls.rmc.push_back(p);
    }

    cls.verge = zero_label(ctx);
    for (auto p : cls.mc) label_set(ctx, cls.verge, p.i, p.j, label_at(ctx, A, p.i, p.j));
    cls.is_verge = (A == cls.verge);

    LimbSets ls = limb(cls.mc, ctx.reg, /*require_closed=*/false);
    cls.limb_circ = ls.limb_circ.sorted();
    cls.limb = ls.limb.sorted();
    cls.j_set = ls.j_set.sorted();
    cls.main_separated = true;
    for (auto p : cls.mc)
        if (ls.limb.contains(p)) { cls.main_separated = false; break; }

    if (!cls.staircase) return cls;

    // minor conditions mirror the right main conditions within their rows;
    // in type C an anti-diagonal right main condition puts its minor on the
    // diagonal, which still counts for the column clause below
    for (auto p : cls.rmc) {
        Position m{p.i, tp.mirror(p.j)};
        cls.minc.push_back(m);
        minc_set.insert(m);
    }

    std::vector<char> minc_in_col(static_cast<size_t>(tp.N) + 1, 0);
    for (auto p : cls.minc) minc_in_col[static_cast<size_t>(p.j)] = 1;

    for (auto cand : ctx.reg.tril) {
        if (mc_set.contains(cand) || minc_set.contains(cand)) continue;
        bool left_of_minor = false, left_of_lmc = false;
        for (auto m : cls.minc)
            if (m.i == cand.i && m.j > cand.j) { left_of_minor = true; break; }
        for (auto m : cls.lmc)
            if (m.i == cand.i && m.j > cand.j) { left_of_lmc = true; break; }
        bool col_minor = minc_in_col[static_cast<size_t>(cand.j)] != 0;
        bool take = parse == SupplParse::Conjunctive
                        ? ((left_of_minor || left_of_lmc) && col_minor)
                        : (left_of_minor || (left_of_lmc && col_minor));
        if (take) cls.suppl.push_back(cand);
    }

    for (auto p : cls.mc) cls.core_set.insert(p);
    for (auto p : cls.suppl) cls.core_set.insert(p);
    if (tp.type != LieType::C)
        for (auto p : cls.minc) cls.core_set.insert(p);

    cls.is_core = true;
    for (int t = 0; t < ctx.m(); ++t) {
        if (A.v[static_cast<size_t>(t)] == 0) continue;
        if (!cls.core_set.contains(ctx.reg.pUP[static_cast<size_t>(t)])) {
            cls.is_core = false;
            break;
        }
    }

    for (auto p : ctx.reg.pUP) {
        if (cls.core_set.contains(p)) continue;
        int b = main_col[static_cast<size_t>(p.i)];
        if (b > p.j) cls.places.push_back(p);
    }
    return cls;
}

/// the maximal position of Limb°(A) ∩ main(A) in the row-descending order;
/// empty for main separated labels
inline std::optional<Position> m_max(const Context& ctx, const Classification& cls) {
    if (cls.main_separated) return std::nullopt;
    PosSet lc(ctx.tp.N, cls.limb_circ);
    std::optional<Position> best;
    for (auto p : cls.mc) {
        if (!lc.contains(p)) continue;
        if (!best || precede(*best, p)) best = p;
    }
    return best;
}

inline std::optional<Position> m_max(const Context& ctx, const CharLabel& A) {
    return m_max(ctx, classify(ctx, A));
}

/// the right-action generators x_{ij}(alpha), precomputed as inverse transposes
struct OrbitGens {
    std::vector<Mat> invt;
};

inline OrbitGens orbit_gens(const Context& ctx) {
    OrbitGens g;
    for (auto p : ctx.reg.pUP)
        for (std::uint32_t a = 1; a < ctx.q(); ++a) {
            Mat x = root_elem(ctx, p.i, p.j, static_cast<fq_t>(a));
            g.invt.push_back(mat_transpose(unitri_inverse(ctx.fq, x)));
        }
    return g;
}

struct OrbitRecord {
    CharLabel base;                 // canonical representative
    std::vector<CharLabel> members; // sorted by serialized form
    std::uint64_t size = 0;
    int n_cores = 0;                // core members found (1 for staircase orbits)
    Classification cls;             // classification of the base
};

namespace detail {

inline OrbitRecord finish_orbit(const Context& ctx, std::vector<std::uint64_t>& keys,
                                SupplParse parse) {
    OrbitRecord rec;
    rec.size = keys.size();
    rec.members.reserve(keys.size());
    for (auto k : keys) rec.members.push_back(label_of_index(ctx, k));
    std::sort(rec.members.begin(), rec.members.end(),
              [&](const CharLabel& a, const CharLabel& b) {
                  return label_to_string(ctx, a) < label_to_string(ctx, b);
              });
    Classification seed_cls = classify(ctx, rec.members.front(), parse);
    std::vector<const CharLabel*> cores;
    if (seed_cls.staircase) {
        for (auto& m : rec.members) {
            bool inside = true;
            for (auto p : support(ctx, m))
                if (!seed_cls.core_set.contains(p)) { inside = false; break; }
            if (inside) cores.push_back(&m);
        }
    }
    rec.n_cores = static_cast<int>(cores.size());
    rec.base = cores.size() == 1 ? *cores.front() : rec.members.front();
    rec.cls = classify(ctx, rec.base, parse);
    return rec;
}

} // namespace detail

/// breadth-first closure of [A] under the monomial right action of the root
/// generators
inline OrbitRecord enumerate_orbit(const Context& ctx, const CharLabel& A,
                                   SupplParse parse = SupplParse::Conjunctive,
                                   const OrbitGens* gens = nullptr) {
    OrbitGens own;
    if (!gens) { own = orbit_gens(ctx); gens = &own; }
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> frontier{v_index(ctx, A)}, keys;
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (auto k : frontier) {
            keys.push_back(k);
            CharLabel cur = label_of_index(ctx, k);
            for (const Mat& gi : gens->invt) {
                std::uint64_t nk = v_index(ctx, dot_right_invt(ctx, cur, gi));
                if (seen.insert(nk).second) next.push_back(nk);
            }
        }
        if (seen.size() > ctx.budgets.orbit)
            throw std::runtime_error("orbit exceeds the configured budget");
        frontier = std::move(next);
    }
    return detail::finish_orbit(ctx, keys, parse);
}

/// all orbits, seeds taken in v-index order
inline std::vector<OrbitRecord> orbit_partition(const Context& ctx,
                                                SupplParse parse = SupplParse::Conjunctive) {
    std::uint64_t total = ctx.group_order();
    if (total > ctx.budgets.charspace)
        throw std::runtime_error("orbit partition exceeds the configured budget");
    OrbitGens gens = orbit_gens(ctx);
    std::vector<char> visited(total, 0);
    std::vector<OrbitRecord> out;
    for (std::uint64_t seed = 0; seed < total; ++seed) {
        if (visited[seed]) continue;
        std::vector<std::uint64_t> frontier{seed}, keys;
        visited[seed] = 1;
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (auto k : frontier) {
                keys.push_back(k);
                CharLabel cur = label_of_index(ctx, k);
                for (const Mat& gi : gens.invt) {
                    std::uint64_t nk = v_index(ctx, dot_right_invt(ctx, cur, gi));
                    if (!visited[nk]) { visited[nk] = 1; next.push_back(nk); }
                }
            }
            frontier = std::move(next);
        }
        out.push_back(detail::finish_orbit(ctx, keys, parse));
    }
    return out;
}

/// main separated rows facing a higher main condition in the mirror column
/// must vanish across the whole orbit
inline bool zero_row_check(const Context& ctx, const OrbitRecord& O) {
    if (!O.cls.main_separated) throw std::invalid_argument("base is not main separated");
    for (int i = 1; i <= ctx.tp.last_row(); ++i) {
        int ib = ctx.tp.mirror(i);
        bool applies = false;
        for (auto m : O.cls.mc)
            if (m.j == ib && m.i < i) { applies = true; break; }
        if (!applies) continue;
        for (const auto& B : O.members)
            for (int j = i + 1; j <= ctx.N(); ++j)
                if (label_at(ctx, B, i, j) != 0) return false;
    }
    return true;
}

/// left row operations that make a label staircase: main conditions sitting
/// under another main condition in the same column are cleared from the top
/// down, moving each affected row main strictly left. Returns the group
/// element applied on the left and the straightened label.
struct Straightening {
    Mat g;
    CharLabel label;
    std::vector<Position> ops; // the (k,i) positions used
};

inline Straightening straighten(const Context& ctx, const CharLabel& A) {
    const FieldCtx& F = ctx.fq;
    Straightening st{Mat::identity(ctx.N()), A, {}};
    for (;;) {
        Classification cls = classify(ctx, st.label);
        if (cls.staircase) break;
        // two main conditions in one column: clear the lower one with the row above
        std::vector<int> col_row(static_cast<size_t>(ctx.N()) + 1, 0);
        int ri = 0, rk = 0, rj = 0;
        for (auto p : cls.mc) {
            int prev = col_row[static_cast<size_t>(p.j)];
            if (prev != 0) { rk = std::min(prev, p.i); ri = std::max(prev, p.i); rj = p.j; break; }
            col_row[static_cast<size_t>(p.j)] = p.i;
        }
        if (rj == 0) throw std::logic_error("non-staircase label without a doubled column");
        fq_t gamma = F.mul(label_at(ctx, st.label, ri, rj),
                           F.inv(label_at(ctx, st.label, rk, rj)));
        Mat x = root_elem(ctx, rk, ri, gamma);
        st.label = left_dot(ctx, x, st.label);
        st.g = mat_mul(F, x, st.g);
        st.ops.push_back({rk, ri});
    }
    return st;
}

/// one separation move at the maximal offending main condition: the expansion
/// of lambda_x at the orbit core is supported on labels that are main
/// separated or carry a strictly smaller maximal position. Non-staircase
/// inputs are first straightened by left row operations (recorded), and the
/// expansion is taken at the unique core of the resulting orbit.
struct SeparationStep {
    Straightening straightening; // identity for staircase inputs
    CharLabel core;              // the orbit core the expansion is taken at
    Situation situation;
    Mat x;
    LinearCombo combo;
};

inline SeparationStep separation_step(const Context& ctx, const GroupCache& gc,
                                      const SignMap& sm, const CharLabel& A,
                                      SupplParse parse = SupplParse::Conjunctive) {
    SeparationStep out;
    out.straightening = straighten(ctx, A);
    out.core = enumerate_orbit(ctx, out.straightening.label, parse).base;
    Classification cls = classify(ctx, out.core, parse);
    if (!cls.staircase || !cls.is_core)
        throw std::logic_error("straightened orbit has no core representative");
    if (cls.main_separated)
        throw std::invalid_argument("label is already main separated");
    std::optional<Position> M = m_max(ctx, cls);
    if (!M) throw std::logic_error("no maximal position on a non-separated label");
    int k = ctx.tp.mirror(M->i);
    int j = ctx.tp.mirror(M->j);
    int i = 0;
    for (auto p : cls.mc)
        if (p.j == k) { i = p.i; break; }
    if (i == 0) throw std::logic_error("maximal position is not on an arm");
    int sigma = sm.at(ctx.reg, j, k);
    fq_t mval = label_at(ctx, out.core, M->i, M->j);
    fq_t lambda = sigma == 1 ? ctx.fq.neg(mval) : mval; // clears the entry at M(A)
    out.situation = Situation{i, k, j, lambda};
    out.x = situation_elem(ctx, out.situation, out.core);
    out.combo = lambda_expand(ctx, gc, out.x, out.core);
    return out;
}

} // namespace uorbits
