#pragma once

#include <functional>
#include <unordered_set>

#include "uorbits/homtest.hpp"

namespace uorbits {

struct HatVerge {
    Mat mat;
    bool is_verge_matrix = false; // at most one nonzero entry per row and column
};

/// the ambient verge matrix of a staircase verge label: each main condition
/// contributes its root-element pattern (mirror entry with the type sign, the
/// quadratic center-column term in type B, plain anti-diagonal passthrough in
/// type C); the verdict records whether the result is again a verge matrix
inline HatVerge hat_verge(const Context& ctx, const CharLabel& Averge,
                          SupplParse parse = SupplParse::Conjunctive) {
    const TypeParams& tp = ctx.tp;
    const FieldCtx& F = ctx.fq;
    Classification cls = classify(ctx, Averge, parse);
    if (!cls.staircase || !cls.is_verge)
        throw std::invalid_argument("hat map needs a staircase verge");
    HatVerge out;
    out.mat = Mat(tp.N);
    for (auto m : cls.mc) {
        fq_t a = label_at(ctx, Averge, m.i, m.j);
        int jb = tp.mirror(m.j), ib = tp.mirror(m.i);
        out.mat.set(m.i, m.j, F.add(out.mat.at(m.i, m.j), a));
        switch (tp.type) {
            case LieType::B:
                // center column contributes no quadratic term here: the
                // charspace matrix vanishes on the anti-diagonal, and the
                // matrix biorbit absorbs that coordinate anyway
                if (m.j == tp.n_tilde) out.mat.set(m.j, ib, F.sub(out.mat.at(m.j, ib), a));
                else out.mat.set(jb, ib, F.sub(out.mat.at(jb, ib), a));
                break;
            case LieType::C:
                if (m.j == ib) break; // anti-diagonal passthrough
                if (m.j <= tp.n) out.mat.set(jb, ib, F.sub(out.mat.at(jb, ib), a));
                else out.mat.set(jb, ib, F.add(out.mat.at(jb, ib), a));
                break;
            default:
                out.mat.set(jb, ib, F.sub(out.mat.at(jb, ib), a));
                break;
        }
    }
    out.is_verge_matrix = true;
    for (int i = 1; i <= tp.N && out.is_verge_matrix; ++i) {
        int cnt = 0;
        for (int j = 1; j <= tp.N; ++j)
            if (out.mat.at(i, j) != 0) ++cnt;
        if (cnt > 1) out.is_verge_matrix = false;
    }
    for (int j = 1; j <= tp.N && out.is_verge_matrix; ++j) {
        int cnt = 0;
        for (int i = 1; i <= tp.N; ++i)
            if (out.mat.at(i, j) != 0) ++cnt;
        if (cnt > 1) out.is_verge_matrix = false;
    }
    return out;
}

namespace detail {

inline std::uint64_t strict_upper_key(const Context& ctx, const Mat& m) {
    std::uint64_t key = 0;
    for (int i = 1; i <= m.N; ++i)
        for (int j = i + 1; j <= m.N; ++j) key = key * ctx.q() + m.at(i, j);
    return key;
}

} // namespace detail

/// the superclass 1 + U~ A^ U~ ∩ U of a main-separated verge, as sorted
/// element indices into a group cache; computed as the matrix biorbit closure
/// of A^ under row operations from the left and column operations from the
/// right
inline std::vector<std::uint32_t> superclass(const Context& ctx, const GroupCache& gc,
                                             const CharLabel& Averge,
                                             SupplParse parse = SupplParse::Conjunctive) {
    const TypeParams& tp = ctx.tp;
    const FieldCtx& F = ctx.fq;
    HatVerge hv = hat_verge(ctx, Averge, parse);
    if (!hv.is_verge_matrix)
        throw std::invalid_argument("superclass needs a main-separated verge");
    {
        // the strict upper key must fit one machine word at this scale
        int cells = tp.N * (tp.N - 1) / 2;
        long double span = 1;
        for (int t = 0; t < cells; ++t) span *= ctx.q();
        if (span > 9e18L) throw std::runtime_error("matrix closure key does not fit 64 bits");
    }

    std::unordered_set<std::uint64_t> seen;
    std::vector<Mat> frontier{hv.mat}, all;
    seen.insert(detail::strict_upper_key(ctx, hv.mat));
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const auto& M : frontier) {
            all.push_back(M);
            for (int i = 1; i <= tp.N; ++i)
                for (int j = i + 1; j <= tp.N; ++j)
                    for (std::uint32_t a = 1; a < ctx.q(); ++a) {
                        Mat L = M; // x~_{ij}(a) * M: row i += a * row j
                        detail::row_op(F, L, i, j, static_cast<fq_t>(a));
                        if (seen.insert(detail::strict_upper_key(ctx, L)).second)
                            next.push_back(std::move(L));
                        Mat R = M; // M * x~_{ij}(a): col j += a * col i
                        detail::col_op(F, R, i, j, static_cast<fq_t>(a));
                        if (seen.insert(detail::strict_upper_key(ctx, R)).second)
                            next.push_back(std::move(R));
                    }
        }
        if (seen.size() > ctx.budgets.superclass)
            throw std::runtime_error("superclass closure exceeds the configured budget");
        frontier = std::move(next);
    }

    std::vector<std::uint32_t> out;
    for (const auto& M : all) {
        Mat u = M;
        for (int i = 1; i <= tp.N; ++i) u.set(i, i, F.add(u.at(i, i), 1));
        if (!is_unitriangular(u)) continue;
        if (!is_member(ctx, u)) continue;
        out.push_back(gc.index_by_pi(pi_key(ctx, u)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct VergeFamily {
    CharLabel verge;
    bool main_separated = false;
    std::vector<CharLabel> cores;
    std::vector<OrbitRecord> orbits;       // one per core
    std::vector<std::vector<int>> iso_classes; // orbit indices grouped by isomorphism
    std::uint64_t expected_size = 0;       // q^(number of positions left of mains)
};

/// all core labels sharing the given verge, their orbits, and the iso-class
/// partition of the orbits (computed from exact inner products when an action
/// table is supplied)
inline VergeFamily verge_family(const Context& ctx, const CharLabel& Averge,
                                const GroupCache* gc = nullptr, const ActionTable* at = nullptr,
                                SupplParse parse = SupplParse::Conjunctive) {
    Classification cls = classify(ctx, Averge, parse);
    if (!cls.staircase || !cls.is_verge)
        throw std::invalid_argument("verge family needs a staircase verge");
    VergeFamily fam;
    fam.verge = Averge;
    fam.main_separated = cls.main_separated;

    std::vector<int> main_col(static_cast<size_t>(ctx.tp.N) + 1, 0);
    for (auto m : cls.mc) main_col[static_cast<size_t>(m.i)] = m.j;
    fam.expected_size = 1;
    for (auto p : ctx.reg.pUP)
        if (main_col[static_cast<size_t>(p.i)] > p.j) fam.expected_size *= ctx.q();

    // free positions of the core family: core set minus the mains
    std::vector<int> free_pos;
    for (auto p : ctx.reg.pUP) {
        if (!cls.core_set.contains(p)) continue;
        if (main_col[static_cast<size_t>(p.i)] == p.j) continue;
        free_pos.push_back(ctx.reg.index_of(p));
    }
    std::vector<fq_t> vals(free_pos.size(), 0);
    OrbitGens gens = orbit_gens(ctx);
    for (;;) {
        CharLabel core = Averge;
        for (size_t t = 0; t < free_pos.size(); ++t)
            core.v[static_cast<size_t>(free_pos[t])] = vals[t];
        fam.cores.push_back(core);
        fam.orbits.push_back(enumerate_orbit(ctx, core, parse, &gens));
        size_t t = free_pos.size();
        while (t > 0) {
            if (++vals[t - 1] < ctx.q()) break;
            vals[t - 1] = 0;
            --t;
        }
        if (t == 0 || free_pos.empty()) break;
    }

    if (gc && at) {
        std::vector<CharVector> cv;
        cv.reserve(fam.orbits.size());
        for (const auto& O : fam.orbits)
            cv.push_back(orbit_character_vector(ctx, *gc, *at, O));
        // transitive closure of the nonzero-inner-product relation; for main
        // separated families this is exactly orbit-module isomorphism
        std::vector<int> parent(fam.orbits.size());
        for (size_t t = 0; t < parent.size(); ++t) parent[t] = static_cast<int>(t);
        std::function<int(int)> find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x) {
                parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                x = parent[static_cast<size_t>(x)];
            }
            return x;
        };
        for (size_t a = 0; a < fam.orbits.size(); ++a)
            for (size_t b = a + 1; b < fam.orbits.size(); ++b)
                if (inner_product(ctx, *gc, cv[a], cv[b]) != 0)
                    parent[static_cast<size_t>(find(static_cast<int>(b)))] =
                        find(static_cast<int>(a));
        std::vector<int> class_of(fam.orbits.size(), -1);
        for (size_t t = 0; t < fam.orbits.size(); ++t) {
            int root = find(static_cast<int>(t));
            if (class_of[static_cast<size_t>(root)] < 0) {
                class_of[static_cast<size_t>(root)] = static_cast<int>(fam.iso_classes.size());
                fam.iso_classes.push_back({});
            }
            fam.iso_classes[static_cast<size_t>(class_of[static_cast<size_t>(root)])].push_back(
                static_cast<int>(t));
        }
    }
    return fam;
}

} // namespace uorbits
