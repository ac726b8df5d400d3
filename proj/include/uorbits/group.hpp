#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "uorbits/context.hpp"

namespace uorbits {

/// dense N x N matrix over F_q
struct Mat {
    int N = 0;
    std::vector<fq_t> a;

    Mat() = default;
    explicit Mat(int n) : N(n), a(static_cast<size_t>(n) * n, 0) {}

    static Mat identity(int n) {
        Mat m(n);
        for (int i = 1; i <= n; ++i) m.set(i, i, 1);
        return m;
    }

    fq_t at(int i, int j) const { return a[static_cast<size_t>(i - 1) * N + (j - 1)]; }
    void set(int i, int j, fq_t v) { a[static_cast<size_t>(i - 1) * N + (j - 1)] = v; }

    friend bool operator==(const Mat&, const Mat&) = default;
};

inline Mat mat_mul(const FieldCtx& F, const Mat& x, const Mat& y) {
    Mat r(x.N);
    for (int i = 1; i <= x.N; ++i)
        for (int k = 1; k <= x.N; ++k) {
            fq_t v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 1; j <= x.N; ++j) {
                fq_t w = y.at(k, j);
                if (w != 0) r.set(i, j, F.add(r.at(i, j), F.mul(v, w)));
            }
        }
    return r;
}

inline Mat mat_transpose(const Mat& x) {
    Mat r(x.N);
    for (int i = 1; i <= x.N; ++i)
        for (int j = 1; j <= x.N; ++j) r.set(j, i, x.at(i, j));
    return r;
}

inline bool is_unitriangular(const Mat& x) {
    for (int i = 1; i <= x.N; ++i) {
        if (x.at(i, i) != 1) return false;
        for (int j = 1; j < i; ++j)
            if (x.at(i, j) != 0) return false;
    }
    return true;
}

/// inverse of an upper unitriangular matrix
inline Mat unitri_inverse(const FieldCtx& F, const Mat& x) {
    Mat r = Mat::identity(x.N);
    for (int j = x.N; j >= 1; --j)
        for (int i = j - 1; i >= 1; --i) {
            fq_t s = 0;
            for (int k = i + 1; k <= j; ++k)
                s = F.add(s, F.mul(x.at(i, k), r.at(k, j)));
            r.set(i, j, F.neg(s));
        }
    return r;
}

namespace detail {

/// left multiply by 1 + alpha*e_{ij}: row i += alpha * row j
inline void row_op(const FieldCtx& F, Mat& m, int i, int j, fq_t alpha) {
    if (alpha == 0) return;
    for (int c = 1; c <= m.N; ++c) {
        fq_t v = m.at(j, c);
        if (v != 0) m.set(i, c, F.add(m.at(i, c), F.mul(alpha, v)));
    }
}

/// right multiply by 1 + alpha*e_{ij}: col j += alpha * col i
inline void col_op(const FieldCtx& F, Mat& m, int i, int j, fq_t alpha) {
    if (alpha == 0) return;
    for (int r = 1; r <= m.N; ++r) {
        fq_t v = m.at(r, i);
        if (v != 0) m.set(r, j, F.add(m.at(r, j), F.mul(alpha, v)));
    }
}

struct TildeFactor {
    int i, j;
    fq_t alpha;
};

/// the type A factorization of the root element x_{ij}(alpha), in the fixed
/// factor order
inline int root_factors(const Context& ctx, int i, int j, fq_t alpha, TildeFactor out[3]) {
    const TypeParams& tp = ctx.tp;
    const FieldCtx& F = ctx.fq;
    if (!tp.in_pUP(i, j)) throw std::invalid_argument("root position not in pUP");
    int jb = tp.mirror(j), ib = tp.mirror(i);
    switch (tp.type) {
        case LieType::B:
            if (j != tp.n_tilde) {
                out[0] = {i, j, alpha};
                out[1] = {jb, ib, F.neg(alpha)};
                return 2;
            } else {
                // center column: the mirror factor goes first so that the
                // product is exactly 1 + a e_{ij} - a e_{j,ib} - a^2/2 e_{i,ib}
                fq_t half = F.inv(F.from_int(2));
                out[0] = {j, ib, F.neg(alpha)};
                out[1] = {i, j, alpha};
                out[2] = {i, ib, F.neg(F.mul(half, F.mul(alpha, alpha)))};
                return 3;
            }
        case LieType::C:
            if (j == ib) {
                out[0] = {i, j, alpha};
                return 1;
            }
            out[0] = {i, j, alpha};
            out[1] = {jb, ib, j <= tp.n ? F.neg(alpha) : alpha};
            return 2;
        default: // D
            out[0] = {i, j, alpha};
            out[1] = {jb, ib, F.neg(alpha)};
            return 2;
    }
}

} // namespace detail

/// x_{ij}(alpha), (i,j) in pUP: the root subgroup element of U
inline Mat root_elem(const Context& ctx, int i, int j, fq_t alpha) {
    detail::TildeFactor f[3];
    int n = detail::root_factors(ctx, i, j, alpha, f);
    Mat m = Mat::identity(ctx.N());
    for (int t = 0; t < n; ++t) detail::col_op(ctx.fq, m, f[t].i, f[t].j, f[t].alpha);
    return m;
}

/// x~_{ij}(alpha) = 1 + alpha*e_{ij}, a root element of the ambient group U_N(q)
inline Mat tilde_root(int N, int i, int j, fq_t alpha) {
    Mat m = Mat::identity(N);
    m.set(i, j, alpha);
    return m;
}

/// right multiply m by x_{ij}(alpha) in place
inline void apply_root_right(const Context& ctx, Mat& m, int i, int j, fq_t alpha) {
    detail::TildeFactor f[3];
    int n = detail::root_factors(ctx, i, j, alpha, f);
    for (int t = 0; t < n; ++t) detail::col_op(ctx.fq, m, f[t].i, f[t].j, f[t].alpha);
}

/// left multiply m by x_{ij}(alpha) in place
inline void apply_root_left(const Context& ctx, Mat& m, int i, int j, fq_t alpha) {
    detail::TildeFactor f[3];
    int n = detail::root_factors(ctx, i, j, alpha, f);
    for (int t = n - 1; t >= 0; --t) detail::row_op(ctx.fq, m, f[t].i, f[t].j, f[t].alpha);
}

/// coordinates on pUP, in the row-major lexicographic position order
using Coords = std::vector<fq_t>;

/// product of root elements over pUP in the fixed order
inline Mat from_coords(const Context& ctx, const Coords& c) {
    if (static_cast<int>(c.size()) != ctx.m())
        throw std::invalid_argument("coordinate vector has wrong length");
    Mat m = Mat::identity(ctx.N());
    for (int t = 0; t < ctx.m(); ++t) {
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        if (c[static_cast<size_t>(t)] != 0)
            apply_root_right(ctx, m, p.i, p.j, c[static_cast<size_t>(t)]);
    }
    return m;
}

/// inverse of from_coords, by peeling root factors in the fixed order; at each
/// step the entry at the least remaining pUP position is the next coordinate.
/// Throws if u is not a member of U.
inline Coords to_coords(const Context& ctx, const Mat& u) {
    if (!is_unitriangular(u)) throw std::invalid_argument("matrix is not unitriangular");
    Coords c(static_cast<size_t>(ctx.m()), 0);
    Mat v = u;
    for (int t = 0; t < ctx.m(); ++t) {
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        fq_t x = v.at(p.i, p.j);
        c[static_cast<size_t>(t)] = x;
        if (x != 0) apply_root_left(ctx, v, p.i, p.j, ctx.fq.neg(x));
    }
    if (v != Mat::identity(ctx.N()))
        throw std::invalid_argument("matrix is not an element of U");
    return c;
}

inline bool is_member(const Context& ctx, const Mat& u) {
    if (!is_unitriangular(u)) return false;
    try {
        (void)to_coords(ctx, u);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

/// index of the pUP entry pattern of u inside V, mixed radix over the fixed
/// position order; a canonical key for group elements
inline std::uint64_t pi_key(const Context& ctx, const Mat& u) {
    std::uint64_t key = 0;
    for (int t = ctx.m() - 1; t >= 0; --t) {
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        key = key * ctx.q() + u.at(p.i, p.j);
    }
    return key;
}

/// walk all q^|pUP| coordinate vectors in lexicographic order
inline void enumerate_group(const Context& ctx,
                            const std::function<void(const Coords&, const Mat&)>& fn) {
    if (ctx.group_order() > ctx.budgets.group)
        throw std::runtime_error("group enumeration exceeds the configured budget");
    Coords c(static_cast<size_t>(ctx.m()), 0);
    for (;;) {
        fn(c, from_coords(ctx, c));
        int t = ctx.m() - 1;
        while (t >= 0) {
            if (++c[static_cast<size_t>(t)] < ctx.q()) break;
            c[static_cast<size_t>(t)] = 0;
            --t;
        }
        if (t < 0) break;
    }
}

/// materialized group with inverse transposes and the pi bijection onto V
struct GroupCache {
    std::uint64_t size = 0;
    std::vector<Mat> elems;                 // coordinate-lex order
    std::vector<Mat> inv;
    std::vector<Mat> invt;
    std::vector<std::uint32_t> coord_of_pi; // v-index -> element index
    std::vector<std::uint64_t> pi_of_coord; // element index -> v-index

    std::uint32_t index_by_pi(std::uint64_t vkey) const { return coord_of_pi[vkey]; }
};

inline GroupCache build_group_cache(const Context& ctx) {
    GroupCache gc;
    gc.size = ctx.group_order();
    if (gc.size > ctx.budgets.group)
        throw std::runtime_error("group cache exceeds the configured budget");
    gc.elems.reserve(gc.size);
    gc.inv.reserve(gc.size);
    gc.invt.reserve(gc.size);
    gc.coord_of_pi.assign(gc.size, UINT32_MAX);
    gc.pi_of_coord.reserve(gc.size);
    enumerate_group(ctx, [&](const Coords&, const Mat& u) {
        std::uint32_t idx = static_cast<std::uint32_t>(gc.elems.size());
        std::uint64_t key = pi_key(ctx, u);
        if (gc.coord_of_pi[key] != UINT32_MAX)
            throw std::logic_error("two group elements share their pUP entries");
        gc.coord_of_pi[key] = idx;
        gc.pi_of_coord.push_back(key);
        Mat vi = unitri_inverse(ctx.fq, u);
        gc.invt.push_back(mat_transpose(vi));
        gc.inv.push_back(std::move(vi));
        gc.elems.push_back(u);
    });
    return gc;
}

/// subgroup spanned by the root subgroups of a closed set J
struct PatternSubgroup {
    std::vector<int> coord_positions; // indices into reg.pUP, ascending
    std::uint64_t order = 1;

    void enumerate(const Context& ctx, const std::function<void(const Mat&)>& fn) const {
        std::vector<fq_t> vals(coord_positions.size(), 0);
        for (;;) {
            Coords c(static_cast<size_t>(ctx.m()), 0);
            for (size_t t = 0; t < coord_positions.size(); ++t)
                c[static_cast<size_t>(coord_positions[t])] = vals[t];
            fn(from_coords(ctx, c));
            size_t t = coord_positions.size();
            while (t > 0) {
                if (++vals[t - 1] < ctx.q()) break;
                vals[t - 1] = 0;
                --t;
            }
            if (t == 0) break;
        }
    }

    bool contains(const Context& ctx, const Mat& u) const {
        Coords c;
        try {
            c = to_coords(ctx, u);
        } catch (const std::invalid_argument&) {
            return false;
        }
        size_t t = 0;
        for (int pos = 0; pos < ctx.m(); ++pos) {
            bool allowed = t < coord_positions.size() && coord_positions[t] == pos;
            if (allowed) ++t;
            else if (c[static_cast<size_t>(pos)] != 0) return false;
        }
        return true;
    }
};

inline PatternSubgroup pattern_subgroup(const Context& ctx, const std::vector<Position>& J) {
    if (!is_closed(J, ctx.tp)) throw std::invalid_argument("position set is not closed");
    PatternSubgroup ps;
    for (auto p : J) ps.coord_positions.push_back(ctx.reg.index_of(p));
    std::sort(ps.coord_positions.begin(), ps.coord_positions.end());
    for (size_t t = 0; t < ps.coord_positions.size(); ++t) ps.order *= ctx.q();
    return ps;
}

/// R_i, the row group generated by the root subgroups of row i
inline PatternSubgroup row_group(const Context& ctx, int i) {
    if (i < 1 || i > ctx.tp.last_row()) throw std::out_of_range("row index out of range");
    std::vector<Position> J;
    for (int j = i + 1; j <= ctx.tp.i_tilde(i); ++j) J.push_back({i, j});
    return pattern_subgroup(ctx, J);
}

/// the probed dependency recursion on RP entries: for each (r,s) in RP,
///   u_{rs} = sigma * u_{mirror(s),mirror(r)}
///            + sum_{r<l<s} c_l * u_{mirror(s),mirror(l)} * u_{rl}
/// with sigma in {+1,-1} and c_l in {0,+1,-1}. In types B and D every
/// coefficient is -1; in type C the form signs enter and the coefficients mix.
/// Everything is fitted against enumerated elements and validated, never
/// hard-coded; an inconsistent fit aborts loudly.
struct SignMap {
    std::vector<int> sign;                        // parallel to reg.RP
    std::vector<std::vector<int>> sum_coeffs;     // per position: c_l for l = r+1..s-1

    int at(const Regions& reg, int r, int s) const {
        for (size_t t = 0; t < reg.RP.size(); ++t)
            if (reg.RP[t].i == r && reg.RP[t].j == s) return sign[t];
        throw std::out_of_range("(r,s) not in RP");
    }
};

inline SignMap rp_sign_probe(const Context& ctx) {
    const Regions& reg = ctx.reg;
    const FieldCtx& F = ctx.fq;
    const fq_t minus_one = F.neg(1);

    auto as_fq = [&](int c) { return c < 0 ? minus_one : static_cast<fq_t>(c); };

    // candidate coefficient vectors (sigma, c_{r+1}, ..., c_{s-1}); a summand
    // whose product vanishes identically on U leaves its coefficient
    // unobservable, those are pinned to 0 afterwards
    struct Probe {
        std::vector<std::vector<int>> alive;
        std::vector<char> prod_seen;
        char mirror_seen = 0;
    };
    std::vector<Probe> probes(reg.RP.size());
    for (size_t t = 0; t < reg.RP.size(); ++t) {
        int r = reg.RP[t].i, s = reg.RP[t].j;
        probes[t].alive = {{1}, {-1}};
        probes[t].prod_seen.assign(static_cast<size_t>(s - r - 1), 0);
        for (int l = r + 1; l < s; ++l) {
            std::vector<std::vector<int>> next;
            for (const auto& v : probes[t].alive)
                for (int c : {0, 1, -1}) {
                    auto w = v;
                    w.push_back(c);
                    next.push_back(std::move(w));
                }
            probes[t].alive = std::move(next);
        }
    }

    auto inspect = [&](const Mat& u) {
        for (size_t t = 0; t < reg.RP.size(); ++t) {
            int r = reg.RP[t].i, s = reg.RP[t].j;
            int rb = ctx.tp.mirror(r), sb = ctx.tp.mirror(s);
            fq_t mir = u.at(sb, rb);
            if (mir != 0) probes[t].mirror_seen = 1;
            std::vector<fq_t> prods;
            for (int l = r + 1; l < s; ++l) {
                fq_t prod = F.mul(u.at(sb, ctx.tp.mirror(l)), u.at(r, l));
                if (prod != 0) probes[t].prod_seen[static_cast<size_t>(l - r - 1)] = 1;
                prods.push_back(prod);
            }
            auto& alive = probes[t].alive;
            for (size_t w = 0; w < alive.size();) {
                fq_t rhs = F.mul(as_fq(alive[w][0]), mir);
                for (size_t x = 0; x < prods.size(); ++x)
                    rhs = F.add(rhs, F.mul(as_fq(alive[w][x + 1]), prods[x]));
                if (u.at(r, s) != rhs) {
                    alive[w] = std::move(alive.back());
                    alive.pop_back();
                } else {
                    ++w;
                }
            }
        }
    };

    if (ctx.group_order() <= ctx.budgets.probe) {
        enumerate_group(ctx, [&](const Coords&, const Mat& u) { inspect(u); });
    } else {
        std::uint64_t state = 0x9e3779b97f4a7c15ull; // fixed seed, deterministic probe
        auto next = [&]() {
            state ^= state << 13; state ^= state >> 7; state ^= state << 17;
            return state;
        };
        for (std::uint64_t it = 0; it < ctx.budgets.probe; ++it) {
            Coords c(static_cast<size_t>(ctx.m()));
            for (auto& v : c) v = static_cast<fq_t>(next() % ctx.q());
            inspect(from_coords(ctx, c));
        }
    }

    SignMap sm;
    sm.sign.resize(reg.RP.size());
    sm.sum_coeffs.resize(reg.RP.size());
    for (size_t t = 0; t < reg.RP.size(); ++t) {
        std::string pos = "(" + std::to_string(reg.RP[t].i) + "," +
                          std::to_string(reg.RP[t].j) + ")";
        if (!probes[t].mirror_seen)
            throw std::logic_error("sign probe saw no nonzero mirror entry at " + pos);
        std::vector<std::vector<int>> fits;
        for (const auto& cand : probes[t].alive) {
            bool canonical = true;
            for (size_t x = 0; x + 1 < cand.size(); ++x)
                if (!probes[t].prod_seen[x] && cand[x + 1] != 0) canonical = false;
            if (canonical) fits.push_back(cand);
        }
        if (fits.empty())
            throw std::logic_error("no consistent recursion coefficients at " + pos);
        if (fits.size() > 1)
            throw std::logic_error("recursion coefficients not unique at " + pos);
        sm.sign[t] = fits.front()[0];
        sm.sum_coeffs[t].assign(fits.front().begin() + 1, fits.front().end());
    }
    return sm;
}

} // namespace uorbits
