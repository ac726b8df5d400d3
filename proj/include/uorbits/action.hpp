#pragma once

#include <map>
#include <stdexcept>

#include "uorbits/charspace.hpp"

namespace uorbits {

/// [A]g = zeta_p^exponent * [label]; the scalar of the monomial right action is
/// theta(kappa(-A, pi(g^{-1})))
struct MonomialResult {
    int exponent = 0;
    CharLabel label;
};

/// [A].g = [pi(A g^{-t})], with g^{-t} supplied directly (hot path)
inline CharLabel dot_right_invt(const Context& ctx, const CharLabel& A, const Mat& ginvt) {
    const FieldCtx& F = ctx.fq;
    CharLabel out = zero_label(ctx);
    // pUP is row-major, so each row of A is one contiguous segment
    for (int lo = 0; lo < ctx.m();) {
        int row = ctx.reg.pUP[static_cast<size_t>(lo)].i;
        int hi = lo;
        while (hi < ctx.m() && ctx.reg.pUP[static_cast<size_t>(hi)].i == row) ++hi;
        for (int t = lo; t < hi; ++t) {
            int col = ctx.reg.pUP[static_cast<size_t>(t)].j;
            fq_t s = 0;
            for (int u = lo; u < hi; ++u) {
                fq_t a = A.v[static_cast<size_t>(u)];
                if (a != 0)
                    s = F.add(s, F.mul(a, ginvt.at(ctx.reg.pUP[static_cast<size_t>(u)].j, col)));
            }
            out.v[static_cast<size_t>(t)] = s;
        }
        lo = hi;
    }
    return out;
}

inline CharLabel dot_right(const Context& ctx, const CharLabel& A, const Mat& g) {
    return dot_right_invt(ctx, A, mat_transpose(unitri_inverse(ctx.fq, g)));
}

/// scalar exponent of [A]g given pi(g^{-1})
inline int monomial_exp(const Context& ctx, const CharLabel& A, const CharLabel& pi_ginv) {
    return ctx.fq.theta_exp(ctx.fq.neg(kappa(ctx, A, pi_ginv)));
}

inline MonomialResult monomial_right(const Context& ctx, const CharLabel& A, const Mat& g) {
    Mat ginv = unitri_inverse(ctx.fq, g);
    MonomialResult r;
    r.exponent = monomial_exp(ctx, A, project_label(ctx, ginv));
    r.label = dot_right_invt(ctx, A, mat_transpose(ginv));
    return r;
}

/// [A].x~_{ij}(alpha): add -alpha times column j to column i and project
inline CharLabel restricted_column_op(const Context& ctx, const CharLabel& A, int i, int j,
                                      fq_t alpha) {
    if (!(1 <= i && i < j && j <= ctx.N())) throw std::invalid_argument("need 1 <= i < j <= N");
    CharLabel out = A;
    if (alpha == 0) return out;
    const FieldCtx& F = ctx.fq;
    for (int r = 1; r < j; ++r) {
        fq_t a = label_at(ctx, A, r, j);
        if (a == 0) continue;
        int t = ctx.reg.index_or_neg(r, i);
        if (t >= 0)
            out.v[static_cast<size_t>(t)] = F.sub(out.v[static_cast<size_t>(t)], F.mul(alpha, a));
    }
    return out;
}

/// u.[A] = [pi(u^{-t} A)], the left permutation action
inline CharLabel left_dot(const Context& ctx, const Mat& u, const CharLabel& A) {
    Mat uinvt = mat_transpose(unitri_inverse(ctx.fq, u));
    return project_label(ctx, mat_mul(ctx.fq, uinvt, label_to_matrix(ctx, A)));
}

/// u[A] = theta(kappa(-A, u^{-1})) u.[A], defined when supp(u^{-t}A) stays
/// inside pKL; outside that window the left multiplication is not monomial
inline MonomialResult left_monomial(const Context& ctx, const Mat& u, const CharLabel& A) {
    const FieldCtx& F = ctx.fq;
    Mat uinv = unitri_inverse(ctx.fq, u);
    Mat prod = mat_mul(F, mat_transpose(uinv), label_to_matrix(ctx, A));
    for (int i = 1; i <= ctx.N(); ++i)
        for (int j = 1; j <= ctx.N(); ++j)
            if (prod.at(i, j) != 0 && !ctx.tp.in_pKL(i, j))
                throw std::domain_error("left action support leaves pKL at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
    MonomialResult r;
    r.exponent = F.theta_exp(F.neg(kappa(F, label_to_matrix(ctx, A), uinv)));
    r.label = project_label(ctx, prod);
    return r;
}

/// finitely supported combination of labels with exact rational cyclotomic
/// coefficients, keyed by v-index (no zero coefficients stored)
struct LinearCombo {
    std::map<std::uint64_t, CycRat> terms;
};

/// lambda_x[A] = sum_C mu_C [C] with
/// mu_C = |U|^{-1} sum_u theta(kappa(-x^{-t}A, u)) chi_C(pi(u)), evaluated
/// exactly by a coordinatewise character transform over V
inline LinearCombo lambda_expand(const Context& ctx, const GroupCache& gc, const Mat& x,
                                 const CharLabel& A) {
    const FieldCtx& F = ctx.fq;
    int p = F.p();
    if (gc.size != ctx.group_order())
        throw std::invalid_argument("group cache does not match the context");

    Mat T = mat_mul(F, mat_transpose(unitri_inverse(F, x)), label_to_matrix(ctx, A));

    // base(v) = theta(kappa(-T, u_v)) placed at the pUP pattern of u_v
    std::vector<CycNum> f(gc.size, CycNum(p));
    for (std::uint64_t t = 0; t < gc.size; ++t) {
        const Mat& u = gc.elems[static_cast<size_t>(t)];
        int e = F.theta_exp(F.neg(kappa(F, T, u)));
        f[gc.pi_of_coord[static_cast<size_t>(t)]] = CycNum::root(p, e);
    }

    // multiply by chi_C(pi(u)) = prod_t theta(C_t * v_t) one coordinate at a time
    std::uint64_t stride = 1;
    std::vector<CycNum> roots(static_cast<size_t>(p));
    for (int e = 0; e < p; ++e) roots[static_cast<size_t>(e)] = CycNum::root(p, e);
    std::vector<CycNum> slot(ctx.q(), CycNum(p));
    for (int t = 0; t < ctx.m(); ++t) {
        std::uint64_t blocks = gc.size / (stride * ctx.q());
        for (std::uint64_t b = 0; b < blocks; ++b) {
            for (std::uint64_t o = 0; o < stride; ++o) {
                std::uint64_t base = b * stride * ctx.q() + o;
                for (std::uint32_t cv = 0; cv < ctx.q(); ++cv) {
                    CycNum acc(p);
                    for (std::uint32_t vv = 0; vv < ctx.q(); ++vv) {
                        int e = F.theta_exp(F.mul(static_cast<fq_t>(cv), static_cast<fq_t>(vv)));
                        acc += f[base + vv * stride] * roots[static_cast<size_t>(e)];
                    }
                    slot[cv] = std::move(acc);
                }
                for (std::uint32_t cv = 0; cv < ctx.q(); ++cv)
                    f[base + cv * stride] = std::move(slot[cv]);
            }
        }
        stride *= ctx.q();
    }

    LinearCombo out;
    long long order = static_cast<long long>(gc.size);
    for (std::uint64_t c = 0; c < gc.size; ++c)
        if (!f[c].is_zero()) out.terms.emplace(c, CycRat(std::move(f[c]), order));
    return out;
}

/// the special left-multiplication setup: [A] a staircase core with right main
/// condition (i,k), a column index k-bar < j < k, and x = x_{ij}(-lambda/A_ik)
struct Situation {
    int i = 0, k = 0, j = 0;
    fq_t lambda = 0;
};

inline Mat situation_elem(const Context& ctx, const Situation& s, const CharLabel& A) {
    fq_t aik = label_at(ctx, A, s.i, s.k);
    if (aik == 0) throw std::invalid_argument("A has no entry at the right main condition");
    return root_elem(ctx, s.i, s.j, ctx.fq.neg(ctx.fq.mul(s.lambda, ctx.fq.inv(aik))));
}

/// closed form for the coefficient of [C] in lambda_x[A] in the situation
/// above: a product of Kronecker deltas over pUP \ R_{jk} and at the mirror
/// position, times the mean of psi_K over V_K (evaluated by direct summation)
inline CycRat aux3_coefficient(const Context& ctx, const GroupCache& gc, const SignMap& sm,
                               const Situation& s, const CharLabel& A, const CharLabel& C) {
    const FieldCtx& F = ctx.fq;
    const TypeParams& tp = ctx.tp;
    int p = F.p();
    if (!tp.in_RP(s.j, s.k)) throw std::invalid_argument("(j,k) is not in RP");
    int kb = tp.mirror(s.k), jb = tp.mirror(s.j);
    int sigma = sm.at(ctx.reg, s.j, s.k);

    std::vector<Position> R = r_region(s.j, s.k, ctx.reg);
    PosSet in_R(tp.N, R);
    if (!in_R.contains(kb, jb)) throw std::logic_error("mirror position missing from R");

    // deltas on J = pUP \ R_{jk}
    for (auto pos : ctx.reg.pUP) {
        if (in_R.contains(pos)) continue;
        if (label_at(ctx, C, pos.i, pos.j) != label_at(ctx, A, pos.i, pos.j))
            return CycRat(CycNum(p), 1);
    }
    // delta at the mirror position: C = A + sigma*lambda there
    fq_t want = F.add(label_at(ctx, A, kb, jb),
                      sigma == 1 ? s.lambda : F.neg(s.lambda));
    if (label_at(ctx, C, kb, jb) != want) return CycRat(CycNum(p), 1);

    // K positions and the mean of psi_K over V_K
    std::vector<int> K;
    for (auto pos : R)
        if (!(pos.i == kb && pos.j == jb)) K.push_back(ctx.reg.index_of(pos));

    long long cells = 1;
    for (size_t t = 0; t < K.size(); ++t) cells *= ctx.q();
    CycNum acc(p);
    std::vector<fq_t> X(K.size(), 0);
    for (long long it = 0;; ++it) {
        // u with pUP entries X on K and zero elsewhere
        std::uint64_t vkey = 0;
        for (int t = ctx.m() - 1; t >= 0; --t) {
            fq_t val = 0;
            for (size_t w = 0; w < K.size(); ++w)
                if (K[w] == t) { val = X[w]; break; }
            vkey = vkey * ctx.q() + val;
        }
        const Mat& u = gc.elems[gc.index_by_pi(vkey)];
        // g(X) = u_{jk} - sigma * u_{kb,jb}; the mirror entry is zero here
        fq_t g = u.at(s.j, s.k);
        fq_t e = F.mul(F.neg(s.lambda), g);
        for (size_t w = 0; w < K.size(); ++w) {
            Position pos = ctx.reg.pUP[static_cast<size_t>(K[w])];
            fq_t diff = F.sub(label_at(ctx, C, pos.i, pos.j), label_at(ctx, A, pos.i, pos.j));
            e = F.add(e, F.mul(diff, X[w]));
        }
        acc += CycNum::root(p, F.theta_exp(e));

        size_t t = K.size();
        while (t > 0) {
            if (++X[t - 1] < ctx.q()) break;
            X[t - 1] = 0;
            --t;
        }
        if (t == 0 || K.empty()) break;
    }
    return CycRat(std::move(acc), cells);
}

} // namespace uorbits
