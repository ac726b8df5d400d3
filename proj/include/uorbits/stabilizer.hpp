#pragma once

#include <optional>

#include "uorbits/orbits.hpp"

namespace uorbits {

/// the (i-1) x (i_tilde - i) window of A with rows above i and columns strictly
/// between i and i_tilde (inclusive right end); row nu, column mu of the window
/// holds A_{nu, mu}
struct SubmatrixAi {
    int row = 0;       // the defining row index i
    int rows = 0;      // i-1
    int cols = 0;      // i_tilde - i
    std::vector<fq_t> a;

    fq_t at(int nu, int mu) const { // nu in 1..rows, mu in i+1..i+cols
        return a[static_cast<size_t>(nu - 1) * cols + (mu - row - 1)];
    }
};

inline SubmatrixAi submatrix_ai(const Context& ctx, const CharLabel& A, int i) {
    if (i < 1 || i > ctx.tp.last_row()) throw std::out_of_range("row index out of range");
    SubmatrixAi S;
    S.row = i;
    S.rows = i - 1;
    S.cols = ctx.tp.i_tilde(i) - i;
    S.a.assign(static_cast<size_t>(S.rows) * S.cols, 0);
    for (int nu = 1; nu < i; ++nu)
        for (int mu = i + 1; mu <= ctx.tp.i_tilde(i); ++mu)
            S.a[static_cast<size_t>(nu - 1) * S.cols + (mu - i - 1)] = label_at(ctx, A, nu, mu);
    return S;
}

enum class RowStabKind { Trivial, AntiDiag, Solution };

/// Stab_U[A] ∩ R_i as kind plus, for the solution kind, the basis of the
/// null space of A_i; for cores the basis is the pinned one with -1 at the
/// free column, zeros at the other free columns and below smaller mains
struct RowStab {
    int row = 0;
    RowStabKind kind = RowStabKind::Solution;
    std::vector<int> main_rows, main_cols;  // (i_nu, j_nu), ascending in j
    std::vector<int> free_cols;             // S_i ascending
    std::vector<std::vector<fq_t>> basis;   // per free col: alpha over columns i+1..i_tilde
    int dim = 0;
    std::uint64_t order = 1;
};

inline RowStab row_stab(const Context& ctx, const CharLabel& A, int i,
                        SupplParse parse = SupplParse::Conjunctive) {
    const FieldCtx& F = ctx.fq;
    const TypeParams& tp = ctx.tp;
    Classification cls = classify(ctx, A, parse);
    if (!cls.staircase) throw std::invalid_argument("row stabilizer needs a staircase label");
    if (i < 1 || i > tp.last_row()) throw std::out_of_range("row index out of range");

    RowStab rs;
    rs.row = i;
    int ib = tp.mirror(i), itl = tp.i_tilde(i);

    for (int k = 1; k < i; ++k)
        if (label_at(ctx, A, k, ib) != 0) {
            rs.kind = RowStabKind::Trivial;
            rs.dim = 0;
            rs.order = 1;
            return rs;
        }
    if (tp.type == LieType::C && label_at(ctx, A, i, ib) != 0) {
        rs.kind = RowStabKind::AntiDiag;
        rs.dim = 1;
        rs.order = ctx.q();
        return rs;
    }

    rs.kind = RowStabKind::Solution;
    SubmatrixAi S = submatrix_ai(ctx, A, i);
    std::vector<char> is_main_col(static_cast<size_t>(itl) + 1, 0);
    for (auto m : cls.mc)
        if (m.i < i && i < m.j && m.j <= itl) {
            rs.main_rows.push_back(m.i);
            rs.main_cols.push_back(m.j);
            is_main_col[static_cast<size_t>(m.j)] = 1;
        }
    // ascend in the main column
    {
        std::vector<size_t> ord(rs.main_cols.size());
        for (size_t t = 0; t < ord.size(); ++t) ord[t] = t;
        std::sort(ord.begin(), ord.end(),
                  [&](size_t a, size_t b) { return rs.main_cols[a] < rs.main_cols[b]; });
        std::vector<int> mr, mcn;
        for (auto t : ord) { mr.push_back(rs.main_rows[t]); mcn.push_back(rs.main_cols[t]); }
        rs.main_rows = std::move(mr);
        rs.main_cols = std::move(mcn);
    }
    for (int l = i + 1; l <= itl; ++l)
        if (!is_main_col[static_cast<size_t>(l)]) rs.free_cols.push_back(l);

    bool nonmain_rows_zero = true;
    for (int nu = 1; nu < i && nonmain_rows_zero; ++nu) {
        bool is_main_row = false;
        for (auto r : rs.main_rows)
            if (r == nu) { is_main_row = true; break; }
        if (is_main_row) continue;
        for (int mu = i + 1; mu <= itl; ++mu)
            if (S.at(nu, mu) != 0) { nonmain_rows_zero = false; break; }
    }

    if (nonmain_rows_zero) {
        // pinned basis: alpha_s has -1 at s, 0 at the other free columns, and the
        // main-column values solve the triangular system row by row
        size_t r = rs.main_cols.size();
        for (int s : rs.free_cols) {
            std::vector<fq_t> alpha(static_cast<size_t>(S.cols), 0);
            alpha[static_cast<size_t>(s - i - 1)] = F.neg(1);
            for (size_t nu = 0; nu < r; ++nu) {
                // row main_rows[nu]: sum over columns = 0
                fq_t rhs = S.at(rs.main_rows[nu], s); // coefficient of the -1 slot, negated
                for (size_t mu = 0; mu < nu; ++mu) {
                    fq_t c = S.at(rs.main_rows[nu], rs.main_cols[mu]);
                    if (c != 0)
                        rhs = F.sub(rhs, F.mul(c, alpha[static_cast<size_t>(rs.main_cols[mu] - i - 1)]));
                }
                fq_t pivot = S.at(rs.main_rows[nu], rs.main_cols[nu]);
                alpha[static_cast<size_t>(rs.main_cols[nu] - i - 1)] = F.mul(rhs, F.inv(pivot));
            }
            rs.basis.push_back(std::move(alpha));
        }
    } else {
        // general null space for staircase non-cores (reduced echelon over all rows)
        int nr = S.rows, nc = S.cols;
        std::vector<std::vector<fq_t>> M(static_cast<size_t>(nr),
                                         std::vector<fq_t>(static_cast<size_t>(nc), 0));
        for (int nu = 1; nu <= nr; ++nu)
            for (int mu = 0; mu < nc; ++mu) M[static_cast<size_t>(nu - 1)][static_cast<size_t>(mu)] = S.at(nu, i + 1 + mu);
        std::vector<int> pivot_col;
        int rr = 0;
        for (int c = 0; c < nc && rr < nr; ++c) {
            int pr = -1;
            for (int r2 = rr; r2 < nr; ++r2)
                if (M[static_cast<size_t>(r2)][static_cast<size_t>(c)] != 0) { pr = r2; break; }
            if (pr < 0) continue;
            std::swap(M[static_cast<size_t>(rr)], M[static_cast<size_t>(pr)]);
            fq_t inv = F.inv(M[static_cast<size_t>(rr)][static_cast<size_t>(c)]);
            for (int c2 = 0; c2 < nc; ++c2)
                M[static_cast<size_t>(rr)][static_cast<size_t>(c2)] =
                    F.mul(M[static_cast<size_t>(rr)][static_cast<size_t>(c2)], inv);
            for (int r2 = 0; r2 < nr; ++r2) {
                if (r2 == rr) continue;
                fq_t f = M[static_cast<size_t>(r2)][static_cast<size_t>(c)];
                if (f == 0) continue;
                for (int c2 = 0; c2 < nc; ++c2)
                    M[static_cast<size_t>(r2)][static_cast<size_t>(c2)] =
                        F.sub(M[static_cast<size_t>(r2)][static_cast<size_t>(c2)],
                              F.mul(f, M[static_cast<size_t>(rr)][static_cast<size_t>(c2)]));
            }
            pivot_col.push_back(c);
            ++rr;
        }
        rs.free_cols.clear();
        std::vector<char> piv(static_cast<size_t>(nc), 0);
        for (auto c : pivot_col) piv[static_cast<size_t>(c)] = 1;
        for (int c = 0; c < nc; ++c) {
            if (piv[static_cast<size_t>(c)]) continue;
            rs.free_cols.push_back(i + 1 + c);
            std::vector<fq_t> alpha(static_cast<size_t>(nc), 0);
            alpha[static_cast<size_t>(c)] = F.neg(1);
            for (int r2 = 0; r2 < static_cast<int>(pivot_col.size()); ++r2)
                alpha[static_cast<size_t>(pivot_col[static_cast<size_t>(r2)])] =
                    M[static_cast<size_t>(r2)][static_cast<size_t>(c)];
            rs.basis.push_back(std::move(alpha));
        }
    }

    rs.dim = static_cast<int>(rs.basis.size());
    for (int t = 0; t < rs.dim; ++t) rs.order *= ctx.q();

    // A_i * alpha = 0 for every emitted vector
    for (const auto& alpha : rs.basis)
        for (int nu = 1; nu <= S.rows; ++nu) {
            fq_t s = 0;
            for (int mu = 0; mu < S.cols; ++mu)
                s = F.add(s, F.mul(S.at(nu, i + 1 + mu), alpha[static_cast<size_t>(mu)]));
            if (s != 0) throw std::logic_error("row stabilizer basis fails A_i * alpha = 0");
        }
    return rs;
}

/// x(alpha) = prod over the row of x_{i,mu}(alpha_mu), ascending mu
inline Mat row_elem_from_alpha(const Context& ctx, int i, const std::vector<fq_t>& alpha) {
    Mat m = Mat::identity(ctx.N());
    for (size_t t = 0; t < alpha.size(); ++t)
        if (alpha[t] != 0)
            apply_root_right(ctx, m, i, i + 1 + static_cast<int>(t), alpha[t]);
    return m;
}

/// every element of Stab_U[A] for a staircase core, as the row-wise product
/// prod_i y_i with y_i running over Stab^i; each element is verified to fix [A]
inline std::vector<Mat> stab_elements(const Context& ctx, const CharLabel& A,
                                      SupplParse parse = SupplParse::Conjunctive) {
    const FieldCtx& F = ctx.fq;
    Classification cls = classify(ctx, A, parse);
    if (!cls.staircase || !cls.is_core)
        throw std::invalid_argument("row-wise stabilizer needs a staircase core");

    std::vector<Mat> acc{Mat::identity(ctx.N())};
    for (int i = 1; i <= ctx.tp.last_row(); ++i) {
        RowStab rs = row_stab(ctx, A, i, parse);
        std::vector<Mat> row_elems;
        if (rs.kind == RowStabKind::Trivial) {
            row_elems.push_back(Mat::identity(ctx.N()));
        } else if (rs.kind == RowStabKind::AntiDiag) {
            for (std::uint32_t a = 0; a < ctx.q(); ++a)
                row_elems.push_back(root_elem(ctx, i, ctx.tp.mirror(i), static_cast<fq_t>(a)));
        } else {
            std::vector<fq_t> lam(static_cast<size_t>(rs.dim), 0);
            for (;;) {
                std::vector<fq_t> alpha(rs.basis.empty() ? 0 : rs.basis[0].size(), 0);
                for (int t = 0; t < rs.dim; ++t) {
                    if (lam[static_cast<size_t>(t)] == 0) continue;
                    for (size_t u = 0; u < alpha.size(); ++u)
                        alpha[u] = F.add(alpha[u],
                                         F.mul(lam[static_cast<size_t>(t)], rs.basis[static_cast<size_t>(t)][u]));
                }
                row_elems.push_back(row_elem_from_alpha(ctx, i, alpha));
                int t = rs.dim - 1;
                while (t >= 0) {
                    if (++lam[static_cast<size_t>(t)] < ctx.q()) break;
                    lam[static_cast<size_t>(t)] = 0;
                    --t;
                }
                if (t < 0) break;
            }
        }
        std::vector<Mat> next;
        next.reserve(acc.size() * row_elems.size());
        for (const auto& a : acc)
            for (const auto& y : row_elems) next.push_back(mat_mul(F, a, y));
        acc = std::move(next);
    }
    for (const auto& u : acc)
        if (dot_right(ctx, A, u) != A)
            throw std::logic_error("row-wise stabilizer element does not fix the label");
    return acc;
}

/// generating set of Stab_U[A] for a staircase core: the basis elements of
/// every row solution space plus the anti-diagonal root subgroups
inline std::vector<Mat> stab_generators(const Context& ctx, const CharLabel& A,
                                        SupplParse parse = SupplParse::Conjunctive) {
    Classification cls = classify(ctx, A, parse);
    if (!cls.staircase || !cls.is_core)
        throw std::invalid_argument("row-wise stabilizer needs a staircase core");
    std::vector<Mat> gens;
    for (int i = 1; i <= ctx.tp.last_row(); ++i) {
        RowStab rs = row_stab(ctx, A, i, parse);
        if (rs.kind == RowStabKind::AntiDiag) {
            for (std::uint32_t a = 1; a < ctx.q(); ++a)
                gens.push_back(root_elem(ctx, i, ctx.tp.mirror(i), static_cast<fq_t>(a)));
        } else if (rs.kind == RowStabKind::Solution) {
            for (const auto& alpha : rs.basis)
                for (std::uint32_t a = 1; a < ctx.q(); ++a) {
                    std::vector<fq_t> sc(alpha.size());
                    for (size_t t = 0; t < alpha.size(); ++t)
                        sc[t] = ctx.fq.mul(static_cast<fq_t>(a), alpha[t]);
                    gens.push_back(row_elem_from_alpha(ctx, i, sc));
                }
        }
    }
    return gens;
}

/// Psi_A(u) as the exponent of zeta_p; u must fix [A]
inline int psi(const Context& ctx, const CharLabel& A, const Mat& u) {
    if (dot_right(ctx, A, u) != A)
        throw std::invalid_argument("element is not in the stabilizer");
    Mat uinv = unitri_inverse(ctx.fq, u);
    return monomial_exp(ctx, A, project_label(ctx, uinv));
}

/// all of Stab_U[A]: the row product for staircase cores, otherwise brute
/// force over a supplied group cache
inline std::vector<Mat> stab_set(const Context& ctx, const CharLabel& A,
                                 const GroupCache* gc = nullptr,
                                 SupplParse parse = SupplParse::Conjunctive) {
    Classification cls = classify(ctx, A, parse);
    if (cls.staircase && cls.is_core) return stab_elements(ctx, A, parse);
    if (!gc) throw std::invalid_argument("non-core stabilizer needs a group cache");
    std::vector<Mat> out;
    for (std::uint64_t t = 0; t < gc->size; ++t)
        if (dot_right_invt(ctx, A, gc->invt[static_cast<size_t>(t)]) == A)
            out.push_back(gc->elems[static_cast<size_t>(t)]);
    return out;
}

/// Stab_U(A, B) = Stab_U(A) ∩ Stab_U(B)
inline std::vector<Mat> stab_intersection(const Context& ctx, const CharLabel& A,
                                          const CharLabel& B, const GroupCache* gc = nullptr,
                                          SupplParse parse = SupplParse::Conjunctive) {
    std::vector<Mat> out;
    for (auto& u : stab_set(ctx, A, gc, parse))
        if (dot_right(ctx, B, u) == B) out.push_back(u);
    return out;
}

inline std::vector<std::uint32_t> brute_stabilizer(const Context& ctx, const GroupCache& gc,
                                                   const CharLabel& A) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t t = 0; t < gc.size; ++t)
        if (dot_right_invt(ctx, A, gc.invt[static_cast<size_t>(t)]) == A)
            out.push_back(static_cast<std::uint32_t>(t));
    return out;
}

} // namespace uorbits
