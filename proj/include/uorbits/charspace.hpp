#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uorbits/group.hpp"

namespace uorbits {

/// A matrix in V = V_pUP, stored as its entry vector over the fixed pUP
/// position order. [A] denotes the linear character chi_{-A} of (V,+) it
/// labels; equality of labels is entrywise equality.
struct CharLabel {
    std::vector<fq_t> v;

    friend bool operator==(const CharLabel&, const CharLabel&) = default;
};

inline CharLabel zero_label(const Context& ctx) {
    return CharLabel{std::vector<fq_t>(static_cast<size_t>(ctx.m()), 0)};
}

inline fq_t label_at(const Context& ctx, const CharLabel& A, int i, int j) {
    int t = ctx.reg.index_or_neg(i, j);
    return t < 0 ? fq_t{0} : A.v[static_cast<size_t>(t)];
}

inline void label_set(const Context& ctx, CharLabel& A, int i, int j, fq_t val) {
    A.v[static_cast<size_t>(ctx.reg.index_of({i, j}))] = val;
}

inline CharLabel label_unit(const Context& ctx, int i, int j, fq_t val) {
    CharLabel A = zero_label(ctx);
    label_set(ctx, A, i, j, val);
    return A;
}

/// mixed-radix index of A inside V, least significant digit at the first pUP position
inline std::uint64_t v_index(const Context& ctx, const CharLabel& A) {
    std::uint64_t key = 0;
    for (int t = ctx.m() - 1; t >= 0; --t) key = key * ctx.q() + A.v[static_cast<size_t>(t)];
    return key;
}

inline CharLabel label_of_index(const Context& ctx, std::uint64_t key) {
    CharLabel A = zero_label(ctx);
    for (int t = 0; t < ctx.m(); ++t) {
        A.v[static_cast<size_t>(t)] = static_cast<fq_t>(key % ctx.q());
        key /= ctx.q();
    }
    return A;
}

inline Mat label_to_matrix(const Context& ctx, const CharLabel& A) {
    Mat m(ctx.N());
    for (int t = 0; t < ctx.m(); ++t) {
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        m.set(p.i, p.j, A.v[static_cast<size_t>(t)]);
    }
    return m;
}

/// pi_pUP: project a matrix onto V
inline CharLabel project_label(const Context& ctx, const Mat& m) {
    CharLabel A = zero_label(ctx);
    for (int t = 0; t < ctx.m(); ++t) {
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        A.v[static_cast<size_t>(t)] = m.at(p.i, p.j);
    }
    return A;
}

inline CharLabel label_add(const Context& ctx, const CharLabel& A, const CharLabel& B) {
    CharLabel out = A;
    for (int t = 0; t < ctx.m(); ++t)
        out.v[static_cast<size_t>(t)] =
            ctx.fq.add(out.v[static_cast<size_t>(t)], B.v[static_cast<size_t>(t)]);
    return out;
}

inline std::vector<Position> support(const Context& ctx, const CharLabel& A) {
    std::vector<Position> out;
    for (int t = 0; t < ctx.m(); ++t)
        if (A.v[static_cast<size_t>(t)] != 0) out.push_back(ctx.reg.pUP[static_cast<size_t>(t)]);
    return out;
}

/// trace form kappa(A,B) = tr(A^t B) = sum of entrywise products
inline fq_t kappa(const FieldCtx& F, const Mat& A, const Mat& B) {
    if (A.N != B.N) throw std::invalid_argument("kappa dimension mismatch");
    fq_t s = 0;
    for (size_t t = 0; t < A.a.size(); ++t)
        if (A.a[t] != 0 && B.a[t] != 0) s = F.add(s, F.mul(A.a[t], B.a[t]));
    return s;
}

inline fq_t kappa(const Context& ctx, const CharLabel& A, const CharLabel& B) {
    fq_t s = 0;
    for (int t = 0; t < ctx.m(); ++t)
        s = ctx.fq.add(s, ctx.fq.mul(A.v[static_cast<size_t>(t)], B.v[static_cast<size_t>(t)]));
    return s;
}

/// exponent t with chi_A(B) = zeta_p^t
inline int chi_exp(const Context& ctx, const CharLabel& A, const CharLabel& B) {
    return ctx.fq.theta_exp(kappa(ctx, A, B));
}

/// chi_A(B) = theta(kappa(A,B))
inline CycNum chi_eval(const Context& ctx, const CharLabel& A, const CharLabel& B) {
    return CycNum::root(ctx.fq.p(), chi_exp(ctx, A, B));
}

/// the 1-cocycle f(g) = pi(g) on the ambient unitriangular group
inline CharLabel cocycle_f(const Context& ctx, const Mat& g) {
    if (!is_unitriangular(g)) throw std::invalid_argument("cocycle argument not unitriangular");
    return project_label(ctx, g);
}

/// A.g = pi(A g), the right action of the ambient group on V
inline CharLabel dot_v(const Context& ctx, const CharLabel& A, const Mat& g) {
    return project_label(ctx, mat_mul(ctx.fq, label_to_matrix(ctx, A), g));
}

/// function V -> Z[zeta_p], dense over v-indices
struct FnV {
    std::vector<CycNum> val;
};

/// function U -> Z[zeta_p], dense over the coordinate order of a group cache
struct FnU {
    std::vector<CycNum> val;
};

/// f*(tau) = tau o f, the module inverse of f: pulls a function on V back to U
inline FnU f_star(const Context&, const GroupCache& gc, const FnV& tau) {
    FnU out;
    out.val.reserve(gc.size);
    for (std::uint64_t t = 0; t < gc.size; ++t)
        out.val.push_back(tau.val[gc.pi_of_coord[static_cast<size_t>(t)]]);
    return out;
}

/// push a function on U forward through f (possible since f restricted to U is
/// a bijection onto V)
inline FnV f_push(const Context& ctx, const GroupCache& gc, const FnU& fn) {
    FnV out;
    out.val.assign(gc.size, CycNum(ctx.fq.p()));
    for (std::uint64_t t = 0; t < gc.size; ++t)
        out.val[gc.pi_of_coord[static_cast<size_t>(t)]] = fn.val[static_cast<size_t>(t)];
    return out;
}

/// "i,j=v;..." with entries sorted by position; "0" for the zero label
inline std::string label_to_string(const Context& ctx, const CharLabel& A) {
    std::string out;
    for (int t = 0; t < ctx.m(); ++t) {
        if (A.v[static_cast<size_t>(t)] == 0) continue;
        Position p = ctx.reg.pUP[static_cast<size_t>(t)];
        if (!out.empty()) out += ';';
        out += std::to_string(p.i) + ',' + std::to_string(p.j) + '=' +
               std::to_string(A.v[static_cast<size_t>(t)]);
    }
    return out.empty() ? "0" : out;
}

inline CharLabel label_from_string(const Context& ctx, const std::string& s) {
    CharLabel A = zero_label(ctx);
    if (s.empty() || s == "0") return A;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t end = s.find(';', pos);
        if (end == std::string::npos) end = s.size();
        std::string item = s.substr(pos, end - pos);
        size_t c1 = item.find(','), c2 = item.find('=');
        if (c1 == std::string::npos || c2 == std::string::npos || c2 < c1)
            throw std::invalid_argument("label entry must look like i,j=v");
        int i = std::stoi(item.substr(0, c1));
        int j = std::stoi(item.substr(c1 + 1, c2 - c1 - 1));
        long long val = std::stoll(item.substr(c2 + 1));
        if (!ctx.tp.in_pUP(i, j))
            throw std::invalid_argument("label position (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") is not in pUP");
        if (val < 0 || val >= ctx.q())
            throw std::invalid_argument("label value out of range");
        label_set(ctx, A, i, j, static_cast<fq_t>(val));
        pos = end + 1;
    }
    return A;
}

} // namespace uorbits
