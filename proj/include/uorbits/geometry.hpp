#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uorbits {

enum class LieType { B, C, D };

inline char lie_type_char(LieType t) {
    switch (t) {
        case LieType::B: return 'B';
        case LieType::C: return 'C';
        default: return 'D';
    }
}

inline LieType lie_type_from_char(char c) {
    switch (c) {
        case 'B': case 'b': return LieType::B;
        case 'C': case 'c': return LieType::C;
        case 'D': case 'd': return LieType::D;
        default: throw std::invalid_argument("lie type must be one of B, C, D");
    }
}

/// 1-based matrix position
struct Position {
    int i = 0, j = 0;
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default; // row-major lex
};

/// (i,j) precedes (k,l) iff i > k, or i = k and j <= l; a total order used as
/// the induction measure of the separation step
inline bool precede(Position a, Position b) {
    return a.i > b.i || (a.i == b.i && a.j <= b.j);
}

struct TypeParams {
    LieType type;
    int n;       // rank
    int N;       // matrix size: 2n+1 for B, 2n for C and D
    int n_tilde; // n+1 for B, n for C and D
    int eps;     // -1 for C, +1 otherwise

    static TypeParams make(LieType t, int n) {
        if (n < 1) throw std::invalid_argument("rank must be >= 1");
        TypeParams tp;
        tp.type = t;
        tp.n = n;
        tp.N = (t == LieType::B) ? 2 * n + 1 : 2 * n;
        tp.n_tilde = (t == LieType::B) ? n + 1 : n;
        tp.eps = (t == LieType::C) ? -1 : 1;
        return tp;
    }

    int mirror(int i) const {
        if (i < 1 || i > N) throw std::out_of_range("mirror index out of range");
        return N + 1 - i;
    }

    /// last column of row i inside pUP: mirror(i)-1 for B and D, mirror(i) for C
    int i_tilde(int i) const { return type == LieType::C ? mirror(i) : mirror(i) - 1; }

    /// last row with a nonempty pUP window, i.e. with i_tilde(i) > i; the row
    /// groups R_1 ... R_{last_row} cover all of pUP
    int last_row() const { return type == LieType::D ? n - 1 : n; }

    bool in_UR(int i, int j) const { return 1 <= i && i < j && j <= N; }
    bool in_UP(int i, int j) const { return 1 <= i && i < j && j < mirror(i); }
    bool in_CC(int i, int j) const { return in_UR(i, j) && i == mirror(j); }
    bool in_RP(int i, int j) const { return in_UR(i, j) && mirror(j) < i; }
    bool in_pUP(int i, int j) const {
        return type == LieType::C ? (in_UP(i, j) || in_CC(i, j)) : in_UP(i, j);
    }
    bool in_tril(int i, int j) const { return in_pUP(i, j) && j <= n_tilde; }
    bool in_trir(int i, int j) const { return in_pUP(i, j) && j > n_tilde; }
    /// everything strictly above the anti-diagonal (rows unrestricted)
    bool in_KL(int i, int j) const { return 1 <= i && i <= N && 1 <= j && j < mirror(i); }
    bool in_pKL(int i, int j) const {
        return type == LieType::C ? (in_KL(i, j) || in_CC(i, j)) : in_KL(i, j);
    }

    bool in_UP(Position p) const { return in_UP(p.i, p.j); }
    bool in_pUP(Position p) const { return in_pUP(p.i, p.j); }
};

inline int mirror(int i, int N) {
    if (i < 1 || i > N) throw std::out_of_range("mirror index out of range");
    return N + 1 - i;
}

/// small membership set over matrix positions
class PosSet {
public:
    PosSet() = default;
    explicit PosSet(int N) : N_(N), bits_(static_cast<size_t>(N) * N, 0) {}
    PosSet(int N, const std::vector<Position>& ps) : PosSet(N) {
        for (auto p : ps) insert(p);
    }

    void insert(Position p) {
        if (!bits_[idx(p)]) { bits_[idx(p)] = 1; ++size_; }
    }
    void erase(Position p) {
        if (bits_[idx(p)]) { bits_[idx(p)] = 0; --size_; }
    }
    bool contains(Position p) const {
        if (p.i < 1 || p.i > N_ || p.j < 1 || p.j > N_) return false;
        return bits_[idx(p)] != 0;
    }
    bool contains(int i, int j) const { return contains(Position{i, j}); }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    int N() const { return N_; }

    std::vector<Position> sorted() const {
        std::vector<Position> out;
        out.reserve(static_cast<size_t>(size_));
        for (int i = 1; i <= N_; ++i)
            for (int j = 1; j <= N_; ++j)
                if (bits_[static_cast<size_t>(i - 1) * N_ + (j - 1)]) out.push_back({i, j});
        return out;
    }

    friend bool operator==(const PosSet&, const PosSet&) = default;

private:
    size_t idx(Position p) const {
        return static_cast<size_t>(p.i - 1) * N_ + (p.j - 1);
    }
    int N_ = 0;
    int size_ = 0;
    std::vector<char> bits_;
};

/// the named position families of one group configuration
struct Regions {
    TypeParams tp;
    std::vector<Position> pUP; // row-major lex order; the coordinate order everywhere
    std::vector<Position> UP, CC, RP, tril, trir;
    PosSet pup_set, up_set, cc_set, rp_set, tril_set, trir_set;
    std::vector<int> pup_index; // (i-1)*N+(j-1) -> index into pUP, or -1

    int index_of(Position p) const {
        int id = pup_index[static_cast<size_t>(p.i - 1) * tp.N + (p.j - 1)];
        if (id < 0) throw std::out_of_range("position not in pUP");
        return id;
    }
    int index_or_neg(int i, int j) const {
        return pup_index[static_cast<size_t>(i - 1) * tp.N + (j - 1)];
    }
};

inline Regions region_sets(const TypeParams& tp) {
    Regions r{tp, {}, {}, {}, {}, {}, {}, PosSet(tp.N), PosSet(tp.N), PosSet(tp.N),
              PosSet(tp.N), PosSet(tp.N), PosSet(tp.N), {}};
    r.pup_index.assign(static_cast<size_t>(tp.N) * tp.N, -1);
    for (int i = 1; i <= tp.N; ++i) {
        for (int j = 1; j <= tp.N; ++j) {
            Position p{i, j};
            if (tp.in_UP(i, j)) { r.UP.push_back(p); r.up_set.insert(p); }
            if (tp.in_CC(i, j)) { r.CC.push_back(p); r.cc_set.insert(p); }
            if (tp.in_RP(i, j)) { r.RP.push_back(p); r.rp_set.insert(p); }
            if (tp.in_pUP(i, j)) {
                r.pup_index[static_cast<size_t>(i - 1) * tp.N + (j - 1)] =
                    static_cast<int>(r.pUP.size());
                r.pUP.push_back(p);
                r.pup_set.insert(p);
                if (tp.in_tril(i, j)) { r.tril.push_back(p); r.tril_set.insert(p); }
                else { r.trir.push_back(p); r.trir_set.insert(p); }
            }
        }
    }
    return r;
}

/// closedness of J inside pUP: (i,j),(j,k) in J force (i,k) in J, and
/// (i,j),(mirror k, mirror j) in J with (i,k) in pUP force (i,k) in J.
/// With type_a_only set, only the first condition is required.
inline bool is_closed(const PosSet& J, const TypeParams& tp, bool type_a_only = false) {
    auto members = J.sorted();
    for (auto a : members) {
        for (auto b : members) {
            if (a.j == b.i) { // (i,j), (j,k)
                if (!J.contains(a.i, b.j)) return false;
            }
            if (!type_a_only) {
                // a = (i,j), b = (kbar, jbar)
                if (b.j == tp.mirror(a.j)) {
                    int kk = tp.mirror(b.i);
                    if (tp.in_pUP(a.i, kk) && !J.contains(a.i, kk)) return false;
                }
            }
        }
    }
    return true;
}

inline bool is_closed(const std::vector<Position>& J, const TypeParams& tp,
                      bool type_a_only = false) {
    return is_closed(PosSet(tp.N, J), tp, type_a_only);
}

/// arm of (i,j): the full row mirror(j) inside UP
inline std::vector<Position> arm(Position p, const TypeParams& tp) {
    std::vector<Position> out;
    int r = tp.mirror(p.j);
    for (int a = r + 1; a <= tp.N; ++a)
        if (tp.in_UP(r, a)) out.push_back({r, a});
    return out;
}

/// leg of (i,j): the part of column j inside UP below row i
inline std::vector<Position> leg(Position p, const TypeParams& tp) {
    std::vector<Position> out;
    for (int a = p.i + 1; a < p.j; ++a)
        if (tp.in_UP(a, p.j)) out.push_back({a, p.j});
    return out;
}

struct LimbSets {
    PosSet limb_circ; // arms and legs of all main conditions
    PosSet limb;      // plus the anti-diagonal positions below UP right mains in type C
    PosSet j_set;     // pUP minus limb
};

/// Limb and J(A) from a main-condition position set. J(A) is checked to be
/// closed; a failure means the main set is not one a staircase label can have.
inline LimbSets limb(const std::vector<Position>& main, const Regions& reg,
                     bool require_closed = true) {
    const TypeParams& tp = reg.tp;
    LimbSets out{PosSet(tp.N), PosSet(tp.N), PosSet(tp.N)};
    for (auto m : main) {
        if (!tp.in_pUP(m)) throw std::invalid_argument("main condition outside pUP");
        for (auto p : arm(m, tp)) out.limb_circ.insert(p);
        for (auto p : leg(m, tp)) out.limb_circ.insert(p);
    }
    out.limb = out.limb_circ;
    if (tp.type == LieType::C) {
        for (auto m : main) {
            if (tp.in_UP(m) && m.j > tp.n_tilde) // right main condition inside UP
                out.limb.insert({tp.mirror(m.j), m.j});
        }
    }
    for (auto p : reg.pUP)
        if (!out.limb.contains(p)) out.j_set.insert(p);
    if (require_closed && !is_closed(out.j_set, tp))
        throw std::logic_error("J(A) is not closed for the given main set");
    return out;
}

/// R_{rs} for (r,s) in RP: positions of pUP with mirror(s) <= i <= r and
/// j <= mirror(r); the window whose entries determine the (r,s) entry of a
/// group element
inline std::vector<Position> r_region(int r, int s, const Regions& reg) {
    const TypeParams& tp = reg.tp;
    if (!tp.in_RP(r, s)) throw std::invalid_argument("(r,s) is not in RP");
    std::vector<Position> out;
    for (auto p : reg.pUP)
        if (tp.mirror(s) <= p.i && p.i <= r && p.j <= tp.mirror(r)) out.push_back(p);
    return out;
}

struct ISets {
    std::vector<Position> i_circ_d, i_d, i_full;
};

/// the nested closed sets attached to a staircase main set: positions (i,j) of
/// UR such that rows i and j both carry main conditions (i,a), (j,b) with
/// i<a<j<b, i<a<=j<b, or just a<b
inline ISets i_sets(const std::vector<Position>& main, const TypeParams& tp) {
    ISets out;
    std::vector<int> main_col(static_cast<size_t>(tp.N) + 1, 0); // row -> main column
    for (auto m : main) {
        if (main_col[static_cast<size_t>(m.i)] != 0)
            throw std::invalid_argument("two main conditions in one row");
        main_col[static_cast<size_t>(m.i)] = m.j;
    }
    for (int i = 1; i <= tp.N; ++i) {
        int a = main_col[static_cast<size_t>(i)];
        if (a == 0) continue;
        for (int j = i + 1; j <= tp.N; ++j) {
            int b = main_col[static_cast<size_t>(j)];
            if (b == 0) continue;
            if (a < b) out.i_full.push_back({i, j});
            if (a <= j && a < b) out.i_d.push_back({i, j});
            if (a < j && a < b) out.i_circ_d.push_back({i, j});
        }
    }
    return out;
}

} // namespace uorbits
