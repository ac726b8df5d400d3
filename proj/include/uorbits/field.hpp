#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace uorbits {

using fq_t = std::uint16_t; // element of F_q as index 0..q-1 (base-p digits, low first)

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense polynomial over F_p, coefficient c[i] at x^i
using poly = std::vector<int>;

inline poly poly_mod(poly a, const poly& f, int p) {
    int df = static_cast<int>(f.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= df; --i) {
        int c = a[i] % p;
        if (c == 0) continue;
        for (int j = 0; j <= df; ++j)
            a[i - df + j] = ((a[i - df + j] - c * f[j]) % p + p * p) % p;
    }
    a.resize(df);
    for (auto& c : a) c = ((c % p) + p) % p;
    return a;
}

inline poly poly_mulmod(const poly& a, const poly& b, const poly& f, int p) {
    poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(c), f, p);
}

// x^e mod f by square and multiply
inline poly poly_xpow(std::uint64_t e, const poly& f, int p) {
    poly r{1}, x{0, 1};
    r.resize(f.size() - 1, 0);
    x.resize(f.size() - 1, 0);
    poly base = x;
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline poly poly_gcd(poly a, poly b, int p) {
    auto deg = [](const poly& x) {
        int d = static_cast<int>(x.size()) - 1;
        while (d >= 0 && x[d] == 0) --d;
        return d;
    };
    while (deg(b) >= 0) {
        int da = deg(a), db = deg(b);
        if (da < db) { std::swap(a, b); continue; }
        // a -= lead(a)/lead(b) * x^(da-db) * b
        int inv = 1;
        for (int t = 1; t < p; ++t) if (t * b[db] % p == 1) { inv = t; break; }
        int c = a[da] * inv % p;
        for (int j = 0; j <= db; ++j)
            a[da - db + j] = ((a[da - db + j] - c * b[j]) % p + p) % p;
    }
    return a;
}

inline bool poly_is_irreducible(const poly& f, int p) {
    int k = static_cast<int>(f.size()) - 1;
    // x^(p^k) == x mod f, and gcd(x^(p^(k/d)) - x, f) = 1 for prime d | k
    auto pow_pk = [&](int e) {
        std::uint64_t q = 1;
        for (int i = 0; i < e; ++i) q *= static_cast<std::uint64_t>(p);
        return poly_xpow(q, f, p);
    };
    poly xk = pow_pk(k);
    poly x{0, 1};
    x.resize(f.size() - 1, 0);
    if (xk != x) return false;
    for (int d = 2; d <= k; ++d) {
        if (k % d != 0 || !is_prime(d)) continue;
        poly g = pow_pk(k / d);
        for (size_t i = 0; i < g.size() && i < x.size(); ++i)
            g[i] = ((g[i] - x[i]) % p + p) % p;
        poly gc = poly_gcd(f, g, p);
        int dg = static_cast<int>(gc.size()) - 1;
        while (dg >= 0 && gc[dg] == 0) --dg;
        if (dg != 0) return false;
    }
    return true;
}

} // namespace detail

/// Exact arithmetic in F_q, q = p^k with p an odd prime. Elements are
/// indices 0..q-1 encoding the coefficient vector of the residue class
/// (base-p digits, constant term first). All operations are table driven.
class FieldCtx {
public:
    static constexpr std::uint64_t kDefaultBound = 1u << 16;

    FieldCtx(int p, int k, std::uint64_t bound = kDefaultBound, int theta_scale = 1)
        : p_(p), k_(k) {
        if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be odd");
        if (!detail::is_prime(static_cast<std::uint64_t>(p)))
            throw std::invalid_argument("p must be prime");
        if (k < 1) throw std::invalid_argument("k must be >= 1");
        std::uint64_t q = 1;
        for (int i = 0; i < k; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > bound)
                throw std::invalid_argument("q = p^k exceeds the configured bound " +
                                            std::to_string(bound));
        }
        q_ = static_cast<std::uint32_t>(q);
        theta_scale_ = ((theta_scale % p) + p) % p;
        if (theta_scale_ == 0) throw std::invalid_argument("theta scale must be nonzero mod p");

        if (k_ > 1) {
            // lexicographically least irreducible monic polynomial of degree k:
            // scan constant-first coefficient tuples in base-p counter order
            std::uint64_t lim = 1;
            for (int i = 0; i < k_; ++i) lim *= static_cast<std::uint64_t>(p_);
            bool found = false;
            for (std::uint64_t code = 0; code < lim; ++code) {
                detail::poly f(k_ + 1, 0);
                std::uint64_t c = code;
                for (int i = 0; i < k_; ++i) { f[i] = static_cast<int>(c % p_); c /= p_; }
                f[k_] = 1;
                if (detail::poly_is_irreducible(f, p_)) {
                    modulus_ = f;
                    found = true;
                    break;
                }
            }
            if (!found) throw std::logic_error("no irreducible modulus found");
        }
        build_tables();
    }

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t q() const { return q_; }
    int theta_scale() const { return theta_scale_; }
    const std::vector<int>& modulus() const { return modulus_; }

    fq_t zero() const { return 0; }
    fq_t one() const { return 1; }

    fq_t add(fq_t a, fq_t b) const {
        if (!add_.empty()) return add_[static_cast<size_t>(a) * q_ + b];
        if (k_ == 1) {
            std::uint32_t s = static_cast<std::uint32_t>(a) + b;
            return static_cast<fq_t>(s >= static_cast<std::uint32_t>(p_) ? s - p_ : s);
        }
        std::uint32_t r = 0, pw = 1, x = a, y = b;
        for (int i = 0; i < k_; ++i) {
            r += pw * static_cast<std::uint32_t>((x % p_ + y % p_) % p_);
            pw *= static_cast<std::uint32_t>(p_);
            x /= p_;
            y /= p_;
        }
        return static_cast<fq_t>(r);
    }
    fq_t sub(fq_t a, fq_t b) const { return add(a, neg_[b]); }
    fq_t neg(fq_t a) const { return neg_[a]; }
    fq_t mul(fq_t a, fq_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    fq_t inv(fq_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero");
        return inv_[a];
    }
    fq_t div(fq_t a, fq_t b) const { return mul(a, inv(b)); }

    /// scalar embedding of 0..p-1 (the prime subfield)
    fq_t from_int(long long v) const {
        long long r = ((v % p_) + p_) % p_;
        return static_cast<fq_t>(r);
    }

    /// Tr(x) = x + x^p + ... + x^(p^(k-1)), landing in F_p; returned as 0..p-1
    int trace(fq_t a) const { return trace_[a]; }

    /// exponent t with theta(x) = zeta_p^t, theta(x) = zeta^(c*Tr(x))
    int theta_exp(fq_t a) const { return theta_scale_ * trace_[a] % p_; }

    /// coefficient vector of an element, low to high, length k
    std::vector<int> coeffs(fq_t a) const {
        std::vector<int> c(k_);
        std::uint32_t v = a;
        for (int i = 0; i < k_; ++i) { c[i] = static_cast<int>(v % p_); v /= p_; }
        return c;
    }

    fq_t primitive_element() const { return g_; }
    const std::vector<fq_t>& exp_table() const { return exp_; }
    const std::vector<std::uint32_t>& log_table() const { return log_; }

private:
    fq_t raw_mul(fq_t a, fq_t b) const {
        if (k_ == 1)
            return static_cast<fq_t>(static_cast<std::uint64_t>(a) * b %
                                     static_cast<std::uint64_t>(p_));
        detail::poly pa(k_), pb(k_);
        std::uint32_t x = a, y = b;
        for (int i = 0; i < k_; ++i) { pa[i] = static_cast<int>(x % p_); x /= p_; }
        for (int i = 0; i < k_; ++i) { pb[i] = static_cast<int>(y % p_); y /= p_; }
        detail::poly pc = detail::poly_mulmod(pa, pb, modulus_, p_);
        std::uint32_t r = 0, pw = 1;
        for (int i = 0; i < k_; ++i) {
            r += pw * static_cast<std::uint32_t>(pc[i]);
            pw *= static_cast<std::uint32_t>(p_);
        }
        return static_cast<fq_t>(r);
    }

    fq_t raw_pow(fq_t a, std::uint64_t e) const {
        fq_t r = 1, base = a;
        while (e) {
            if (e & 1) r = raw_mul(r, base);
            base = raw_mul(base, base);
            e >>= 1;
        }
        return r;
    }

    void build_tables() {
        if (q_ <= 1024) {
            add_.resize(static_cast<size_t>(q_) * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t b = 0; b < q_; ++b) {
                    std::uint32_t r = 0, pw = 1, x = a, y = b;
                    for (int i = 0; i < k_; ++i) {
                        r += pw * static_cast<std::uint32_t>((x % p_ + y % p_) % p_);
                        pw *= static_cast<std::uint32_t>(p_);
                        x /= p_;
                        y /= p_;
                    }
                    add_[static_cast<size_t>(a) * q_ + b] = static_cast<fq_t>(r);
                }
        }
        neg_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            std::uint32_t r = 0, pw = 1, x = a;
            for (int i = 0; i < k_; ++i) {
                r += pw * static_cast<std::uint32_t>((p_ - x % p_) % p_);
                pw *= static_cast<std::uint32_t>(p_);
                x /= p_;
            }
            neg_[a] = static_cast<fq_t>(r);
        }

        // first primitive element in index order: g is primitive iff
        // g^((q-1)/l) != 1 for every prime l dividing q-1
        std::vector<std::uint32_t> prime_factors;
        {
            std::uint32_t m = q_ - 1;
            for (std::uint32_t d = 2; d * d <= m; ++d)
                if (m % d == 0) {
                    prime_factors.push_back(d);
                    while (m % d == 0) m /= d;
                }
            if (m > 1) prime_factors.push_back(m);
        }
        g_ = 0;
        for (std::uint32_t a = 2; a < q_; ++a) {
            bool primitive = true;
            for (auto l : prime_factors)
                if (raw_pow(static_cast<fq_t>(a), (q_ - 1) / l) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) { g_ = static_cast<fq_t>(a); break; }
        }
        if (g_ == 0 && q_ == 3) g_ = 2;
        if (g_ == 0) throw std::logic_error("no primitive element found");

        exp_.resize(q_ - 1);
        log_.assign(q_, 0);
        fq_t x = 1;
        for (std::uint32_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = x;
            log_[x] = i;
            x = raw_mul(x, g_);
        }
        inv_.resize(q_);
        inv_[0] = 0;
        for (std::uint32_t a = 1; a < q_; ++a)
            inv_[a] = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];

        trace_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            if (k_ == 1) {
                trace_[a] = static_cast<int>(a);
                continue;
            }
            fq_t t = 0, f = static_cast<fq_t>(a);
            for (int i = 0; i < k_; ++i) {
                t = add(t, f);
                f = raw_pow(f, static_cast<std::uint64_t>(p_));
            }
            if (t >= static_cast<std::uint32_t>(p_))
                throw std::logic_error("trace left the prime subfield");
            trace_[a] = static_cast<int>(t);
        }
    }

    int p_, k_;
    std::uint32_t q_;
    int theta_scale_;
    fq_t g_ = 0;
    std::vector<int> modulus_; // monic, degree k (empty when k = 1)
    std::vector<fq_t> add_, neg_, inv_, exp_;
    std::vector<std::uint32_t> log_;
    std::vector<int> trace_;
};

inline FieldCtx make_field(int p, int k, std::uint64_t bound = FieldCtx::kDefaultBound) {
    return FieldCtx(p, k, bound);
}

/// Element of the cyclotomic ring Z[zeta_p], stored as the integer coefficient
/// vector of length p-1 on the basis 1, zeta, ..., zeta^(p-2). Reduction by
/// 1 + zeta + ... + zeta^(p-1) = 0 is applied eagerly, so equality of values is
/// equality of coefficient vectors. Coefficient overflow is a hard error.
class CycNum {
public:
    CycNum() : p_(0) {}
    explicit CycNum(int p) : p_(p), c_(static_cast<size_t>(p - 1), 0) {}
    CycNum(int p, long long n) : p_(p), c_(static_cast<size_t>(p - 1), 0) { c_[0] = n; }

    static CycNum root(int p, long long t) {
        CycNum z(p);
        long long e = ((t % p) + p) % p;
        if (e < p - 1) {
            z.c_[static_cast<size_t>(e)] = 1;
        } else {
            for (auto& x : z.c_) x = -1; // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
        }
        return z;
    }

    int p() const { return p_; }
    const std::vector<long long>& coeffs() const { return c_; }
    bool is_zero() const {
        for (auto x : c_) if (x != 0) return false;
        return true;
    }

    bool operator==(const CycNum& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    CycNum& operator+=(const CycNum& o) {
        check_same(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
        return *this;
    }
    CycNum& operator-=(const CycNum& o) {
        check_same(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], -o.c_[i]);
        return *this;
    }
    friend CycNum operator+(CycNum a, const CycNum& b) { a += b; return a; }
    friend CycNum operator-(CycNum a, const CycNum& b) { a -= b; return a; }

    CycNum operator-() const {
        CycNum r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        a.check_same(b);
        int p = a.p_;
        // accumulate on exponents mod p, then fold zeta^(p-1)
        std::vector<__int128> acc(static_cast<size_t>(p), 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                acc[(i + j) % static_cast<size_t>(p)] +=
                    static_cast<__int128>(a.c_[i]) * b.c_[j];
            }
        }
        CycNum r(p);
        for (size_t i = 0; i + 1 < static_cast<size_t>(p); ++i)
            r.c_[i] = narrow(acc[i] - acc[static_cast<size_t>(p - 1)]);
        return r;
    }
    CycNum& operator*=(const CycNum& o) { *this = *this * o; return *this; }

    CycNum scaled(long long n) const {
        CycNum r = *this;
        for (auto& x : r.c_) x = narrow(static_cast<__int128>(x) * n);
        return r;
    }

    /// complex conjugation, zeta^t -> zeta^(p-t)
    CycNum conj() const {
        std::vector<__int128> acc(static_cast<size_t>(p_), 0);
        for (size_t i = 0; i < c_.size(); ++i)
            acc[(static_cast<size_t>(p_) - i) % static_cast<size_t>(p_)] += c_[i];
        CycNum r(p_);
        for (size_t i = 0; i + 1 < static_cast<size_t>(p_); ++i)
            r.c_[i] = narrow(acc[i] - acc[static_cast<size_t>(p_ - 1)]);
        return r;
    }

    bool is_integer() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    long long integer_value() const {
        if (!is_integer()) throw std::domain_error("cyclotomic value is not a rational integer");
        return c_[0];
    }

    /// exact division by a nonzero integer; remainder is a hard error
    CycNum divided_exact(long long n) const {
        if (n == 0) throw std::domain_error("division by zero");
        CycNum r = *this;
        for (auto& x : r.c_) {
            if (x % n != 0) throw std::domain_error("inexact cyclotomic division");
            x /= n;
        }
        return r;
    }

private:
    void check_same(const CycNum& o) const {
        if (p_ != o.p_) throw std::invalid_argument("cyclotomic order mismatch");
    }
    static long long checked_add(long long a, long long b) {
        long long r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("CycNum overflow");
        return r;
    }
    static long long narrow(__int128 v) {
        if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
            throw std::overflow_error("CycNum overflow");
        return static_cast<long long>(v);
    }

    int p_;
    std::vector<long long> c_;
};

/// theta(x) = zeta_p^(c * Tr(x)), the fixed nontrivial linear character of (F_q, +)
inline CycNum theta(const FieldCtx& F, fq_t x) { return CycNum::root(F.p(), F.theta_exp(x)); }

/// Exact element of Q(zeta_p) as num/den with den > 0. Only used where sums of
/// roots of unity get divided by group orders (expansion coefficients, inner
/// products); the hot paths stay on exponents.
struct CycRat {
    CycNum num;
    long long den = 1;

    CycRat() = default;
    CycRat(CycNum n, long long d) : num(std::move(n)), den(d) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (den < 0) { den = -den; num = -num; }
        reduce();
    }

    bool is_zero() const { return num.is_zero(); }

    bool operator==(const CycRat& o) const {
        return num.scaled(o.den) == o.num.scaled(den);
    }
    bool operator!=(const CycRat& o) const { return !(*this == o); }

private:
    void reduce() {
        long long g = den;
        for (auto c : num.coeffs()) g = std::gcd(g, c < 0 ? -c : c);
        if (g > 1) { num = num.divided_exact(g); den /= g; }
    }
};

} // namespace uorbits
