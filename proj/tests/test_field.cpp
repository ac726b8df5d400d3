#include <catch2/catch_amalgamated.hpp>

#include "uorbits/field.hpp"

using namespace uorbits;

namespace {

// independent irreducibility oracle for quadratics and cubics: root search
bool has_root(const std::vector<int>& f, int p) {
    for (int x = 0; x < p; ++x) {
        long long v = 0, pw = 1;
        for (int c : f) {
            v = (v + c * pw) % p;
            pw = pw * x % p;
        }
        if (v % p == 0) return true;
    }
    return false;
}

} // namespace

TEST_CASE("prime field construction") {
    FieldCtx F = make_field(3, 1);
    REQUIRE(F.q() == 3);
    REQUIRE(F.p() == 3);
    REQUIRE(F.modulus().empty());
}

TEST_CASE("field rejects bad parameters") {
    REQUIRE_THROWS_AS(make_field(2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(make_field(9, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(make_field(4, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(make_field(3, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(make_field(3, 20), std::invalid_argument); // over the bound
}

TEST_CASE("F9 modulus is the least irreducible monic quadratic") {
    FieldCtx F = make_field(3, 2);
    REQUIRE(F.q() == 9);
    // oracle: scan monic quadratics in base-3 counter order, first without a root
    std::vector<int> expected;
    for (int code = 0; code < 9; ++code) {
        std::vector<int> f{code % 3, code / 3, 1};
        if (!has_root(f, 3)) { expected = f; break; }
    }
    REQUIRE(F.modulus() == expected);
    REQUIRE(F.modulus() == std::vector<int>{1, 0, 1}); // x^2 + 1
}

TEST_CASE("field axioms hold exhaustively at small q") {
    for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {3, 2}}) {
        FieldCtx F = make_field(p, k);
        for (std::uint32_t a = 0; a < F.q(); ++a) {
            REQUIRE(F.add(static_cast<fq_t>(a), F.neg(static_cast<fq_t>(a))) == 0);
            if (a != 0)
                REQUIRE(F.mul(static_cast<fq_t>(a), F.inv(static_cast<fq_t>(a))) == 1);
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                REQUIRE(F.add(static_cast<fq_t>(a), static_cast<fq_t>(b)) ==
                        F.add(static_cast<fq_t>(b), static_cast<fq_t>(a)));
                REQUIRE(F.mul(static_cast<fq_t>(a), static_cast<fq_t>(b)) ==
                        F.mul(static_cast<fq_t>(b), static_cast<fq_t>(a)));
                for (std::uint32_t c = 0; c < F.q(); ++c) {
                    fq_t lhs = F.mul(static_cast<fq_t>(a),
                                     F.add(static_cast<fq_t>(b), static_cast<fq_t>(c)));
                    fq_t rhs = F.add(F.mul(static_cast<fq_t>(a), static_cast<fq_t>(b)),
                                     F.mul(static_cast<fq_t>(a), static_cast<fq_t>(c)));
                    REQUIRE(lhs == rhs);
                }
            }
        }
    }
}

TEST_CASE("exp and log tables invert each other") {
    FieldCtx F = make_field(3, 2);
    for (std::uint32_t a = 1; a < F.q(); ++a)
        REQUIRE(F.exp_table()[F.log_table()[a]] == a);
}

TEST_CASE("trace is the identity on a prime field and additive in general") {
    FieldCtx F3 = make_field(3, 1);
    REQUIRE(F3.trace(2) == 2);
    REQUIRE(F3.trace(0) == 0);

    FieldCtx F9 = make_field(3, 2);
    // prime subfield elements a have trace a + a^3 = 2a
    for (int a = 0; a < 3; ++a)
        REQUIRE(F9.trace(F9.from_int(a)) == (2 * a) % 3);
    for (std::uint32_t a = 0; a < 9; ++a)
        for (std::uint32_t b = 0; b < 9; ++b) {
            int lhs = F9.trace(F9.add(static_cast<fq_t>(a), static_cast<fq_t>(b)));
            int rhs = (F9.trace(static_cast<fq_t>(a)) + F9.trace(static_cast<fq_t>(b))) % 3;
            REQUIRE(lhs == rhs);
        }
    // surjective onto F_p
    std::vector<bool> seen(3, false);
    for (std::uint32_t a = 0; a < 9; ++a) seen[static_cast<size_t>(F9.trace(static_cast<fq_t>(a)))] = true;
    REQUIRE((seen[0] && seen[1] && seen[2]));
}

TEST_CASE("theta is multiplicative under addition and sums to zero") {
    for (auto [p, k] : {std::pair{3, 1}, {5, 1}, {3, 2}}) {
        FieldCtx F = make_field(p, k);
        REQUIRE(theta(F, 0) == CycNum(p, 1));
        for (std::uint32_t a = 0; a < F.q(); ++a)
            for (std::uint32_t b = 0; b < F.q(); ++b)
                REQUIRE(theta(F, F.add(static_cast<fq_t>(a), static_cast<fq_t>(b))) ==
                        theta(F, static_cast<fq_t>(a)) * theta(F, static_cast<fq_t>(b)));
        CycNum sum(p);
        for (std::uint32_t a = 0; a < F.q(); ++a) sum += theta(F, static_cast<fq_t>(a));
        REQUIRE(sum.is_zero());
        bool nontrivial = false;
        for (std::uint32_t a = 0; a < F.q(); ++a)
            if (!(theta(F, static_cast<fq_t>(a)) == CycNum(p, 1))) nontrivial = true;
        REQUIRE(nontrivial);
    }
}

TEST_CASE("theta at p=3 hits the primitive root") {
    FieldCtx F = make_field(3, 1);
    REQUIRE(theta(F, 1) == CycNum::root(3, 1));
}

TEST_CASE("conjugation matches negation through theta") {
    FieldCtx F = make_field(5, 1);
    for (std::uint32_t a = 0; a < 5; ++a)
        REQUIRE(theta(F, static_cast<fq_t>(a)).conj() == theta(F, F.neg(static_cast<fq_t>(a))));
}

TEST_CASE("cyclotomic reduction is canonical") {
    // 1 + zeta + ... + zeta^(p-1) = 0
    for (int p : {3, 5, 7}) {
        CycNum sum(p);
        for (int t = 0; t < p; ++t) sum += CycNum::root(p, t);
        REQUIRE(sum.is_zero());
        REQUIRE(CycNum::root(p, p) == CycNum(p, 1));
        REQUIRE(CycNum::root(p, 1) * CycNum::root(p, p - 1) == CycNum(p, 1));
    }
}

TEST_CASE("cyclotomic multiplication is conjugation compatible") {
    CycNum a = CycNum::root(5, 1) + CycNum::root(5, 3);
    CycNum b = CycNum(5, 2) - CycNum::root(5, 4);
    REQUIRE((a * b).conj() == a.conj() * b.conj());
}

TEST_CASE("exact division catches remainders") {
    CycNum a = CycNum(3, 6) + CycNum::root(3, 1).scaled(9);
    REQUIRE(a.divided_exact(3) == CycNum(3, 2) + CycNum::root(3, 1).scaled(3));
    REQUIRE_THROWS_AS(a.divided_exact(4), std::domain_error);
}

TEST_CASE("rational cyclotomic comparison cross-multiplies") {
    CycRat a(CycNum(3, 2), 6);
    CycRat b(CycNum(3, 1), 3);
    REQUIRE(a == b);
    CycRat c(CycNum(3, 1), 2);
    REQUIRE(a != c);
}

TEST_CASE("overflow is a hard error") {
    CycNum big(3, INT64_MAX);
    REQUIRE_THROWS_AS(big + CycNum(3, 1), std::overflow_error);
    REQUIRE_THROWS_AS(big * CycNum(3, 3), std::overflow_error);
}

TEST_CASE("larger fields construct within the bound") {
    FieldCtx big = make_field(251, 1);
    REQUIRE(big.q() == 251);
    REQUIRE(big.mul(big.inv(17), 17) == 1);
    REQUIRE(big.add(250, 1) == 0);
    REQUIRE(big.trace(93) == 93);

    FieldCtx tower = make_field(3, 8); // q = 6561, past the addition-table cutoff
    REQUIRE(tower.q() == 6561);
    for (std::uint32_t a = 1; a < tower.q(); a += 97)
        REQUIRE(tower.mul(static_cast<fq_t>(a), tower.inv(static_cast<fq_t>(a))) == 1);
    // trace is additive and lands in F_3
    for (std::uint32_t a = 0; a < 300; a += 7)
        for (std::uint32_t b = 0; b < 300; b += 11) {
            int lhs = tower.trace(tower.add(static_cast<fq_t>(a), static_cast<fq_t>(b)));
            REQUIRE(lhs == (tower.trace(static_cast<fq_t>(a)) +
                            tower.trace(static_cast<fq_t>(b))) % 3);
        }
    REQUIRE_THROWS_AS(make_field(65537, 1), std::invalid_argument); // over the bound
}

TEST_CASE("theta scale changes the character but keeps it nontrivial") {
    FieldCtx F(3, 1, FieldCtx::kDefaultBound, 2);
    REQUIRE(F.theta_exp(1) == 2);
    REQUIRE(F.theta_exp(2) == 1);
    REQUIRE_THROWS_AS(FieldCtx(3, 1, FieldCtx::kDefaultBound, 3), std::invalid_argument);
}
