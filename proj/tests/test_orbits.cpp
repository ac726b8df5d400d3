#include <catch2/catch_amalgamated.hpp>

#include "uorbits/orbits.hpp"

using namespace uorbits;

TEST_CASE("classification of labels") {
    Context ctx = make_context(LieType::B, 2, 3);

    SECTION("single right main condition") {
        for (std::uint32_t a = 1; a < 3; ++a) {
            Classification cls = classify(ctx, label_unit(ctx, 1, 4, static_cast<fq_t>(a)));
            REQUIRE(cls.mc == std::vector<Position>{{1, 4}});
            REQUIRE(cls.rmc == std::vector<Position>{{1, 4}});
            REQUIRE(cls.lmc.empty());
            REQUIRE(cls.minc == std::vector<Position>{{1, 2}});
            REQUIRE(cls.suppl.empty());
            REQUIRE(cls.places == std::vector<Position>{{1, 3}});
            REQUIRE(cls.is_verge);
            REQUIRE(cls.is_core);
            REQUIRE(cls.staircase);
            REQUIRE(cls.main_separated);
            REQUIRE(cls.verge == label_unit(ctx, 1, 4, static_cast<fq_t>(a)));
        }
    }
    SECTION("arm collision breaks separation") {
        CharLabel A = label_unit(ctx, 1, 4, 1);
        label_set(ctx, A, 2, 3, 2);
        Classification cls = classify(ctx, A);
        REQUIRE(cls.mc == std::vector<Position>{{1, 4}, {2, 3}});
        REQUIRE(cls.staircase);
        REQUIRE(cls.limb == std::vector<Position>{{2, 3}});
        REQUIRE_FALSE(cls.main_separated);
    }
    SECTION("zero label") {
        Classification cls = classify(ctx, zero_label(ctx));
        REQUIRE(cls.mc.empty());
        REQUIRE(cls.staircase);
        REQUIRE(cls.main_separated);
        REQUIRE(cls.is_core);
        REQUIRE(cls.is_verge);
        REQUIRE(cls.places.empty());
    }
    SECTION("non staircase label") {
        CharLabel A = label_unit(ctx, 1, 3, 1);
        label_set(ctx, A, 2, 3, 1);
        Classification cls = classify(ctx, A);
        REQUIRE_FALSE(cls.staircase);
        REQUIRE_FALSE(cls.main_separated);
    }
}

TEST_CASE("supplementary parse variants differ at rank 3") {
    Context d3 = make_context(LieType::D, 3, 3);
    CharLabel A = label_unit(d3, 1, 4, 1); // minor condition at (1,3)
    Classification conj = classify(d3, A, SupplParse::Conjunctive);
    Classification disj = classify(d3, A, SupplParse::Disjunctive);
    REQUIRE(conj.minc == std::vector<Position>{{1, 3}});
    REQUIRE(conj.suppl.empty());                                 // column 2 has no minor
    REQUIRE(disj.suppl == std::vector<Position>{{1, 2}});        // left of a minor suffices
    REQUIRE(conj.places == std::vector<Position>{{1, 2}});
    REQUIRE(disj.places.empty());
}

TEST_CASE("maximal offending position") {
    Context ctx = make_context(LieType::B, 2, 3);
    CharLabel sep = label_unit(ctx, 1, 4, 1);
    REQUIRE_FALSE(m_max(ctx, sep).has_value());

    CharLabel A = label_unit(ctx, 1, 4, 1);
    label_set(ctx, A, 2, 3, 1);
    auto M = m_max(ctx, A);
    REQUIRE(M.has_value());
    REQUIRE(*M == Position{2, 3});
}

TEST_CASE("orbit enumeration") {
    Context ctx = make_context(LieType::B, 2, 3);
    const FieldCtx& F = ctx.fq;

    SECTION("zero orbit is a singleton") {
        OrbitRecord O = enumerate_orbit(ctx, zero_label(ctx));
        REQUIRE(O.size == 1);
        REQUIRE(O.base == zero_label(ctx));
    }
    SECTION("orbit of a right main condition sweeps its places") {
        OrbitRecord O = enumerate_orbit(ctx, label_unit(ctx, 1, 4, 1));
        REQUIRE(O.size == 3);
        REQUIRE(O.n_cores == 1);
        REQUIRE(O.base == label_unit(ctx, 1, 4, 1));
        // members are e14 + a e13 - (a^2/2) e12
        fq_t half = F.inv(F.from_int(2));
        for (std::uint32_t a = 0; a < 3; ++a) {
            CharLabel want = label_unit(ctx, 1, 4, 1);
            label_set(ctx, want, 1, 3, static_cast<fq_t>(a));
            label_set(ctx, want, 1, 2,
                      F.neg(F.mul(half, F.mul(static_cast<fq_t>(a), static_cast<fq_t>(a)))));
            REQUIRE(std::find(O.members.begin(), O.members.end(), want) != O.members.end());
        }
    }
    SECTION("center column main condition is fixed") {
        OrbitRecord O = enumerate_orbit(ctx, label_unit(ctx, 2, 3, 1));
        REQUIRE(O.size == 1);
    }
}

TEST_CASE("orbit partition covers the character space") {
    for (auto [t, n] : {std::pair{LieType::B, 2}, {LieType::C, 2}}) {
        Context ctx = make_context(t, n, 3);
        auto orbits = orbit_partition(ctx);
        std::uint64_t total = 0;
        for (const auto& O : orbits) {
            total += O.size;
            REQUIRE(O.size == O.members.size());
            // size law for staircase orbits
            if (O.cls.staircase) {
                std::uint64_t want = 1;
                for (size_t w = 0; w < O.cls.places.size(); ++w) want *= 3;
                REQUIRE(O.size == want);
                REQUIRE(O.n_cores == 1);
            }
        }
        REQUIRE(total == ctx.group_order());
    }
}

TEST_CASE("zero row condition across a separated orbit") {
    Context ctx = make_context(LieType::B, 2, 3);
    OrbitRecord no_rmc = enumerate_orbit(ctx, label_unit(ctx, 2, 3, 1));
    REQUIRE(zero_row_check(ctx, no_rmc)); // vacuous, no mirrored main condition

    OrbitRecord arm = enumerate_orbit(ctx, label_unit(ctx, 1, 4, 1));
    REQUIRE(zero_row_check(ctx, arm)); // row 2 faces column 4 and stays zero

    CharLabel bad = label_unit(ctx, 1, 4, 1);
    label_set(ctx, bad, 2, 3, 1);
    OrbitRecord nonsep = enumerate_orbit(ctx, bad);
    REQUIRE_THROWS_AS(zero_row_check(ctx, nonsep), std::invalid_argument);

    // sweep: every main separated orbit at small rank passes
    for (auto [t, n] : {std::pair{LieType::B, 2}, {LieType::C, 2}, {LieType::D, 3},
                        {LieType::B, 3}, {LieType::C, 3}}) {
        Context c = make_context(t, n, 3);
        int separated = 0;
        for (const auto& O : orbit_partition(c)) {
            if (!O.cls.main_separated) continue;
            ++separated;
            REQUIRE(zero_row_check(c, O));
        }
        REQUIRE(separated > 0);
    }
}

TEST_CASE("straightening a non staircase label") {
    Context ctx = make_context(LieType::B, 2, 3);
    CharLabel A = label_unit(ctx, 1, 3, 1);
    label_set(ctx, A, 2, 3, 2); // two main conditions in column 3

    Straightening st = straighten(ctx, A);
    Classification cls = classify(ctx, st.label);
    REQUIRE(cls.staircase);
    REQUIRE(left_dot(ctx, st.g, A) == st.label);
    REQUIRE_FALSE(st.ops.empty());

    // already-staircase labels pass through untouched
    CharLabel B = label_unit(ctx, 1, 4, 2);
    Straightening id = straighten(ctx, B);
    REQUIRE(id.label == B);
    REQUIRE(id.g == Mat::identity(5));
}

TEST_CASE("separation step strictly shrinks the measure") {
    Context ctx = make_context(LieType::B, 2, 3);
    GroupCache gc = build_group_cache(ctx);
    SignMap sm = rp_sign_probe(ctx);

    CharLabel A = label_unit(ctx, 1, 4, 1);
    label_set(ctx, A, 2, 3, 2); // core, staircase, not separated; M(A) = (2,3)
    auto MA = m_max(ctx, A);
    REQUIRE(MA.has_value());

    SeparationStep st = separation_step(ctx, gc, sm, A);
    REQUIRE(st.core == A); // already a staircase core
    REQUIRE(st.straightening.ops.empty());
    REQUIRE_FALSE(st.combo.terms.empty());
    for (const auto& [key, coeff] : st.combo.terms) {
        Classification cc = classify(ctx, label_of_index(ctx, key));
        if (cc.main_separated) continue;
        auto MC = m_max(ctx, label_of_index(ctx, key));
        REQUIRE(MC.has_value());
        REQUIRE(precede(*MC, *MA));
        REQUIRE_FALSE(*MC == *MA);
    }

    // separated input is a precondition violation
    REQUIRE_THROWS_AS(separation_step(ctx, gc, sm, label_unit(ctx, 1, 4, 1)),
                      std::invalid_argument);

    // straightening a non-staircase label into a core that still needs
    // separating takes three rows
    Context b3 = make_context(LieType::B, 3, 3);
    GroupCache gc3 = build_group_cache(b3);
    SignMap sm3 = rp_sign_probe(b3);
    CharLabel ns = label_unit(b3, 1, 6, 1);
    label_set(b3, ns, 2, 4, 1);
    label_set(b3, ns, 3, 4, 1); // doubled column 4
    REQUIRE_FALSE(classify(b3, ns).staircase);
    SeparationStep st2 = separation_step(b3, gc3, sm3, ns);
    REQUIRE_FALSE(st2.straightening.ops.empty());
    Classification core_cls = classify(b3, st2.core);
    REQUIRE(core_cls.is_core);
    REQUIRE_FALSE(core_cls.main_separated);
    auto M3 = m_max(b3, st2.core);
    for (const auto& [key, coeff] : st2.combo.terms) {
        Classification cc = classify(b3, label_of_index(b3, key));
        if (cc.main_separated) continue;
        auto MC = m_max(b3, label_of_index(b3, key));
        REQUIRE(MC.has_value());
        REQUIRE(precede(*MC, *M3));
        REQUIRE_FALSE(*MC == *M3);
    }
}

TEST_CASE("budgets are enforced") {
    Budgets tight;
    tight.orbit = 2;
    Context ctx = make_context(LieType::B, 2, 3, 1, tight);
    REQUIRE_THROWS_AS(enumerate_orbit(ctx, label_unit(ctx, 1, 4, 1)), std::runtime_error);

    Budgets tiny;
    tiny.group = 10;
    Context small = make_context(LieType::B, 2, 3, 1, tiny);
    REQUIRE_THROWS_AS(enumerate_group(small, [](const Coords&, const Mat&) {}),
                      std::runtime_error);
    REQUIRE_THROWS_AS(build_group_cache(small), std::runtime_error);

    Budgets few;
    few.charspace = 10;
    Context cs = make_context(LieType::B, 2, 3, 1, few);
    REQUIRE_THROWS_AS(orbit_partition(cs), std::runtime_error);
}
