#include <catch2/catch_amalgamated.hpp>
#include <unordered_set>

#include "uorbits/supercharacters.hpp"

using namespace uorbits;

TEST_CASE("hat map on verges") {
    SECTION("type D mirror pair") {
        Context d3 = make_context(LieType::D, 3, 3);
        HatVerge hv = hat_verge(d3, label_unit(d3, 1, 3, 2));
        Mat want(6);
        want.set(1, 3, 2);
        want.set(4, 6, d3.fq.neg(2));
        REQUIRE(hv.mat == want);
        REQUIRE(hv.is_verge_matrix);
    }
    SECTION("type C anti-diagonal passthrough") {
        Context c2 = make_context(LieType::C, 2, 3);
        HatVerge hv = hat_verge(c2, label_unit(c2, 1, 4, 2));
        Mat want(4);
        want.set(1, 4, 2);
        REQUIRE(hv.mat == want);
        REQUIRE(hv.is_verge_matrix);
    }
    SECTION("type C past the center keeps the plus sign") {
        Context c3 = make_context(LieType::C, 3, 3);
        HatVerge hv = hat_verge(c3, label_unit(c3, 1, 4, 1));
        Mat want(6);
        want.set(1, 4, 1);
        want.set(3, 6, 1);
        REQUIRE(hv.mat == want);
    }
    SECTION("overlapping limbs produce a non verge matrix") {
        Context b2 = make_context(LieType::B, 2, 3);
        CharLabel A = label_unit(b2, 1, 4, 1);
        label_set(b2, A, 2, 3, 1); // not main separated
        HatVerge hv = hat_verge(b2, A);
        REQUIRE_FALSE(hv.is_verge_matrix);
        REQUIRE_FALSE(classify(b2, A).main_separated);
    }
    SECTION("non verges are rejected") {
        Context b2 = make_context(LieType::B, 2, 3);
        CharLabel A = label_unit(b2, 1, 4, 1);
        label_set(b2, A, 1, 2, 1); // minor value: core but not a verge
        REQUIRE_THROWS_AS(hat_verge(b2, A), std::invalid_argument);
    }
}

TEST_CASE("hat verdict equals separation for every staircase verge at rank <= 3") {
    for (auto [t, n] : {std::pair{LieType::B, 2}, {LieType::B, 3}, {LieType::C, 2},
                        {LieType::C, 3}, {LieType::D, 2}, {LieType::D, 3}}) {
        Context ctx = make_context(t, n, 3);
        for (std::uint64_t v = 0; v < ctx.group_order(); ++v) {
            CharLabel A = label_of_index(ctx, v);
            Classification cls = classify(ctx, A);
            if (!cls.staircase || !cls.is_verge) continue;
            REQUIRE(hat_verge(ctx, A).is_verge_matrix == cls.main_separated);
        }
    }
}

TEST_CASE("superclasses") {
    Context ctx = make_context(LieType::B, 2, 3);
    GroupCache gc = build_group_cache(ctx);

    SECTION("zero verge gives the identity class") {
        std::vector<std::uint32_t> cls = superclass(ctx, gc, zero_label(ctx));
        REQUIRE(cls.size() == 1);
        REQUIRE(gc.elems[cls[0]] == Mat::identity(5));
    }
    SECTION("superclasses of the separated verges partition the group") {
        std::vector<int> owner(gc.size, -1);
        int families = 0;
        for (std::uint64_t v = 0; v < ctx.group_order(); ++v) {
            CharLabel A = label_of_index(ctx, v);
            Classification cls = classify(ctx, A);
            if (!cls.staircase || !cls.is_verge || !cls.main_separated) continue;
            for (auto u : superclass(ctx, gc, A)) {
                REQUIRE(owner[u] == -1);
                owner[u] = families;
            }
            ++families;
        }
        for (std::uint64_t u = 0; u < gc.size; ++u) REQUIRE(owner[u] >= 0);
    }
    SECTION("non separated verges are rejected") {
        CharLabel A = label_unit(ctx, 1, 4, 1);
        label_set(ctx, A, 2, 3, 1);
        REQUIRE_THROWS_AS(superclass(ctx, gc, A), std::invalid_argument);
    }
    SECTION("sampled two-sided products land in the computed class") {
        CharLabel A = label_unit(ctx, 1, 4, 2);
        std::vector<std::uint32_t> cls = superclass(ctx, gc, A);
        std::vector<char> member(gc.size, 0);
        for (auto u : cls) member[u] = 1;
        Mat hat = hat_verge(ctx, A).mat;
        // random a, b in the ambient unitriangular group
        std::uint64_t state = 555;
        auto nx = [&] {
            state ^= state << 13; state ^= state >> 7; state ^= state << 17;
            return state;
        };
        int in_U = 0;
        for (int it = 0; it < 5000; ++it) {
            Mat a = Mat::identity(5), b = Mat::identity(5);
            for (int i = 1; i <= 5; ++i)
                for (int j = i + 1; j <= 5; ++j) {
                    a.set(i, j, static_cast<fq_t>(nx() % 3));
                    b.set(i, j, static_cast<fq_t>(nx() % 3));
                }
            Mat u = mat_mul(ctx.fq, a, mat_mul(ctx.fq, hat, b));
            for (int i = 1; i <= 5; ++i) u.set(i, i, ctx.fq.add(u.at(i, i), 1));
            if (!is_member(ctx, u)) continue;
            ++in_U;
            REQUIRE(member[gc.index_by_pi(pi_key(ctx, u))] == 1);
        }
        REQUIRE(in_U > 0);
    }
}

TEST_CASE("verge families") {
    Context ctx = make_context(LieType::B, 2, 3);
    GroupCache gc = build_group_cache(ctx);
    ActionTable at = build_action_table(ctx, gc);

    SECTION("zero verge carries the single trivial orbit") {
        VergeFamily fam = verge_family(ctx, zero_label(ctx), &gc, &at);
        REQUIRE(fam.cores.size() == 1);
        REQUIRE(fam.orbits.size() == 1);
        REQUIRE(fam.orbits[0].size == 1);
        REQUIRE(fam.expected_size == 1);
    }
    SECTION("a right main condition collects its minor-value cores") {
        VergeFamily fam = verge_family(ctx, label_unit(ctx, 1, 4, 1), &gc, &at);
        REQUIRE(fam.cores.size() == 3); // minor entry (1,2) runs over F_3
        std::uint64_t total = 0;
        for (const auto& O : fam.orbits) total += O.size;
        REQUIRE(total == fam.expected_size);
        REQUIRE(fam.expected_size == 9); // two positions left of the main condition
        REQUIRE(fam.main_separated);
        // family character degree at 1 equals the family size
        REQUIRE(!fam.iso_classes.empty());
    }
    SECTION("the family tiles the ambient orbit of its verge") {
        // the orbit of the verge under the full unitriangular group equals the
        // union of the right orbits of the family's cores, as sets of labels
        for (const char* vs : {"1,4=1", "1,3=2", "1,2=1;2,3=2"}) {
            CharLabel verge = label_from_string(ctx, vs);
            VergeFamily fam = verge_family(ctx, verge);

            std::unordered_set<std::uint64_t> ambient;
            std::vector<std::uint64_t> frontier{v_index(ctx, verge)};
            ambient.insert(frontier[0]);
            while (!frontier.empty()) {
                std::vector<std::uint64_t> next;
                for (auto key : frontier) {
                    CharLabel cur = label_of_index(ctx, key);
                    for (int i = 1; i <= ctx.N(); ++i)
                        for (int j = i + 1; j <= ctx.N(); ++j)
                            for (std::uint32_t a = 1; a < ctx.q(); ++a) {
                                CharLabel nx = restricted_column_op(ctx, cur, i, j,
                                                                    static_cast<fq_t>(a));
                                if (ambient.insert(v_index(ctx, nx)).second)
                                    next.push_back(v_index(ctx, nx));
                            }
                }
                frontier = std::move(next);
            }
            REQUIRE(ambient.size() == fam.expected_size);

            std::unordered_set<std::uint64_t> family_union;
            for (const auto& O : fam.orbits)
                for (const auto& m : O.members) family_union.insert(v_index(ctx, m));
            REQUIRE(family_union == ambient);
        }
    }

    SECTION("every staircase core lies in exactly one family") {
        std::uint64_t covered = 0, staircase_cores = 0;
        for (std::uint64_t v = 0; v < ctx.group_order(); ++v) {
            Classification cls = classify(ctx, label_of_index(ctx, v));
            if (cls.staircase && cls.is_core) ++staircase_cores;
            if (cls.staircase && cls.is_verge)
                covered += verge_family(ctx, label_of_index(ctx, v)).cores.size();
        }
        REQUIRE(covered == staircase_cores);
    }
    SECTION("non verges are rejected") {
        CharLabel A = label_unit(ctx, 1, 4, 1);
        label_set(ctx, A, 1, 2, 1);
        REQUIRE_THROWS_AS(verge_family(ctx, A), std::invalid_argument);
    }
}
