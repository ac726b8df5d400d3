#include <catch2/catch_amalgamated.hpp>

#include "uorbits/geometry.hpp"

using namespace uorbits;

namespace {

std::vector<TypeParams> small_configs() {
    return {TypeParams::make(LieType::B, 2), TypeParams::make(LieType::B, 3),
            TypeParams::make(LieType::C, 2), TypeParams::make(LieType::C, 3),
            TypeParams::make(LieType::D, 2), TypeParams::make(LieType::D, 3)};
}

// all main-condition position sets with at most one position per row and
// pairwise distinct columns
std::vector<std::vector<Position>> staircase_main_sets(const Regions& reg) {
    std::vector<std::vector<Position>> out{{}};
    for (int i = 1; i <= reg.tp.N; ++i) {
        std::vector<Position> row;
        for (auto p : reg.pUP)
            if (p.i == i) row.push_back(p);
        if (row.empty()) continue;
        std::vector<std::vector<Position>> next;
        for (const auto& base : out) {
            next.push_back(base);
            for (auto p : row) {
                bool clash = false;
                for (auto q : base)
                    if (q.j == p.j) clash = true;
                if (clash) continue;
                auto ext = base;
                ext.push_back(p);
                next.push_back(ext);
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("mirror map") {
    REQUIRE(mirror(1, 5) == 5);
    REQUIRE(mirror(3, 5) == 3);
    REQUIRE(mirror(2, 4) == 3);
    REQUIRE_THROWS_AS(mirror(0, 4), std::out_of_range);
    for (int N : {4, 5, 6, 7}) {
        for (int i = 1; i <= N; ++i) REQUIRE(mirror(mirror(i, N), N) == i);
        // i < j <= k iff mirror(k) <= mirror(j) < mirror(i)
        for (int i = 1; i <= N; ++i)
            for (int j = 1; j <= N; ++j)
                for (int k = 1; k <= N; ++k)
                    REQUIRE((i < j && j <= k) ==
                            (mirror(k, N) <= mirror(j, N) && mirror(j, N) < mirror(i, N)));
    }
}

TEST_CASE("type parameters") {
    TypeParams b = TypeParams::make(LieType::B, 2);
    REQUIRE(b.N == 5);
    REQUIRE(b.n_tilde == 3);
    REQUIRE(b.eps == 1);
    REQUIRE(b.i_tilde(1) == 4);
    TypeParams c = TypeParams::make(LieType::C, 2);
    REQUIRE(c.N == 4);
    REQUIRE(c.n_tilde == 2);
    REQUIRE(c.eps == -1);
    REQUIRE(c.i_tilde(1) == 4);
    TypeParams d = TypeParams::make(LieType::D, 3);
    REQUIRE(d.N == 6);
    REQUIRE(d.n_tilde == 3);
    REQUIRE(d.i_tilde(1) == 5);
    REQUIRE(d.last_row() == 2);
}

TEST_CASE("region sets match the defining inequalities") {
    Regions b2 = region_sets(TypeParams::make(LieType::B, 2));
    REQUIRE(b2.pUP == std::vector<Position>{{1, 2}, {1, 3}, {1, 4}, {2, 3}});

    Regions c2 = region_sets(TypeParams::make(LieType::C, 2));
    REQUIRE(c2.pUP == std::vector<Position>{{1, 2}, {1, 3}, {1, 4}, {2, 3}});
    REQUIRE(c2.CC == std::vector<Position>{{1, 4}, {2, 3}});

    Regions d3 = region_sets(TypeParams::make(LieType::D, 3));
    REQUIRE(d3.pUP.size() == 6);

    for (const auto& tp : small_configs()) {
        Regions r = region_sets(tp);
        // UR is the disjoint union of UP, CC and RP
        for (int i = 1; i <= tp.N; ++i)
            for (int j = 1; j <= tp.N; ++j) {
                int cover = (tp.in_UP(i, j) ? 1 : 0) + (tp.in_CC(i, j) ? 1 : 0) +
                            (tp.in_RP(i, j) ? 1 : 0);
                REQUIRE(cover == (tp.in_UR(i, j) ? 1 : 0));
            }
        // pUP = tril + trir
        REQUIRE(r.tril.size() + r.trir.size() == r.pUP.size());
    }
}

TEST_CASE("closed subsets") {
    TypeParams tp = TypeParams::make(LieType::B, 2);
    Regions r = region_sets(tp);
    REQUIRE(is_closed(r.pUP, tp));
    REQUIRE(is_closed(r.pUP, tp, /*type_a_only=*/true));
    REQUIRE(is_closed(std::vector<Position>{}, tp));
    // the first condition: (1,2),(2,3) force (1,3)
    REQUIRE_FALSE(is_closed(std::vector<Position>{{1, 2}, {2, 3}}, tp));
    // the mirror condition: (1,3),(2,3) = (mirror 4, mirror 3) force (1,4),
    // so the set is closed only as a type A set
    REQUIRE_FALSE(is_closed(std::vector<Position>{{1, 2}, {2, 3}, {1, 3}}, tp));
    REQUIRE(is_closed(std::vector<Position>{{1, 2}, {2, 3}, {1, 3}}, tp, /*type_a_only=*/true));
    REQUIRE(is_closed(std::vector<Position>{{1, 2}, {1, 3}, {1, 4}}, tp));
}

TEST_CASE("limb of a main set") {
    TypeParams tp = TypeParams::make(LieType::B, 2);
    Regions reg = region_sets(tp);

    LimbSets ls = limb({{1, 4}}, reg);
    REQUIRE(ls.limb.sorted() == std::vector<Position>{{2, 3}});
    REQUIRE(ls.j_set.sorted() == std::vector<Position>{{1, 2}, {1, 3}, {1, 4}});

    LimbSets empty = limb({}, reg);
    REQUIRE(empty.limb.empty());
    REQUIRE(empty.j_set.size() == 4);

    LimbSets mid = limb({{2, 3}}, reg);
    REQUIRE(mid.limb.empty());
}

TEST_CASE("J(A) is closed for every staircase main set at small rank") {
    for (const auto& tp : small_configs()) {
        Regions reg = region_sets(tp);
        for (const auto& main : staircase_main_sets(reg))
            REQUIRE_NOTHROW(limb(main, reg, /*require_closed=*/true));
    }
}

TEST_CASE("dependency window R_rs") {
    TypeParams tp = TypeParams::make(LieType::B, 2);
    Regions reg = region_sets(tp);
    auto r34 = r_region(3, 4, reg);
    // contains the mirror position (mirror(4), mirror(3)) = (2,3)
    REQUIRE(std::find(r34.begin(), r34.end(), Position{2, 3}) != r34.end());
    REQUIRE_THROWS_AS(r_region(1, 2, reg), std::invalid_argument);

    for (const auto& tpc : small_configs()) {
        Regions r = region_sets(tpc);
        for (auto p : r.RP) {
            auto win = r_region(p.i, p.j, r);
            Position mirror_pos{tpc.mirror(p.j), tpc.mirror(p.i)};
            REQUIRE(std::find(win.begin(), win.end(), mirror_pos) != win.end());
        }
        // for a fixed row, the window grows with the column
        for (auto p : r.RP)
            for (auto q : r.RP) {
                if (p.i != q.i || p.j >= q.j) continue;
                auto small = r_region(p.i, p.j, r);
                auto big = r_region(q.i, q.j, r);
                for (auto w : small)
                    REQUIRE(std::find(big.begin(), big.end(), w) != big.end());
            }
    }
}

TEST_CASE("I sets from main conditions") {
    TypeParams tp = TypeParams::make(LieType::B, 2);

    ISets a = i_sets({{1, 4}, {2, 3}}, tp);
    REQUIRE(a.i_full.empty());
    REQUIRE(a.i_d.empty());
    REQUIRE(a.i_circ_d.empty());

    ISets b = i_sets({{1, 3}, {2, 4}}, tp);
    REQUIRE(b.i_circ_d.empty());
    REQUIRE(b.i_d.empty());
    REQUIRE(b.i_full == std::vector<Position>{{1, 2}});

    ISets c = i_sets({{1, 2}}, tp);
    REQUIRE(c.i_full.empty());

    // nesting and closedness over all staircase main sets at small rank
    for (const auto& tpc : small_configs()) {
        Regions reg = region_sets(tpc);
        for (const auto& main : staircase_main_sets(reg)) {
            ISets is = i_sets(main, tpc);
            PosSet full(tpc.N, is.i_full), d(tpc.N, is.i_d);
            for (auto p : is.i_circ_d) REQUIRE(d.contains(p));
            for (auto p : is.i_d) REQUIRE(full.contains(p));
            REQUIRE(is_closed(is.i_full, tpc));
            REQUIRE(is_closed(is.i_d, tpc));
            REQUIRE(is_closed(is.i_circ_d, tpc));
        }
    }
}

TEST_CASE("row-descending total order") {
    REQUIRE(precede({3, 4}, {1, 2}));
    REQUIRE(precede({2, 3}, {2, 5}));
    REQUIRE_FALSE(precede({1, 2}, {3, 4}));
    for (const auto& tp : small_configs()) {
        Regions reg = region_sets(tp);
        for (auto p : reg.pUP)
            for (auto q : reg.pUP) {
                REQUIRE((precede(p, q) || precede(q, p)));           // total
                if (precede(p, q) && precede(q, p)) REQUIRE(p == q); // antisymmetric
                for (auto w : reg.pUP)                               // transitive
                    if (precede(p, q) && precede(q, w)) REQUIRE(precede(p, w));
            }
    }
}
