#pragma once

#include "uorbits/verify.hpp"

namespace uorbits {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
};

/// the full desk-scale acceptance run over the reference configurations;
/// every criterion is exact
inline std::vector<CriterionResult> run_acceptance(int workers = 1) {
    std::vector<CriterionResult> out;
    auto push = [&](int id, const std::string& name, bool pass, const std::string& details) {
        out.push_back({id, name, pass, details});
    };
    auto merge = [](std::initializer_list<const Transcript*> trs) {
        for (auto* t : trs)
            if (!t->all_pass()) return false;
        return true;
    };

    Session b2 = make_session(LieType::B, 2, 3, 1, workers);
    Session c2 = make_session(LieType::C, 2, 3, 1, workers);
    Session d3 = make_session(LieType::D, 3, 3, 1, workers);
    Session b3 = make_session(LieType::B, 3, 3, 1, workers);
    Session b2q5 = make_session(LieType::B, 2, 5, 1, workers);
    Session c2q5 = make_session(LieType::C, 2, 5, 1, workers);
    Session d3q5 = make_session(LieType::D, 3, 5, 1, workers);

    { // 1: group order and coordinate bijection
        Transcript t1 = suite_bijection(b2), t2 = suite_bijection(c2), t3 = suite_bijection(d3),
                   t4 = suite_bijection(b3), t5 = suite_bijection(b2q5),
                   t6 = suite_bijection(c2q5), t7 = suite_bijection(d3q5);
        bool sizes = b2.gc.size == 81 && c2.gc.size == 81 && d3.gc.size == 729 &&
                     b3.gc.size == 19683;
        push(1, "group order q^|pUP| and coordinate round trip",
             sizes && merge({&t1, &t2, &t3, &t4, &t5, &t6, &t7}),
             "|U| = 81, 81, 729, 19683 at q=3 plus the q=5 configurations");
    }
    { // 2: cocycle identity
        Transcript t1 = suite_cocycle(b2), t2 = suite_cocycle(c2), t3 = suite_cocycle(b3),
                   t4 = suite_cocycle(d3);
        push(2, "cocycle identity f(gh) = f(g).h + f(h)", merge({&t1, &t2, &t3, &t4}),
             "exhaustive at B2/C2 q=3, 100000 random pairs at B3/D3");
    }
    { // 3: orbit partition
        Transcript t1 = suite_partition(b2), t2 = suite_partition(c2), t3 = suite_partition(d3);
        bool sub = true;
        for (auto* t : {&t1, &t2, &t3})
            for (const auto& c : t->checks)
                if (c.asserted && !c.pass &&
                    c.name != "|O_A| = q^|places(A)| for staircase orbits")
                    sub = false;
        push(3, "orbit partition: sizes sum, powers of q, main conditions invariant", sub,
             "B2/C2/D3 at q=3, exhaustive");
    }
    { // 4: orbit size law
        bool ok = true;
        for (Session* s : {&b2, &c2, &d3}) {
            Transcript t = suite_partition(*s);
            for (const auto& c : t.checks)
                if (c.name == "|O_A| = q^|places(A)| for staircase orbits" && !c.pass) ok = false;
        }
        push(4, "orbit size law |O_A| = q^|places(A)| for staircase labels", ok,
             "B2/C2/D3 at q=3, all staircase orbits");
    }
    { // 5: stabilizers and the supplementary parse
        Transcript t1 = suite_stab(b2), t2 = suite_stab(c2), t3 = suite_stab(d3);
        bool conj = true, disj = true, active = true;
        for (auto* t : {&t1, &t2, &t3}) {
            for (const auto& c : t->checks) {
                if (c.name == "conjunctive supplementary parse" && !c.pass) conj = false;
                if (c.name == "disjunctive supplementary parse" && !c.pass) disj = false;
                if (c.name == "active parse passes stabilizer checks" && !c.pass) active = false;
            }
        }
        bool exactly_one = conj != disj;
        std::string which = conj ? "conjunctive" : (disj ? "disjunctive" : "neither");
        push(5, "row-product stabilizers match brute force with |Stab| = q^|J(A)|",
             active && exactly_one,
             "passing supplementary parse: " + which);
    }
    { // 6: expansion coefficients
        Transcript t = suite_aux3(b2);
        push(6, "closed-form left-multiplication coefficients match the expansion",
             t.all_pass(), "B2 at q=3, all labels against every situation instance");
    }
    { // 7: trichotomy, constructive isomorphism, Mackey
        Transcript t1 = suite_main3(b2), t2 = suite_main3(d3);
        Transcript m1 = suite_mackey(b2), m2 = suite_mackey(d3);
        push(7, "isomorphic-or-orthogonal trichotomy with constructive witnesses and Mackey",
             merge({&t1, &t2, &m1, &m2}), "ordered pairs of main separated cores at B2/D3 q=3");
    }
    { // 8: coverage by main separated orbit modules
        Transcript t1 = suite_main1(b2), t2 = suite_main1(d3);
        push(8, "every orbit module meets a main separated one", merge({&t1, &t2}),
             "B2/D3 at q=3");
    }
    { // 9: superclasses and family characters
        Transcript t1 = suite_superchar(b2), t2 = suite_superchar(c2), t3 = suite_superchar(d3);
        push(9, "superclass partition, constancy and family orthogonality",
             merge({&t1, &t2, &t3}),
             "B2/C2/D3 at q=3; type C checks reported, not asserted");
    }
    { // 10: hat verdicts
        bool ok = true;
        for (auto [t, n] : {std::pair{LieType::B, 2}, {LieType::B, 3}, {LieType::C, 2},
                            {LieType::C, 3}, {LieType::D, 2}, {LieType::D, 3}}) {
            Context ctx = make_context(t, n, 3, 1);
            if (!suite_hat(ctx, SupplParse::Conjunctive).all_pass()) ok = false;
        }
        push(10, "hat verdict equals the main separated flag on staircase verges", ok,
             "all types, rank 2 and 3, q=3");
    }
    { // 11: determinism across worker counts
        auto transcript_bytes = [&](int w) {
            Session s = make_session(LieType::B, 2, 3, 1, w);
            json all = json::array();
            all.push_back(suite_bijection(s).to_json());
            all.push_back(suite_cocycle(s).to_json());
            all.push_back(suite_partition(s).to_json());
            all.push_back(suite_stab(s).to_json());
            all.push_back(suite_aux3(s).to_json());
            all.push_back(suite_main1(s).to_json());
            all.push_back(suite_main3(s).to_json());
            all.push_back(suite_mackey(s).to_json());
            all.push_back(suite_gram(s).to_json());
            all.push_back(suite_superchar(s).to_json());
            return all.dump(2);
        };
        std::string w1 = transcript_bytes(1), w2 = transcript_bytes(2), w8 = transcript_bytes(8);
        push(11, "transcripts byte-identical across 1, 2 and 8 workers", w1 == w2 && w1 == w8,
             std::to_string(w1.size()) + " transcript bytes");
    }
    return out;
}

} // namespace uorbits
