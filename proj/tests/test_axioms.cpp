#include <doctest.h>

#include "buchi/axioms.hpp"
#include "buchi/decision.hpp"
#include "support.hpp"

using namespace buchi;

TEST_CASE("axiom list") {
    auto axioms = axiom_list(2);
    REQUIRE(axioms.size() == 9);
    std::vector<std::string> labels;
    for (const auto& a : axioms) {
        labels.push_back(a.label);
        CHECK(free_vars(*a.sentence).empty());
        CHECK_FALSE(a.numeral_bound);
    }
    CHECK(labels == std::vector<std::string>{"S0", "S1", "S2", "A0", "A1", "V0", "V1", "V2", "V3"});
    CHECK(render(*axioms[3].sentence) == "A x. x + 0 = x");
    CHECK(render(*axioms[6].sentence) == "V(1) = 1");
    CHECK(render(*axioms[0].sentence) == "A x. A y. S(x) = S(y) -> x = y");
    CHECK(axioms[0].sentence->left->left->kind == Formula::Kind::imp);

    auto v3 = axiom_list(3)[8].sentence;
    REQUIRE(v3->kind == Formula::Kind::forall);
    CHECK(v3->left->kind == Formula::Kind::and_);
    CHECK(complexity(*v3).n_connectives == 2);   // forall and one conjunction
    CHECK(complexity(*axiom_list(5)[8].sentence).n_connectives == 4);
    CHECK(*axiom_list(2)[8].sentence == *parse("A x. V(x + x + 1) = 1"));
}

TEST_CASE("all fixed axioms hold") {
    for (unsigned p : {2u, 5u}) {
        auto verdicts = check_base_axioms(p);
        REQUIRE(verdicts.size() == 9);
        for (const auto& v : verdicts) {
            CAPTURE(v.axiom.label);
            CHECK(v.holds);
        }
    }
    CHECK_FALSE(decide(parse("A x. V(x) = 1"), 2));
}

TEST_CASE("axiom table format") {
    auto table = render_axiom_table(check_base_axioms(3));
    CHECK(table.find("A0\tA x. x + 0 = x\ttrue\n") != std::string::npos);
    CHECK(std::count(table.begin(), table.end(), '\n') == 9);
}

TEST_CASE("bound instances") {
    auto phi = parse("x = 0");
    CHECK(render_bound_instance(phi, 2) == "E x. x = 0 -> E x <= [2^(2_3^3)]. x = 0");
    for (const auto& e : testing_support::corpus_with_free_vars(1)) {
        auto inst = bound_instance(e.formula, 2);
        REQUIRE(inst.numeral_bound);
        CHECK(cmp(*inst.numeral_bound, n_phi(2, complexity(*e.formula).length)) == 0);
        auto text = render_bound_instance(e.formula, 2);
        CHECK(text.find("[" + inst.numeral_bound->str() + "]") != std::string::npos);
    }
    CHECK_THROWS(render_bound_instance(parse("x = y"), 2));
    // The semantic surrogate: witness < p^states <= n_phi.
    auto r = verify_bound(parse("V(x) = x & !(x = 0) & !(x = 1)"), 2);
    CHECK(r.witness_le_p_pow_states);
    CHECK(r.states_le_tower);
    CHECK(r.p_pow_states <= r.n_phi);
}
