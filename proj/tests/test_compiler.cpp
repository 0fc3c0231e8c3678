#include <doctest.h>

#include <set>

#include "buchi/compiler.hpp"
#include "buchi/decision.hpp"
#include "support.hpp"

using namespace buchi;
using testing_support::padded;
using testing_support::random_word;

namespace {

CompiledFormula build(const char* text, unsigned p, bool audit = false) {
    return compile_formula(parse(text), CompileOptions{p, audit, Execution::serial});
}

std::set<Natural> members(const Automaton& m, Natural limit) {
    std::set<Natural> out;
    for (Natural n = 0; n <= limit; ++n)
        if (accepts(m, digits(n, m.base()))) out.insert(n);
    return out;
}

}  // namespace

TEST_CASE("examples") {
    auto zero_only = compile(flatten(parse("E y. (x + x = y & y = x)")), CompileOptions{2, false, Execution::serial});
    CHECK(zero_only.var_order == std::vector<std::string>{"x"});
    CHECK(members(zero_only.automaton, 200) == std::set<Natural>{0});

    CHECK(members(build("V(x) = x", 2).automaton, 8) == std::set<Natural>{0, 1, 2, 4, 8});

    for (bool audit : {false, true}) {
        auto inner = build("E y. x < y & y < x + x & V(y) = y", 2, audit).automaton;
        CHECK(accepts(inner, digits(3, 2)));
        CHECK_FALSE(accepts(inner, digits(4, 2)));
        CHECK(accepts(inner, digits(5, 2)));   // y = 8
        CHECK_FALSE(accepts(inner, digits(8, 2)));
    }
}

TEST_CASE("sentences") {
    auto truth = [](const char* text) {
        auto c = compile_sentence(parse(text), CompileOptions{2, false, Execution::serial});
        CHECK(c.automaton.tracks() == 0);
        CHECK(c.var_order.empty());
        return !is_empty(c.automaton);
    };
    CHECK(truth("A x. A y. x + y = y + x"));
    CHECK_FALSE(truth("E x. S(x) = 0"));
    CHECK(truth("E x. V(x) = x & !(x = 0) & !(x = 1)"));
    CHECK_THROWS_AS(compile_sentence(parse("x = 0"), CompileOptions{}), std::invalid_argument);
}

TEST_CASE("variable order is lexicographic") {
    auto c = build("b + a = c", 3);
    CHECK(c.var_order == std::vector<std::string>{"a", "b", "c"});
    CHECK(accepts(c.automaton, zip_pad({2, 5, 7}, 3)));
    CHECK_FALSE(accepts(c.automaton, zip_pad({2, 7, 5}, 3)));
}

TEST_CASE("vacuous quantifiers are the identity") {
    auto with = build("E y. x = 3", 2, true);
    auto without = build("x = 3", 2, true);
    CHECK(with.automaton.state_count() == without.automaton.state_count());
}

TEST_CASE("membership agrees with the bounded evaluator") {
    for (const auto& e : testing_support::corpus_with_free_vars(1)) {
        const std::string x = free_vars(*e.formula).front();
        for (unsigned p : {2u, 3u}) {
            auto m = compile_formula(e.formula, CompileOptions{p, false, Execution::serial}).automaton;
            std::size_t bad = 0;
            for (Natural n = 0; n <= 300; ++n) bad += accepts(m, digits(n, p)) != bounded_eval(*e.formula, {{x, n}}, e.bound, p);
            CAPTURE(e.text);
            CAPTURE(p);
            CHECK(bad == 0);
        }
    }
}

TEST_CASE("audit mode: counts stay under the tower bound on the corpus") {
    for (const auto& e : testing_support::corpus()) {
        for (unsigned p : e.bases) {
            auto c = compile_formula(e.formula, CompileOptions{p, true, Execution::serial});
            CAPTURE(e.text);
            CAPTURE(p);
            CHECK(violations(c.report).empty());
            CHECK(TowerInt(static_cast<std::uint64_t>(c.automaton.state_count())) <=
                  tower2(complexity(*e.formula).length, 3));
            CHECK(c.report.states == c.automaton.state_count());
        }
    }
}

TEST_CASE("audit mode flags a node over its bound") {
    // Two dead-state atoms joined by a disjunction: the complements have no
    // rejecting sink left to merge, so the product reaches 3 * 3 = 9 > 2_1^3.
    auto c = build("S(x) = z | S(y) = x", 5, true);
    CHECK(c.report.n_connectives == 1);
    CHECK(c.report.states == 9);
    CHECK_FALSE(c.report.ok);
    REQUIRE(violations(c.report).size() == 1);
    CHECK(violations(c.report).front() == &c.report);
    // Minimizing does not help: all 9 states are pairwise distinguishable by
    // words of length <= 2.
    auto m = build("S(x) = z | S(y) = x", 5).automaton;
    CHECK(m.state_count() == 9);
    std::set<std::vector<char>> signatures;
    for (State q = 0; q < m.state_count(); ++q) {
        std::vector<char> sig{static_cast<char>(m.is_accepting(q))};
        for (Letter a = 0; a < m.letter_count(); ++a) {
            State r = m.next(q, a);
            sig.push_back(m.is_accepting(r));
            for (Letter b = 0; b < m.letter_count(); ++b) sig.push_back(m.is_accepting(m.next(r, b)));
        }
        signatures.insert(std::move(sig));
    }
    CHECK(signatures.size() == 9);
}

TEST_CASE("report tree") {
    auto c = build("E y. x = y + y", 2, true);
    CHECK(node_count(c.report) >= 3);
    auto text = render_report(c.report);
    CHECK(text.find(" ok ") != std::string::npos);
    CHECK(text.find("VIOLATION") == std::string::npos);
    CHECK(text.find(c.report.fragment) != std::string::npos);
    CHECK(c.report.bound == tower2(c.report.n_connectives, 3));
}

TEST_CASE("compiled automata are padding-closed") {
    for (const auto& e : testing_support::corpus()) {
        for (bool audit : {false, true}) {
            auto m = compile_formula(e.formula, CompileOptions{3, audit, Execution::serial}).automaton;
            std::size_t bad = 0;
            for (int i = 0; i < 1000; ++i) {
                auto w = random_word(3, m.tracks(), 8);
                bad += accepts(m, w) != accepts(m, padded(w));
            }
            CAPTURE(e.text);
            CHECK(bad == 0);
        }
    }
}

TEST_CASE("universal and existential quantifiers are dual") {
    for (const char* body : {"x + y = y + x", "y < x -> V(y) = y", "V(y) = x | x = y", "S(y) = x"}) {
        auto forall = build((std::string("A y. ") + body).c_str(), 2).automaton;
        auto dual = build((std::string("!(E y. !(") + body + "))").c_str(), 2).automaton;
        for (int i = 0; i < 500; ++i) {
            auto w = random_word(2, forall.tracks(), 8);
            CHECK(accepts(forall, w) == accepts(dual, w));
        }
    }
}

TEST_CASE("deterministic output") {
    auto a = build("E y. x < y & y < x + x & V(y) = y", 10, false);
    auto b = compile_formula(parse("E y. x < y & y < x + x & V(y) = y"), CompileOptions{10, false, Execution::parallel});
    CHECK(identical(a.automaton, b.automaton));
    CHECK(render_report(a.report) == render_report(b.report));
}
