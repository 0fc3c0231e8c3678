#include <doctest.h>

#include <set>

#include "buchi/automaton.hpp"
#include "buchi/base_automata.hpp"
#include "buchi/compiler.hpp"
#include "support.hpp"

using namespace buchi;
using testing_support::padded;
using testing_support::random_word;
using testing_support::simulate;

namespace {

Automaton universal(unsigned p, unsigned k) {
    Alphabet sigma(p, k);
    return Automaton::dfa(p, k, 0, {true}, std::vector<State>(sigma.size(), 0));
}

DigitWord word(unsigned p, unsigned k, std::vector<std::vector<Digit>> letters) {
    return DigitWord::from_letters(p, k, letters);
}

// Corpus automata of every arity, compiled with minimization.
std::vector<Automaton> sample_automata(unsigned p) {
    std::vector<Automaton> out;
    for (const auto& e : testing_support::corpus()) {
        out.push_back(compile_formula(e.formula, CompileOptions{p, false, Execution::serial}).automaton);
        if (out.size() == 20) break;
    }
    for (const char* text : {"x + y = z", "V(x) = y", "S(x) = y | x = y", "x < y"})
        out.push_back(compile_formula(parse(text), CompileOptions{p, false, Execution::serial}).automaton);
    return out;
}

}  // namespace

TEST_CASE("alphabet indexing") {
    Alphabet sigma(3, 2);
    CHECK(sigma.size() == 9);
    std::vector<Digit> d{2, 1};
    Letter a = sigma.encode(d);
    CHECK(a == 2 + 1 * 3);
    CHECK(sigma.decode(a) == d);
    CHECK(sigma.encode(std::vector<Digit>{0, 0}) == 0);
    CHECK(Alphabet(2, 0).size() == 1);
    CHECK_THROWS(Alphabet(10, 8));
}

TEST_CASE("construction is validated") {
    CHECK_THROWS(Automaton::dfa(2, 1, 0, {true}, {0}));
    CHECK_THROWS(Automaton::dfa(2, 1, 1, {true}, {0, 0}));
    CHECK_THROWS(Automaton::dfa(2, 1, 0, {true}, {0, 1}));
    CHECK_THROWS(Automaton::nfa(2, 1, {2}, {true, false}, std::vector<std::vector<State>>(4)));
}

TEST_CASE("complement") {
    CHECK(is_empty(complement(universal(2, 1))));
    auto eq = eq_automaton(2);
    auto neq = complement(eq);
    CHECK(accepts(neq, word(2, 2, {{1, 0}})));
    CHECK_FALSE(accepts(neq, word(2, 2, {{1, 1}, {0, 0}})));
    CHECK_THROWS(complement(project(add_automaton(2), 2)));
}

TEST_CASE("intersection") {
    auto eq = eq_automaton(3);
    CHECK(is_empty(intersect(eq, complement(eq))));
    auto both = intersect(eq, eq);
    CHECK(both.state_count() <= 4);
    auto all = intersect(eq, universal(3, 2));
    for (int i = 0; i < 500; ++i) {
        auto w = random_word(3, 2, 8);
        CHECK(accepts(both, w) == accepts(eq, w));
        CHECK(accepts(all, w) == accepts(eq, w));
    }
    CHECK_THROWS(intersect(eq, add_automaton(3)));
    CHECK_THROWS(intersect(eq, eq_automaton(2)));
}

TEST_CASE("determinization") {
    auto add = add_automaton(2);
    auto d = determinize(add);
    CHECK(d.deterministic());
    // Exists z. x + y = z holds for every pair.
    auto all_pairs = determinize(zero_saturate(project(add, 2)));
    for (int i = 0; i < 500; ++i) {
        auto w = random_word(2, 3, 8);
        CHECK(accepts(d, w) == accepts(add, w));
        CHECK(accepts(all_pairs, random_word(2, 2, 8)));
    }
    // Two states, both reachable on letter 0: at most four subsets.
    std::vector<std::vector<State>> edges = {{0, 1}, {1}, {0}, {0, 1}};
    auto nfa = Automaton::nfa(2, 1, {0}, {false, true}, edges);
    auto dn = determinize(nfa);
    CHECK(dn.state_count() <= 4);
    for (int i = 0; i < 200; ++i) {
        auto w = random_word(2, 1, 8);
        CHECK(accepts(dn, w) == simulate(nfa, w));
    }
}

TEST_CASE("cylindrification") {
    auto eq = eq_automaton(2);
    std::vector<unsigned> map{0, 1};
    auto wide = cylindrify(eq, map, 3);
    CHECK(wide.state_count() == eq.state_count());
    CHECK(accepts(wide, word(2, 3, {{1, 1, 0}})));
    CHECK(accepts(wide, word(2, 3, {{1, 1, 1}})));
    CHECK_FALSE(accepts(wide, word(2, 3, {{1, 0, 1}})));
    std::vector<unsigned> swapped{2, 0};
    auto shuffled = cylindrify(eq_automaton(5), swapped, 3);
    for (int i = 0; i < 500; ++i) {
        std::uniform_int_distribution<Natural> pick(0, 300);
        Natural a = pick(testing_support::rng()), b = pick(testing_support::rng()), c = pick(testing_support::rng());
        CHECK(accepts(shuffled, zip_pad({a, b, c}, 5)) == (a == c));
        CHECK(accepts(shuffled, zip_pad({a, b, a}, 5)));
    }
    std::vector<unsigned> bad{1, 1};
    CHECK_THROWS(cylindrify(eq, bad, 3));
    std::vector<unsigned> out_of_range{0, 3};
    CHECK_THROWS(cylindrify(eq, out_of_range, 3));
}

TEST_CASE("projection and zero saturation") {
    auto one = determinize(zero_saturate(project(eq_automaton(2), 1)));
    for (int i = 0; i < 100; ++i) CHECK(accepts(one, random_word(2, 1, 8)));

    for (unsigned p : {2u, 3u, 5u}) {
        // The range of V_p: 0 and the powers of p.
        auto range = determinize(zero_saturate(project(v_automaton(p), 0)));
        for (Natural n = 0; n <= 1000; ++n) {
            bool power = n == 1 || (n > 0 && v_p(n, p) == n);
            if (accepts(range, digits(n, p)) != (n == 0 || power)) FAIL("range of V at " << n << " base " << p);
        }
    }

    auto unary = project(determinize(zero_saturate(project(eq_automaton(2), 1))), 0);
    CHECK(unary.tracks() == 0);
    CHECK(unary.letter_count() == 1);

    // Exists y. x + x = y: the witness for x = 1 needs one more digit than x.
    auto doubled = cylindrify(add_automaton(2), std::vector<unsigned>{0, 1, 2}, 3);
    auto copy_x = cylindrify(eq_automaton(2), std::vector<unsigned>{0, 1}, 3);
    auto body = intersect(doubled, copy_x);   // a + b = y with a = b
    auto proj_ab = project(body, 1);          // erase the copy
    auto raw = determinize(project(proj_ab, 1));
    auto saturated = determinize(zero_saturate(project(proj_ab, 1)));
    CHECK_FALSE(accepts(raw, digits(1, 2)));
    CHECK(accepts(saturated, digits(1, 2)));

    auto twice = zero_saturate(saturated);
    CHECK(twice.accepting() == saturated.accepting());
    auto eq = eq_automaton(3);
    CHECK(zero_saturate(eq).accepting() == eq.accepting());
}

TEST_CASE("projection matches the existential definition on short words") {
    auto add = add_automaton(2);
    auto proj = project(add, 1);
    for (int i = 0; i < 500; ++i) {
        auto w = random_word(2, 2, 5);
        // Brute force over all fillings of the erased track.
        bool expected = false;
        const std::size_t n = w.length();
        for (std::size_t mask = 0; mask < (std::size_t{1} << n) && !expected; ++mask) {
            DigitWord full(2, 3);
            for (std::size_t j = 0; j < n; ++j)
                full.push_letter(std::vector<Digit>{w.digit(j, 0), static_cast<Digit>((mask >> j) & 1), w.digit(j, 1)});
            expected = accepts(add, full);
        }
        CHECK(simulate(proj, w) == expected);
        CHECK(accepts(proj, w) == expected);
    }
}

TEST_CASE("minimization") {
    CHECK(minimize(eq_automaton(2)).state_count() == 2);
    for (unsigned p : {2u, 3u}) {
        for (const auto& m : sample_automata(p)) {
            auto raw = determinize(m);
            auto once = minimize(raw);
            auto again = minimize(once);
            CHECK(identical(once, again));
            CHECK(once.state_count() <= raw.state_count());
            for (int i = 0; i < 100; ++i) {
                auto w = random_word(p, m.tracks(), 8);
                CHECK(accepts(once, w) == accepts(m, w));
            }
        }
    }
    // Minimal automata of equal languages coincide exactly.
    auto a = minimize(intersect(eq_automaton(2), eq_automaton(2)));
    CHECK(identical(a, minimize(eq_automaton(2))));
}

TEST_CASE("shortest accepted word and emptiness") {
    auto eq = eq_automaton(2);
    auto w = shortest_accepted(eq);
    REQUIRE(w);
    CHECK(w->empty());
    CHECK_FALSE(shortest_accepted(complement(universal(2, 1))));
    for (unsigned p : {2u, 3u, 5u}) {
        for (const auto& m : sample_automata(p)) {
            CHECK(is_empty(intersect(m, complement(m))));
            auto s = shortest_accepted(m);
            CHECK(s.has_value() == !is_empty(m));
            if (s) {
                CHECK(s->length() <= m.state_count());
                CHECK(accepts(m, *s));
            }
        }
    }
    // Least value wins among words of equal length: for x in {2, 5, 6} with
    // p = 2 the answer is 2, encoded (0)(1).
    auto m = compile_formula(parse("x = 2 | x = 5 | x = 6"), CompileOptions{2, false, Execution::serial}).automaton;
    auto least = shortest_accepted(m);
    REQUIRE(least);
    CHECK(value(*least).front() == 2);
}

TEST_CASE("enumeration") {
    auto m = compile_formula(parse("V(x) = x"), CompileOptions{2, false, Execution::serial}).automaton;
    std::set<Natural> got;
    for (const auto& w : enumerate(m, 4)) got.insert(value(w).front());
    CHECK(got == std::set<Natural>{0, 1, 2, 4, 8});
}

TEST_CASE("language operations agree with direct simulation") {
    for (unsigned p : {2u, 3u}) {
        auto ms = sample_automata(p);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const auto& m = ms[i];
            const auto& other = ms[(i + 1) % ms.size()];
            auto c = complement(m);
            auto cc = complement(c);
            for (int j = 0; j < 500; ++j) {
                auto w = random_word(p, m.tracks(), 8);
                bool in = simulate(m, w);
                CHECK(accepts(c, w) == !in);
                CHECK(accepts(cc, w) == in);
                CHECK(accepts(m, padded(w, 2)) == in);
            }
            if (other.tracks() == m.tracks()) {
                auto both = intersect(m, other);
                for (int j = 0; j < 500; ++j) {
                    auto w = random_word(p, m.tracks(), 8);
                    CHECK(accepts(both, w) == (simulate(m, w) && simulate(other, w)));
                }
            }
        }
    }
}

TEST_CASE("serialization and dot") {
    auto m = compile_formula(parse("E y. x = y + y"), CompileOptions{3, false, Execution::serial}).automaton;
    auto text = serialize(m);
    CHECK(identical(deserialize(text), m));
    CHECK(serialize(deserialize(text)) == text);
    auto nfa = project(add_automaton(2), 2);
    CHECK(identical(deserialize(serialize(nfa)), nfa));
    CHECK_THROWS(deserialize("automaton\nbase 2\n"));
    auto dot = to_dot(eq_automaton(2));
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("q1") == std::string::npos);   // dead state elided
    CHECK(to_dot(eq_automaton(2), false).find("q1") != std::string::npos);
}
