// Serial vs OpenMP timings for the automaton kernels. Each kernel runs on the
// same input in both modes; the outputs are compared before timings print.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>

#include "buchi/automaton.hpp"
#include "buchi/base_automata.hpp"
#include "buchi/compiler.hpp"
#include "buchi/decision.hpp"
#include "buchi/kernels.hpp"

using namespace buchi;

namespace {

template <class F>
double best_ms(F&& f, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

// Random complete DFA; large enough that a refinement round is measurable.
Automaton random_dfa(unsigned p, unsigned tracks, std::size_t states, std::mt19937_64& rng) {
    Alphabet sigma(p, tracks);
    std::uniform_int_distribution<State> pick(0, static_cast<State>(states - 1));
    std::vector<State> table(states * sigma.size());
    for (auto& t : table) t = pick(rng);
    std::vector<bool> acc(states);
    for (std::size_t q = 0; q < states; ++q) acc[q] = rng() & 1;
    return Automaton::dfa(p, tracks, 0, std::move(acc), std::move(table));
}

void row(const std::string& name, double serial, double parallel, bool same) {
    std::cout << std::left << std::setw(28) << name << std::right << std::fixed << std::setprecision(2) << std::setw(12)
              << serial << std::setw(12) << parallel << std::setw(10) << (parallel > 0 ? serial / parallel : 0.0)
              << (same ? "" : "  OUTPUT MISMATCH") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    std::mt19937_64 rng(20240601);
    std::cout << "threads: " << kernels::max_threads() << '\n';
    std::cout << std::left << std::setw(28) << "kernel" << std::right << std::setw(12) << "serial ms" << std::setw(12)
              << "omp ms" << std::setw(10) << "speedup" << '\n';
    bool all_same = true;

    {
        Automaton m = random_dfa(2, 3, 200000, rng);
        std::vector<std::uint32_t> classes(m.state_count());
        for (std::size_t q = 0; q < classes.size(); ++q) classes[q] = m.is_accepting(static_cast<State>(q));
        std::vector<std::uint32_t> a, b;
        double s = best_ms([&] { a = kernels::refine_partition(m, classes, Execution::serial); }, reps);
        double p = best_ms([&] { b = kernels::refine_partition(m, classes, Execution::parallel); }, reps);
        row("refine_partition 200k x 8", s, p, a == b);
        all_same &= a == b;
    }
    {
        Automaton m = random_dfa(2, 3, 20000, rng);
        Automaton a = m, b = m;
        double s = best_ms([&] { a = minimize(m, Execution::serial); }, reps);
        double p = best_ms([&] { b = minimize(m, Execution::parallel); }, reps);
        row("minimize 20k x 8", s, p, identical(a, b));
        all_same &= identical(a, b);
    }
    {
        // Projection of a wide product gives a nondeterministic input with a large alphabet.
        auto phi = parse("E y. x + y = z & V(y) = w & S(w) = u");
        auto flat = flatten(phi);
        auto raw = compile(flat, CompileOptions{10, false, Execution::serial}).automaton;
        Automaton nfa = project(raw, 0);
        Automaton a = nfa, b = nfa;
        double s = best_ms([&] { a = determinize(nfa, Execution::serial); }, reps);
        double p = best_ms([&] { b = determinize(nfa, Execution::parallel); }, reps);
        row("determinize 10^3 letters", s, p, identical(a, b));
        all_same &= identical(a, b);
    }
    {
        auto compiled = compile_formula(parse("E y. x < y & y < x + x & V(y) = y"), CompileOptions{2, false, Execution::serial});
        std::vector<char> a, b;
        double s = best_ms([&] { a = kernels::accepts_range(compiled.automaton, 2000000, Execution::serial); }, reps);
        double p = best_ms([&] { b = kernels::accepts_range(compiled.automaton, 2000000, Execution::parallel); }, reps);
        row("accepts_range 0..2e6", s, p, a == b);
        all_same &= a == b;
    }
    {
        auto phi = parse("E y. x < y & y < x + x & V(y) = y");
        std::vector<char> a, b;
        double s = best_ms([&] { a = bounded_eval_range(*phi, 2000, 4100, 2, Execution::serial); }, reps);
        double p = best_ms([&] { b = bounded_eval_range(*phi, 2000, 4100, 2, Execution::parallel); }, reps);
        row("bounded_eval_range 0..2000", s, p, a == b);
        all_same &= a == b;
    }
    return all_same ? 0 : 1;
}
