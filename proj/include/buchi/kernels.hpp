#pragma once

// Data-parallel inner loops of the automaton pipeline. Every kernel has a
// serial reference path and an OpenMP path; both produce identical results,
// independent of thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "buchi/automaton.hpp"

namespace buchi::kernels {

/// One Moore refinement round: states get the same new class iff they had the
/// same class and their successors' classes agree on every letter. Classes are
/// renumbered in order of first occurrence by state index.
std::vector<std::uint32_t> refine_partition(const Automaton& dfa, std::span<const std::uint32_t> classes,
                                            Execution exec);

/// Image of a state set under every letter: out[a] is the sorted successor set.
void subset_image(const Automaton& m, std::span<const State> subset, std::vector<std::vector<State>>& out,
                  Execution exec);

/// Membership of many words at once.
std::vector<char> accepts_batch(const Automaton& m, std::span<const DigitWord> words, Execution exec);

/// Membership of the canonical encodings of 0..limit (one-track automata).
std::vector<char> accepts_range(const Automaton& m, Natural limit, Execution exec);

/// Number of threads the parallel path will use.
int max_threads();

}  // namespace buchi::kernels
