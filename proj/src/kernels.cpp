#include "buchi/kernels.hpp"

#include <algorithm>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace buchi::kernels {

namespace {

// Dense renumbering of 64-bit keys in order of first occurrence.
std::vector<std::uint32_t> number_keys(const std::vector<std::uint64_t>& keys) {
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    ids.reserve(keys.size());
    std::vector<std::uint32_t> out(keys.size());
    for (std::size_t q = 0; q < keys.size(); ++q) {
        auto [it, inserted] = ids.emplace(keys[q], static_cast<std::uint32_t>(ids.size()));
        out[q] = it->second;
    }
    return out;
}

void image_of_letter(const Automaton& m, std::span<const State> subset, Letter a, std::vector<State>& out) {
    out.clear();
    for (State q : subset) {
        auto succ = m.successors(q, a);
        out.insert(out.end(), succ.begin(), succ.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Refines letter by letter: after processing letter a, two states share a
// class iff they agreed on the old class and on successor classes for all
// letters up to a. Only O(states) memory is needed per step.
std::vector<std::uint32_t> refine_partition(const Automaton& dfa, std::span<const std::uint32_t> classes,
                                            Execution exec) {
    const std::size_t n = dfa.state_count();
    std::vector<std::uint32_t> current(classes.begin(), classes.end());
    std::vector<std::uint64_t> keys(n);
    const auto count = static_cast<std::int64_t>(n);
    for (std::size_t a = 0; a < dfa.letter_count(); ++a) {
        const auto letter = static_cast<Letter>(a);
        if (exec == Execution::serial) {
            for (std::size_t q = 0; q < n; ++q)
                keys[q] = (std::uint64_t{current[q]} << 32) | classes[dfa.next(static_cast<State>(q), letter)];
        } else {
#pragma omp parallel for schedule(static)
            for (std::int64_t q = 0; q < count; ++q)
                keys[q] = (std::uint64_t{current[q]} << 32) | classes[dfa.next(static_cast<State>(q), letter)];
        }
        current = number_keys(keys);
    }
    return current;
}

void subset_image(const Automaton& m, std::span<const State> subset, std::vector<std::vector<State>>& out,
                  Execution exec) {
    const std::size_t letters = m.letter_count();
    out.resize(letters);
    if (exec == Execution::serial || letters < 64) {
        for (std::size_t a = 0; a < letters; ++a) image_of_letter(m, subset, static_cast<Letter>(a), out[a]);
        return;
    }
    const auto count = static_cast<std::int64_t>(letters);
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < count; ++a) image_of_letter(m, subset, static_cast<Letter>(a), out[a]);
}

std::vector<char> accepts_batch(const Automaton& m, std::span<const DigitWord> words, Execution exec) {
    std::vector<char> out(words.size());
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < words.size(); ++i) out[i] = accepts(m, words[i]);
        return out;
    }
    const auto count = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < count; ++i) out[i] = accepts(m, words[i]);
    return out;
}

std::vector<char> accepts_range(const Automaton& m, Natural limit, Execution exec) {
    std::vector<char> out(limit + 1);
    const unsigned p = m.base();
    if (exec == Execution::serial) {
        for (Natural n = 0; n <= limit; ++n) out[n] = accepts(m, digits(n, p));
        return out;
    }
    const auto count = static_cast<std::int64_t>(limit) + 1;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t n = 0; n < count; ++n) out[n] = accepts(m, digits(static_cast<Natural>(n), p));
    return out;
}

}  // namespace buchi::kernels
