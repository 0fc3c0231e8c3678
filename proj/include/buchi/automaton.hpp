#pragma once

// Multi-track finite automata over the alphabet {0..p-1}^k.
//
// A letter is stored as its mixed-radix index: digit of track t has weight p^t,
// so letter 0 is the all-zero letter. Deterministic automata are always
// complete; nondeterministic ones arise only from projection.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "buchi/encoding.hpp"

namespace buchi {

using State = std::uint32_t;
using Letter = std::uint32_t;

enum class Execution { serial, parallel };

class Alphabet {
public:
    Alphabet(unsigned base, unsigned tracks);

    unsigned base() const { return base_; }
    unsigned tracks() const { return tracks_; }
    std::size_t size() const { return size_; }

    Digit digit(Letter a, unsigned track) const { return (a / weights_[track]) % base_; }
    Letter encode(std::span<const Digit> digits) const;
    std::vector<Digit> decode(Letter a) const;

    /// Letter at position `pos` of a word over this alphabet.
    Letter letter_of(const DigitWord& w, std::size_t pos) const;

private:
    unsigned base_;
    unsigned tracks_;
    std::size_t size_;
    std::vector<std::size_t> weights_;
};

/// Upper bound on |alphabet| accepted by the constructors.
inline constexpr std::size_t max_alphabet_size = std::size_t{1} << 24;

class Automaton {
public:
    /// Complete DFA; table[q * |alphabet| + a] is the successor of q on a.
    static Automaton dfa(unsigned base, unsigned tracks, State initial, std::vector<bool> accepting,
                         std::vector<State> table);

    /// NFA; edges[q * |alphabet| + a] lists the successors of q on a.
    static Automaton nfa(unsigned base, unsigned tracks, std::vector<State> initial, std::vector<bool> accepting,
                         const std::vector<std::vector<State>>& edges);

    const Alphabet& alphabet() const { return alphabet_; }
    unsigned base() const { return alphabet_.base(); }
    unsigned tracks() const { return alphabet_.tracks(); }
    std::size_t letter_count() const { return alphabet_.size(); }
    std::size_t state_count() const { return accepting_.size(); }
    bool deterministic() const { return deterministic_; }

    const std::vector<State>& initial_states() const { return initial_; }
    State initial() const;   // deterministic only
    bool is_accepting(State q) const { return accepting_[q]; }
    const std::vector<bool>& accepting() const { return accepting_; }

    std::span<const State> successors(State q, Letter a) const;
    State next(State q, Letter a) const { return targets_[static_cast<std::size_t>(q) * letter_count() + a]; }

private:
    Automaton(unsigned base, unsigned tracks) : alphabet_(base, tracks) {}

    Alphabet alphabet_;
    bool deterministic_ = true;
    std::vector<State> initial_;
    std::vector<bool> accepting_;
    std::vector<std::size_t> offsets_;   // NFA only: CSR offsets into targets_
    std::vector<State> targets_;
};

// Closure operations. Every operation returns a fresh automaton.

/// Same states, accepting set inverted. Throws on nondeterministic input.
Automaton complement(const Automaton& m);

/// Reachable product. Pairs with a rejecting sink on either side collapse into
/// one sink, so the result never exceeds |Q0| * |Q1| states.
Automaton intersect(const Automaton& m0, const Automaton& m1);

/// Reachable subset construction; the empty subset is the dead state.
Automaton determinize(const Automaton& m, Execution exec = Execution::parallel);

/// Track i of `m` becomes track track_map[i] of a `new_tracks`-track automaton;
/// unmapped tracks are ignored.
Automaton cylindrify(const Automaton& m, std::span<const unsigned> track_map, unsigned new_tracks);

/// Erases one track from every transition. The result is nondeterministic.
Automaton project(const Automaton& m, unsigned track);

/// Marks accepting every state that reaches acceptance reading all-zero letters.
Automaton zero_saturate(const Automaton& m);

/// Minimal complete DFA, states numbered in breadth-first order from the initial state.
Automaton minimize(const Automaton& m, Execution exec = Execution::parallel);

/// Keeps reachable states only, numbered in breadth-first order (letters ascending).
Automaton canonical(const Automaton& m);

/// Rejecting states all of whose transitions loop back to themselves.
std::vector<bool> rejecting_sinks(const Automaton& m);

// Queries.

bool is_empty(const Automaton& m);

bool accepts(const Automaton& m, const DigitWord& w);
bool accepts_letters(const Automaton& m, std::span<const Letter> word);

/// A shortest accepted word. Among words of that length the one that is least
/// when compared from the last letter backwards is returned; for one track and
/// a padding-closed language this encodes the least accepted number.
std::optional<DigitWord> shortest_accepted(const Automaton& m);

/// Accepted words of length <= max_len that do not end in an all-zero letter
/// (plus the empty word if accepted), shortest first.
std::vector<DigitWord> enumerate(const Automaton& m, std::size_t max_len);

/// Graphviz rendering; accepting states are double circles.
std::string to_dot(const Automaton& m, bool elide_dead = true);

/// Line-oriented text form; stable across runs.
std::string serialize(const Automaton& m);
Automaton deserialize(std::string_view text);

/// Structural equality (same numbering), used for determinism checks.
bool identical(const Automaton& a, const Automaton& b);

}  // namespace buchi
