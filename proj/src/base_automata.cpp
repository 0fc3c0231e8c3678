#include "buchi/base_automata.hpp"

#include <stdexcept>

namespace buchi {

namespace {

void check_base(unsigned p) {
    if (p < 2) throw std::invalid_argument("base must be at least 2");
}

}  // namespace

Automaton eq_automaton(unsigned p) {
    check_base(p);
    Alphabet sigma(p, 2);
    constexpr State diag = 0, dead = 1;
    std::vector<State> table(2 * sigma.size(), dead);
    for (Letter a = 0; a < sigma.size(); ++a)
        if (sigma.digit(a, 0) == sigma.digit(a, 1)) table[diag * sigma.size() + a] = diag;
    return Automaton::dfa(p, 2, diag, {true, false}, std::move(table));
}

// Carry automaton for n + 1 = m: the pending carry starts at 1 and must be
// absorbed before the word ends.
Automaton succ_automaton(unsigned p) {
    check_base(p);
    Alphabet sigma(p, 2);
    constexpr State carry0 = 0, carry1 = 1, dead = 2;
    const std::size_t L = sigma.size();
    std::vector<State> table(3 * L, dead);
    for (Letter a = 0; a < L; ++a) {
        Digit n = sigma.digit(a, 0), m = sigma.digit(a, 1);
        if (n == m) table[carry0 * L + a] = carry0;
        if ((n + 1) % p == m) table[carry1 * L + a] = n + 1 == p ? carry1 : carry0;
    }
    return Automaton::dfa(p, 2, carry1, {true, false, false}, std::move(table));
}

Automaton add_automaton(unsigned p) {
    check_base(p);
    Alphabet sigma(p, 3);
    constexpr State carry0 = 0, carry1 = 1, dead = 2;
    const std::size_t L = sigma.size();
    std::vector<State> table(3 * L, dead);
    for (Letter a = 0; a < L; ++a) {
        Digit x = sigma.digit(a, 0), y = sigma.digit(a, 1), z = sigma.digit(a, 2);
        for (Digit c : {0u, 1u}) {
            if ((x + y + c) % p != z) continue;
            table[(c ? carry1 : carry0) * L + a] = (x + y + c) / p ? carry1 : carry0;
        }
    }
    return Automaton::dfa(p, 3, carry0, {true, false, false}, std::move(table));
}

// State 0 reads the shared low zeros; the first nonzero digit of n must meet
// the single 1 of V_p(n), after which V_p(n) stays zero.
Automaton v_automaton(unsigned p) {
    check_base(p);
    Alphabet sigma(p, 2);
    constexpr State low = 0, marked = 1, dead = 2;
    const std::size_t L = sigma.size();
    std::vector<State> table(3 * L, dead);
    for (Letter a = 0; a < L; ++a) {
        Digit n = sigma.digit(a, 0), v = sigma.digit(a, 1);
        if (n == 0 && v == 0) table[low * L + a] = low;
        if (n != 0 && v == 1) table[low * L + a] = marked;
        if (v == 0) table[marked * L + a] = marked;
    }
    return Automaton::dfa(p, 2, low, {true, true, false}, std::move(table));
}

}  // namespace buchi
