#pragma once

// The four atomic relations as complete, padding-closed DFAs (LSB-first).
// State counts include the dead state.

#include "buchi/automaton.hpp"

namespace buchi {

/// {(n, n)}: 2 states.
Automaton eq_automaton(unsigned p);

/// {(n, n + 1)}: 3 states.
Automaton succ_automaton(unsigned p);

/// {(a, b, c) : a + b = c}: 3 states.
Automaton add_automaton(unsigned p);

/// {(n, V_p(n))}: 3 states.
Automaton v_automaton(unsigned p);

}  // namespace buchi
