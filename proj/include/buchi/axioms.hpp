#pragma once

// The fixed axioms of the theory and instances of the bounded-witness scheme.

#include <optional>
#include <string>
#include <vector>

#include "buchi/automaton.hpp"
#include "buchi/bounds.hpp"
#include "buchi/syntax.hpp"

namespace buchi {

struct AxiomInstance {
    std::string label;                      // S0 ... V3, or "Bound"
    FormulaPtr sentence;                    // universal closure
    std::optional<TowerInt> numeral_bound;  // Bound only
};

/// The nine fixed axioms for base p; V3 is the conjunction over i = 1..p-1.
std::vector<AxiomInstance> axiom_list(unsigned p);

struct AxiomVerdict {
    AxiomInstance axiom;
    bool holds = false;
};

std::vector<AxiomVerdict> check_base_axioms(unsigned p, Execution exec = Execution::parallel);

/// "LABEL<TAB>sentence<TAB>verdict" per axiom.
std::string render_axiom_table(const std::vector<AxiomVerdict>& verdicts);

/// The scheme instance for a one-variable formula with the numeral written
/// symbolically: "E x. phi -> E x <= [n]. phi".
AxiomInstance bound_instance(const FormulaPtr& phi, unsigned p);
std::string render_bound_instance(const FormulaPtr& phi, unsigned p);

}  // namespace buchi
