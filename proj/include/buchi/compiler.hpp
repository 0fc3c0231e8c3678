#pragma once

// Flat formula -> padding-closed DFA over {0..p-1}^k, one track per free
// variable in lexicographic order. Every node of the recursion is recorded
// with its state count and the tower bound 2_N^3 for its connective count N.

#include <cstddef>
#include <string>
#include <vector>

#include "buchi/automaton.hpp"
#include "buchi/bounds.hpp"
#include "buchi/syntax.hpp"

namespace buchi {

struct CompileNode {
    std::string fragment;            // rendered flat subformula
    std::size_t n_connectives = 0;   // N of the subformula
    std::size_t states = 0;
    TowerInt bound;                  // tower2(N, 3)
    bool ok = true;                  // states <= bound
    std::vector<CompileNode> children;
};

struct CompileOptions {
    unsigned base = 2;
    bool audit = false;   // no minimization; counts are the raw construction sizes
    Execution exec = Execution::parallel;
};

struct CompiledFormula {
    Automaton automaton;
    std::vector<std::string> var_order;
    CompileNode report;
};

CompiledFormula compile(const FlatPtr& phi, const CompileOptions& options);

/// flatten + compile; var_order is free_vars(phi).
CompiledFormula compile_formula(const FormulaPtr& phi, const CompileOptions& options);

/// Arity-0 compilation. Throws std::invalid_argument on open formulas.
CompiledFormula compile_sentence(const FormulaPtr& phi, const CompileOptions& options);

/// Nodes with ok == false, in preorder.
std::vector<const CompileNode*> violations(const CompileNode& root);

std::size_t node_count(const CompileNode& root);

/// Indented text tree, one node per line:
/// "<N> <states> <bound> ok|VIOLATION <fragment>".
std::string render_report(const CompileNode& root);

}  // namespace buchi
