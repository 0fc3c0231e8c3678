#pragma once

// Decisions, witnesses and solution sets via compiled automata, plus the
// brute-force evaluator with explicitly bounded quantifiers used as an oracle.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "buchi/bounds.hpp"
#include "buchi/compiler.hpp"
#include "buchi/encoding.hpp"
#include "buchi/syntax.hpp"

namespace buchi {

using Env = std::map<std::string, Natural>;

bool decide(const FormulaPtr& sentence, const CompileOptions& options);
bool decide(const FormulaPtr& sentence, unsigned p, Execution exec = Execution::parallel);

/// Least n satisfying a formula with exactly one free variable.
std::optional<Natural> min_witness(const FormulaPtr& phi, const CompileOptions& options);
std::optional<Natural> min_witness(const FormulaPtr& phi, unsigned p, Execution exec = Execution::parallel);

/// All solution tuples with every component <= limit, ascending (tuples
/// ordered lexicographically, components in free_vars order). At most three
/// free variables; a sentence yields {{}} when true and {} when false.
std::vector<std::vector<Natural>> solutions(const FormulaPtr& phi, Natural limit, const CompileOptions& options);
std::vector<std::vector<Natural>> solutions(const FormulaPtr& phi, unsigned p, Natural limit,
                                            Execution exec = Execution::parallel);

struct BoundReport {
    FormulaPtr formula;
    std::size_t states = 0;              // audit-mode automaton
    std::optional<Natural> min_witness;
    TowerInt p_pow_states;               // p^states
    TowerInt n_phi;                      // p^(2_length^3)
    bool witness_le_p_pow_states = true; // witness < p^states (strict)
    bool states_le_tower = true;         // states <= 2_length^3
    std::size_t length = 0;              // node count of the formula
    std::size_t flat_connectives = 0;    // N of the flattened formula
    bool flat_le_length = true;          // N_flat <= length
    std::size_t audit_violations = 0;    // nodes exceeding 2_N^3
};

BoundReport verify_bound(const FormulaPtr& phi, unsigned p, Execution exec = Execution::parallel);

std::string render_bound_report(const BoundReport& r, unsigned p);

/// Standard value of a closed term. Throws std::invalid_argument on a
/// variable and std::overflow_error past 64 bits.
Natural eval_closed_term(const Term& t, unsigned p);

/// Truth of a quantifier-free sentence by evaluation.
bool decide_qf_sentence(const Formula& theta, unsigned p);

/// Truth with every quantifier ranging over [0, B]. Agrees with the standard
/// model only if every witness needed along the way is <= B.
bool bounded_eval(const Formula& phi, const Env& env, Natural B, unsigned p);

/// Same semantics without the equation-solving shortcut: every quantifier
/// loops over all of [0, B].
bool bounded_eval_naive(const Formula& phi, const Env& env, Natural B, unsigned p);

/// bounded_eval of a one-variable formula at x = 0..limit.
std::vector<char> bounded_eval_range(const Formula& phi, Natural limit, Natural B, unsigned p,
                                     Execution exec = Execution::parallel);

struct CorpusEntry {
    std::string text;
    FormulaPtr formula;
    std::vector<unsigned> bases;
    Natural bound = 0;
    std::size_t line = 0;
};

/// One formula per line. "# p=2,3 B=100" directives set the bases and bound
/// for the lines that follow; other lines starting with '#' and blank lines
/// are ignored. Throws ParseError with the line number in the message.
std::vector<CorpusEntry> parse_corpus(std::string_view text);
std::vector<CorpusEntry> load_corpus(const std::string& path);

}  // namespace buchi
