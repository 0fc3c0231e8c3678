#pragma once

// Abstract syntax for first-order formulas over the signature (S, +, 0, V_p, =),
// plus the flat fragment whose atoms are x = y, S(x) = y, x + y = z, V_p(x) = y.

#include <array>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace buchi {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind { zero, var, succ, add, vp };

    Kind kind;
    std::string name;   // var only
    TermPtr lhs;        // succ, vp, add
    TermPtr rhs;        // add only

    static TermPtr make_zero();
    static TermPtr make_var(std::string name);
    static TermPtr make_succ(TermPtr t);
    static TermPtr make_add(TermPtr t, TermPtr s);
    static TermPtr make_vp(TermPtr t);

    /// S^n(0).
    static TermPtr numeral(std::size_t n);
    /// Left-nested sum (...((t + t) + t)...) of k >= 1 copies.
    static TermPtr scalar(std::size_t k, const TermPtr& t);
};

bool operator==(const Term& a, const Term& b);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { eq, not_, and_, or_, imp, iff, exists, forall };

    Kind kind;
    TermPtr lhs_term, rhs_term;   // eq
    FormulaPtr left, right;       // not_ uses left; binary connectives use both; quantifiers use left
    std::string var;              // quantifiers

    static FormulaPtr make_eq(TermPtr t, TermPtr s);
    static FormulaPtr make_not(FormulaPtr f);
    static FormulaPtr make_and(FormulaPtr a, FormulaPtr b);
    static FormulaPtr make_or(FormulaPtr a, FormulaPtr b);
    static FormulaPtr make_imp(FormulaPtr a, FormulaPtr b);
    static FormulaPtr make_iff(FormulaPtr a, FormulaPtr b);
    static FormulaPtr make_exists(std::string x, FormulaPtr f);
    static FormulaPtr make_forall(std::string x, FormulaPtr f);
};

bool operator==(const Formula& a, const Formula& b);

/// Atoms of the flat language. Variables are pairwise distinct.
struct FlatAtom {
    enum class Kind { var_eq, succ_eq, add_eq, vp_eq };

    Kind kind;
    std::array<std::string, 3> vars;   // add_eq uses all three, others the first two

    std::size_t arity() const { return kind == Kind::add_eq ? 3 : 2; }
};

bool operator==(const FlatAtom& a, const FlatAtom& b);

struct FlatFormula;
using FlatPtr = std::shared_ptr<const FlatFormula>;

struct FlatFormula {
    enum class Kind { atom, not_, and_, or_, imp, exists, forall };

    Kind kind;
    FlatAtom atom{};
    FlatPtr left, right;
    std::string var;

    static FlatPtr make_atom(FlatAtom a);
    static FlatPtr make_not(FlatPtr f);
    static FlatPtr make_and(FlatPtr a, FlatPtr b);
    static FlatPtr make_or(FlatPtr a, FlatPtr b);
    static FlatPtr make_imp(FlatPtr a, FlatPtr b);
    static FlatPtr make_exists(std::string x, FlatPtr f);
    static FlatPtr make_forall(std::string x, FlatPtr f);
};

struct Complexity {
    std::size_t n_connectives = 0;   // occurrences of and, or, implies, exists, forall
    std::size_t length = 0;          // AST node count after desugaring
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Parses the ASCII formula grammar. Sugar (numerals, <=, <, k*t) is expanded
/// into the core signature; free variables are allowed.
FormulaPtr parse(std::string_view text);

/// Canonical rendering; parse(render(f)) == f.
std::string render(const Formula& f);
std::string render(const Term& t);
std::string render(const FlatFormula& f);

/// Rewrites a <-> b as (a -> b) & (b -> a), recursively.
FormulaPtr eliminate_iff(const FormulaPtr& f);

/// Equivalent flat formula. Bound variables are renamed apart and every
/// compound subterm is named by a fresh existentially bound variable.
FlatPtr flatten(const FormulaPtr& f);

Complexity complexity(const Formula& f);
std::size_t n_connectives(const FlatFormula& f);

/// Free variables in canonical (lexicographic) order.
std::vector<std::string> free_vars(const Formula& f);
std::vector<std::string> free_vars(const FlatFormula& f);
std::vector<std::string> term_vars(const Term& t);

bool is_quantifier_free(const Formula& f);

/// Universal closure over free_vars(f), outermost variable first.
FormulaPtr universal_closure(const FormulaPtr& f);

}  // namespace buchi
