#include "buchi/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <set>
#include <sstream>

namespace buchi {

// ---------------------------------------------------------------------------
// Constructors

TermPtr Term::make_zero() { return std::make_shared<const Term>(Term{Kind::zero, {}, nullptr, nullptr}); }

TermPtr Term::make_var(std::string name) {
    return std::make_shared<const Term>(Term{Kind::var, std::move(name), nullptr, nullptr});
}

TermPtr Term::make_succ(TermPtr t) { return std::make_shared<const Term>(Term{Kind::succ, {}, std::move(t), nullptr}); }

TermPtr Term::make_add(TermPtr t, TermPtr s) {
    return std::make_shared<const Term>(Term{Kind::add, {}, std::move(t), std::move(s)});
}

TermPtr Term::make_vp(TermPtr t) { return std::make_shared<const Term>(Term{Kind::vp, {}, std::move(t), nullptr}); }

TermPtr Term::numeral(std::size_t n) {
    TermPtr t = make_zero();
    for (std::size_t i = 0; i < n; ++i) t = make_succ(t);
    return t;
}

TermPtr Term::scalar(std::size_t k, const TermPtr& t) {
    if (k == 0) throw std::invalid_argument("scalar multiple needs at least one copy");
    TermPtr sum = t;
    for (std::size_t i = 1; i < k; ++i) sum = make_add(sum, t);
    return sum;
}

bool operator==(const Term& a, const Term& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Term::Kind::zero: return true;
    case Term::Kind::var: return a.name == b.name;
    case Term::Kind::succ:
    case Term::Kind::vp: return *a.lhs == *b.lhs;
    case Term::Kind::add: return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
    return false;
}

namespace {

FormulaPtr make_formula(Formula::Kind kind, FormulaPtr l, FormulaPtr r, std::string var = {}) {
    return std::make_shared<const Formula>(Formula{kind, nullptr, nullptr, std::move(l), std::move(r), std::move(var)});
}

FlatPtr make_flat(FlatFormula::Kind kind, FlatPtr l, FlatPtr r, std::string var = {}) {
    return std::make_shared<const FlatFormula>(FlatFormula{kind, {}, std::move(l), std::move(r), std::move(var)});
}

}  // namespace

FormulaPtr Formula::make_eq(TermPtr t, TermPtr s) {
    return std::make_shared<const Formula>(Formula{Kind::eq, std::move(t), std::move(s), nullptr, nullptr, {}});
}
FormulaPtr Formula::make_not(FormulaPtr f) { return make_formula(Kind::not_, std::move(f), nullptr); }
FormulaPtr Formula::make_and(FormulaPtr a, FormulaPtr b) { return make_formula(Kind::and_, std::move(a), std::move(b)); }
FormulaPtr Formula::make_or(FormulaPtr a, FormulaPtr b) { return make_formula(Kind::or_, std::move(a), std::move(b)); }
FormulaPtr Formula::make_imp(FormulaPtr a, FormulaPtr b) { return make_formula(Kind::imp, std::move(a), std::move(b)); }
FormulaPtr Formula::make_iff(FormulaPtr a, FormulaPtr b) { return make_formula(Kind::iff, std::move(a), std::move(b)); }
FormulaPtr Formula::make_exists(std::string x, FormulaPtr f) {
    return make_formula(Kind::exists, std::move(f), nullptr, std::move(x));
}
FormulaPtr Formula::make_forall(std::string x, FormulaPtr f) {
    return make_formula(Kind::forall, std::move(f), nullptr, std::move(x));
}

bool operator==(const Formula& a, const Formula& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Formula::Kind::eq: return *a.lhs_term == *b.lhs_term && *a.rhs_term == *b.rhs_term;
    case Formula::Kind::not_: return *a.left == *b.left;
    case Formula::Kind::exists:
    case Formula::Kind::forall: return a.var == b.var && *a.left == *b.left;
    default: return *a.left == *b.left && *a.right == *b.right;
    }
}

bool operator==(const FlatAtom& a, const FlatAtom& b) {
    if (a.kind != b.kind) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (a.vars[i] != b.vars[i]) return false;
    return true;
}

FlatPtr FlatFormula::make_atom(FlatAtom a) {
    for (std::size_t i = 0; i < a.arity(); ++i)
        for (std::size_t j = i + 1; j < a.arity(); ++j)
            if (a.vars[i] == a.vars[j]) throw std::invalid_argument("flat atom repeats variable " + a.vars[i]);
    return std::make_shared<const FlatFormula>(FlatFormula{Kind::atom, std::move(a), nullptr, nullptr, {}});
}
FlatPtr FlatFormula::make_not(FlatPtr f) { return make_flat(Kind::not_, std::move(f), nullptr); }
FlatPtr FlatFormula::make_and(FlatPtr a, FlatPtr b) { return make_flat(Kind::and_, std::move(a), std::move(b)); }
FlatPtr FlatFormula::make_or(FlatPtr a, FlatPtr b) { return make_flat(Kind::or_, std::move(a), std::move(b)); }
FlatPtr FlatFormula::make_imp(FlatPtr a, FlatPtr b) { return make_flat(Kind::imp, std::move(a), std::move(b)); }
FlatPtr FlatFormula::make_exists(std::string x, FlatPtr f) { return make_flat(Kind::exists, std::move(f), nullptr, std::move(x)); }
FlatPtr FlatFormula::make_forall(std::string x, FlatPtr f) { return make_flat(Kind::forall, std::move(f), nullptr, std::move(x)); }

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

constexpr std::size_t max_numeral = 100000;

enum class Tok {
    ident, number, kw_s, kw_v, kw_exists, kw_forall,
    lparen, rparen, plus, star, eq, le, lt, bang, amp, bar, arrow, iff, dot, end
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        auto push = [&](Tok k, std::size_t len) {
            out.push_back({k, std::string(src.substr(start, len)), start});
            i = start + len;
        };
        if (std::islower(static_cast<unsigned char>(c))) {
            std::size_t j = i + 1;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            std::string_view word = src.substr(i, j - i);
            if (word == "exists") push(Tok::kw_exists, j - i);
            else if (word == "forall") push(Tok::kw_forall, j - i);
            else push(Tok::ident, j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::number, j - i);
        } else if (std::isupper(static_cast<unsigned char>(c))) {
            if (i + 1 < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + 1])) || src[i + 1] == '_'))
                throw ParseError("unknown symbol", i);
            switch (c) {
            case 'S': push(Tok::kw_s, 1); break;
            case 'V': push(Tok::kw_v, 1); break;
            case 'E': push(Tok::kw_exists, 1); break;
            case 'A': push(Tok::kw_forall, 1); break;
            default: throw ParseError(std::string("unknown symbol '") + c + "'", i);
            }
        } else if (src.substr(i, 3) == "<->") {
            push(Tok::iff, 3);
        } else if (src.substr(i, 2) == "->") {
            push(Tok::arrow, 2);
        } else if (src.substr(i, 2) == "<=") {
            push(Tok::le, 2);
        } else {
            switch (c) {
            case '(': push(Tok::lparen, 1); break;
            case ')': push(Tok::rparen, 1); break;
            case '+': push(Tok::plus, 1); break;
            case '*': push(Tok::star, 1); break;
            case '=': push(Tok::eq, 1); break;
            case '<': push(Tok::lt, 1); break;
            case '!': push(Tok::bang, 1); break;
            case '&': push(Tok::amp, 1); break;
            case '|': push(Tok::bar, 1); break;
            case '.': push(Tok::dot, 1); break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", i);
            }
        }
    }
    out.push_back({Tok::end, "", src.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(lex(src)) {
        for (const auto& t : tokens_)
            if (t.kind == Tok::ident) names_.insert(t.text);
    }

    FormulaPtr parse_all() {
        FormulaPtr f = parse_iff();
        if (peek().kind != Tok::end) fail("unexpected trailing input");
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const std::string& msg) {
        std::size_t at = peek().pos;
        if (at >= furthest_pos_) {
            furthest_pos_ = at;
            furthest_msg_ = msg;
        }
        throw ParseError(msg, at);
    }

    void expect(Tok k, const char* what) {
        if (!accept(k)) fail(std::string("expected ") + what);
    }

    std::string fresh_name() {
        for (;;) {
            std::string candidate = fresh_counter_ == 0 ? "z" : "z" + std::to_string(fresh_counter_);
            ++fresh_counter_;
            if (names_.insert(candidate).second) return candidate;
        }
    }

    FormulaPtr parse_iff() {
        FormulaPtr l = parse_imp();
        while (accept(Tok::iff)) l = Formula::make_iff(l, parse_imp());
        return l;
    }

    FormulaPtr parse_imp() {
        FormulaPtr l = parse_or();
        if (accept(Tok::arrow)) return Formula::make_imp(l, parse_imp());
        return l;
    }

    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        while (accept(Tok::bar)) l = Formula::make_or(l, parse_and());
        return l;
    }

    FormulaPtr parse_and() {
        FormulaPtr l = parse_unary();
        while (accept(Tok::amp)) l = Formula::make_and(l, parse_unary());
        return l;
    }

    FormulaPtr parse_unary() {
        if (accept(Tok::bang)) return Formula::make_not(parse_unary());
        Tok k = peek().kind;
        if (k == Tok::kw_exists || k == Tok::kw_forall) {
            ++pos_;
            if (peek().kind != Tok::ident) fail("expected variable after quantifier");
            std::string x = peek().text;
            ++pos_;
            expect(Tok::dot, "'.' after quantified variable");
            FormulaPtr body = parse_iff();
            return k == Tok::kw_exists ? Formula::make_exists(x, body) : Formula::make_forall(x, body);
        }
        return parse_primary();
    }

    // A parenthesis opens either a term or a formula; try the atom reading first.
    FormulaPtr parse_primary() {
        if (peek().kind != Tok::lparen) return parse_atom();
        std::size_t saved = pos_;
        std::size_t saved_counter = fresh_counter_;
        auto saved_names = names_;
        try {
            return parse_atom();
        } catch (const ParseError&) {
            pos_ = saved;
            fresh_counter_ = saved_counter;
            names_ = std::move(saved_names);
        }
        ++pos_;
        FormulaPtr f = parse_iff();
        expect(Tok::rparen, "')'");
        return f;
    }

    FormulaPtr parse_atom() {
        TermPtr t = parse_term();
        Tok rel = peek().kind;
        if (rel != Tok::eq && rel != Tok::le && rel != Tok::lt) fail("expected '=', '<=' or '<'");
        ++pos_;
        TermPtr s = parse_term();
        if (rel == Tok::eq) return Formula::make_eq(t, s);
        if (rel == Tok::lt) t = Term::make_succ(t);
        std::string z = fresh_name();
        return Formula::make_exists(z, Formula::make_eq(Term::make_add(t, Term::make_var(z)), s));
    }

    TermPtr parse_term() {
        TermPtr l = parse_factor();
        while (accept(Tok::plus)) l = Term::make_add(l, parse_factor());
        return l;
    }

    TermPtr parse_factor() {
        const Token& tok = peek();
        switch (tok.kind) {
        case Tok::number: {
            if (tok.text.size() > 6 || std::stoul(tok.text) > max_numeral) fail("numeral too large");
            std::size_t n = std::stoul(tok.text);
            ++pos_;
            if (accept(Tok::star)) {
                TermPtr t = parse_factor();
                return n == 0 ? Term::make_zero() : Term::scalar(n, t);
            }
            return Term::numeral(n);
        }
        case Tok::ident: {
            std::string name = tok.text;
            ++pos_;
            return Term::make_var(name);
        }
        case Tok::kw_s:
        case Tok::kw_v: {
            bool succ = tok.kind == Tok::kw_s;
            ++pos_;
            expect(Tok::lparen, "'('");
            TermPtr t = parse_term();
            expect(Tok::rparen, "')'");
            return succ ? Term::make_succ(t) : Term::make_vp(t);
        }
        case Tok::lparen: {
            ++pos_;
            TermPtr t = parse_term();
            expect(Tok::rparen, "')'");
            return t;
        }
        default: fail("expected a term");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::set<std::string> names_;
    std::size_t fresh_counter_ = 0;

public:
    std::size_t furthest_pos_ = 0;
    std::string furthest_msg_;
};

}  // namespace

FormulaPtr parse(std::string_view text) {
    Parser parser(text);
    try {
        return parser.parse_all();
    } catch (const ParseError& e) {
        if (parser.furthest_pos_ > e.position()) throw ParseError(parser.furthest_msg_, parser.furthest_pos_);
        throw;
    }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Returns n when t is S^n(0).
std::optional<std::size_t> as_numeral(const Term& t) {
    std::size_t n = 0;
    const Term* cur = &t;
    while (cur->kind == Term::Kind::succ) {
        ++n;
        cur = cur->lhs.get();
    }
    if (cur->kind != Term::Kind::zero) return std::nullopt;
    return n;
}

void render_term(const Term& t, std::ostream& os) {
    if (auto n = as_numeral(t)) {
        os << *n;
        return;
    }
    switch (t.kind) {
    case Term::Kind::zero: os << '0'; break;
    case Term::Kind::var: os << t.name; break;
    case Term::Kind::succ:
        os << "S(";
        render_term(*t.lhs, os);
        os << ')';
        break;
    case Term::Kind::vp:
        os << "V(";
        render_term(*t.lhs, os);
        os << ')';
        break;
    case Term::Kind::add:
        render_term(*t.lhs, os);
        os << " + ";
        if (t.rhs->kind == Term::Kind::add) {
            os << '(';
            render_term(*t.rhs, os);
            os << ')';
        } else {
            render_term(*t.rhs, os);
        }
        break;
    }
}

// Precedence levels shared by Formula and FlatFormula rendering. Quantifiers
// are rendered in parentheses whenever they are an operand.
constexpr int prec_quant = -1, prec_iff = 0, prec_imp = 1, prec_or = 2, prec_and = 3, prec_unary = 4, prec_atom = 5;

template <typename F>
struct Renderer {
    std::ostream& os;
    std::function<void(const F&, std::ostream&)> atom;

    static int prec(const F& f) {
        using K = typename F::Kind;
        switch (f.kind) {
        case K::exists:
        case K::forall: return prec_quant;
        case K::not_: return prec_unary;
        case K::and_: return prec_and;
        case K::or_: return prec_or;
        case K::imp: return prec_imp;
        default: break;
        }
        if constexpr (std::is_same_v<F, Formula>)
            if (f.kind == Formula::Kind::iff) return prec_iff;
        return prec_atom;
    }

    void child(const F& f, int min_prec) {
        int p = prec(f);
        if (p == prec_quant || p < min_prec) {
            os << '(';
            top(f);
            os << ')';
        } else {
            top(f);
        }
    }

    void binary(const F& f, const char* op, int p, bool right_assoc) {
        child(*f.left, right_assoc ? p + 1 : p);
        os << ' ' << op << ' ';
        child(*f.right, right_assoc ? p : p + 1);
    }

    void top(const F& f) {
        using K = typename F::Kind;
        switch (f.kind) {
        case K::not_:
            os << '!';
            child(*f.left, prec_unary);
            return;
        case K::and_: binary(f, "&", prec_and, false); return;
        case K::or_: binary(f, "|", prec_or, false); return;
        case K::imp: binary(f, "->", prec_imp, true); return;
        case K::exists:
        case K::forall:
            os << (f.kind == K::exists ? "E " : "A ") << f.var << ". ";
            top(*f.left);
            return;
        default: break;
        }
        if constexpr (std::is_same_v<F, Formula>) {
            if (f.kind == Formula::Kind::iff) {
                binary(f, "<->", prec_iff, false);
                return;
            }
        }
        atom(f, os);
    }
};

}  // namespace

std::string render(const Term& t) {
    std::ostringstream os;
    render_term(t, os);
    return os.str();
}

std::string render(const Formula& f) {
    std::ostringstream os;
    Renderer<Formula> r{os, [](const Formula& g, std::ostream& out) {
                            render_term(*g.lhs_term, out);
                            out << " = ";
                            render_term(*g.rhs_term, out);
                        }};
    r.top(f);
    return os.str();
}

std::string render(const FlatFormula& f) {
    std::ostringstream os;
    Renderer<FlatFormula> r{os, [](const FlatFormula& g, std::ostream& out) {
                                const auto& v = g.atom.vars;
                                switch (g.atom.kind) {
                                case FlatAtom::Kind::var_eq: out << v[0] << " = " << v[1]; break;
                                case FlatAtom::Kind::succ_eq: out << "S(" << v[0] << ") = " << v[1]; break;
                                case FlatAtom::Kind::add_eq: out << v[0] << " + " << v[1] << " = " << v[2]; break;
                                case FlatAtom::Kind::vp_eq: out << "V(" << v[0] << ") = " << v[1]; break;
                                }
                            }};
    r.top(f);
    return os.str();
}

// ---------------------------------------------------------------------------
// Measures and variables

FormulaPtr eliminate_iff(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
    case K::eq: return f;
    case K::not_: return Formula::make_not(eliminate_iff(f->left));
    case K::exists: return Formula::make_exists(f->var, eliminate_iff(f->left));
    case K::forall: return Formula::make_forall(f->var, eliminate_iff(f->left));
    case K::iff: {
        FormulaPtr a = eliminate_iff(f->left), b = eliminate_iff(f->right);
        return Formula::make_and(Formula::make_imp(a, b), Formula::make_imp(b, a));
    }
    case K::and_: return Formula::make_and(eliminate_iff(f->left), eliminate_iff(f->right));
    case K::or_: return Formula::make_or(eliminate_iff(f->left), eliminate_iff(f->right));
    case K::imp: return Formula::make_imp(eliminate_iff(f->left), eliminate_iff(f->right));
    }
    return f;
}

namespace {

std::size_t term_size(const Term& t) {
    switch (t.kind) {
    case Term::Kind::zero:
    case Term::Kind::var: return 1;
    case Term::Kind::succ:
    case Term::Kind::vp: return 1 + term_size(*t.lhs);
    case Term::Kind::add: return 1 + term_size(*t.lhs) + term_size(*t.rhs);
    }
    return 0;
}

void measure(const Formula& f, Complexity& c) {
    using K = Formula::Kind;
    ++c.length;
    switch (f.kind) {
    case K::eq:
        c.length += term_size(*f.lhs_term) + term_size(*f.rhs_term);
        return;
    case K::not_: measure(*f.left, c); return;
    case K::exists:
    case K::forall:
        ++c.n_connectives;
        measure(*f.left, c);
        return;
    case K::iff: throw std::logic_error("iff must be eliminated before measuring");
    default:
        ++c.n_connectives;
        measure(*f.left, c);
        measure(*f.right, c);
        return;
    }
}

void collect_term_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind) {
    case Term::Kind::zero: return;
    case Term::Kind::var: out.insert(t.name); return;
    case Term::Kind::add: collect_term_vars(*t.rhs, out); [[fallthrough]];
    default: collect_term_vars(*t.lhs, out); return;
    }
}

template <typename F, typename AtomVars>
void collect_free(const F& f, std::set<std::string>& out, AtomVars&& atom_vars) {
    using K = typename F::Kind;
    switch (f.kind) {
    case K::exists:
    case K::forall: {
        std::set<std::string> inner;
        collect_free(*f.left, inner, atom_vars);
        inner.erase(f.var);
        out.insert(inner.begin(), inner.end());
        return;
    }
    case K::not_: collect_free(*f.left, out, atom_vars); return;
    case K::and_:
    case K::or_:
    case K::imp:
        collect_free(*f.left, out, atom_vars);
        collect_free(*f.right, out, atom_vars);
        return;
    default: break;
    }
    if constexpr (std::is_same_v<F, Formula>) {
        if (f.kind == Formula::Kind::iff) {
            collect_free(*f.left, out, atom_vars);
            collect_free(*f.right, out, atom_vars);
            return;
        }
    }
    atom_vars(f, out);
}

}  // namespace

Complexity complexity(const Formula& f) {
    Complexity c;
    measure(*eliminate_iff(std::make_shared<const Formula>(f)), c);
    return c;
}

std::size_t n_connectives(const FlatFormula& f) {
    using K = FlatFormula::Kind;
    switch (f.kind) {
    case K::atom: return 0;
    case K::not_: return n_connectives(*f.left);
    case K::exists:
    case K::forall: return 1 + n_connectives(*f.left);
    default: return 1 + n_connectives(*f.left) + n_connectives(*f.right);
    }
}

std::vector<std::string> term_vars(const Term& t) {
    std::set<std::string> s;
    collect_term_vars(t, s);
    return {s.begin(), s.end()};
}

std::vector<std::string> free_vars(const Formula& f) {
    std::set<std::string> s;
    collect_free(f, s, [](const Formula& g, std::set<std::string>& out) {
        collect_term_vars(*g.lhs_term, out);
        collect_term_vars(*g.rhs_term, out);
    });
    return {s.begin(), s.end()};
}

std::vector<std::string> free_vars(const FlatFormula& f) {
    std::set<std::string> s;
    collect_free(f, s, [](const FlatFormula& g, std::set<std::string>& out) {
        for (std::size_t i = 0; i < g.atom.arity(); ++i) out.insert(g.atom.vars[i]);
    });
    return {s.begin(), s.end()};
}

bool is_quantifier_free(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
    case K::eq: return true;
    case K::exists:
    case K::forall: return false;
    case K::not_: return is_quantifier_free(*f.left);
    default: return is_quantifier_free(*f.left) && is_quantifier_free(*f.right);
    }
}

FormulaPtr universal_closure(const FormulaPtr& f) {
    auto vars = free_vars(*f);
    FormulaPtr out = f;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = Formula::make_forall(*it, out);
    return out;
}

// ---------------------------------------------------------------------------
// Flattening

namespace {

class Flattener {
public:
    explicit Flattener(const Formula& f) {
        for (auto& v : free_vars(f)) used_.insert(v);
    }

    FlatPtr formula(const Formula& f, std::map<std::string, std::string>& scope) {
        using K = Formula::Kind;
        switch (f.kind) {
        case K::eq: return equation(rename(*f.lhs_term, scope), rename(*f.rhs_term, scope));
        case K::not_: return FlatFormula::make_not(formula(*f.left, scope));
        case K::and_: return FlatFormula::make_and(formula(*f.left, scope), formula(*f.right, scope));
        case K::or_: return FlatFormula::make_or(formula(*f.left, scope), formula(*f.right, scope));
        case K::imp: return FlatFormula::make_imp(formula(*f.left, scope), formula(*f.right, scope));
        case K::iff: throw std::logic_error("iff must be eliminated before flattening");
        case K::exists:
        case K::forall: {
            std::string name = f.var;
            for (std::size_t k = 1; used_.count(name); ++k) name = f.var + "'" + std::to_string(k);
            used_.insert(name);
            auto previous = scope.find(f.var);
            std::optional<std::string> shadowed;
            if (previous != scope.end()) shadowed = previous->second;
            scope[f.var] = name;
            FlatPtr body = formula(*f.left, scope);
            if (shadowed) scope[f.var] = *shadowed;
            else scope.erase(f.var);
            return f.kind == K::exists ? FlatFormula::make_exists(name, body) : FlatFormula::make_forall(name, body);
        }
        }
        return nullptr;
    }

private:
    TermPtr rename(const Term& t, const std::map<std::string, std::string>& scope) {
        switch (t.kind) {
        case Term::Kind::zero: return Term::make_zero();
        case Term::Kind::var: {
            auto it = scope.find(t.name);
            return Term::make_var(it == scope.end() ? t.name : it->second);
        }
        case Term::Kind::succ: return Term::make_succ(rename(*t.lhs, scope));
        case Term::Kind::vp: return Term::make_vp(rename(*t.lhs, scope));
        case Term::Kind::add: return Term::make_add(rename(*t.lhs, scope), rename(*t.rhs, scope));
        }
        return nullptr;
    }

    std::string fresh() {
        std::string name;
        do {
            name = "_" + std::to_string(++counter_);
        } while (used_.count(name));
        used_.insert(name);
        return name;
    }

    static FlatPtr atom(FlatAtom::Kind k, std::string a, std::string b, std::string c = {}) {
        return FlatFormula::make_atom(FlatAtom{k, {std::move(a), std::move(b), std::move(c)}});
    }

    // Wraps conjuncts (left-nested) under existential binders, innermost last.
    static FlatPtr close(const std::vector<std::string>& binders, const std::vector<FlatPtr>& parts) {
        FlatPtr body = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) body = FlatFormula::make_and(body, parts[i]);
        for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = FlatFormula::make_exists(*it, body);
        return body;
    }

    // x = 0 holds iff x has no predecessor.
    FlatPtr zero(const std::string& target) {
        std::string w = fresh();
        return FlatFormula::make_not(FlatFormula::make_exists(w, atom(FlatAtom::Kind::succ_eq, w, target)));
    }

    // Makes `t` available as a variable: variables are used directly, compound
    // terms get a fresh name plus a defining formula appended to `parts`.
    std::string operand(const Term& t, std::vector<std::string>& binders, std::vector<FlatPtr>& parts) {
        if (t.kind == Term::Kind::var) return t.name;
        std::string a = fresh();
        binders.push_back(a);
        parts.push_back(define(t, a));
        return a;
    }

    // Fresh copy of `v`, so that an atom can mention the same value twice.
    std::string copy(const std::string& v, std::vector<std::string>& binders, std::vector<FlatPtr>& parts) {
        std::string c = fresh();
        binders.push_back(c);
        parts.push_back(atom(FlatAtom::Kind::var_eq, v, c));
        return c;
    }

    // Flat formula with free variables vars(t) + {target} stating target = t.
    FlatPtr define(const Term& t, const std::string& target) {
        std::vector<std::string> binders;
        std::vector<FlatPtr> parts;
        switch (t.kind) {
        case Term::Kind::zero: return zero(target);
        case Term::Kind::var:
            if (t.name != target) return atom(FlatAtom::Kind::var_eq, t.name, target);
            {
                std::string c = fresh();
                return FlatFormula::make_exists(c, atom(FlatAtom::Kind::var_eq, t.name, c));
            }
        case Term::Kind::succ:
        case Term::Kind::vp: {
            std::string a = operand(*t.lhs, binders, parts);
            if (a == target) a = copy(a, binders, parts);
            parts.push_back(atom(t.kind == Term::Kind::succ ? FlatAtom::Kind::succ_eq : FlatAtom::Kind::vp_eq, a, target));
            return close(binders, parts);
        }
        case Term::Kind::add: {
            std::string a = operand(*t.lhs, binders, parts);
            std::string b = operand(*t.rhs, binders, parts);
            if (a == target) a = copy(a, binders, parts);
            if (b == target || b == a) b = copy(b, binders, parts);
            parts.push_back(atom(FlatAtom::Kind::add_eq, a, b, target));
            return close(binders, parts);
        }
        }
        return nullptr;
    }

    FlatPtr equation(const TermPtr& t, const TermPtr& s) {
        if (s->kind == Term::Kind::var) return define(*t, s->name);
        if (t->kind == Term::Kind::var) return define(*s, t->name);
        std::string a = fresh();
        return FlatFormula::make_exists(a, FlatFormula::make_and(define(*t, a), define(*s, a)));
    }

    std::set<std::string> used_;
    std::size_t counter_ = 0;
};

}  // namespace

FlatPtr flatten(const FormulaPtr& f) {
    FormulaPtr g = eliminate_iff(f);
    Flattener fl(*g);
    std::map<std::string, std::string> scope;
    return fl.formula(*g, scope);
}

}  // namespace buchi
