#include "buchi/decision.hpp"

#include <unordered_map>
#include <algorithm>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace buchi {

namespace {

std::string only_free_var(const Formula& phi) {
    auto free = free_vars(phi);
    if (free.size() != 1)
        throw std::invalid_argument("expected exactly one free variable, found " + std::to_string(free.size()));
    return free.front();
}

Natural checked_add(Natural a, Natural b) {
    if (a > std::numeric_limits<Natural>::max() - b) throw std::overflow_error("term value exceeds 64 bits");
    return a + b;
}

// ---------------------------------------------------------------------------
// Bounded evaluation

class Evaluator {
public:
    Evaluator(const Env& env, Natural bound, unsigned p, bool solve) : bound_(bound), p_(p), solve_(solve) {
        if (p < 2) throw std::invalid_argument("base must be at least 2");
        for (const auto& [name, value] : env) scope_.emplace_back(&name, value);
    }

    bool formula(const Formula& f) {
        switch (f.kind) {
        case Formula::Kind::eq: return term(*f.lhs_term) == term(*f.rhs_term);
        case Formula::Kind::not_: return !formula(*f.left);
        case Formula::Kind::and_:
            if (solve_ && cost(*f.right) < cost(*f.left)) return formula(*f.right) && formula(*f.left);
            return formula(*f.left) && formula(*f.right);
        case Formula::Kind::or_:
            if (solve_ && cost(*f.right) < cost(*f.left)) return formula(*f.right) || formula(*f.left);
            return formula(*f.left) || formula(*f.right);
        case Formula::Kind::imp:
            if (solve_ && cost(*f.right) < cost(*f.left)) return formula(*f.right) || !formula(*f.left);
            return !formula(*f.left) || formula(*f.right);
        case Formula::Kind::iff: return formula(*f.left) == formula(*f.right);
        case Formula::Kind::exists: return exists(f);
        case Formula::Kind::forall: return forall(f);
        }
        throw std::logic_error("unknown formula kind");
    }

    Natural term(const Term& t) {
        switch (t.kind) {
        case Term::Kind::zero: return 0;
        case Term::Kind::var: return lookup(t.name);
        case Term::Kind::succ: return checked_add(term(*t.lhs), 1);
        case Term::Kind::add: return checked_add(term(*t.lhs), term(*t.rhs));
        case Term::Kind::vp: return v_p(term(*t.lhs), p_);
        }
        throw std::logic_error("unknown term kind");
    }

private:
    // Quantifier count; the cheaper operand of a connective is tried first.
    std::size_t cost(const Formula& f) {
        if (auto it = cost_.find(&f); it != cost_.end()) return it->second;
        std::size_t c = 0;
        if (f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall) c = 1 + cost(*f.left);
        else if (f.kind == Formula::Kind::not_) c = cost(*f.left);
        else if (f.kind != Formula::Kind::eq) c = cost(*f.left) + cost(*f.right);
        cost_.emplace(&f, c);
        return c;
    }

    std::unordered_map<const Formula*, std::size_t> cost_;
    std::unordered_map<const Formula*, std::vector<std::string>> free_;

    Natural lookup(const std::string& name) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (*it->first == name) return it->second;
        throw std::invalid_argument("unbound variable '" + name + "'");
    }

    bool at(const Formula& body, const std::string& x, Natural value) {
        scope_.emplace_back(&x, value);
        bool r = formula(body);
        scope_.pop_back();
        return r;
    }

    bool exists(const Formula& f) {
        if (solve_) return exists_block(f);
        for (Natural v = 0; v <= bound_; ++v)
            if (at(*f.left, f.var, v)) return true;
        return false;
    }

    // A run of existentials over a conjunction, with existential conjuncts
    // pulled into the block where no capture can occur. Variables fixed by an
    // equation are solved for; the rest are searched.
    bool exists_block(const Formula& f) {
        std::vector<const std::string*> vars{&f.var};
        auto in_block = [&](const std::string& v) {
            return std::any_of(vars.begin(), vars.end(), [&](const std::string* b) { return *b == v; });
        };
        const Formula* body = f.left.get();
        while (body->kind == Formula::Kind::exists && !in_block(body->var)) {
            vars.push_back(&body->var);
            body = body->left.get();
        }
        std::vector<const Formula*> parts;
        conjuncts(*body, parts);
        for (bool pulled = true; pulled;) {
            pulled = false;
            for (std::size_t i = 0; i < parts.size() && !pulled; ++i) {
                const Formula* e = parts[i];
                if (e->kind != Formula::Kind::exists || in_block(e->var)) continue;
                bool free_elsewhere = false;
                for (std::size_t j = 0; j < parts.size(); ++j)
                    if (j != i && mentions(*parts[j], e->var)) free_elsewhere = true;
                if (free_elsewhere) continue;
                vars.push_back(&e->var);
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
                conjuncts(*e->left, parts);
                pulled = true;
            }
        }
        // Cheapest conjuncts are checked first.
        std::stable_sort(parts.begin(), parts.end(), [&](const Formula* x, const Formula* y) { return cost(*x) < cost(*y); });
        Block block{vars, parts, {}, {}, {}, {}};
        block.var_parts.resize(vars.size());
        block.open_count.resize(parts.size());
        block.checked.assign(parts.size(), 0);
        block.assigned.assign(vars.size(), 0);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t k = 0; k < vars.size(); ++k)
                if (mentions(*parts[i], *vars[k])) {
                    block.var_parts[k].push_back(i);
                    ++block.open_count[i];
                }
        return search(block, vars.size());
    }

    struct Block {
        std::vector<const std::string*> vars;
        std::vector<const Formula*> parts;
        std::vector<std::vector<std::size_t>> var_parts;   // parts mentioning each variable
        std::vector<std::size_t> open_count;               // unassigned variables per part
        std::vector<char> checked;
        std::vector<char> assigned;
    };

    bool search(Block& b, std::size_t open) {
        std::vector<std::size_t> marked;
        auto unmark = [&] {
            for (std::size_t i : marked) b.checked[i] = 0;
        };
        for (std::size_t i = 0; i < b.parts.size(); ++i) {
            if (b.checked[i] || b.open_count[i]) continue;
            b.checked[i] = 1;
            marked.push_back(i);
            if (!formula(*b.parts[i])) {
                unmark();
                return false;
            }
        }
        if (open == 0) {
            unmark();
            return true;
        }
        auto assign = [&](std::size_t k, Natural value) {
            b.assigned[k] = 1;
            for (std::size_t i : b.var_parts[k]) --b.open_count[i];
            scope_.emplace_back(b.vars[k], value);
            bool r = search(b, open - 1);
            scope_.pop_back();
            for (std::size_t i : b.var_parts[k]) ++b.open_count[i];
            b.assigned[k] = 0;
            return r;
        };
        bool result = false;
        bool solved = false;
        for (std::size_t i = 0; i < b.parts.size() && !solved; ++i) {
            const Formula& e = *b.parts[i];
            if (b.checked[i] || b.open_count[i] != 1) continue;
            std::size_t k = 0;
            while (b.assigned[k] || !mentions(e, *b.vars[k])) ++k;
            std::optional<std::optional<Natural>> c;
            if (e.kind == Formula::Kind::eq) c = forced_value({&e}, *b.vars[k]);
            // Block variables stay <= B, so this holds only at 0.
            else if (is_zero_test(e, *b.vars[k])) c = std::optional<Natural>{0};
            if (!c) continue;
            solved = true;
            result = *c && **c <= bound_ && assign(k, **c);
        }
        if (!solved) {
            std::size_t k = 0;
            while (b.assigned[k]) ++k;
            for (Natural v = 0; v <= bound_ && !result; ++v) result = assign(k, v);
        }
        unmark();
        return result;
    }

    // !(E w. S(w) = v)
    static bool is_zero_test(const Formula& e, const std::string& v) {
        if (e.kind != Formula::Kind::not_ || e.left->kind != Formula::Kind::exists) return false;
        const std::string& w = e.left->var;
        const Formula& eq = *e.left->left;
        if (w == v || eq.kind != Formula::Kind::eq) return false;
        auto is_var = [](const Term& t, const std::string& name) { return t.kind == Term::Kind::var && t.name == name; };
        auto succ_of = [&](const Term& t) { return t.kind == Term::Kind::succ && is_var(*t.lhs, w); };
        return (succ_of(*eq.lhs_term) && is_var(*eq.rhs_term, v)) || (succ_of(*eq.rhs_term) && is_var(*eq.lhs_term, v));
    }

    const std::vector<std::string>& free_names(const Formula& f) {
        auto it = free_.find(&f);
        if (it == free_.end()) it = free_.emplace(&f, free_vars(f)).first;
        return it->second;
    }

    bool mentions(const Formula& f, const std::string& v) {
        const auto& names = free_names(f);
        return std::binary_search(names.begin(), names.end(), v);
    }

    bool forall(const Formula& f) {
        const Formula& body = *f.left;
        if (solve_ && (body.kind == Formula::Kind::imp || body.kind == Formula::Kind::not_)) {
            // The body can only fail where the antecedent (or negated part) holds.
            std::vector<const Formula*> parts;
            conjuncts(*body.left, parts);
            if (auto c = forced_value(parts, f.var)) return !*c || **c > bound_ || at(body, f.var, **c);
        }
        for (Natural v = 0; v <= bound_; ++v)
            if (!at(body, f.var, v)) return false;
        return true;
    }

    static void conjuncts(const Formula& f, std::vector<const Formula*>& out) {
        if (f.kind == Formula::Kind::and_) {
            conjuncts(*f.left, out);
            conjuncts(*f.right, out);
        } else {
            out.push_back(&f);
        }
    }

    // Occurrences of x in t; sets nonlinear if one sits under V.
    static std::size_t occurrences(const Term& t, const std::string& x, bool under_v, bool& nonlinear) {
        switch (t.kind) {
        case Term::Kind::zero: return 0;
        case Term::Kind::var:
            if (t.name != x) return 0;
            if (under_v) nonlinear = true;
            return 1;
        case Term::Kind::succ: return occurrences(*t.lhs, x, under_v, nonlinear);
        case Term::Kind::vp: return occurrences(*t.lhs, x, true, nonlinear);
        case Term::Kind::add:
            return occurrences(*t.lhs, x, under_v, nonlinear) + occurrences(*t.rhs, x, under_v, nonlinear);
        }
        return 0;
    }

    // If some conjunct is an equation with a single linear occurrence of x,
    // the only possible value of x. Outer optional: a conjunct applies; inner:
    // the equation has a solution in N.
    std::optional<std::optional<Natural>> forced_value(const std::vector<const Formula*>& parts, const std::string& x) {
        for (const Formula* e : parts) {
            if (e->kind != Formula::Kind::eq) continue;
            bool nonlinear = false;
            std::size_t l = occurrences(*e->lhs_term, x, false, nonlinear);
            std::size_t r = occurrences(*e->rhs_term, x, false, nonlinear);
            if (nonlinear || l + r != 1) continue;
            const Term& with = l ? *e->lhs_term : *e->rhs_term;
            const Term& without = l ? *e->rhs_term : *e->lhs_term;
            // A single occurrence under S and + contributes x with coefficient 1.
            Natural target = term(without);
            scope_.emplace_back(&x, 0);
            Natural offset = term(with);
            scope_.pop_back();
            if (target < offset) return std::optional<Natural>{};
            return std::optional<Natural>{target - offset};
        }
        return std::nullopt;
    }

    std::vector<std::pair<const std::string*, Natural>> scope_;
    Natural bound_;
    unsigned p_;
    bool solve_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Automaton-backed queries

bool decide(const FormulaPtr& sentence, const CompileOptions& options) {
    auto compiled = compile_sentence(sentence, options);
    // Padding closure: the language is nonempty iff it contains the empty word.
    return compiled.automaton.is_accepting(compiled.automaton.initial());
}

bool decide(const FormulaPtr& sentence, unsigned p, Execution exec) {
    return decide(sentence, CompileOptions{p, false, exec});
}

std::optional<Natural> min_witness(const FormulaPtr& phi, const CompileOptions& options) {
    only_free_var(*phi);
    auto compiled = compile_formula(phi, options);
    auto w = shortest_accepted(compiled.automaton);
    if (!w) return std::nullopt;
    return value(*w).front();
}

std::optional<Natural> min_witness(const FormulaPtr& phi, unsigned p, Execution exec) {
    return min_witness(phi, CompileOptions{p, false, exec});
}

std::vector<std::vector<Natural>> solutions(const FormulaPtr& phi, unsigned p, Natural limit, Execution exec) {
    return solutions(phi, limit, CompileOptions{p, false, exec});
}

std::vector<std::vector<Natural>> solutions(const FormulaPtr& phi, Natural limit, const CompileOptions& options) {
    if (free_vars(*phi).size() > 3) throw std::invalid_argument("solutions supports at most three free variables");
    auto compiled = compile_formula(phi, options);
    const unsigned p = options.base;
    std::vector<std::vector<Natural>> out;
    for (const auto& w : enumerate(compiled.automaton, digits(limit, p).length())) {
        auto tuple = value(w);
        if (std::all_of(tuple.begin(), tuple.end(), [&](Natural n) { return n <= limit; })) out.push_back(std::move(tuple));
    }
    std::sort(out.begin(), out.end());
    return out;
}

BoundReport verify_bound(const FormulaPtr& phi, unsigned p, Execution exec) {
    only_free_var(*phi);
    BoundReport r;
    r.formula = phi;
    auto compiled = compile_formula(phi, CompileOptions{p, true, exec});
    r.states = compiled.automaton.state_count();
    if (auto w = shortest_accepted(compiled.automaton)) r.min_witness = value(*w).front();
    r.length = complexity(*phi).length;
    r.flat_connectives = compiled.report.n_connectives;
    r.flat_le_length = r.flat_connectives <= r.length;
    r.audit_violations = violations(compiled.report).size();
    r.p_pow_states = TowerInt::power(p, TowerInt(static_cast<std::uint64_t>(r.states)));
    r.n_phi = n_phi(p, r.length);
    if (r.min_witness) r.witness_le_p_pow_states = TowerInt(*r.min_witness) < r.p_pow_states;
    r.states_le_tower = TowerInt(static_cast<std::uint64_t>(r.states)) <= tower2(r.length, 3);
    return r;
}

std::string render_bound_report(const BoundReport& r, unsigned p) {
    std::ostringstream os;
    os << "formula: " << render(*r.formula) << '\n';
    os << "base: " << p << '\n';
    os << "states: " << r.states << '\n';
    os << "min_witness: " << (r.min_witness ? std::to_string(*r.min_witness) : "none") << '\n';
    os << "p_pow_states: " << r.p_pow_states.str() << '\n';
    os << "length: " << r.length << '\n';
    os << "n_phi: " << r.n_phi.str() << '\n';
    os << "witness_lt_p_pow_states: " << (r.witness_le_p_pow_states ? "true" : "false") << '\n';
    os << "states_le_tower: " << (r.states_le_tower ? "true" : "false") << '\n';
    os << "flat_connectives: " << r.flat_connectives << '\n';
    os << "flat_le_length: " << (r.flat_le_length ? "true" : "false") << '\n';
    os << "audit_violations: " << r.audit_violations << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Direct evaluation

Natural eval_closed_term(const Term& t, unsigned p) {
    auto vars = term_vars(t);
    if (!vars.empty()) throw std::invalid_argument("term is not closed: variable '" + vars.front() + "'");
    return Evaluator({}, 0, p, false).term(t);
}

bool decide_qf_sentence(const Formula& theta, unsigned p) {
    if (!is_quantifier_free(theta)) throw std::invalid_argument("sentence contains a quantifier");
    auto free = free_vars(theta);
    if (!free.empty()) throw std::invalid_argument("not a sentence: free variable '" + free.front() + "'");
    return Evaluator({}, 0, p, false).formula(theta);
}

bool bounded_eval(const Formula& phi, const Env& env, Natural B, unsigned p) {
    return Evaluator(env, B, p, true).formula(phi);
}

bool bounded_eval_naive(const Formula& phi, const Env& env, Natural B, unsigned p) {
    return Evaluator(env, B, p, false).formula(phi);
}

std::vector<char> bounded_eval_range(const Formula& phi, Natural limit, Natural B, unsigned p, Execution exec) {
    const std::string x = only_free_var(phi);
    std::vector<char> out(limit + 1);
    if (exec == Execution::serial) {
        for (Natural n = 0; n <= limit; ++n) out[n] = bounded_eval(phi, {{x, n}}, B, p);
        return out;
    }
    std::exception_ptr error;
    std::mutex error_lock;
    const auto count = static_cast<std::int64_t>(limit) + 1;
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t n = 0; n < count; ++n) {
        try {
            out[n] = bounded_eval(phi, {{x, static_cast<Natural>(n)}}, B, p);
        } catch (...) {
            std::lock_guard<std::mutex> guard(error_lock);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

// ---------------------------------------------------------------------------
// Corpus files

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
    std::vector<CorpusEntry> out;
    std::vector<unsigned> bases{2, 3, 5, 10};
    Natural bound = 100;
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body[0] == '#') {
            std::istringstream ds(body.substr(1));
            std::string token;
            std::vector<std::string> tokens;
            while (ds >> token) tokens.push_back(token);
            if (tokens.empty() || (tokens[0].rfind("p=", 0) != 0 && tokens[0].rfind("B=", 0) != 0)) continue;
            for (const auto& t : tokens) {
                try {
                    if (t.rfind("p=", 0) == 0) {
                        bases.clear();
                        std::istringstream ps(t.substr(2));
                        std::string part;
                        while (std::getline(ps, part, ',')) {
                            unsigned p = static_cast<unsigned>(std::stoul(part));
                            if (p < 2) throw std::invalid_argument("base");
                            bases.push_back(p);
                        }
                    } else if (t.rfind("B=", 0) == 0) {
                        bound = std::stoull(t.substr(2));
                    } else {
                        throw std::invalid_argument("token");
                    }
                } catch (const std::logic_error&) {
                    throw ParseError("line " + std::to_string(number) + ": bad directive '" + t + "'", 0);
                }
            }
            continue;
        }
        try {
            out.push_back({body, parse(body), bases, bound, number});
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(number) + ": " + e.what(), e.position());
        }
    }
    return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_corpus(ss.str());
}

}  // namespace buchi
