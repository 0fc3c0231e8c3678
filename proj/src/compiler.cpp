#include "buchi/compiler.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "buchi/base_automata.hpp"

namespace buchi {

namespace {

struct Result {
    Automaton automaton;
    std::vector<std::string> vars;   // sorted
    CompileNode node;
};

class Compiler {
public:
    explicit Compiler(const CompileOptions& options)
        : options_(options),
          eq_(eq_automaton(options.base)),
          succ_(succ_automaton(options.base)),
          add_(add_automaton(options.base)),
          v_(v_automaton(options.base)) {}

    Result run(const FlatFormula& f) {
        switch (f.kind) {
        case FlatFormula::Kind::atom: return atom(f);
        case FlatFormula::Kind::not_: {
            Result r = run(*f.left);
            return finish(f, complement(r.automaton), std::move(r.vars), {std::move(r.node)});
        }
        case FlatFormula::Kind::and_: {
            Result a = run(*f.left), b = run(*f.right);
            auto vars = merged(a.vars, b.vars);
            Automaton m = intersect(widen(a.automaton, a.vars, vars), widen(b.automaton, b.vars, vars));
            return finish(f, std::move(m), std::move(vars), {std::move(a.node), std::move(b.node)});
        }
        case FlatFormula::Kind::or_: {
            // a | b  as  !(!a & !b)
            Result a = run(*f.left), b = run(*f.right);
            auto vars = merged(a.vars, b.vars);
            Automaton m = complement(intersect(complement(widen(a.automaton, a.vars, vars)),
                                               complement(widen(b.automaton, b.vars, vars))));
            return finish(f, std::move(m), std::move(vars), {std::move(a.node), std::move(b.node)});
        }
        case FlatFormula::Kind::imp: {
            // a -> b  as  !(a & !b)
            Result a = run(*f.left), b = run(*f.right);
            auto vars = merged(a.vars, b.vars);
            Automaton m = complement(
                intersect(widen(a.automaton, a.vars, vars), complement(widen(b.automaton, b.vars, vars))));
            return finish(f, std::move(m), std::move(vars), {std::move(a.node), std::move(b.node)});
        }
        case FlatFormula::Kind::exists: {
            Result r = run(*f.left);
            auto [m, vars] = eliminate(std::move(r.automaton), std::move(r.vars), f.var);
            return finish(f, std::move(m), std::move(vars), {std::move(r.node)});
        }
        case FlatFormula::Kind::forall: {
            // A x. b  as  !E x. !b
            Result r = run(*f.left);
            auto [m, vars] = eliminate(complement(r.automaton), std::move(r.vars), f.var);
            Automaton negated = complement(m);
            return finish(f, std::move(negated), std::move(vars), {std::move(r.node)});
        }
        }
        throw std::logic_error("unknown formula kind");
    }

private:
    Result atom(const FlatFormula& f) {
        const FlatAtom& a = f.atom;
        const Automaton* base = nullptr;
        switch (a.kind) {
        case FlatAtom::Kind::var_eq: base = &eq_; break;
        case FlatAtom::Kind::succ_eq: base = &succ_; break;
        case FlatAtom::Kind::add_eq: base = &add_; break;
        case FlatAtom::Kind::vp_eq: base = &v_; break;
        }
        std::vector<std::string> own(a.vars.begin(), a.vars.begin() + static_cast<long>(a.arity()));
        std::vector<std::string> vars = own;
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
            throw std::invalid_argument("flat atom with repeated variable");
        Automaton m = widen(*base, own, vars);
        return finish(f, std::move(m), std::move(vars), {});
    }

    static std::vector<std::string> merged(const std::vector<std::string>& a, const std::vector<std::string>& b) {
        std::vector<std::string> out;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    static Automaton widen(const Automaton& m, const std::vector<std::string>& from, const std::vector<std::string>& to) {
        if (from == to) return m;
        std::vector<unsigned> map(from.size());
        for (std::size_t i = 0; i < from.size(); ++i)
            map[i] = static_cast<unsigned>(std::lower_bound(to.begin(), to.end(), from[i]) - to.begin());
        return cylindrify(m, map, static_cast<unsigned>(to.size()));
    }

    std::pair<Automaton, std::vector<std::string>> eliminate(Automaton m, std::vector<std::string> vars,
                                                             const std::string& x) {
        auto it = std::lower_bound(vars.begin(), vars.end(), x);
        if (it == vars.end() || *it != x) return {std::move(m), std::move(vars)};
        auto track = static_cast<unsigned>(it - vars.begin());
        vars.erase(it);
        return {determinize(zero_saturate(project(m, track)), options_.exec), std::move(vars)};
    }

    Result finish(const FlatFormula& f, Automaton m, std::vector<std::string> vars, std::vector<CompileNode> children) {
        if (!options_.audit) m = minimize(m, options_.exec);
        CompileNode node;
        node.fragment = render(f);
        node.n_connectives = n_connectives(f);
        node.states = m.state_count();
        node.bound = tower2(node.n_connectives, 3);
        node.ok = TowerInt(static_cast<std::uint64_t>(node.states)) <= node.bound;
        node.children = std::move(children);
        return {std::move(m), std::move(vars), std::move(node)};
    }

    CompileOptions options_;
    Automaton eq_, succ_, add_, v_;
};

}  // namespace

CompiledFormula compile(const FlatPtr& phi, const CompileOptions& options) {
    Compiler c(options);
    Result r = c.run(*phi);
    return {std::move(r.automaton), std::move(r.vars), std::move(r.node)};
}

CompiledFormula compile_formula(const FormulaPtr& phi, const CompileOptions& options) {
    CompiledFormula out = compile(flatten(phi), options);
    if (out.var_order != free_vars(*phi)) throw std::logic_error("flattening changed the free variables");
    return out;
}

CompiledFormula compile_sentence(const FormulaPtr& phi, const CompileOptions& options) {
    auto free = free_vars(*phi);
    if (!free.empty()) throw std::invalid_argument("not a sentence: free variable '" + free.front() + "'");
    return compile_formula(phi, options);
}

std::vector<const CompileNode*> violations(const CompileNode& root) {
    std::vector<const CompileNode*> out;
    auto walk = [&](auto&& self, const CompileNode& n) -> void {
        if (!n.ok) out.push_back(&n);
        for (const auto& c : n.children) self(self, c);
    };
    walk(walk, root);
    return out;
}

std::size_t node_count(const CompileNode& root) {
    std::size_t n = 1;
    for (const auto& c : root.children) n += node_count(c);
    return n;
}

std::string render_report(const CompileNode& root) {
    std::ostringstream os;
    auto walk = [&](auto&& self, const CompileNode& n, std::size_t depth) -> void {
        os << std::string(2 * depth, ' ') << n.n_connectives << ' ' << n.states << ' ' << n.bound.str() << ' '
           << (n.ok ? "ok" : "VIOLATION") << ' ' << n.fragment << '\n';
        for (const auto& c : n.children) self(self, c, depth + 1);
    };
    walk(walk, root, 0);
    return os.str();
}

}  // namespace buchi
