// Command-line front end: one query per invocation.
//
// Exit status: 0 for true / success, 1 for false / no result, 2 for usage
// and parse errors.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "buchi/axioms.hpp"
#include "buchi/compiler.hpp"
#include "buchi/decision.hpp"
#include "buchi/kernels.hpp"

#ifndef BUCHI_CORPUS_PATH
#define BUCHI_CORPUS_PATH "data/corpus.txt"
#endif

namespace {

using namespace buchi;

constexpr int exit_true = 0;
constexpr int exit_false = 1;
constexpr int exit_usage = 2;

struct Globals {
    unsigned base = 2;
    bool no_minimize = false;

    CompileOptions options() const { return {base, no_minimize, Execution::parallel}; }
};

FormulaPtr read_formula(const std::string& text) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        std::cerr << "  " << text << '\n' << "  " << std::string(e.position(), ' ') << "^\n";
        throw;
    }
}

std::string tuple_text(const std::vector<Natural>& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + std::to_string(t[i]);
    return s;
}

int run_selftest(const std::string& path, std::optional<Natural> oracle_bound, Natural limit) {
    std::vector<CorpusEntry> corpus;
    try {
        corpus = load_corpus(path);
    } catch (const ParseError& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return exit_usage;
    }
    std::size_t mismatches = 0, checks = 0;
    for (const auto& e : corpus) {
        const Natural B = oracle_bound.value_or(e.bound);
        const auto free = free_vars(*e.formula);
        for (unsigned p : e.bases) {
            std::size_t bad = 0;
            if (free.empty()) {
                bad = decide(e.formula, p) != bounded_eval(*e.formula, {}, B, p);
                ++checks;
            } else if (free.size() == 1) {
                auto compiled = compile_formula(e.formula, CompileOptions{p, false, Execution::parallel});
                auto automaton = kernels::accepts_range(compiled.automaton, limit, Execution::parallel);
                auto oracle = bounded_eval_range(*e.formula, limit, B, p);
                for (Natural n = 0; n <= limit; ++n) bad += automaton[n] != oracle[n];
                checks += limit + 1;
            } else {
                continue;
            }
            mismatches += bad;
            std::cout << (bad ? "MISMATCH " : "ok ") << "p=" << p << " B=" << B << ' ' << e.text;
            if (bad) std::cout << " (" << bad << ")";
            std::cout << '\n';
        }
    }
    std::cout << checks << " checks, " << mismatches << " mismatches\n";
    return mismatches ? exit_false : exit_true;
}

}  // namespace


int main(int argc, char** argv) {
    CLI::App app{"Decision procedure for addition with the p-adic valuation over the naturals"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--base,-p", g.base, "Number base p (default 2)")->check(CLI::Range(2u, 64u));
    app.add_flag("--no-minimize", g.no_minimize, "Audit mode: keep raw construction sizes");

    std::string formula;
    auto* decide_cmd = app.add_subcommand("decide", "Truth of a sentence");
    decide_cmd->add_option("formula", formula, "Sentence")->required();

    auto* witness_cmd = app.add_subcommand("witness", "Least solution of a one-variable formula");
    witness_cmd->add_option("formula", formula, "Formula with one free variable")->required();

    Natural max = 100;
    auto* solutions_cmd = app.add_subcommand("solutions", "All solutions up to a limit");
    solutions_cmd->add_option("formula", formula, "Formula with at most three free variables")->required();
    solutions_cmd->add_option("--max", max, "Largest component value listed");

    bool dot = false, serialized = false, report = false;
    auto* compile_cmd = app.add_subcommand("compile", "Compile a formula to an automaton");
    compile_cmd->add_option("formula", formula, "Formula")->required();
    auto* dot_flag = compile_cmd->add_flag("--dot", dot, "Graphviz output");
    compile_cmd->add_flag("--serialize", serialized, "Text serialization")->excludes(dot_flag);
    compile_cmd->add_flag("--report", report, "Per-node state counts and bounds");

    auto* bound_cmd = app.add_subcommand("bound-check", "Witness and state bounds of a one-variable formula");
    bound_cmd->add_option("formula", formula, "Formula with one free variable")->required();

    bool check = false;
    auto* axioms_cmd = app.add_subcommand("axioms", "List the fixed axioms");
    axioms_cmd->add_flag("--check", check, "Decide each axiom");

    std::string corpus = BUCHI_CORPUS_PATH;
    std::optional<Natural> oracle_bound;
    Natural limit = 2000;
    auto* selftest_cmd = app.add_subcommand("selftest", "Compare automata with the bounded evaluator on the corpus");
    selftest_cmd->add_option("--corpus", corpus, "Corpus file");
    selftest_cmd->add_option("--oracle-bound", oracle_bound, "Quantifier bound overriding the corpus directives");
    selftest_cmd->add_option("--limit", limit, "Largest value of the free variable checked");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_true : exit_usage;
    }

    try {
        if (*decide_cmd) {
            bool truth = decide(read_formula(formula), g.options());
            std::cout << (truth ? "true" : "false") << '\n';
            return truth ? exit_true : exit_false;
        }
        if (*witness_cmd) {
            auto w = min_witness(read_formula(formula), g.options());
            std::cout << (w ? std::to_string(*w) : "none") << '\n';
            return w ? exit_true : exit_false;
        }
        if (*solutions_cmd) {
            auto phi = read_formula(formula);
            auto sols = solutions(phi, max, g.options());
            for (const auto& t : sols) std::cout << tuple_text(t) << '\n';
            return sols.empty() ? exit_false : exit_true;
        }
        if (*compile_cmd) {
            auto compiled = compile_formula(read_formula(formula), g.options());
            if (dot) std::cout << to_dot(compiled.automaton);
            else if (serialized) std::cout << serialize(compiled.automaton);
            else {
                std::cout << "variables:";
                for (const auto& v : compiled.var_order) std::cout << ' ' << v;
                std::cout << "\nstates: " << compiled.automaton.state_count() << '\n';
            }
            if (report) std::cout << render_report(compiled.report);
            return exit_true;
        }
        if (*bound_cmd) {
            auto phi = read_formula(formula);
            auto r = verify_bound(phi, g.base);
            std::cout << render_bound_report(r, g.base);
            std::cout << "instance: " << render_bound_instance(phi, g.base) << '\n';
            return r.witness_le_p_pow_states && r.states_le_tower ? exit_true : exit_false;
        }
        if (*axioms_cmd) {
            if (!check) {
                for (const auto& a : axiom_list(g.base)) std::cout << a.label << '\t' << render(*a.sentence) << "\t-\n";
                return exit_true;
            }
            auto verdicts = check_base_axioms(g.base);
            std::cout << render_axiom_table(verdicts);
            for (const auto& v : verdicts)
                if (!v.holds) return exit_false;
            return exit_true;
        }
        if (*selftest_cmd) return run_selftest(corpus, oracle_bound, limit);
    } catch (const ParseError&) {
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
