#include "buchi/axioms.hpp"

#include <sstream>
#include <stdexcept>

#include "buchi/decision.hpp"

namespace buchi {

std::vector<AxiomInstance> axiom_list(unsigned p) {
    if (p < 2) throw std::invalid_argument("base must be at least 2");
    const std::string ps = std::to_string(p);
    std::string v3;
    for (unsigned i = 1; i < p; ++i) {
        if (i > 1) v3 += " & ";
        v3 += "V(" + ps + "*x + " + std::to_string(i) + ") = 1";
    }
    const std::pair<const char*, std::string> source[] = {
        {"S0", "S(x) = S(y) -> x = y"},
        {"S1", "!(0 = S(x))"},
        {"S2", "x = 0 | E y. x = S(y)"},
        {"A0", "x + 0 = x"},
        {"A1", "x + S(y) = S(x + y)"},
        {"V0", "V(0) = 0"},
        {"V1", "V(1) = 1"},
        {"V2", "V(" + ps + "*x) = " + ps + "*V(x)"},
        {"V3", v3},
    };
    std::vector<AxiomInstance> out;
    for (const auto& [label, text] : source) out.push_back({label, universal_closure(parse(text)), std::nullopt});
    return out;
}

std::vector<AxiomVerdict> check_base_axioms(unsigned p, Execution exec) {
    std::vector<AxiomVerdict> out;
    for (auto& a : axiom_list(p)) {
        bool holds = decide(a.sentence, p, exec);
        out.push_back({std::move(a), holds});
    }
    return out;
}

std::string render_axiom_table(const std::vector<AxiomVerdict>& verdicts) {
    std::ostringstream os;
    for (const auto& v : verdicts)
        os << v.axiom.label << '\t' << render(*v.axiom.sentence) << '\t' << (v.holds ? "true" : "false") << '\n';
    return os.str();
}

namespace {

std::string only_var(const Formula& phi) {
    auto free = free_vars(phi);
    if (free.size() != 1)
        throw std::invalid_argument("expected exactly one free variable, found " + std::to_string(free.size()));
    return free.front();
}

}  // namespace

AxiomInstance bound_instance(const FormulaPtr& phi, unsigned p) {
    const std::string x = only_var(*phi);
    TowerInt n = n_phi(p, complexity(*phi).length);
    // The numeral is never built: the sentence is the premise E x. phi and the
    // bound travels separately.
    return {"Bound", Formula::make_exists(x, phi), n};
}

std::string render_bound_instance(const FormulaPtr& phi, unsigned p) {
    const std::string x = only_var(*phi);
    TowerInt n = n_phi(p, complexity(*phi).length);
    const std::string body = render(*phi);
    return "E " + x + ". " + body + " -> E " + x + " <= [" + n.str() + "]. " + body;
}

}  // namespace buchi
