#pragma once

// Shared helpers for the test binaries: random words, a reference simulator
// and corpus access.

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "buchi/automaton.hpp"
#include "buchi/decision.hpp"
#include "buchi/syntax.hpp"

#ifndef BUCHI_CORPUS_PATH
#define BUCHI_CORPUS_PATH "data/corpus.txt"
#endif

namespace testing_support {

using namespace buchi;

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0x5eed);
    return engine;
}

inline DigitWord random_word(unsigned p, unsigned tracks, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<Digit> digit(0, p - 1);
    DigitWord w(p, tracks);
    std::vector<Digit> letter(tracks);
    for (std::size_t n = len(rng()); n > 0; --n) {
        for (auto& d : letter) d = digit(rng());
        w.push_letter(letter);
    }
    return w;
}

inline DigitWord padded(DigitWord w, std::size_t zeros = 1) {
    for (std::size_t i = 0; i < zeros; ++i) w.push_zero_letter();
    return w;
}

// Path-set simulation straight from the transition relation; shares no code
// with determinize or the DFA fast path.
inline bool simulate(const Automaton& m, const DigitWord& w) {
    std::vector<State> current = m.initial_states();
    for (std::size_t i = 0; i < w.length(); ++i) {
        std::vector<State> next;
        Letter a = m.alphabet().letter_of(w, i);
        for (State q : current)
            for (State r : m.successors(q, a)) next.push_back(r);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        current = std::move(next);
    }
    for (State q : current)
        if (m.is_accepting(q)) return true;
    return false;
}

inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = load_corpus(BUCHI_CORPUS_PATH);
    return entries;
}

inline std::vector<CorpusEntry> corpus_with_free_vars(std::size_t count) {
    std::vector<CorpusEntry> out;
    for (const auto& e : corpus())
        if (free_vars(*e.formula).size() == count) out.push_back(e);
    return out;
}

// Flat formula back into the general syntax, for evaluation.
inline FormulaPtr unflatten(const FlatFormula& f) {
    switch (f.kind) {
    case FlatFormula::Kind::atom: {
        const auto& v = f.atom.vars;
        auto var = [](const std::string& n) { return Term::make_var(n); };
        switch (f.atom.kind) {
        case FlatAtom::Kind::var_eq: return Formula::make_eq(var(v[0]), var(v[1]));
        case FlatAtom::Kind::succ_eq: return Formula::make_eq(Term::make_succ(var(v[0])), var(v[1]));
        case FlatAtom::Kind::add_eq: return Formula::make_eq(Term::make_add(var(v[0]), var(v[1])), var(v[2]));
        case FlatAtom::Kind::vp_eq: return Formula::make_eq(Term::make_vp(var(v[0])), var(v[1]));
        }
        break;
    }
    case FlatFormula::Kind::not_: return Formula::make_not(unflatten(*f.left));
    case FlatFormula::Kind::and_: return Formula::make_and(unflatten(*f.left), unflatten(*f.right));
    case FlatFormula::Kind::or_: return Formula::make_or(unflatten(*f.left), unflatten(*f.right));
    case FlatFormula::Kind::imp: return Formula::make_imp(unflatten(*f.left), unflatten(*f.right));
    case FlatFormula::Kind::exists: return Formula::make_exists(f.var, unflatten(*f.left));
    case FlatFormula::Kind::forall: return Formula::make_forall(f.var, unflatten(*f.left));
    }
    throw std::logic_error("unknown flat formula kind");
}

}  // namespace testing_support
