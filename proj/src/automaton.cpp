#include "buchi/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "buchi/kernels.hpp"

namespace buchi {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(unsigned base, unsigned tracks) : base_(base), tracks_(tracks), size_(1) {
    if (base < 2) throw std::invalid_argument("base must be at least 2");
    weights_.resize(tracks);
    for (unsigned t = 0; t < tracks; ++t) {
        weights_[t] = size_;
        size_ *= base;
        if (size_ > max_alphabet_size) throw std::length_error("alphabet too large: " + std::to_string(base) + "^" +
                                                               std::to_string(tracks) + " letters");
    }
}

Letter Alphabet::encode(std::span<const Digit> digits) const {
    if (digits.size() != tracks_) throw std::invalid_argument("letter has wrong number of tracks");
    std::size_t a = 0;
    for (unsigned t = 0; t < tracks_; ++t) {
        if (digits[t] >= base_) throw std::invalid_argument("digit out of range for base");
        a += digits[t] * weights_[t];
    }
    return static_cast<Letter>(a);
}

std::vector<Digit> Alphabet::decode(Letter a) const {
    std::vector<Digit> out(tracks_);
    for (unsigned t = 0; t < tracks_; ++t) out[t] = digit(a, t);
    return out;
}

Letter Alphabet::letter_of(const DigitWord& w, std::size_t pos) const {
    std::size_t a = 0;
    for (unsigned t = 0; t < tracks_; ++t) a += w.digit(pos, t) * weights_[t];
    return static_cast<Letter>(a);
}

// ---------------------------------------------------------------------------
// Construction

Automaton Automaton::dfa(unsigned base, unsigned tracks, State initial, std::vector<bool> accepting,
                         std::vector<State> table) {
    Automaton m(base, tracks);
    const std::size_t n = accepting.size();
    if (n == 0) throw std::invalid_argument("automaton needs at least one state");
    if (table.size() != n * m.letter_count()) throw std::invalid_argument("transition table has wrong size");
    if (initial >= n) throw std::invalid_argument("initial state out of range");
    for (State q : table)
        if (q >= n) throw std::invalid_argument("transition target out of range");
    m.deterministic_ = true;
    m.initial_ = {initial};
    m.accepting_ = std::move(accepting);
    m.targets_ = std::move(table);
    return m;
}

Automaton Automaton::nfa(unsigned base, unsigned tracks, std::vector<State> initial, std::vector<bool> accepting,
                         const std::vector<std::vector<State>>& edges) {
    Automaton m(base, tracks);
    const std::size_t n = accepting.size();
    if (n == 0) throw std::invalid_argument("automaton needs at least one state");
    if (edges.size() != n * m.letter_count()) throw std::invalid_argument("edge list has wrong size");
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    for (State q : initial)
        if (q >= n) throw std::invalid_argument("initial state out of range");
    m.deterministic_ = false;
    m.initial_ = std::move(initial);
    m.accepting_ = std::move(accepting);
    m.offsets_.reserve(edges.size() + 1);
    m.offsets_.push_back(0);
    for (const auto& e : edges) {
        std::vector<State> sorted = e;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (State q : sorted)
            if (q >= n) throw std::invalid_argument("transition target out of range");
        m.targets_.insert(m.targets_.end(), sorted.begin(), sorted.end());
        m.offsets_.push_back(m.targets_.size());
    }
    return m;
}

State Automaton::initial() const {
    if (!deterministic_) throw std::logic_error("initial() requires a deterministic automaton");
    return initial_.front();
}

std::span<const State> Automaton::successors(State q, Letter a) const {
    const std::size_t idx = static_cast<std::size_t>(q) * letter_count() + a;
    if (deterministic_) return {targets_.data() + idx, 1};
    return {targets_.data() + offsets_[idx], offsets_[idx + 1] - offsets_[idx]};
}

namespace {

void require_dfa(const Automaton& m, const char* op) {
    if (!m.deterministic()) throw std::invalid_argument(std::string(op) + " requires a deterministic automaton");
}

void require_same_alphabet(const Automaton& a, const Automaton& b) {
    if (a.base() != b.base() || a.tracks() != b.tracks())
        throw std::invalid_argument("automata have different bases or track counts");
}

}  // namespace

// ---------------------------------------------------------------------------
// Closure operations

Automaton complement(const Automaton& m) {
    require_dfa(m, "complement");
    std::vector<bool> acc(m.state_count());
    for (std::size_t q = 0; q < acc.size(); ++q) acc[q] = !m.is_accepting(static_cast<State>(q));
    std::vector<State> table(m.state_count() * m.letter_count());
    for (std::size_t q = 0; q < m.state_count(); ++q)
        for (std::size_t a = 0; a < m.letter_count(); ++a)
            table[q * m.letter_count() + a] = m.next(static_cast<State>(q), static_cast<Letter>(a));
    return Automaton::dfa(m.base(), m.tracks(), m.initial(), std::move(acc), std::move(table));
}

std::vector<bool> rejecting_sinks(const Automaton& m) {
    std::vector<bool> sink(m.state_count(), false);
    for (std::size_t q = 0; q < m.state_count(); ++q) {
        if (m.is_accepting(static_cast<State>(q))) continue;
        bool loops = true;
        for (std::size_t a = 0; a < m.letter_count() && loops; ++a) {
            auto succ = m.successors(static_cast<State>(q), static_cast<Letter>(a));
            loops = std::all_of(succ.begin(), succ.end(), [&](State r) { return r == q; });
        }
        sink[q] = loops;
    }
    return sink;
}

Automaton intersect(const Automaton& m0, const Automaton& m1) {
    require_dfa(m0, "intersect");
    require_dfa(m1, "intersect");
    require_same_alphabet(m0, m1);
    const std::size_t letters = m0.letter_count();
    const auto dead0 = rejecting_sinks(m0), dead1 = rejecting_sinks(m1);
    constexpr State unassigned = ~State{0};

    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::pair<State, State>> pairs;
    State sink = unassigned;
    auto id_of = [&](State a, State b) -> State {
        if (dead0[a] || dead1[b]) {
            if (sink == unassigned) {
                sink = static_cast<State>(pairs.size());
                pairs.emplace_back(a, b);
            }
            return sink;
        }
        std::uint64_t key = (std::uint64_t{a} << 32) | b;
        auto [it, inserted] = ids.emplace(key, static_cast<State>(pairs.size()));
        if (inserted) pairs.emplace_back(a, b);
        return it->second;
    };

    id_of(m0.initial(), m1.initial());
    std::vector<State> table;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        table.resize((i + 1) * letters);
        if (static_cast<State>(i) == sink) {
            std::fill(table.begin() + i * letters, table.end(), sink);
            continue;
        }
        auto [a, b] = pairs[i];
        for (std::size_t l = 0; l < letters; ++l) {
            auto letter = static_cast<Letter>(l);
            table[i * letters + l] = id_of(m0.next(a, letter), m1.next(b, letter));
        }
    }
    std::vector<bool> acc(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        acc[i] = static_cast<State>(i) != sink && m0.is_accepting(pairs[i].first) && m1.is_accepting(pairs[i].second);
    return Automaton::dfa(m0.base(), m0.tracks(), 0, std::move(acc), std::move(table));
}

namespace {

struct SubsetHash {
    std::size_t operator()(const std::vector<State>& v) const noexcept {
        std::size_t h = v.size();
        for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

Automaton determinize(const Automaton& m, Execution exec) {
    const std::size_t letters = m.letter_count();
    std::unordered_map<std::vector<State>, State, SubsetHash> ids;
    std::vector<std::vector<State>> subsets;
    auto id_of = [&](std::vector<State>& s) -> State {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        auto id = static_cast<State>(subsets.size());
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };

    std::vector<State> start = m.initial_states();
    id_of(start);
    std::vector<State> table;
    std::vector<std::vector<State>> images;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const std::vector<State> current = subsets[i];
        kernels::subset_image(m, current, images, exec);
        table.resize((i + 1) * letters);
        for (std::size_t a = 0; a < letters; ++a) table[i * letters + a] = id_of(images[a]);
    }
    std::vector<bool> acc(subsets.size());
    for (std::size_t i = 0; i < subsets.size(); ++i)
        acc[i] = std::any_of(subsets[i].begin(), subsets[i].end(), [&](State q) { return m.is_accepting(q); });
    return Automaton::dfa(m.base(), m.tracks(), 0, std::move(acc), std::move(table));
}

Automaton cylindrify(const Automaton& m, std::span<const unsigned> track_map, unsigned new_tracks) {
    if (track_map.size() != m.tracks()) throw std::invalid_argument("track map must cover every track");
    std::vector<bool> used(new_tracks, false);
    for (unsigned t : track_map) {
        if (t >= new_tracks || used[t]) throw std::invalid_argument("track map is not an injection");
        used[t] = true;
    }
    Alphabet wide(m.base(), new_tracks);
    const Alphabet& narrow = m.alphabet();
    std::vector<Letter> restrict(wide.size());
    std::vector<Digit> digits(m.tracks());
    for (std::size_t a = 0; a < wide.size(); ++a) {
        for (unsigned t = 0; t < m.tracks(); ++t) digits[t] = wide.digit(static_cast<Letter>(a), track_map[t]);
        restrict[a] = narrow.encode(digits);
    }
    const std::size_t n = m.state_count();
    if (m.deterministic()) {
        std::vector<State> table(n * wide.size());
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t a = 0; a < wide.size(); ++a)
                table[q * wide.size() + a] = m.next(static_cast<State>(q), restrict[a]);
        return Automaton::dfa(m.base(), new_tracks, m.initial(), m.accepting(), std::move(table));
    }
    std::vector<std::vector<State>> edges(n * wide.size());
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t a = 0; a < wide.size(); ++a) {
            auto succ = m.successors(static_cast<State>(q), restrict[a]);
            edges[q * wide.size() + a].assign(succ.begin(), succ.end());
        }
    return Automaton::nfa(m.base(), new_tracks, m.initial_states(), m.accepting(), edges);
}

Automaton project(const Automaton& m, unsigned track) {
    if (track >= m.tracks()) throw std::invalid_argument("projected track out of range");
    Alphabet narrow(m.base(), m.tracks() - 1);
    const Alphabet& wide = m.alphabet();
    const std::size_t n = m.state_count();
    std::vector<std::vector<State>> edges(n * narrow.size());
    std::vector<Digit> digits(m.tracks());
    for (std::size_t b = 0; b < narrow.size(); ++b) {
        for (unsigned t = 0, s = 0; t < m.tracks(); ++t)
            if (t != track) digits[t] = narrow.digit(static_cast<Letter>(b), s++);
        for (Digit d = 0; d < m.base(); ++d) {
            digits[track] = d;
            Letter a = wide.encode(digits);
            for (std::size_t q = 0; q < n; ++q) {
                auto succ = m.successors(static_cast<State>(q), a);
                auto& e = edges[q * narrow.size() + b];
                e.insert(e.end(), succ.begin(), succ.end());
            }
        }
    }
    return Automaton::nfa(m.base(), m.tracks() - 1, m.initial_states(), m.accepting(), edges);
}

Automaton zero_saturate(const Automaton& m) {
    const std::size_t n = m.state_count();
    // Reverse edges on the all-zero letter, then backward search from acceptance.
    std::vector<std::vector<State>> pred(n);
    for (std::size_t q = 0; q < n; ++q)
        for (State r : m.successors(static_cast<State>(q), 0)) pred[r].push_back(static_cast<State>(q));
    std::vector<bool> acc = m.accepting();
    std::deque<State> work;
    for (std::size_t q = 0; q < n; ++q)
        if (acc[q]) work.push_back(static_cast<State>(q));
    while (!work.empty()) {
        State r = work.front();
        work.pop_front();
        for (State q : pred[r])
            if (!acc[q]) {
                acc[q] = true;
                work.push_back(q);
            }
    }
    if (m.deterministic()) {
        std::vector<State> table(n * m.letter_count());
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t a = 0; a < m.letter_count(); ++a)
                table[q * m.letter_count() + a] = m.next(static_cast<State>(q), static_cast<Letter>(a));
        return Automaton::dfa(m.base(), m.tracks(), m.initial(), std::move(acc), std::move(table));
    }
    std::vector<std::vector<State>> edges(n * m.letter_count());
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t a = 0; a < m.letter_count(); ++a) {
            auto succ = m.successors(static_cast<State>(q), static_cast<Letter>(a));
            edges[q * m.letter_count() + a].assign(succ.begin(), succ.end());
        }
    return Automaton::nfa(m.base(), m.tracks(), m.initial_states(), std::move(acc), edges);
}

Automaton canonical(const Automaton& m) {
    require_dfa(m, "canonical");
    const std::size_t letters = m.letter_count();
    constexpr State unseen = ~State{0};
    std::vector<State> number(m.state_count(), unseen);
    std::vector<State> order;
    number[m.initial()] = 0;
    order.push_back(m.initial());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t a = 0; a < letters; ++a) {
            State r = m.next(order[i], static_cast<Letter>(a));
            if (number[r] == unseen) {
                number[r] = static_cast<State>(order.size());
                order.push_back(r);
            }
        }
    std::vector<State> table(order.size() * letters);
    std::vector<bool> acc(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        acc[i] = m.is_accepting(order[i]);
        for (std::size_t a = 0; a < letters; ++a) table[i * letters + a] = number[m.next(order[i], static_cast<Letter>(a))];
    }
    return Automaton::dfa(m.base(), m.tracks(), 0, std::move(acc), std::move(table));
}

Automaton minimize(const Automaton& input, Execution exec) {
    require_dfa(input, "minimize");
    Automaton m = canonical(input);
    const std::size_t n = m.state_count();
    std::vector<std::uint32_t> classes(n);
    for (std::size_t q = 0; q < n; ++q) classes[q] = m.is_accepting(static_cast<State>(q)) ? 1 : 0;
    // Normalize to first-occurrence numbering so the fixpoint test is a plain count.
    std::size_t count = 0;
    {
        std::uint32_t remap[2] = {~0u, ~0u};
        for (auto& c : classes) {
            if (remap[c] == ~0u) remap[c] = static_cast<std::uint32_t>(count++);
            c = remap[c];
        }
    }
    for (;;) {
        auto next = kernels::refine_partition(m, classes, exec);
        std::size_t next_count = next.empty() ? 0 : *std::max_element(next.begin(), next.end()) + 1;
        classes = std::move(next);
        if (next_count == count) break;
        count = next_count;
    }
    const std::size_t letters = m.letter_count();
    std::vector<State> table(count * letters);
    std::vector<bool> acc(count);
    for (std::size_t q = 0; q < n; ++q) {
        std::size_t c = classes[q];
        acc[c] = m.is_accepting(static_cast<State>(q));
        for (std::size_t a = 0; a < letters; ++a) table[c * letters + a] = classes[m.next(static_cast<State>(q), static_cast<Letter>(a))];
    }
    return canonical(Automaton::dfa(m.base(), m.tracks(), classes[m.initial()], std::move(acc), std::move(table)));
}

// ---------------------------------------------------------------------------
// Queries

bool is_empty(const Automaton& m) {
    std::vector<bool> seen(m.state_count(), false);
    std::deque<State> work;
    for (State q : m.initial_states()) {
        seen[q] = true;
        work.push_back(q);
    }
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        if (m.is_accepting(q)) return false;
        for (std::size_t a = 0; a < m.letter_count(); ++a)
            for (State r : m.successors(q, static_cast<Letter>(a)))
                if (!seen[r]) {
                    seen[r] = true;
                    work.push_back(r);
                }
    }
    return true;
}

bool accepts_letters(const Automaton& m, std::span<const Letter> word) {
    if (m.deterministic()) {
        State q = m.initial();
        for (Letter a : word) q = m.next(q, a);
        return m.is_accepting(q);
    }
    std::vector<State> current = m.initial_states(), next;
    std::vector<bool> mark(m.state_count(), false);
    for (Letter a : word) {
        next.clear();
        for (State q : current)
            for (State r : m.successors(q, a))
                if (!mark[r]) {
                    mark[r] = true;
                    next.push_back(r);
                }
        for (State r : next) mark[r] = false;
        current.swap(next);
    }
    return std::any_of(current.begin(), current.end(), [&](State q) { return m.is_accepting(q); });
}

bool accepts(const Automaton& m, const DigitWord& w) {
    if (w.base() != m.base() || w.tracks() != m.tracks())
        throw std::invalid_argument("word and automaton have different bases or track counts");
    const Alphabet& sigma = m.alphabet();
    if (m.deterministic()) {
        State q = m.initial();
        for (std::size_t i = 0; i < w.length(); ++i) q = m.next(q, sigma.letter_of(w, i));
        return m.is_accepting(q);
    }
    std::vector<Letter> letters(w.length());
    for (std::size_t i = 0; i < w.length(); ++i) letters[i] = sigma.letter_of(w, i);
    return accepts_letters(m, letters);
}

std::optional<DigitWord> shortest_accepted(const Automaton& input) {
    const Automaton m = input.deterministic() ? input : determinize(input);
    const std::size_t n = m.state_count(), letters = m.letter_count();
    // layers[j]: states reachable by words of length exactly j. Shortest
    // accepted words are no longer than the state count.
    std::vector<std::vector<bool>> layers;
    layers.emplace_back(n, false);
    layers[0][m.initial()] = true;
    std::size_t length = 0;
    auto hits_acceptance = [&](const std::vector<bool>& layer) {
        for (std::size_t q = 0; q < n; ++q)
            if (layer[q] && m.is_accepting(static_cast<State>(q))) return true;
        return false;
    };
    while (!hits_acceptance(layers[length])) {
        if (length >= n) return std::nullopt;
        std::vector<bool> next(n, false);
        for (std::size_t q = 0; q < n; ++q)
            if (layers[length][q])
                for (std::size_t a = 0; a < letters; ++a) next[m.next(static_cast<State>(q), static_cast<Letter>(a))] = true;
        layers.push_back(std::move(next));
        ++length;
    }
    // Choose letters from the end: at each position the least letter that still
    // connects some state of the layer to the already chosen suffix.
    std::vector<bool> target(n, false);
    for (std::size_t q = 0; q < n; ++q) target[q] = layers[length][q] && m.is_accepting(static_cast<State>(q));
    std::vector<Letter> word(length);
    for (std::size_t j = length; j-- > 0;) {
        std::vector<bool> source(n, false);
        bool found = false;
        for (std::size_t a = 0; a < letters && !found; ++a) {
            for (std::size_t q = 0; q < n; ++q)
                if (layers[j][q] && target[m.next(static_cast<State>(q), static_cast<Letter>(a))]) {
                    source[q] = true;
                    found = true;
                }
            if (found) word[j] = static_cast<Letter>(a);
        }
        target = std::move(source);
    }
    DigitWord out(m.base(), m.tracks());
    for (Letter a : word) out.push_letter(m.alphabet().decode(a));
    return out;
}

std::vector<DigitWord> enumerate(const Automaton& input, std::size_t max_len) {
    const Automaton m = input.deterministic() ? input : determinize(input);
    const std::size_t n = m.state_count(), letters = m.letter_count();
    // live[r][q]: some accepted word of length <= r starts at q.
    std::vector<std::vector<bool>> live(max_len + 1, std::vector<bool>(n, false));
    for (std::size_t q = 0; q < n; ++q) live[0][q] = m.is_accepting(static_cast<State>(q));
    for (std::size_t r = 1; r <= max_len; ++r)
        for (std::size_t q = 0; q < n; ++q) {
            bool ok = live[r - 1][q];
            for (std::size_t a = 0; a < letters && !ok; ++a) ok = live[r - 1][m.next(static_cast<State>(q), static_cast<Letter>(a))];
            live[r][q] = ok;
        }
    std::vector<std::vector<Letter>> found;
    std::vector<Letter> path;
    auto dfs = [&](auto&& self, State q) -> void {
        if (m.is_accepting(q) && (path.empty() || path.back() != 0)) found.push_back(path);
        if (path.size() == max_len) return;
        for (std::size_t a = 0; a < letters; ++a) {
            State r = m.next(q, static_cast<Letter>(a));
            if (!live[max_len - path.size() - 1][r]) continue;
            path.push_back(static_cast<Letter>(a));
            self(self, r);
            path.pop_back();
        }
    };
    if (live[max_len][m.initial()]) dfs(dfs, m.initial());
    std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<DigitWord> out;
    out.reserve(found.size());
    for (const auto& w : found) {
        DigitWord d(m.base(), m.tracks());
        for (Letter a : w) d.push_letter(m.alphabet().decode(a));
        out.push_back(std::move(d));
    }
    return out;
}

namespace {

std::string letter_text(const Alphabet& sigma, Letter a) {
    std::string s = "(";
    for (unsigned t = 0; t < sigma.tracks(); ++t) {
        if (t) s += ',';
        s += std::to_string(sigma.digit(a, t));
    }
    return s + ")";
}

}  // namespace

std::string to_dot(const Automaton& m, bool elide_dead) {
    const auto dead = rejecting_sinks(m);
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n";
    for (std::size_t q = 0; q < m.state_count(); ++q) {
        if (elide_dead && dead[q]) continue;
        os << "  q" << q << " [shape=" << (m.is_accepting(static_cast<State>(q)) ? "doublecircle" : "circle") << "];\n";
    }
    for (State q : m.initial_states()) os << "  init -> q" << q << ";\n";
    for (std::size_t q = 0; q < m.state_count(); ++q) {
        if (elide_dead && dead[q]) continue;
        std::map<State, std::vector<Letter>> by_target;
        for (std::size_t a = 0; a < m.letter_count(); ++a)
            for (State r : m.successors(static_cast<State>(q), static_cast<Letter>(a))) by_target[r].push_back(static_cast<Letter>(a));
        for (const auto& [r, labels] : by_target) {
            if (elide_dead && dead[r]) continue;
            os << "  q" << q << " -> q" << r << " [label=\"";
            if (labels.size() == m.letter_count()) {
                os << '*';
            } else {
                for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? " " : "") << letter_text(m.alphabet(), labels[i]);
            }
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string serialize(const Automaton& m) {
    std::ostringstream os;
    os << "automaton\n";
    os << "base " << m.base() << "\n";
    os << "tracks " << m.tracks() << "\n";
    os << "states " << m.state_count() << "\n";
    os << "deterministic " << (m.deterministic() ? 1 : 0) << "\n";
    os << "initial";
    for (State q : m.initial_states()) os << ' ' << q;
    os << "\naccepting";
    for (std::size_t q = 0; q < m.state_count(); ++q)
        if (m.is_accepting(static_cast<State>(q))) os << ' ' << q;
    os << "\ntransitions\n";
    for (std::size_t q = 0; q < m.state_count(); ++q)
        for (std::size_t a = 0; a < m.letter_count(); ++a)
            for (State r : m.successors(static_cast<State>(q), static_cast<Letter>(a)))
                os << q << ' ' << letter_text(m.alphabet(), static_cast<Letter>(a)) << ' ' << r << '\n';
    os << "end\n";
    return os.str();
}

Automaton deserialize(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto bad = [](const std::string& why) { return std::invalid_argument("malformed automaton: " + why); };
    auto next_line = [&]() -> std::string {
        if (!std::getline(in, line)) throw bad("unexpected end of input");
        return line;
    };
    auto keyed = [&](const char* key) {
        std::istringstream ls(next_line());
        std::string k;
        ls >> k;
        if (k != key) throw bad(std::string("expected '") + key + "'");
        std::vector<std::size_t> values;
        std::size_t v;
        while (ls >> v) values.push_back(v);
        return values;
    };
    if (next_line() != "automaton") throw bad("missing header");
    auto base = keyed("base"), tracks = keyed("tracks"), states = keyed("states"), det = keyed("deterministic");
    if (base.size() != 1 || tracks.size() != 1 || states.size() != 1 || det.size() != 1) throw bad("header fields");
    auto initial = keyed("initial"), accepting = keyed("accepting");
    if (next_line() != "transitions") throw bad("missing transitions");
    Alphabet sigma(static_cast<unsigned>(base[0]), static_cast<unsigned>(tracks[0]));
    const std::size_t n = states[0];
    std::vector<std::vector<State>> edges(n * sigma.size());
    for (;;) {
        next_line();
        if (line == "end") break;
        std::size_t open = line.find('('), close = line.find(')');
        if (open == std::string::npos || close == std::string::npos) throw bad("transition line");
        std::size_t q = std::stoul(line.substr(0, open));
        std::size_t r = std::stoul(line.substr(close + 1));
        std::vector<Digit> digits;
        std::istringstream ds(line.substr(open + 1, close - open - 1));
        std::string part;
        while (std::getline(ds, part, ','))
            if (!part.empty()) digits.push_back(static_cast<Digit>(std::stoul(part)));
        if (q >= n) throw bad("state out of range");
        edges[q * sigma.size() + sigma.encode(digits)].push_back(static_cast<State>(r));
    }
    std::vector<bool> acc(n, false);
    for (auto q : accepting) {
        if (q >= n) throw bad("accepting state out of range");
        acc[q] = true;
    }
    std::vector<State> init(initial.begin(), initial.end());
    if (det[0]) {
        if (init.size() != 1) throw bad("deterministic automaton needs one initial state");
        std::vector<State> table(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].size() != 1) throw bad("deterministic automaton must be complete");
            table[i] = edges[i][0];
        }
        return Automaton::dfa(sigma.base(), sigma.tracks(), init[0], std::move(acc), std::move(table));
    }
    return Automaton::nfa(sigma.base(), sigma.tracks(), std::move(init), std::move(acc), edges);
}

bool identical(const Automaton& a, const Automaton& b) {
    if (a.base() != b.base() || a.tracks() != b.tracks() || a.deterministic() != b.deterministic() ||
        a.state_count() != b.state_count() || a.initial_states() != b.initial_states() || a.accepting() != b.accepting())
        return false;
    for (std::size_t q = 0; q < a.state_count(); ++q)
        for (std::size_t l = 0; l < a.letter_count(); ++l) {
            auto x = a.successors(static_cast<State>(q), static_cast<Letter>(l));
            auto y = b.successors(static_cast<State>(q), static_cast<Letter>(l));
            if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
        }
    return true;
}

}  // namespace buchi
