#include "buchi/bounds.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace buchi {

namespace mp = boost::multiprecision;

const BigInt& default_cutoff() {
    static const BigInt cutoff = BigInt(1) << 64;
    return cutoff;
}

TowerInt::TowerInt(BigInt v) : value_(std::move(v)) {
    if (value_ < 0) throw std::invalid_argument("TowerInt must be nonnegative");
    if (value_ >= default_cutoff()) throw std::invalid_argument("exact TowerInt above cutoff; use TowerInt::power");
}

const BigInt& TowerInt::exact_value() const {
    if (!is_exact()) throw std::logic_error("exact_value() on symbolic TowerInt");
    return value_;
}

const TowerInt& TowerInt::exponent() const {
    if (is_exact()) throw std::logic_error("exponent() on exact TowerInt");
    return *exponent_;
}

std::size_t TowerInt::height() const { return is_exact() ? 0 : 1 + exponent_->height(); }

TowerInt TowerInt::power(std::uint64_t base, const TowerInt& exponent, const BigInt& cutoff) {
    if (base < 2) throw std::invalid_argument("TowerInt::power needs base >= 2");
    if (exponent.is_exact()) {
        const BigInt& e = exponent.exact_value();
        std::size_t cutoff_bits = cutoff == 0 ? 0 : mp::msb(cutoff) + 1;
        // base^e >= 2^e, so only small exponents can stay below the cutoff.
        if (e <= cutoff_bits) {
            BigInt v = mp::pow(BigInt(base), static_cast<unsigned>(e));
            if (v < cutoff) {
                TowerInt out;
                out.value_ = std::move(v);
                return out;
            }
        }
    }
    TowerInt out;
    out.base_ = base;
    out.exponent_ = std::make_shared<const TowerInt>(exponent);
    return out;
}

std::optional<BigInt> to_big(const TowerInt& a, std::size_t max_bits) {
    if (a.is_exact()) {
        if (a.exact_value() != 0 && mp::msb(a.exact_value()) + 1 > max_bits) return std::nullopt;
        return a.exact_value();
    }
    auto e = to_big(a.exponent(), 40);
    if (!e) return std::nullopt;
    double bits = static_cast<double>(*e) * std::log2(static_cast<double>(a.base()));
    if (bits > static_cast<double>(max_bits) + 1) return std::nullopt;
    BigInt v = mp::pow(BigInt(a.base()), static_cast<unsigned>(*e));
    if (v != 0 && mp::msb(v) + 1 > max_bits) return std::nullopt;
    return v;
}

BigInt to_exact(const TowerInt& a) {
    if (!a.is_exact()) throw TowerOverflow(a);
    return a.exact_value();
}

TowerOverflow::TowerOverflow(const TowerInt& symbolic)
    : std::overflow_error("value exceeds materialization cutoff: " + symbolic.str()), symbolic_(symbolic) {}

TowerInt tower2(std::size_t m, std::uint64_t k) {
    TowerInt t(k);
    for (std::size_t i = 0; i < m; ++i) t = TowerInt::power(2, t);
    return t;
}

TowerInt n_phi(std::uint64_t p, std::size_t length) { return TowerInt::power(p, tower2(length, 3)); }

namespace {

constexpr long double neg_inf = -std::numeric_limits<long double>::infinity();

long double iterate_log2(long double x, std::size_t times) {
    for (std::size_t i = 0; i < times; ++i) {
        if (!(x > 0)) return neg_inf;
        x = std::log2(x);
    }
    return x;
}

long double to_ld(const BigInt& v) { return v.convert_to<long double>(); }

// log2 applied `j` times to the represented value, as a long double.
long double iterated_log(const TowerInt& t, std::size_t j) {
    if (t.is_exact()) return iterate_log2(to_ld(t.exact_value()), j);
    long double lb = std::log2(static_cast<long double>(t.base()));
    if (j == 0) return std::pow(static_cast<long double>(t.base()), iterated_log(t.exponent(), 0));
    if (j == 1) return iterated_log(t.exponent(), 0) * lb;
    return iterate_log2(iterated_log(t.exponent(), 1) + std::log2(lb), j - 2);
}

}  // namespace

std::strong_ordering cmp(const TowerInt& a, const TowerInt& b) {
    if (a.is_exact() && b.is_exact()) {
        if (a.exact_value() < b.exact_value()) return std::strong_ordering::less;
        if (a.exact_value() > b.exact_value()) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    if (a.is_exact() || b.is_exact()) {
        const TowerInt& ex = a.is_exact() ? a : b;
        const TowerInt& sym = a.is_exact() ? b : a;
        std::size_t bits = ex.exact_value() == 0 ? 1 : mp::msb(ex.exact_value()) + 2;
        std::strong_ordering ex_vs_sym = std::strong_ordering::less;
        if (auto v = to_big(sym, bits)) {
            if (ex.exact_value() > *v) ex_vs_sym = std::strong_ordering::greater;
            else if (ex.exact_value() == *v) ex_vs_sym = std::strong_ordering::equal;
        }
        return a.is_exact() ? ex_vs_sym : 0 <=> ex_vs_sym;
    }
    auto by_exponent = cmp(a.exponent(), b.exponent());
    auto by_base = a.base() <=> b.base();
    if (by_base == 0) return by_exponent;
    if (by_exponent == 0 || by_exponent == by_base) return by_base;
    auto va = to_big(a), vb = to_big(b);
    if (va && vb) {
        if (*va < *vb) return std::strong_ordering::less;
        if (*va > *vb) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    // Different bases and at least one huge value: compare on the
    // level-index scale after taking as many logarithms as the taller tower.
    std::size_t j = std::max(a.height(), b.height());
    long double la = iterated_log(a, j), lb = iterated_log(b, j);
    if (la < lb) return std::strong_ordering::less;
    if (la > lb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const TowerInt& a, const TowerInt& b) { return cmp(a, b); }

namespace {

std::string exponent_str(const TowerInt& e) {
    if (e.is_exact()) return e.str();
    // Recognize 2_m^3 for m >= 1; heights of 2_m^3 are m - 2 for m >= 3.
    std::size_t limit = e.height() + 3;
    TowerInt t(3);
    for (std::size_t m = 1; m <= limit; ++m) {
        t = TowerInt::power(2, t);
        if (t.height() == e.height() && cmp(t, e) == 0) return "2_" + std::to_string(m) + "^3";
    }
    return e.str();
}

}  // namespace

std::string TowerInt::str() const {
    if (is_exact()) return value_.str();
    std::ostringstream os;
    if (exponent_->is_exact()) os << base_ << '^' << exponent_->str();
    else os << base_ << "^(" << exponent_str(*exponent_) << ')';
    return os.str();
}

}  // namespace buchi
