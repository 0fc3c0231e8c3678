#pragma once

// Exact-or-symbolic naturals for iterated exponents 2_m^k and the scheme bound
// n = p^(2_len^3). Values below the materialization cutoff are kept exact;
// larger ones are kept as a symbolic power base^exponent.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace buchi {

using BigInt = boost::multiprecision::cpp_int;

/// 2^64, the default materialization cutoff.
const BigInt& default_cutoff();

class TowerInt {
public:
    /// Exact value; throws if v >= cutoff (use power() for large values).
    explicit TowerInt(BigInt v = 0);
    TowerInt(std::uint64_t v) : TowerInt(BigInt(v)) {}
    TowerInt(int v) : TowerInt(BigInt(v)) {}

    /// base^exponent in canonical form: exact below the cutoff, symbolic above.
    static TowerInt power(std::uint64_t base, const TowerInt& exponent, const BigInt& cutoff = default_cutoff());

    bool is_exact() const { return !exponent_; }
    const BigInt& exact_value() const;       // precondition: is_exact()
    std::uint64_t base() const { return base_; }
    const TowerInt& exponent() const;        // precondition: !is_exact()

    /// Height of the symbolic tower (0 for exact values).
    std::size_t height() const;

    /// Exact digits or "b^(...)" tower notation; exponents equal to 2_m^3 with
    /// m >= 1 render as "2_m^3".
    std::string str() const;

    friend std::strong_ordering operator<=>(const TowerInt& a, const TowerInt& b);
    friend bool operator==(const TowerInt& a, const TowerInt& b) { return (a <=> b) == 0; }

private:
    BigInt value_;
    std::uint64_t base_ = 0;
    std::shared_ptr<const TowerInt> exponent_;
};

class TowerOverflow : public std::overflow_error {
public:
    explicit TowerOverflow(const TowerInt& symbolic);
    const TowerInt& symbolic() const { return symbolic_; }

private:
    TowerInt symbolic_;
};

/// Iterated exponent: 2_0^k = k, 2_{m+1}^k = 2^(2_m^k).
TowerInt tower2(std::size_t m, std::uint64_t k);

/// The scheme bound p^(2_length^3).
TowerInt n_phi(std::uint64_t p, std::size_t length);

std::strong_ordering cmp(const TowerInt& a, const TowerInt& b);

/// Materializes an exact value; throws TowerOverflow for symbolic values.
BigInt to_exact(const TowerInt& a);

/// Materializes when the value has at most max_bits bits, even above the cutoff.
std::optional<BigInt> to_big(const TowerInt& a, std::size_t max_bits = 1u << 16);

}  // namespace buchi
