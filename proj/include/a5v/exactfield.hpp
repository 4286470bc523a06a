// Exact arithmetic in real quadratic tower fields.
//
// A tower is a chain Q = F_0 < F_1 < ... < F_h where F_{i+1} = F_i(sqrt(r_i))
// for a radicand r_i in F_i that is positive under the fixed real embedding
// and certified not to be a square in F_i. Elements are dense coefficient
// vectors over the multiplicative basis {prod_{i in S} sqrt(r_i)}, indexed by
// the bitmask S (bit i <-> level i+1).
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace a5v {

using Integer = mpz_class;
using Rational = mpq_class;

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public FieldError {
public:
    DivisionByZero() : FieldError("division by zero") {}
};

class IncompatibleTowers : public FieldError {
public:
    IncompatibleTowers() : FieldError("incompatible towers: no common refinement") {}
};

struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

class AlgebraicNumber;
class TowerSpec;
using Tower = std::shared_ptr<const TowerSpec>;

class TowerSpec {
public:
    /// The height-0 tower Q.
    static const Tower& rationals();

    int height() const { return height_; }
    std::size_t degree() const { return std::size_t{1} << height_; }
    const Tower& parent() const { return parent_; }
    const std::string& symbol() const { return symbol_; }
    const AlgebraicNumber& radicand() const;

    /// Levels bottom-up; levels()[i] is the tower of height i+1.
    std::vector<const TowerSpec*> levels() const;
    const TowerSpec& at_height(int h) const;

    /// True iff `other` is this tower or one of its subfields in the chain
    /// (structural comparison of radicands, symbols ignored).
    bool extends(const TowerSpec& other) const;
    bool same_field(const TowerSpec& other) const;

    /// Basis monomial name, e.g. "1", "r2", "r2*r5*u".
    std::string basis_name(std::size_t index) const;

    nlohmann::json to_json() const;
    static Tower from_json(const nlohmann::json& j);

private:
    TowerSpec() = default;
    friend Tower adjoin_sqrt(const Tower& base, const AlgebraicNumber& r, std::string symbol);
    friend Tower adjoin_unchecked(const Tower& base, const AlgebraicNumber& r, std::string symbol);

    Tower parent_;
    std::string symbol_;
    std::unique_ptr<AlgebraicNumber> radicand_;
    int height_ = 0;
};

class AlgebraicNumber {
public:
    AlgebraicNumber();
    AlgebraicNumber(long v);  // NOLINT: implicit integers are ring constants
    AlgebraicNumber(const Rational& v);  // NOLINT
    AlgebraicNumber(Tower tower, std::vector<Rational> coefficients);

    /// sqrt(r_h), the generator adjoined at the top level of `tower`.
    static AlgebraicNumber generator(const Tower& tower);
    static AlgebraicNumber parse_rational(const std::string& text);

    const Tower& tower() const { return tower_; }
    std::span<const Rational> coefficients() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    /// The rational value; throws unless is_rational().
    Rational rational_value() const;

    /// Pads the coefficient vector into a tower extending this one.
    AlgebraicNumber embed(const Tower& bigger) const;

    AlgebraicNumber inverse() const;

    /// -1, 0 or +1 under the fixed real embedding.
    int sign() const;
    /// Interval containing the value with hi - lo <= width_bound.
    RationalInterval to_interval(const Rational& width_bound) const;

    std::string to_string() const;
    std::string to_decimal(int digits) const;

    nlohmann::json to_json() const;
    static AlgebraicNumber from_json(const nlohmann::json& j);

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a);
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);

    AlgebraicNumber& operator+=(const AlgebraicNumber& b) { return *this = *this + b; }
    AlgebraicNumber& operator-=(const AlgebraicNumber& b) { return *this = *this - b; }
    AlgebraicNumber& operator*=(const AlgebraicNumber& b) { return *this = *this * b; }

private:
    Tower tower_;
    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& a);

/// Smallest tower containing both (one must extend the other).
Tower common_tower(const Tower& a, const Tower& b);

/// Nonnegative square root if `r` is a square in its tower, else nullopt.
/// Throws FieldError for negative input.
std::optional<AlgebraicNumber> try_sqrt(const AlgebraicNumber& r);

/// Returns base(sqrt(r)). Requires r > 0 and r not a square in base.
Tower adjoin_sqrt(const Tower& base, const AlgebraicNumber& r, std::string symbol);

/// Square root of r >= 0, adjoining it to `tower` if needed. `tower` is
/// updated to the (possibly extended) tower; the root lies in it.
AlgebraicNumber sqrt_or_adjoin(Tower& tower, const AlgebraicNumber& r, const std::string& symbol);

/// K = Q(sqrt2)(sqrt3)(sqrt5)(u), u = sqrt(10 - 2 sqrt5).
const Tower& canonical_k();

struct NamedConstants {
    AlgebraicNumber sqrt2, sqrt3, sqrt5, sqrt6, u;
    AlgebraicNumber cos_2pi_5, sin_2pi_5, cos_pi_5, sin_pi_5;
};

/// Exact trigonometric and radical constants, all in K.
const NamedConstants& named_constants();

/// Decimal rendering of a rational interval midpoint.
std::string rational_to_decimal(const Rational& x, int digits);

}  // namespace a5v
