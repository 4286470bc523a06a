// Polynomials in (a1, b1, a2, b2, a3, b3) over tower fields, kept in normal
// form modulo b_i^2 = 1 - a_i^2, and first-order jets over any ring.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "a5v/exactfield.hpp"

namespace a5v {

class PolyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Variable indices: 0 = a1, 1 = b1, 2 = a2, 3 = b2, 4 = a3, 5 = b3.
inline constexpr int kPolyVars = 6;
using Exponents = std::array<std::uint8_t, kPolyVars>;
using CirclePoint = std::array<AlgebraicNumber, kPolyVars>;

class Poly {
public:
    using Key = std::uint64_t;

    Poly() = default;
    Poly(long c);                     // NOLINT
    Poly(const Rational& c);          // NOLINT
    Poly(const AlgebraicNumber& c);   // NOLINT

    static Poly var(int index);
    static Poly alpha(int i) { return var(2 * (i - 1)); }
    static Poly beta(int i) { return var(2 * (i - 1) + 1); }
    static const char* var_name(int index);

    static Key pack(const Exponents& e);
    static Exponents unpack(Key k);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    AlgebraicNumber constant_value() const;
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, AlgebraicNumber>& terms() const { return terms_; }
    int degree_in(int var) const;

    /// Full evaluation; the point must satisfy a_i^2 + b_i^2 = 1.
    AlgebraicNumber substitute(const CirclePoint& point) const;
    /// Replace the given variables by values; others stay symbolic.
    Poly substitute_partial(const std::map<int, AlgebraicNumber>& values) const;
    /// For p linear in `var`: p = lead * var + rest. Throws if degree > 1.
    std::pair<Poly, Poly> split_linear(int var) const;

    std::string to_string() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b);

    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

private:
    void add_term(Key k, const AlgebraicNumber& c);
    void add_reduced(Exponents e, const AlgebraicNumber& c);

    std::map<Key, AlgebraicNumber> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Checks a_i^2 + b_i^2 = 1 for i = 1, 2, 3.
bool on_circles(const CirclePoint& point);

/// First-order jet: value plus partial derivatives. An empty partials vector
/// stands for a constant (all partials zero) of any arity.
template <class R>
class Jet {
public:
    Jet() : value_(R(0)) {}
    Jet(R value) : value_(std::move(value)) {}  // NOLINT
    Jet(R value, std::vector<R> partials) : value_(std::move(value)), partials_(std::move(partials)) {}

    /// value + unit partial in slot `index` of `arity`.
    static Jet variable(R value, R direction, std::size_t index, std::size_t arity) {
        std::vector<R> p(arity, R(0));
        p.at(index) = std::move(direction);
        return Jet(std::move(value), std::move(p));
    }

    const R& value() const { return value_; }
    const std::vector<R>& partials() const { return partials_; }
    std::size_t arity() const { return partials_.size(); }
    bool is_constant() const { return partials_.empty(); }
    R partial(std::size_t i) const { return partials_.empty() ? R(0) : partials_.at(i); }

    template <class F>
    Jet map(F&& f) const {
        std::vector<R> p;
        p.reserve(partials_.size());
        for (const auto& x : partials_)
            p.push_back(f(x));
        return Jet(f(value_), std::move(p));
    }

    Jet inverse() const {
        R vi = value_.inverse();
        return Jet(vi, scaled(partials_, [&](const R& f) { return -(vi * f * vi); }));
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        return Jet(a.value_ + b.value_, combine(a.partials_, b.partials_, [](const R& x, const R& y) { return x + y; }));
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        return Jet(a.value_ - b.value_, combine(a.partials_, b.partials_, [](const R& x, const R& y) { return x - y; }));
    }
    friend Jet operator-(const Jet& a) { return a.map([](const R& x) { return -x; }); }
    // product rule, factor order kept: d(fg) = (df) g + f (dg)
    friend Jet operator*(const Jet& a, const Jet& b) {
        std::size_t n = std::max(a.arity(), b.arity());
        if ((a.arity() && b.arity() && a.arity() != b.arity()))
            throw std::invalid_argument("Jet: arity mismatch");
        std::vector<R> p;
        p.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a.is_constant())
                p.push_back(a.value_ * b.partials_[i]);
            else if (b.is_constant())
                p.push_back(a.partials_[i] * b.value_);
            else
                p.push_back(a.partials_[i] * b.value_ + a.value_ * b.partials_[i]);
        }
        return Jet(a.value_ * b.value_, std::move(p));
    }
    friend bool operator==(const Jet& a, const Jet& b) {
        if (!(a.value_ == b.value_))
            return false;
        std::size_t n = std::max(a.arity(), b.arity());
        for (std::size_t i = 0; i < n; ++i)
            if (!(a.partial(i) == b.partial(i)))
                return false;
        return true;
    }

private:
    template <class F>
    static std::vector<R> scaled(const std::vector<R>& v, F&& f) {
        std::vector<R> out;
        out.reserve(v.size());
        for (const auto& x : v)
            out.push_back(f(x));
        return out;
    }
    template <class F>
    static std::vector<R> combine(const std::vector<R>& a, const std::vector<R>& b, F&& f) {
        if (a.empty() && b.empty())
            return {};
        if (!a.empty() && !b.empty() && a.size() != b.size())
            throw std::invalid_argument("Jet: arity mismatch");
        std::size_t n = std::max(a.size(), b.size());
        std::vector<R> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(f(a.empty() ? R(0) : a[i], b.empty() ? R(0) : b[i]));
        return out;
    }

    R value_;
    std::vector<R> partials_;
};

/// sqrt of a jet with positive value: value sqrt(v), partials f_i / (2 sqrt(v)).
/// The value must be a square in its tower.
Jet<AlgebraicNumber> jet_sqrt(const Jet<AlgebraicNumber>& x);

}  // namespace a5v
