#include "a5v/symbolic.hpp"

#include <ostream>

namespace a5v {

namespace {

const char* const kNames[kPolyVars] = {"a1", "b1", "a2", "b2", "a3", "b3"};

AlgebraicNumber pow_an(const AlgebraicNumber& x, int n) {
    AlgebraicNumber out(1);
    for (int i = 0; i < n; ++i)
        out *= x;
    return out;
}

}  // namespace

Poly::Poly(long c) : Poly(AlgebraicNumber(c)) {}
Poly::Poly(const Rational& c) : Poly(AlgebraicNumber(c)) {}
Poly::Poly(const AlgebraicNumber& c) {
    if (!c.is_zero())
        terms_.emplace(Key{0}, c);
}

Poly Poly::var(int index) {
    if (index < 0 || index >= kPolyVars)
        throw PolyError("variable index out of range");
    Exponents e{};
    e[index] = 1;
    Poly p;
    p.terms_.emplace(pack(e), AlgebraicNumber(1));
    return p;
}

const char* Poly::var_name(int index) { return kNames[index]; }

// a1 occupies the most significant byte, so key order is lexicographic in
// (a1, b1, a2, b2, a3, b3).
Poly::Key Poly::pack(const Exponents& e) {
    Key k = 0;
    for (int i = 0; i < kPolyVars; ++i)
        k = (k << 8) | e[i];
    return k;
}

Exponents Poly::unpack(Key k) {
    Exponents e{};
    for (int i = kPolyVars - 1; i >= 0; --i) {
        e[i] = static_cast<std::uint8_t>(k & 0xff);
        k >>= 8;
    }
    return e;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

AlgebraicNumber Poly::constant_value() const {
    if (!is_constant())
        throw PolyError("polynomial is not constant");
    return terms_.empty() ? AlgebraicNumber(0) : terms_.begin()->second;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const auto& [k, c] : terms_)
        d = std::max<int>(d, unpack(k)[var]);
    return d;
}

void Poly::add_term(Key k, const AlgebraicNumber& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Poly::add_reduced(Exponents e, const AlgebraicNumber& c) {
    for (int i = 1; i < kPolyVars; i += 2) {
        if (e[i] >= 2) {
            // b^2 -> 1 - a^2
            e[i] -= 2;
            add_reduced(e, c);
            if (e[i - 1] > 253)
                throw PolyError("exponent overflow");
            e[i - 1] += 2;
            add_reduced(e, -c);
            return;
        }
    }
    add_term(pack(e), c);
}

Poly& Poly::operator+=(const Poly& b) {
    for (const auto& [k, c] : b.terms_)
        add_term(k, c);
    return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly out = a;
    out += b;
    return out;
}

Poly operator-(const Poly& a) {
    Poly out;
    for (const auto& [k, c] : a.terms_)
        out.terms_.emplace_hint(out.terms_.end(), k, -c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [k, c] : b.terms_)
        out.add_term(k, -c);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    if (a.is_zero() || b.is_zero())
        return out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            // bytes never carry: each exponent stays far below 256
            Poly::Key k = ka + kb;
            Exponents e = Poly::unpack(k);
            bool reduced = e[1] < 2 && e[3] < 2 && e[5] < 2;
            if (reduced)
                out.add_term(k, ca * cb);
            else
                out.add_reduced(e, ca * cb);
        }
    }
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size())
        return false;
    auto it = b.terms_.begin();
    for (const auto& [k, c] : a.terms_) {
        if (k != it->first || !(c == it->second))
            return false;
        ++it;
    }
    return true;
}

bool on_circles(const CirclePoint& p) {
    for (int i = 0; i < kPolyVars; i += 2)
        if (!(p[i] * p[i] + p[i + 1] * p[i + 1] == AlgebraicNumber(1)))
            return false;
    return true;
}

AlgebraicNumber Poly::substitute(const CirclePoint& point) const {
    if (!on_circles(point))
        throw PolyError("substitution point violates a_i^2 + b_i^2 = 1");
    AlgebraicNumber out(0);
    for (const auto& [k, c] : terms_) {
        Exponents e = unpack(k);
        AlgebraicNumber m = c;
        for (int i = 0; i < kPolyVars; ++i)
            if (e[i])
                m *= pow_an(point[i], e[i]);
        out += m;
    }
    return out;
}

Poly Poly::substitute_partial(const std::map<int, AlgebraicNumber>& values) const {
    Poly out;
    for (const auto& [k, c] : terms_) {
        Exponents e = unpack(k);
        AlgebraicNumber m = c;
        for (const auto& [var, v] : values) {
            if (e[var]) {
                m *= pow_an(v, e[var]);
                e[var] = 0;
            }
        }
        out.add_term(pack(e), m);
    }
    return out;
}

std::pair<Poly, Poly> Poly::split_linear(int var) const {
    Poly lead, rest;
    for (const auto& [k, c] : terms_) {
        Exponents e = unpack(k);
        if (e[var] > 1)
            throw PolyError(std::string("not linear in ") + kNames[var]);
        if (e[var] == 1) {
            e[var] = 0;
            lead.add_term(pack(e), c);
        } else {
            rest.add_term(k, c);
        }
    }
    return {lead, rest};
}

std::string Poly::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    // highest key first: a1-heavy terms lead, constant last
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Exponents e = unpack(it->first);
        std::string mono;
        for (int i = 0; i < kPolyVars; ++i) {
            if (!e[i])
                continue;
            if (!mono.empty())
                mono += "*";
            mono += kNames[i];
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        std::string coef = it->second.to_string();
        bool compound = coef.find_first_of("+*", 1) != std::string::npos ||
                        coef.find('-', 1) != std::string::npos;
        std::string term;
        if (mono.empty())
            term = coef;
        else if (coef == "1")
            term = mono;
        else if (coef == "-1")
            term = "-" + mono;
        else
            term = (compound ? "(" + coef + ")" : coef) + "*" + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

Jet<AlgebraicNumber> jet_sqrt(const Jet<AlgebraicNumber>& x) {
    auto root = try_sqrt(x.value());
    if (!root)
        throw FieldError("jet_sqrt: value is not a square in its tower");
    if (root->is_zero())
        throw FieldError("jet_sqrt: not differentiable at 0");
    AlgebraicNumber half_inv = (2 * *root).inverse();
    std::vector<AlgebraicNumber> p;
    p.reserve(x.arity());
    for (const auto& f : x.partials())
        p.push_back(f * half_inv);
    return Jet<AlgebraicNumber>(*root, std::move(p));
}

}  // namespace a5v
