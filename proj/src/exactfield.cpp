#include "a5v/exactfield.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace a5v {

namespace {

using Coeffs = std::vector<Rational>;
using CSpan = std::span<const Rational>;

bool all_zero(CSpan a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

void add_into(std::span<Rational> out, CSpan a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
}

Coeffs sum(CSpan a, CSpan b) {
    Coeffs r(a.begin(), a.end());
    add_into(r, b);
    return r;
}

// Product in the tower `t` of height h; a, b, result have length 2^h.
Coeffs mul_rec(const TowerSpec& t, CSpan a, CSpan b) {
    const int h = t.height();
    if (h == 0)
        return {a[0] * b[0]};
    const std::size_t n = a.size() / 2;
    Coeffs out(2 * n);
    if (all_zero(a) || all_zero(b))
        return out;
    const TowerSpec& lower = *t.parent();
    CSpan p = a.first(n), q = a.last(n), r = b.first(n), s = b.last(n);
    const bool pz = all_zero(p), qz = all_zero(q), rz = all_zero(r), sz = all_zero(s);
    std::span<Rational> lo(out.data(), n), hi(out.data() + n, n);

    // (p + q x)(r + s x) = (p r + q s R) + (p s + q r) x
    if (!pz && !qz && !rz && !sz && h >= 2) {
        Coeffs pr = mul_rec(lower, p, r);
        Coeffs qs = mul_rec(lower, q, s);
        Coeffs mixed = mul_rec(lower, sum(p, q), sum(r, s));
        for (std::size_t i = 0; i < n; ++i)
            hi[i] = mixed[i] - pr[i] - qs[i];
        Coeffs qsr = mul_rec(lower, qs, t.radicand().coefficients());
        for (std::size_t i = 0; i < n; ++i)
            lo[i] = pr[i] + qsr[i];
        return out;
    }
    if (!pz && !rz)
        add_into(lo, mul_rec(lower, p, r));
    if (!qz && !sz) {
        Coeffs qs = mul_rec(lower, q, s);
        add_into(lo, mul_rec(lower, qs, t.radicand().coefficients()));
    }
    if (!pz && !sz)
        add_into(hi, mul_rec(lower, p, s));
    if (!qz && !rz)
        add_into(hi, mul_rec(lower, q, r));
    return out;
}

Coeffs inv_rec(const TowerSpec& t, CSpan a) {
    if (t.height() == 0) {
        if (sgn(a[0]) == 0)
            throw DivisionByZero();
        return {1 / a[0]};
    }
    const std::size_t n = a.size() / 2;
    const TowerSpec& lower = *t.parent();
    CSpan p = a.first(n), q = a.last(n);
    if (all_zero(q)) {
        Coeffs out(2 * n);
        Coeffs pi = inv_rec(lower, p);
        std::copy(pi.begin(), pi.end(), out.begin());
        return out;
    }
    // 1/(p + q x) = (p - q x) / (p^2 - q^2 R)
    Coeffs pp = mul_rec(lower, p, p);
    Coeffs qq = mul_rec(lower, q, q);
    Coeffs qqr = mul_rec(lower, qq, t.radicand().coefficients());
    for (std::size_t i = 0; i < n; ++i)
        pp[i] -= qqr[i];
    Coeffs ninv = inv_rec(lower, pp);
    Coeffs lo = mul_rec(lower, p, ninv);
    Coeffs hi = mul_rec(lower, q, ninv);
    Coeffs out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo[i];
        out[n + i] = -hi[i];
    }
    return out;
}

bool rational_square_root(const Rational& x, Rational& root) {
    if (sgn(x) < 0)
        return false;
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

// Some square root of a (either sign), if a is a square in the field.
std::optional<Coeffs> sqrt_rec(const TowerSpec& t, CSpan a) {
    if (t.height() == 0) {
        Rational r;
        if (!rational_square_root(a[0], r))
            return std::nullopt;
        return Coeffs{r};
    }
    const std::size_t n = a.size() / 2;
    const TowerSpec& lower = *t.parent();
    CSpan p = a.first(n), q = a.last(n);
    CSpan radicand = t.radicand().coefficients();
    Coeffs out(2 * n);
    if (all_zero(q)) {
        if (auto r = sqrt_rec(lower, p)) {
            std::copy(r->begin(), r->end(), out.begin());
            return out;
        }
        // sqrt(p) = s x  <=>  s^2 = p / R
        Coeffs quotient = mul_rec(lower, p, inv_rec(lower, radicand));
        if (auto s = sqrt_rec(lower, quotient)) {
            std::copy(s->begin(), s->end(), out.begin() + static_cast<std::ptrdiff_t>(n));
            return out;
        }
        return std::nullopt;
    }
    // (y + z x)^2 = p + q x  with  y^2 = (p +- sqrt(p^2 - q^2 R)) / 2,  z = q / (2y)
    Coeffs norm = mul_rec(lower, p, p);
    Coeffs qq = mul_rec(lower, q, q);
    Coeffs qqr = mul_rec(lower, qq, radicand);
    for (std::size_t i = 0; i < n; ++i)
        norm[i] -= qqr[i];
    auto nroot = sqrt_rec(lower, norm);
    if (!nroot)
        return std::nullopt;
    for (int branch : {1, -1}) {
        Coeffs half(n);
        for (std::size_t i = 0; i < n; ++i)
            half[i] = (p[i] + branch * (*nroot)[i]) / 2;
        if (all_zero(half))
            continue;
        auto y = sqrt_rec(lower, half);
        if (!y)
            continue;
        Coeffs twice_y = *y;
        for (auto& c : twice_y)
            c *= 2;
        Coeffs z = mul_rec(lower, q, inv_rec(lower, twice_y));
        std::copy(y->begin(), y->end(), out.begin());
        std::copy(z.begin(), z.end(), out.begin() + static_cast<std::ptrdiff_t>(n));
        return out;
    }
    return std::nullopt;
}

// --- interval evaluation on the dyadic grid 2^-prec ---

Integer scaled_floor(const Rational& x, unsigned long prec) {
    Integer num = x.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), prec);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer scaled_ceil(const Rational& x, unsigned long prec) {
    Integer num = x.get_num();
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), prec);
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational from_scaled(const Integer& k, unsigned long prec) {
    Integer den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), prec);
    Rational r(k, den);
    r.canonicalize();
    return r;
}

RationalInterval round_out(const Rational& lo, const Rational& hi, unsigned long prec) {
    return {from_scaled(scaled_floor(lo, prec), prec), from_scaled(scaled_ceil(hi, prec), prec)};
}

RationalInterval iv_add(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval iv_mul(const RationalInterval& a, const RationalInterval& b, unsigned long prec) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    auto [mn, mx] = std::minmax_element(std::begin(c), std::end(c));
    return round_out(*mn, *mx, prec);
}

RationalInterval iv_sqrt(const RationalInterval& a, unsigned long prec) {
    Rational lo = sgn(a.lo) < 0 ? Rational(0) : a.lo;
    Integer l = scaled_floor(lo, 2 * prec);
    Integer h = scaled_ceil(a.hi, 2 * prec);
    Integer rl, rh;
    mpz_sqrt(rl.get_mpz_t(), l.get_mpz_t());
    mpz_sqrt(rh.get_mpz_t(), h.get_mpz_t());
    if (rh * rh < h)
        rh += 1;
    return {from_scaled(rl, prec), from_scaled(rh, prec)};
}

RationalInterval eval_rec(CSpan a, const std::vector<RationalInterval>& roots, int h,
                          unsigned long prec) {
    if (h == 0)
        return round_out(a[0], a[0], prec);
    const std::size_t n = a.size() / 2;
    CSpan p = a.first(n), q = a.last(n);
    RationalInterval lo = eval_rec(p, roots, h - 1, prec);
    if (all_zero(q))
        return lo;
    return iv_add(lo, iv_mul(eval_rec(q, roots, h - 1, prec), roots[static_cast<std::size_t>(h - 1)], prec));
}

std::vector<RationalInterval> root_intervals(const TowerSpec& t, unsigned long prec) {
    std::vector<RationalInterval> roots;
    for (const TowerSpec* level : t.levels()) {
        const AlgebraicNumber& r = level->radicand();
        RationalInterval ri = eval_rec(r.coefficients(), roots, level->height() - 1, prec);
        roots.push_back(iv_sqrt(ri, prec));
    }
    return roots;
}

RationalInterval eval_at(const AlgebraicNumber& a, unsigned long prec) {
    return eval_rec(a.coefficients(), root_intervals(*a.tower(), prec), a.tower()->height(), prec);
}

}  // namespace

// ---------------------------------------------------------------- TowerSpec

const Tower& TowerSpec::rationals() {
    static const Tower q = [] {
        auto* t = new TowerSpec();
        return Tower(t);
    }();
    return q;
}

const AlgebraicNumber& TowerSpec::radicand() const {
    if (!radicand_)
        throw FieldError("the rational tower has no radicand");
    return *radicand_;
}

std::vector<const TowerSpec*> TowerSpec::levels() const {
    std::vector<const TowerSpec*> out;
    for (const TowerSpec* t = this; t->height_ > 0; t = t->parent_.get())
        out.push_back(t);
    std::reverse(out.begin(), out.end());
    return out;
}

const TowerSpec& TowerSpec::at_height(int h) const {
    if (h < 0 || h > height_)
        throw FieldError("tower height out of range");
    const TowerSpec* t = this;
    while (t->height_ > h)
        t = t->parent_.get();
    return *t;
}

bool TowerSpec::same_field(const TowerSpec& other) const {
    if (this == &other)
        return true;
    if (height_ != other.height_)
        return false;
    if (height_ == 0)
        return true;
    if (!parent_->same_field(*other.parent_))
        return false;
    auto a = radicand_->coefficients();
    auto b = other.radicand_->coefficients();
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

bool TowerSpec::extends(const TowerSpec& other) const {
    if (other.height_ > height_)
        return false;
    return at_height(other.height_).same_field(other);
}

std::string TowerSpec::basis_name(std::size_t index) const {
    if (index == 0)
        return "1";
    std::string out;
    auto lv = levels();
    for (std::size_t i = 0; i < lv.size(); ++i) {
        if (index & (std::size_t{1} << i)) {
            if (!out.empty())
                out += "*";
            out += lv[i]->symbol();
        }
    }
    return out;
}

nlohmann::json TowerSpec::to_json() const {
    nlohmann::json levels_json = nlohmann::json::array();
    for (const TowerSpec* t : levels()) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : t->radicand().coefficients())
            coeffs.push_back(c.get_str());
        levels_json.push_back({{"symbol", t->symbol()}, {"radicand", coeffs}});
    }
    return levels_json;
}

Tower TowerSpec::from_json(const nlohmann::json& j) {
    Tower t = rationals();
    for (const auto& level : j) {
        std::vector<Rational> coeffs;
        for (const auto& c : level.at("radicand"))
            coeffs.push_back(AlgebraicNumber::parse_rational(c.get<std::string>()).rational_value());
        if (coeffs.size() != t->degree())
            throw FieldError("radicand length does not match tower degree");
        t = adjoin_sqrt(t, AlgebraicNumber(t, std::move(coeffs)), level.at("symbol").get<std::string>());
    }
    return t;
}

Tower adjoin_unchecked(const Tower& base, const AlgebraicNumber& r, std::string symbol) {
    auto* t = new TowerSpec();
    t->parent_ = base;
    t->symbol_ = std::move(symbol);
    t->radicand_ = std::make_unique<AlgebraicNumber>(r.embed(base));
    t->height_ = base->height() + 1;
    return Tower(t);
}

Tower adjoin_sqrt(const Tower& base, const AlgebraicNumber& r, std::string symbol) {
    if (!base->extends(*r.tower()))
        throw IncompatibleTowers();
    if (r.sign() <= 0)
        throw FieldError("adjoin_sqrt: radicand must be positive");
    if (try_sqrt(r.embed(base)))
        throw FieldError("adjoin_sqrt: radicand is already a square in the base field");
    return adjoin_unchecked(base, r, std::move(symbol));
}

Tower common_tower(const Tower& a, const Tower& b) {
    if (a == b)
        return a;
    if (a->height() >= b->height()) {
        if (a->extends(*b))
            return a;
    } else if (b->extends(*a)) {
        return b;
    }
    throw IncompatibleTowers();
}

// ---------------------------------------------------------- AlgebraicNumber

AlgebraicNumber::AlgebraicNumber() : tower_(TowerSpec::rationals()), coeffs_{Rational(0)} {}

AlgebraicNumber::AlgebraicNumber(long v) : tower_(TowerSpec::rationals()), coeffs_{Rational(v)} {}

AlgebraicNumber::AlgebraicNumber(const Rational& v) : tower_(TowerSpec::rationals()), coeffs_{v} {
    coeffs_[0].canonicalize();
}

AlgebraicNumber::AlgebraicNumber(Tower tower, std::vector<Rational> coefficients)
    : tower_(std::move(tower)), coeffs_(std::move(coefficients)) {
    if (coeffs_.size() != tower_->degree())
        throw FieldError("coefficient vector length must be 2^height");
    for (auto& c : coeffs_)
        c.canonicalize();
}

AlgebraicNumber AlgebraicNumber::generator(const Tower& tower) {
    if (tower->height() == 0)
        throw FieldError("the rational tower has no generator");
    std::vector<Rational> c(tower->degree());
    c[tower->degree() / 2] = 1;
    return {tower, std::move(c)};
}

AlgebraicNumber AlgebraicNumber::parse_rational(const std::string& text) {
    Rational r;
    if (r.set_str(text, 10) != 0)
        throw FieldError("malformed rational: " + text);
    if (sgn(r.get_den()) == 0)
        throw DivisionByZero();
    r.canonicalize();
    return r;
}

bool AlgebraicNumber::is_zero() const { return all_zero(coeffs_); }

bool AlgebraicNumber::is_rational() const { return all_zero(CSpan(coeffs_).subspan(1)); }

Rational AlgebraicNumber::rational_value() const {
    if (!is_rational())
        throw FieldError("not a rational number");
    return coeffs_[0];
}

AlgebraicNumber AlgebraicNumber::embed(const Tower& bigger) const {
    if (bigger == tower_)
        return *this;
    if (!bigger->extends(*tower_))
        throw IncompatibleTowers();
    std::vector<Rational> c(bigger->degree());
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin());
    return {bigger, std::move(c)};
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero())
        throw DivisionByZero();
    return {tower_, inv_rec(*tower_, coeffs_)};
}

int AlgebraicNumber::sign() const {
    if (is_zero())
        return 0;
    if (is_rational())
        return sgn(coeffs_[0]);
    for (unsigned long prec = 64;; prec *= 2) {
        RationalInterval iv = eval_at(*this, prec);
        if (sgn(iv.lo) > 0)
            return 1;
        if (sgn(iv.hi) < 0)
            return -1;
    }
}

RationalInterval AlgebraicNumber::to_interval(const Rational& width_bound) const {
    if (sgn(width_bound) <= 0)
        throw FieldError("to_interval: width bound must be positive");
    if (is_rational())
        return {coeffs_[0], coeffs_[0]};
    for (unsigned long prec = 64;; prec *= 2) {
        RationalInterval iv = eval_at(*this, prec);
        if (iv.width() <= width_bound)
            return iv;
    }
}

std::string AlgebraicNumber::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (sgn(c) == 0)
            continue;
        Rational mag = abs(c);
        if (out.empty())
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        if (i == 0) {
            out += mag.get_str();
        } else {
            if (mag != 1)
                out += mag.get_str() + "*";
            out += tower_->basis_name(i);
        }
    }
    return out.empty() ? "0" : out;
}

std::string rational_to_decimal(const Rational& x, int digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rational scaled = abs(x) * scale;
    // round half up on the magnitude
    Integer num = scaled.get_num() * 2 + scaled.get_den();
    Integer den = scaled.get_den() * 2;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    std::string s = k.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    if (sgn(x) < 0 && sgn(k) != 0)
        s.insert(0, "-");
    return s;
}

std::string AlgebraicNumber::to_decimal(int digits) const {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits + 3));
    RationalInterval iv = to_interval(Rational(1, 1) / Rational(scale));
    return rational_to_decimal((iv.lo + iv.hi) / 2, digits);
}

nlohmann::json AlgebraicNumber::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : coeffs_)
        coeffs.push_back(c.get_str());
    return {{"tower", tower_->to_json()}, {"coefficients", coeffs}};
}

AlgebraicNumber AlgebraicNumber::from_json(const nlohmann::json& j) {
    Tower t = TowerSpec::from_json(j.at("tower"));
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coefficients"))
        coeffs.push_back(parse_rational(c.get<std::string>()).rational_value());
    return {t, std::move(coeffs)};
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    Tower t = common_tower(a.tower_, b.tower_);
    AlgebraicNumber r = a.embed(t);
    CSpan bc = b.coeffs_;
    for (std::size_t i = 0; i < bc.size(); ++i)
        r.coeffs_[i] += bc[i];
    return r;
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    Tower t = common_tower(a.tower_, b.tower_);
    AlgebraicNumber r = a.embed(t);
    CSpan bc = b.coeffs_;
    for (std::size_t i = 0; i < bc.size(); ++i)
        r.coeffs_[i] -= bc[i];
    return r;
}

AlgebraicNumber operator-(const AlgebraicNumber& a) {
    AlgebraicNumber r = a;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.is_rational() || b.is_rational()) {
        const AlgebraicNumber& scalar = a.is_rational() ? a : b;
        const AlgebraicNumber& other = a.is_rational() ? b : a;
        Tower t = common_tower(a.tower_, b.tower_);
        AlgebraicNumber r = other.embed(t);
        const Rational s = scalar.coeffs_[0];
        for (auto& c : r.coeffs_)
            c *= s;
        return r;
    }
    Tower t = common_tower(a.tower_, b.tower_);
    AlgebraicNumber x = a.embed(t), y = b.embed(t);
    return {t, mul_rec(*t, x.coeffs_, y.coeffs_)};
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return a * b.inverse();
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    Tower t = common_tower(a.tower_, b.tower_);
    CSpan x = a.coeffs_, y = b.coeffs_;
    for (std::size_t i = 0; i < t->degree(); ++i) {
        const Rational& xi = i < x.size() ? x[i] : Rational(0);
        const Rational& yi = i < y.size() ? y[i] : Rational(0);
        if (xi != yi)
            return false;
    }
    return true;
}

std::ostream& operator<<(std::ostream& os, const AlgebraicNumber& a) { return os << a.to_string(); }

std::optional<AlgebraicNumber> try_sqrt(const AlgebraicNumber& r) {
    const int s = r.sign();
    if (s < 0)
        throw FieldError("try_sqrt: negative input");
    if (s == 0)
        return r;
    auto root = sqrt_rec(*r.tower(), r.coefficients());
    if (!root)
        return std::nullopt;
    AlgebraicNumber out(r.tower(), std::move(*root));
    if (out.sign() < 0)
        out = -out;
    assert(out * out == r);
    return out;
}

AlgebraicNumber sqrt_or_adjoin(Tower& tower, const AlgebraicNumber& r, const std::string& symbol) {
    AlgebraicNumber x = r.embed(common_tower(tower, r.tower()));
    tower = x.tower();
    if (auto root = try_sqrt(x))
        return *root;
    tower = adjoin_sqrt(tower, x, symbol);
    return AlgebraicNumber::generator(tower);
}

const Tower& canonical_k() {
    static const Tower k = [] {
        Tower t = TowerSpec::rationals();
        t = adjoin_sqrt(t, AlgebraicNumber(2), "r2");
        t = adjoin_sqrt(t, AlgebraicNumber(3), "r3");
        t = adjoin_sqrt(t, AlgebraicNumber(5), "r5");
        AlgebraicNumber r5 = AlgebraicNumber::generator(t);
        t = adjoin_sqrt(t, 10 - 2 * r5, "u");
        return t;
    }();
    return k;
}

const NamedConstants& named_constants() {
    static const NamedConstants c = [] {
        const Tower& k = canonical_k();
        auto basis = [&](std::size_t index) {
            std::vector<Rational> v(k->degree());
            v[index] = 1;
            return AlgebraicNumber(k, std::move(v));
        };
        NamedConstants n;
        n.sqrt2 = basis(1);
        n.sqrt3 = basis(2);
        n.sqrt5 = basis(4);
        n.u = basis(8);
        n.sqrt6 = n.sqrt2 * n.sqrt3;
        n.cos_2pi_5 = (n.sqrt5 - 1) * Rational(1, 4);
        // sqrt(10 + 2 sqrt5) * u = sqrt(80) = 4 sqrt5
        n.sin_2pi_5 = n.sqrt5 / n.u;
        n.cos_pi_5 = (n.sqrt5 + 1) * Rational(1, 4);
        n.sin_pi_5 = n.u * Rational(1, 4);
        return n;
    }();
    return c;
}

}  // namespace a5v
