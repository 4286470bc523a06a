#include <doctest.h>

#include <random>

#include "a5v/symbolic.hpp"

using namespace a5v;

namespace {

// (cos, sin) pairs with exact values: rational points and (cos, sin)(2pi/5).
std::pair<AlgebraicNumber, AlgebraicNumber> circle_point(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 5), num(-7, 7);
    int choice = pick(rng);
    if (choice == 0)
        return {named_constants().cos_2pi_5, named_constants().sin_2pi_5};
    if (choice == 1)
        return {named_constants().cos_pi_5, -named_constants().sin_pi_5};
    Rational t(num(rng), 3);
    t.canonicalize();
    Rational d = 1 + t * t;
    return {AlgebraicNumber(Rational((1 - t * t) / d)), AlgebraicNumber(Rational(2 * t / d))};
}

CirclePoint random_point(std::mt19937& rng) {
    CirclePoint p;
    for (int i = 0; i < 3; ++i) {
        auto [c, s] = circle_point(rng);
        p[2 * i] = c;
        p[2 * i + 1] = s;
    }
    return p;
}

Poly random_poly(std::mt19937& rng, int terms) {
    std::uniform_int_distribution<int> var(0, kPolyVars - 1), deg(0, 2), coef(-5, 5);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        Poly m = Poly(Rational(coef(rng), 1 + (t % 3)));
        for (int k = 0; k < 3; ++k) {
            int v = var(rng);
            for (int d = deg(rng); d > 0; --d)
                m *= Poly::var(v);
        }
        if (t % 4 == 0)
            m *= Poly(named_constants().sqrt3);
        p += m;
    }
    return p;
}

}  // namespace

TEST_CASE("poly_arith: circle relation rewriting") {
    Poly a1 = Poly::alpha(1), b1 = Poly::beta(1);
    CHECK(b1 * b1 == 1 - a1 * a1);
    CHECK((a1 + b1) - (a1 + b1) == Poly(0));
    CHECK((a1 * a1 + b1 * b1) == Poly(1));
    CHECK((b1 * b1 * b1).degree_in(1) == 1);
    CHECK((b1 * b1).to_string() == "-a1^2 + 1");
    CHECK(Poly::beta(3).to_string() == "b3");
    CHECK((Poly(named_constants().sqrt2) * a1).to_string() == "r2*a1");
}

TEST_CASE("poly_substitute") {
    const auto& c = named_constants();
    auto root = [](const AlgebraicNumber& r) { return *try_sqrt(r.embed(canonical_k())); };
    CirclePoint zbad{
        -root(3 * c.sqrt5 + 9) * Rational(1, 4), root(-3 * c.sqrt5 + 7) * Rational(1, 4),
        -root(Rational(-2, 15) * c.sqrt5 + Rational(1, 3)), root(Rational(2, 15) * c.sqrt5 + Rational(2, 3)),
        -root(Rational(-1, 5) * c.sqrt5 + Rational(1, 2)), root(Rational(1, 5) * c.sqrt5 + Rational(1, 2)),
    };
    REQUIRE(on_circles(zbad));
    CHECK(Poly::alpha(1).substitute(zbad) == zbad[0]);
    CHECK(Poly(1).substitute(zbad) == AlgebraicNumber(1));
    Poly rel = 1 - Poly::alpha(1) * Poly::alpha(1) - Poly::beta(1) * Poly::beta(1);
    CHECK(rel.is_zero());
    CHECK(rel.substitute(zbad).is_zero());

    CirclePoint bad = zbad;
    bad[1] = zbad[1] + 1;
    CHECK_THROWS_AS(Poly(1).substitute(bad), PolyError);
}

TEST_CASE("partial substitution and linear split") {
    Poly a1 = Poly::alpha(1), b1 = Poly::beta(1), b3 = Poly::beta(3);
    Poly p = a1 * b1 * 3 + b3 * a1 - 2;
    Poly q = p.substitute_partial({{0, AlgebraicNumber(Rational(1, 2))}});
    CHECK(q == Rational(3, 2) * b1 + Rational(1, 2) * b3 - 2);
    auto [lead, rest] = q.split_linear(1);
    CHECK(lead == Poly(Rational(3, 2)));
    CHECK(rest == Rational(1, 2) * b3 - 2);
    CHECK_THROWS_AS((a1 * a1).split_linear(0), PolyError);
}

TEST_CASE("property: normal form is canonical and substitution commutes") {
    std::mt19937 rng(123);
    for (int i = 0; i < 20; ++i) {
        Poly p = random_poly(rng, 5), q = random_poly(rng, 5);
        CHECK(p * q == q * p);
        CHECK((p + q) * (p - q) == p * p - q * q);
        Poly circle = Poly::alpha(2) * Poly::alpha(2) + Poly::beta(2) * Poly::beta(2);
        CHECK(p * circle == p);
        for (int j = 0; j < 2; ++j) {
            CirclePoint pt = random_point(rng);
            CHECK((p * q).substitute(pt) == p.substitute(pt) * q.substitute(pt));
            CHECK((p + q).substitute(pt) == p.substitute(pt) + q.substitute(pt));
        }
    }
}

TEST_CASE("jet_arith") {
    using J = Jet<AlgebraicNumber>;
    J x = J::variable(1, 1, 0, 2), y = J::variable(1, 1, 1, 2);
    J xy = x * y;
    CHECK(xy.value() == AlgebraicNumber(1));
    CHECK(xy.partial(0) == AlgebraicNumber(1));
    CHECK(xy.partial(1) == AlgebraicNumber(1));

    // d/dt t^5 at t = 3/2
    J t = J::variable(Rational(3, 2), 1, 0, 1);
    J p = t * t * t * t * t;
    CHECK(p.partial(0) == AlgebraicNumber(5 * Rational(81, 16)));

    J inv = t.inverse();
    CHECK(inv.value() == AlgebraicNumber(Rational(2, 3)));
    CHECK(inv.partial(0) == AlgebraicNumber(Rational(-4, 9)));

    J s = jet_sqrt(J::variable(Rational(9, 4), 1, 0, 1));
    CHECK(s.value() == AlgebraicNumber(Rational(3, 2)));
    CHECK(s.partial(0) == AlgebraicNumber(Rational(1, 3)));

    J constant(AlgebraicNumber(7));
    CHECK((constant * x).partial(0) == AlgebraicNumber(7));
    CHECK_THROWS(J::variable(1, 1, 0, 2) * J::variable(1, 1, 0, 3));
}

TEST_CASE("property: jet ring laws") {
    using J = Jet<AlgebraicNumber>;
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> d(-9, 9);
    auto rj = [&] {
        std::vector<AlgebraicNumber> p;
        for (int i = 0; i < 3; ++i)
            p.emplace_back(d(rng) + Rational(d(rng), 5) * named_constants().sqrt5);
        return J(AlgebraicNumber(d(rng)) + named_constants().sqrt2, p);
    };
    for (int i = 0; i < 20; ++i) {
        J a = rj(), b = rj(), c = rj();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * a.inverse()) == J(AlgebraicNumber(1), std::vector<AlgebraicNumber>(3, AlgebraicNumber(0))));
    }
}
