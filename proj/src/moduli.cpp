#include "a5v/moduli.hpp"

#include <sstream>

#include "a5v/fpgroups.hpp"

namespace a5v {

const ConstantMatrices& constant_matrices() {
    static const ConstantMatrices m = [] {
        const auto& c = named_constants();
        ConstantMatrices k;
        AN t = Rational(-2, 3) * c.sqrt2;
        AN h = c.sqrt3 * Rational(1, 2);
        AN r3 = c.sqrt3 * Rational(1, 3), r6 = c.sqrt6 * Rational(1, 3);
        k.A = {{-1, 0, 0}, {0, Rational(1, 3), t}, {0, t, Rational(-1, 3)}};
        k.B = {{Rational(-1, 2), -h, 0}, {h, Rational(-1, 2), 0}, {0, 0, 1}};
        k.S0 = {{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
        k.S1 = {{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}};
        k.S2 = {{-c.cos_2pi_5, 0, -c.sin_2pi_5}, {0, -1, 0}, {-c.sin_2pi_5, 0, c.cos_2pi_5}};
        k.S3 = {{0, c.cos_pi_5, c.sin_pi_5}, {1, 0, 0}, {0, c.sin_pi_5, -c.cos_pi_5}};
        k.S4 = {{0, -r3, -r6}, {1, 0, 0}, {0, -r6, r3}};
        return k;
    }();
    return m;
}

void ModuliPoint::validate() const {
    if (!on_circles(circle))
        throw std::invalid_argument("moduli point: alpha_i^2 + beta_i^2 != 1");
    for (std::size_t i = 0; i < extras.size(); ++i)
        if (!is_special_orthogonal(extras[i]))
            throw std::invalid_argument("moduli point: X" + std::to_string(i + 1) + " is not in SO(3)");
}

nlohmann::json ModuliPoint::to_json() const {
    nlohmann::json j;
    static const char* names[] = {"alpha1", "beta1", "alpha2", "beta2", "alpha3", "beta3"};
    for (int i = 0; i < kPolyVars; ++i)
        j[names[i]] = circle[i].to_json();
    j["extras"] = nlohmann::json::array();
    for (const auto& m : extras) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < 3; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < 3; ++c)
                row.push_back(m(r, c).to_json());
            rows.push_back(row);
        }
        j["extras"].push_back(rows);
    }
    return j;
}

ModuliPoint ModuliPoint::from_json(const nlohmann::json& j) {
    static const char* names[] = {"alpha1", "beta1", "alpha2", "beta2", "alpha3", "beta3"};
    ModuliPoint z;
    for (int i = 0; i < kPolyVars; ++i)
        z.circle[i] = AN::from_json(j.at(names[i]));
    if (j.contains("extras"))
        for (const auto& rows : j.at("extras")) {
            Mat3<AN> m;
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    m(r, c) = AN::from_json(rows.at(r).at(c));
            z.extras.push_back(m);
        }
    z.validate();
    return z;
}

GeneratorAssignment<Poly> build_symbolic(int k) {
    std::array<Poly, 6> ab;
    for (int i = 0; i < kPolyVars; ++i)
        ab[i] = Poly::var(i);
    return assemble(ab, std::vector<Mat3<Poly>>(k, Mat3<Poly>::identity()));
}

GeneratorAssignment<AN> build_generators(const ModuliPoint& z) {
    z.validate();
    std::array<AN, 6> ab;
    std::copy(z.circle.begin(), z.circle.end(), ab.begin());
    return assemble(ab, z.extras);
}

std::vector<FreeWord> gamma_relators() { return builtin_presentation("gamma0").relators; }

Mat3<Poly> equation_x0() {
    const auto& k = constant_matrices();
    auto lift = [](const Mat3<AN>& m) { return m.map([](const AN& x) { return Poly(x); }); };
    Mat3<Poly> r1 = rotation_R(Poly::alpha(1), Poly::beta(1));
    Mat3<Poly> r2 = rotation_R(Poly::alpha(2), Poly::beta(2));
    Mat3<Poly> r3 = rotation_R(Poly::alpha(3), Poly::beta(3));
    return lift(k.S4) * r1 * lift(k.S1) * r2 - r3.transpose() * lift(k.S3).transpose();
}

Mat3<Poly> equation_bac3() {
    auto g = build_symbolic(0);
    Mat3<Poly> bac = g.images["b"] * g.images["a"] * g.images["c"];
    return bac * bac - bac.transpose();
}

namespace {

bool involves_only(const Poly& p, int var) {
    for (const auto& [key, c] : p.terms()) {
        auto e = Poly::unpack(key);
        for (int v = 0; v < kPolyVars; ++v)
            if (v != var && e[v] != 0)
                return false;
    }
    return true;
}

}  // namespace

UniversalSolution solve_universal() {
    struct Plan {
        const char* eq;
        int row, col, var;
    };
    static const Plan plan[] = {
        {"eqX0", 3, 3, 0}, {"eqBAC3", 3, 3, 1}, {"eqX0", 1, 3, 5},
        {"eqX0", 2, 2, 3}, {"eqX0", 3, 2, 2},   {"eqX0", 2, 3, 4},
    };
    Mat3<Poly> x0 = equation_x0(), bac3 = equation_bac3();
    std::map<int, AN> known;
    UniversalSolution sol;
    for (const auto& p : plan) {
        const Mat3<Poly>& eq = std::string(p.eq) == "eqX0" ? x0 : bac3;
        Poly entry = eq(p.row - 1, p.col - 1).substitute_partial(known);
        if (!involves_only(entry, p.var))
            throw std::logic_error(std::string("solve_universal: ") + p.eq + " entry (" + std::to_string(p.row) +
                                   "," + std::to_string(p.col) + ") involves unsolved variables: " +
                                   entry.to_string());
        auto [lead, rest] = entry.split_linear(p.var);
        if (!lead.is_constant() || lead.is_zero())
            throw std::logic_error("solve_universal: vanishing or non-constant divisor for " +
                                   std::string(Poly::var_name(p.var)));
        AN divisor = lead.constant_value();
        AN value = -(rest.is_zero() ? AN(0) : rest.constant_value()) / divisor;
        known[p.var] = value;
        sol.steps.push_back({p.eq, p.row, p.col, Poly::var_name(p.var), entry.to_string(), divisor, value});
    }
    for (int v = 0; v < kPolyVars; ++v)
        sol.point.circle[v] = known.at(v);
    sol.circles_hold = on_circles(sol.point.circle);

    auto check = [&](const char* name, const Mat3<Poly>& eq) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                Poly r = eq(i, j).substitute_partial(known);
                if (!r.is_zero())
                    sol.residuals.push_back(std::string(name) + " (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + "): " + r.to_string());
            }
    };
    check("eqX0", x0);
    check("eqBAC3", bac3);
    return sol;
}

nlohmann::json UniversalSolution::certificate() const {
    nlohmann::json j;
    j["steps"] = nlohmann::json::array();
    for (const auto& s : steps) {
        j["steps"].push_back({{"equation", s.equation},
                              {"entry", {s.row, s.col}},
                              {"variable", s.variable},
                              {"linear_form", s.linear_form},
                              {"divisor", s.divisor.to_string()},
                              {"divisor_sign", s.divisor.sign()},
                              {"value", s.value.to_string()}});
    }
    j["residuals"] = residuals;
    j["circles_hold"] = circles_hold;
    j["all_entries_vanish"] = residuals.empty();
    return j;
}

CirclePoint golden_zbad() {
    const auto& c = named_constants();
    auto root = [](const AN& r) {
        auto s = try_sqrt(r.embed(canonical_k()));
        if (!s)
            throw std::logic_error("golden value is not a square in K: " + r.to_string());
        return *s;
    };
    return {
        -root(3 * c.sqrt5 + 9) * Rational(1, 4),
        root(-3 * c.sqrt5 + 7) * Rational(1, 4),
        -root(Rational(-2, 15) * c.sqrt5 + Rational(1, 3)),
        root(Rational(2, 15) * c.sqrt5 + Rational(2, 3)),
        -root(Rational(-1, 5) * c.sqrt5 + Rational(1, 2)),
        root(Rational(1, 5) * c.sqrt5 + Rational(1, 2)),
    };
}

}  // namespace a5v
