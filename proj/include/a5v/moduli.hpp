// The representation moduli rho_z of Gamma_k into SO(3): generator images,
// word evaluation, relator verification (symbolic or at a point) and the
// forced elimination that produces the universal point z_bad.
#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "a5v/linalg.hpp"
#include "a5v/symbolic.hpp"
#include "a5v/words.hpp"

namespace a5v {

using AN = AlgebraicNumber;

template <class R>
Mat3<R> rotation_R(const R& alpha, const R& beta) {
    return {{alpha, beta, R(0)}, {-beta, alpha, R(0)}, {R(0), R(0), R(1)}};
}

struct ConstantMatrices {
    Mat3<AN> A, B, S0, S1, S2, S3, S4;
};

/// A, B and S0..S4 over K.
const ConstantMatrices& constant_matrices();

struct ModuliPoint {
    CirclePoint circle;          // (a1, b1, a2, b2, a3, b3)
    std::vector<Mat3<AN>> extras;  // X1..Xk

    const AN& alpha(int i) const { return circle[2 * (i - 1)]; }
    const AN& beta(int i) const { return circle[2 * (i - 1) + 1]; }
    /// Throws std::invalid_argument unless on the circles with extras in SO(3).
    void validate() const;

    nlohmann::json to_json() const;
    static ModuliPoint from_json(const nlohmann::json& j);
};

template <class R>
struct GeneratorAssignment {
    std::map<std::string, Mat3<R>> images;  // a, b, c, d, x0, ..., xk
};

/// Symbolic assignment over the polynomial ring; X1..Xk are the identity.
GeneratorAssignment<Poly> build_symbolic(int k = 0);
GeneratorAssignment<AN> build_generators(const ModuliPoint& z);

/// Generic form used by both: C, D, X0 from R_i = R(alpha_i, beta_i).
template <class R>
GeneratorAssignment<R> assemble(const std::array<R, 6>& ab, const std::vector<Mat3<R>>& extras) {
    const auto& k = constant_matrices();
    auto lift = [](const Mat3<AN>& m) { return m.map([](const AN& x) { return R(x); }); };
    Mat3<R> r1 = rotation_R(ab[0], ab[1]), r2 = rotation_R(ab[2], ab[3]), r3 = rotation_R(ab[4], ab[5]);
    Mat3<R> s0 = lift(k.S0), s1 = lift(k.S1), s2 = lift(k.S2), s3 = lift(k.S3), s4 = lift(k.S4);
    GeneratorAssignment<R> g;
    g.images["a"] = lift(k.A);
    g.images["b"] = lift(k.B);
    g.images["c"] = r1 * s0 * r1.transpose();
    g.images["d"] = r1 * s1 * r2 * s2 * r2.transpose() * s1.transpose() * r1.transpose();
    g.images["x0"] = r1 * s1 * r2 * s3 * r3 * s4;
    for (std::size_t i = 0; i < extras.size(); ++i)
        g.images["x" + std::to_string(i + 1)] = extras[i];
    return g;
}

/// Product of images; inverses are transposes. Throws std::out_of_range on
/// an unassigned generator.
template <class R>
Mat3<R> eval_word(const GeneratorAssignment<R>& g, const FreeWord& w) {
    Mat3<R> out = Mat3<R>::identity();
    for (const auto& s : w.syllables()) {
        auto it = g.images.find(s.gen);
        if (it == g.images.end())
            throw std::out_of_range("no image for generator " + s.gen);
        out = out * power(it->second, static_cast<int>(s.exp));
    }
    return out;
}

/// The eight relators of Gamma_k in relator form.
std::vector<FreeWord> gamma_relators();

struct RelatorResult {
    std::string relator;
    bool pass;
    std::vector<std::string> residual;  // nonzero entries of eval - I, "(i,j): value"
};

template <class R>
std::vector<RelatorResult> verify_relations(const GeneratorAssignment<R>& g) {
    std::vector<RelatorResult> out;
    for (const auto& r : gamma_relators()) {
        Mat3<R> res = eval_word(g, r) - Mat3<R>::identity();
        RelatorResult rr{r.to_string(), true, {}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(res(i, j) == R(0))) {
                    rr.pass = false;
                    std::ostringstream os;
                    os << "(" << i + 1 << "," << j + 1 << "): " << res(i, j);
                    rr.residual.push_back(os.str());
                }
        out.push_back(std::move(rr));
    }
    return out;
}

/// eqX0 = S4 R1 S1 R2 - R3^T S3^T and eqBAC3 = (BAC)^2 - (BAC)^T, symbolically.
Mat3<Poly> equation_x0();
Mat3<Poly> equation_bac3();

struct EliminationStep {
    std::string equation;  // "eqX0" or "eqBAC3"
    int row, col;          // 1-based entry
    std::string variable;
    std::string linear_form;  // lead * var + rest after substituting earlier values
    AN divisor;               // lead coefficient, nonzero
    AN value;
};

struct UniversalSolution {
    ModuliPoint point;
    std::vector<EliminationStep> steps;
    std::vector<std::string> residuals;  // nonzero residuals after solving (empty on success)
    bool circles_hold;

    bool ok() const { return residuals.empty() && circles_hold; }
    nlohmann::json certificate() const;
};

/// Solves entry by entry in the fixed order (3,3) of eqX0 for a1,
/// (3,3) of eqBAC3 for b1, then (1,3), (2,2), (3,2), (2,3) of eqX0 for
/// b3, b2, a2, a3. Throws std::logic_error if an entry is not linear in
/// its variable after substitution.
UniversalSolution solve_universal();

/// The reference values of the universal point, realized in K by try_sqrt.
CirclePoint golden_zbad();

}  // namespace a5v
