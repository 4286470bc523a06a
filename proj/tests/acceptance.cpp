// End-to-end acceptance run: one PASS/FAIL line per criterion, each with a
// pinned time target. Exits nonzero if any criterion fails.
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "a5v/exactfield.hpp"
#include "a5v/fpgroups.hpp"
#include "a5v/gcomplex.hpp"
#include "a5v/linalg.hpp"
#include "a5v/moduli.hpp"
#include "a5v/quat.hpp"

using namespace a5v;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double target_seconds;
    std::function<Outcome()> run;
};

// Accumulates sub-checks; the first failure is kept for the report.
struct Checks {
    bool ok = true;
    std::string first_failure;
    void operator()(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
    Outcome outcome(const std::string& detail) const { return {ok, ok ? detail : "failed: " + first_failure}; }
};

Outcome symbolic_moduli() {
    Checks c;
    auto res = verify_relations(build_symbolic(0));
    c(res.size() == 8, "eight relators");
    for (const auto& r : res)
        c(r.pass, r.relator);
    return c.outcome("8/8 relators reduce to the identity over the quotient ring");
}

Outcome universal_point() {
    Checks c;
    UniversalSolution s = solve_universal();
    CirclePoint golden = golden_zbad();
    c(s.residuals.empty(), "all entries vanish");
    c(s.circles_hold, "circle relations");
    for (int i = 0; i < 6; ++i) {
        c(s.point.circle[i] == golden[i], "coordinate " + std::to_string(i));
        c(s.point.circle[i].sign() == (i % 2 == 0 ? -1 : 1), "sign of coordinate " + std::to_string(i));
    }
    return c.outcome("six coordinates equal the table exactly; alpha < 0 < beta");
}

Outcome jacobian() {
    Checks c;
    CirclePoint z = golden_zbad();
    const auto& k = named_constants();
    DenseMat<AN> m = jacobian_closed_form(z, 0);
    const AN zero(0);
    c(m[0][0] == zero && m[1][0] == zero && m[2][0] == AN(Rational(1, 2)), "column 1");
    c(m[0][1] == -z[1] * Rational(1, 2) && m[1][1] == -z[0] * Rational(1, 2) && m[2][1] == zero, "column 2");
    c(m[0][2] == zero && m[1][2] == -k.sqrt6 * Rational(1, 6) && m[2][2] == k.sqrt3 * Rational(1, 6), "column 3");
    AN det = dense_det(m);
    c(det == k.sqrt6 * z[1] * Rational(1, 24), "det = sqrt6 beta1 / 24");
    c(det.sign() != 0, "det != 0");
    QuatModel model(make_t_bad(z, 0));
    std::size_t degree = model.tower()->degree();
    c(degree <= 128, "tower degree <= 128");
    c(jacobian_from_jets(model) == m, "jets equal closed form");
    return c.outcome("closed form and jets agree over a tower of degree " + std::to_string(degree) + "; det = " +
                     det.to_decimal(12));
}

Outcome purity_check() {
    Checks c;
    QuatModel model(make_t_bad(golden_zbad(), 0));
    for (const char* w : {"x0", "(bac)^3"}) {
        PurityReport p = purity(model, parse_word(w));
        c(p.value == Quat(1), std::string(w) + " is 1 at t_bad");
        c(p.all_pure(), std::string(w) + " derivatives pure");
    }
    return c.outcome("all partials of X0 and (bac)^3 have zero real part");
}

Outcome enumerations() {
    Checks c;
    std::ostringstream os;
    for (auto [name, order] : {std::pair<const char*, std::size_t>{"lemma-bac3", 60}, {"a5-xy", 60}, {"gtilde-a5", 7200}}) {
        auto t0 = std::chrono::steady_clock::now();
        Presentation p = builtin_presentation(name);
        CosetTable t = todd_coxeter(p, {});
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        c(t.size() == order, std::string(name) + " order " + std::to_string(t.size()));
        c(t.self_check(p, {}).empty(), std::string(name) + " self-check");
        c(s < 10.0, std::string(name) + " within 10 s");
        os << name << "=" << t.size() << " ";
    }
    return c.outcome(os.str());
}

Outcome brown_pipeline() {
    Checks c;
    BrownPresentation bp = brown_presentation(poincare_complex());
    c(bp.simplified.gens == std::vector<std::string>{"a", "b", "c", "d", "x"}, "generators a b c d x");
    std::vector<std::string> expected{"a^2", "b^3", "c^2", "d^2", "(ab)^3", "(bc)^2", "(cd)^5", "x a x^-1 = d"};
    c(bp.simplified.relators.size() == expected.size(), "eight relators");
    for (const auto& e : expected) {
        FreeWord r = parse_relator(e);
        c(std::any_of(bp.simplified.relators.begin(), bp.simplified.relators.end(),
                      [&](const FreeWord& q) { return same_relator(q, r); }),
          "relator " + e);
    }
    c(bp.simplified_face_words.size() == 1 && bp.simplified_face_words[0] == FreeWord::gen("x"), "r_tau = x");
    Presentation full = bp.full();
    std::size_t n1 = todd_coxeter(full, {}).size();
    full.relators.push_back(parse_word("(bac)^3"));
    std::size_t n2 = todd_coxeter(full, {}).size();
    c(n1 == 7200, "order with r_tau");
    c(n2 == 60, "order with (bac)^3");
    return c.outcome("r_tau = x; orders " + std::to_string(n1) + " then " + std::to_string(n2));
}

Outcome appendix_identity() {
    Checks c;
    Presentation p = builtin_presentation("lemma-bac3");
    CosetTable t = todd_coxeter(p, {});
    c(t.size() == 60, "60 cosets");
    auto act = coset_action(t);
    FreeWord x = parse_word("bc"), y = parse_word("ca");
    FreeWord lhs = parse_word("x y^2 x y^-2 x y").substitute([&](const std::string& g) { return g == "x" ? x : y; });
    c(eval_perm_word(act, lhs, static_cast<int>(t.size())) == act.at("a"), "x y^2 x y^-2 x y = a");
    return c.outcome("x y^2 x y^-2 x y = a with x = bc, y = ca");
}

Outcome homology_check() {
    Checks c;
    CellComplex x = expand(poincare_complex());
    c(x.count(0) == 21 && x.count(1) == 80 && x.count(2) == 60, "cell counts 21/80/60");
    HomologyResult h = homology(x);
    c(h.acyclic(), "Poincare complex acyclic");
    CellComplex g = expand(gamma_os_a5());
    HomologyResult hg = homology(g);
    c(hg.betti[0] == 1 && hg.betti[1] == 60 && hg.torsion[1].empty(), "gamma_os H1 = Z^60");
    return c.outcome("Poincare: " + h.to_string() + "; gamma_os: " + hg.to_string());
}

Outcome fixed_points() {
    Checks c;
    CellComplex x = expand(poincare_complex());
    auto lat = subgroup_lattice(a5());
    c(lat.subgroups.size() == 59, "59 subgroups");
    int acyclic = 0;
    for (const auto& h : lat.subgroups) {
        if (h.order() == 1)
            continue;
        CellComplex f = fixed_subcomplex(x, h);
        if (h.order() == 60) {
            c(f.empty(), "X^A5 empty");
            continue;
        }
        bool ok = homology(f).acyclic();
        c(ok, "X^H acyclic for a subgroup of order " + std::to_string(h.order()));
        acyclic += ok;
    }
    return c.outcome(std::to_string(acyclic) + "/57 fixed sets acyclic; X^A5 empty");
}

Outcome indices() {
    Checks c;
    auto lat = subgroup_lattice(a5());
    auto fam = solvable_family(lat);
    c(index_i_F(a5(), PermGroup::closure({}, 5), fam) == 1, "i_SLV(1) = 1");
    auto rows = verify_lemma23(poincare_complex(), lat, fam);
    std::ostringstream os;
    for (const auto& r : rows) {
        c(r.match(), "class of order " + std::to_string(r.representative.order()));
        os << "|H|=" << r.representative.order() << ":" << r.index.get_str() << " ";
    }
    return c.outcome("i_SLV(1) = 1; " + os.str());
}

Outcome structure() {
    Checks c;
    OrbitComplex g = gamma_os_a5();
    c(is_reduced(g), "reduced");
    c(stabilizer_incomparability(expand(g)), "incomparable stabilizers");
    HomologyResult before = homology(g);
    Perm id = Perm::identity(5);
    PermGroup h12 = PermGroup::closure({Perm::parse_cycles("(3,5,4)", 5)}, 5);
    HomologyResult after = homology(equivariant_expansion(g, h12, {0, id}, {1, id}));
    c(before.betti == after.betti && before.torsion == after.torsion, "expansion of gamma_os");
    HomologyResult px = homology(equivariant_expansion(poincare_complex(), PermGroup::closure({}, 5), {0, id}, {2, id}));
    c(px.acyclic(), "free expansion of the Poincare complex");
    return c.outcome("reduced, incomparable, expansions keep homology");
}

Outcome properties() {
    Checks c;
    std::mt19937 rng(20261016);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5), pct(0, 99);
    const Tower& k = canonical_k();
    auto element = [&](int density) {
        std::vector<Rational> v(k->degree());
        for (auto& x : v)
            if (pct(rng) < density) {
                x = Rational(num(rng), den(rng));
                x.canonicalize();
            }
        return AN(k, std::move(v));
    };
    // field axioms and square roots
    for (int i = 0; i < 10; ++i) {
        AN a = element(40), b = element(40), d = element(40);
        c((a * b) * d == a * (b * d) && a * (b + d) == a * b + a * d && a * b == b * a, "field axioms");
        if (!a.is_zero())
            c(a * a.inverse() == AN(1), "inverse");
        auto r = try_sqrt(a * a);
        c(r && *r == (a.sign() < 0 ? -a : a), "try_sqrt round trip");
    }
    // Smith normal form certifies itself
    for (int i = 0; i < 20; ++i) {
        std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        IntMat m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t s = 0; s < cols; ++s)
                m(r, s) = static_cast<long>(rng() % 11) - 5;
        SmithForm s = smith_normal_form(m);
        c(s.left * m * s.right == s.diagonal, "Smith transforms");
    }
    // coset tables certify themselves
    for (auto [p, q, r] : {std::tuple{2, 3, 5}, {2, 3, 4}, {2, 2, 7}, {3, 3, 2}}) {
        Presentation pres = Presentation::parse("gens: a b\na^" + std::to_string(p) + "\nb^" + std::to_string(q) +
                                                "\n(ab)^" + std::to_string(r) + "\n");
        c(todd_coxeter(pres, {}).self_check(pres, {}).empty(), "coset table self-check");
    }
    // parser round trip
    const std::vector<std::string> names{"a", "b", "c", "x0", "x12"};
    for (int t = 0; t < 100; ++t) {
        FreeWord w;
        for (int i = static_cast<int>(rng() % 8); i > 0; --i)
            w *= FreeWord::gen(names[rng() % names.size()], static_cast<long>(rng() % 9) - 4);
        c(parse_word(w.to_string()) == w, "parse-print-parse");
    }
    // boundary of boundary
    CellComplex x = expand(equivariant_expansion(poincare_complex(), PermGroup::closure({}, 5), {1, Perm::identity(5)},
                                                 {2, Perm::identity(5)}));
    c((x.d1 * x.d2).is_zero(), "d1 d2 = 0");
    // jet product rule, conjugation, inverse at +-1, commutators
    auto quat = [&] { return Quat(AN(Rational(num(rng), den(rng))), AN(Rational(num(rng), den(rng))),
                                  AN(Rational(num(rng), den(rng))), AN(Rational(num(rng), den(rng)))); };
    auto unit = [&] {
        Quat q = quat();
        while (q.norm2().is_zero())
            q = quat();
        return q;
    };
    for (int t = 0; t < 10; ++t) {
        QuatJet f(unit(), {quat(), quat()}), g(unit(), {quat(), quat()});
        QuatJet fg = f * g;
        for (int i = 0; i < 2; ++i)
            c(fg.partial(i) == f.partial(i) * g.value() + f.value() * g.partial(i), "product rule");
        QuatJet r(Quat(AN(Rational(t + 1, 3)), 0, 0, 0), {quat(), quat()});
        QuatJet conj = f * r * f.inverse();
        for (int i = 0; i < 2; ++i)
            c(conj.partial(i) == f.value() * r.partial(i) * f.value().inverse(), "conjugation");
        QuatJet one(Quat(t % 2 ? 1 : -1), {quat(), quat()}), other(Quat(-1), {quat(), quat()});
        for (int i = 0; i < 2; ++i)
            c(one.inverse().partial(i) == -one.partial(i), "inverse at +-1");
        QuatJet comm = one * other * one.inverse() * other.inverse();
        c(comm.value() == Quat(1) && comm.partial(0) == Quat(0) && comm.partial(1) == Quat(0), "commutator");
    }
    return c.outcome("field, try_sqrt, Smith, coset tables, parser, d1 d2 = 0, jet rules");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "symbolic moduli relators (k = 0)", 60, symbolic_moduli},
        {2, "universal point equals the reference values", 10, universal_point},
        {3, "Jacobian closed form, determinant, jets", 120, jacobian},
        {4, "purity of derivatives at t_bad", 120, purity_check},
        {5, "coset enumeration orders 60 / 60 / 7200", 30, enumerations},
        {6, "Brown pipeline 7200 then 60", 30, brown_pipeline},
        {7, "word identity in the 60-coset action", 5, appendix_identity},
        {8, "homology of the Poincare complex and gamma_os", 30, homology_check},
        {9, "fixed-point suite over the subgroup lattice", 60, fixed_points},
        {10, "indices and the alternating orbit count", 60, indices},
        {11, "reduced graph, incomparability, expansions", 30, structure},
        {12, "property suites", 120, properties},
    };
    const double total_target = 600;
    auto all0 = std::chrono::steady_clock::now();
    int failures = 0;
    for (const auto& cr : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = s <= cr.target_seconds;
        bool pass = o.pass && in_time;
        failures += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << " " << std::setw(2) << cr.id << " " << cr.title << " ["
                  << std::fixed << std::setprecision(2) << s << " s / " << std::setprecision(0) << cr.target_seconds
                  << " s] " << o.detail << (in_time ? "" : " (over time target)") << "\n";
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - all0).count();
    std::cout << (total <= total_target ? "PASS" : "FAIL") << " total " << std::fixed << std::setprecision(2) << total
              << " s / " << std::setprecision(0) << total_target << " s\n";
    failures += total > total_target;
    return failures == 0 ? 0 : 1;
}
