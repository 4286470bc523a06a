#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "a5v/gcomplex.hpp"

using namespace a5v;

namespace {

Perm P(const char* c) { return Perm::parse_cycles(c, 5); }
Perm id5() { return Perm::identity(5); }

PermGroup grp(std::vector<Perm> g) { return PermGroup::closure(std::move(g), 5); }
PermGroup trivial() { return grp({}); }

// rank over GF(p) by plain elimination
std::size_t rank_mod(const IntMat& m, long p) {
    std::vector<std::vector<long>> a(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Integer r = m(i, j) % p;
            a[i][j] = (r.get_si() + p) % p;
        }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][c] == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        std::swap(a[piv], a[rank]);
        long inv = 1;
        for (long t = 1; t < p; ++t)
            if (a[rank][c] * t % p == 1)
                inv = t;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && a[r][c]) {
                long f = a[r][c] * inv % p;
                for (std::size_t k = 0; k < m.cols(); ++k)
                    a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
            }
        ++rank;
    }
    return rank;
}

int components(const CellComplex& c) {
    std::vector<int> parent(c.count(0));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (auto [s, t] : c.edge_ends)
        parent[find(s)] = find(t);
    int n = 0;
    for (std::size_t v = 0; v < c.count(0); ++v)
        n += find(static_cast<int>(v)) == static_cast<int>(v);
    return n;
}

// Betti numbers over GF(p); equal to the integral ones when there is no p-torsion.
std::array<long, 3> betti_mod(const CellComplex& c, long p) {
    long r1 = c.count(1) && c.count(0) ? static_cast<long>(rank_mod(c.d1, p)) : 0;
    long r2 = c.count(2) && c.count(1) ? static_cast<long>(rank_mod(c.d2, p)) : 0;
    return {static_cast<long>(c.count(0)) - r1, static_cast<long>(c.count(1)) - r1 - r2,
            static_cast<long>(c.count(2)) - r2};
}

bool boundary_squares_to_zero(const CellComplex& c) {
    if (c.count(0) == 0 || c.count(1) == 0 || c.count(2) == 0)
        return true;
    return (c.d1 * c.d2).is_zero();
}

bool orbit_sizes_are_indices(const CellComplex& c, std::size_t group_order) {
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            std::set<int> orbit;
            for (const auto& act : c.action[d])
                orbit.insert(act[i]);
            if (orbit.size() * c.stabilizers[d][i].order() != group_order)
                return false;
        }
    return true;
}

OrbitComplex free_edges() {
    OrbitComplex c(a5());
    c.add_vertex({"", trivial(), std::nullopt});
    c.add_vertex({"", trivial(), std::nullopt});
    c.add_edge({"", trivial(), {0, id5()}, {1, id5()}});
    return c;
}

}  // namespace

TEST_CASE("gamma_os: orbit data and cell counts") {
    OrbitComplex g = gamma_os_a5();
    REQUIRE(g.vertices().size() == 3);
    CHECK(g.vertices()[0].stabilizer.order() == 12);
    CHECK(g.vertices()[1].stabilizer.order() == 6);
    CHECK(g.vertices()[2].stabilizer.order() == 10);
    CHECK(g.edges()[0].stabilizer.order() == 3);
    CHECK(g.edges()[1].stabilizer.order() == 2);
    CHECK(g.edges()[2].stabilizer.order() == 2);
    CellComplex x = expand(g);
    CHECK(x.count(0) == 21);
    CHECK(x.count(1) == 80);
    std::map<int, int> per_orbit;
    for (const auto& c : x.cells[0])
        ++per_orbit[c.orbit];
    CHECK(per_orbit == std::map<int, int>{{0, 5}, {1, 10}, {2, 6}});
    per_orbit.clear();
    for (const auto& c : x.cells[1])
        ++per_orbit[c.orbit];
    CHECK(per_orbit == std::map<int, int>{{0, 20}, {1, 30}, {2, 30}});
}

TEST_CASE("gamma_os: H1 rank from Euler characteristic of a connected graph") {
    CellComplex x = expand(gamma_os_a5());
    REQUIRE(components(x) == 1);
    HomologyResult h = homology(x);
    CHECK(h.betti[0] == 1);
    CHECK(h.betti[1] == 1 - x.euler());
    CHECK(h.betti[1] == 60);
    CHECK(h.torsion[0].empty());
    CHECK(h.torsion[1].empty());
}

TEST_CASE("poincare complex: counts, Euler characteristic and acyclicity") {
    CellComplex x = expand(poincare_complex());
    CHECK(x.count(0) == 21);
    CHECK(x.count(1) == 80);
    CHECK(x.count(2) == 60);
    CHECK(x.euler() == 1);
    HomologyResult h = homology(x);
    CHECK(h.acyclic());
    CHECK(h.to_string() == "H0 = Z, H1 = 0, H2 = 0");
    for (long p : {2, 3, 5, 7})
        CHECK(betti_mod(x, p) == std::array<long, 3>{1, 0, 0});
}

TEST_CASE("attach_free_orbit rejects an open path") {
    OrbitComplex g = gamma_os_a5();
    CHECK_THROWS_AS(attach_free_orbit(g, {{id5(), 0, 1}, {id5(), 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(attach_free_orbit(g, {{id5(), 0, 1}, {id5(), 0, 1}}), std::invalid_argument);
}

TEST_CASE("homology of a free vertex orbit") {
    OrbitComplex c(a5());
    c.add_vertex({"", trivial(), std::nullopt});
    HomologyResult h = homology(c);
    CHECK(h.betti == std::array<long, 3>{60, 0, 0});
}

TEST_CASE("fixed subcomplexes of the Poincare complex") {
    CellComplex x = expand(poincare_complex());
    auto lat = subgroup_lattice(a5());
    REQUIRE(lat.subgroups.size() == 59);
    int checked = 0;
    for (const auto& h : lat.subgroups) {
        if (h.order() == 1 || h.order() == 60)
            continue;
        CellComplex f = fixed_subcomplex(x, h);
        CHECK_MESSAGE(homology(f).acyclic(), "order ", h.order());
        ++checked;
    }
    CHECK(checked == 57);
    CHECK(fixed_subcomplex(x, a5()).empty());
    CellComplex all = fixed_subcomplex(x, trivial());
    CHECK(all.count(0) == 21);
    CHECK(all.count(1) == 80);
    CHECK(all.count(2) == 60);
}

TEST_CASE("fixed subcomplex of H12 in gamma_os is a tree") {
    CellComplex f = fixed_subcomplex(gamma_os_a5(), grp({P("(3,5,4)")}));
    CHECK(f.count(2) == 0);
    CHECK(f.count(1) + 1 == f.count(0));
    CHECK(components(f) == 1);
    CHECK(homology(f).acyclic());
}

TEST_CASE("equivariant expansion preserves homology") {
    OrbitComplex g = gamma_os_a5();
    PermGroup h12 = grp({P("(3,5,4)")});
    OrbitComplex y = equivariant_expansion(g, h12, {0, id5()}, {1, id5()});
    CHECK(y.edges().size() == 4);
    CHECK(y.faces().size() == 1);
    HomologyResult before = homology(g), after = homology(y);
    CHECK(before.betti == after.betti);
    CHECK(before.torsion == after.torsion);

    // new fixed cells: one per coset of H in its normalizer
    std::size_t n12 = normalizer(a5(), h12).order() / h12.order();
    CellComplex fx = fixed_subcomplex(g, h12), fy = fixed_subcomplex(y, h12);
    CHECK(fy.count(1) == fx.count(1) + n12);
    CHECK(fy.count(2) == fx.count(2) + n12);
    CHECK(homology(fy).acyclic());

    const PermGroup& h1 = g.vertices()[0].stabilizer;
    REQUIRE(normalizer(a5(), h1).order() == h1.order());
    OrbitComplex loop = equivariant_expansion(poincare_complex(), h1, {0, id5()}, {0, id5()});
    CellComplex f0 = fixed_subcomplex(poincare_complex(), h1), f1 = fixed_subcomplex(loop, h1);
    CHECK(f1.count(1) == f0.count(1) + 1);
    CHECK(f1.count(2) == f0.count(2) + 1);
    CHECK(homology(f1).acyclic());
    CHECK(homology(loop).acyclic());

    OrbitComplex z = equivariant_expansion(poincare_complex(), trivial(), {0, id5()}, {2, id5()});
    CellComplex ez = expand(z);
    CHECK(ez.count(1) == 80 + 60);
    CHECK(ez.count(2) == 60 + 60);
    CHECK(homology(ez).acyclic());
}

TEST_CASE("equivariant expansion needs fixed endpoints and a fixed path") {
    OrbitComplex g = gamma_os_a5();
    CHECK_THROWS_AS(equivariant_expansion(g, grp({P("(1,2,3,4,5)")}), {0, id5()}, {1, id5()}),
                    std::invalid_argument);
    OrbitComplex c(a5());
    c.add_vertex({"", trivial(), std::nullopt});
    c.add_vertex({"", trivial(), std::nullopt});
    CHECK_THROWS_AS(equivariant_expansion(c, trivial(), {0, id5()}, {1, id5()}), std::invalid_argument);
}

TEST_CASE("forests and reduced graphs") {
    CHECK(is_reduced(gamma_os_a5()));
    CellComplex g = expand(gamma_os_a5());
    for (int j = 0; j < 3; ++j)
        CHECK_FALSE(is_forest(orbit_subgraph(g, j)));
    CellComplex f = expand(free_edges());
    CHECK(is_forest(orbit_subgraph(f, 0)));
    CHECK_FALSE(is_reduced(free_edges()));
    CHECK_THROWS_AS(forest_collapse(g, 0), std::invalid_argument);

    CellComplex collapsed = forest_collapse(f, 0);
    CHECK(collapsed.count(0) == 60);
    CHECK(collapsed.count(1) == 0);
    HomologyResult a = homology(f), b = homology(collapsed);
    CHECK(a.betti == b.betti);
    CHECK(a.torsion == b.torsion);
}

TEST_CASE("forest collapse inside a larger complex keeps homology") {
    // the free edges join orbits v1 (stab H1) and a free vertex orbit
    OrbitComplex c = gamma_os_a5();
    int v = c.add_vertex({"v4", trivial(), std::nullopt});
    int e = c.add_edge({"", trivial(), {0, id5()}, {v, id5()}});
    CellComplex x = expand(c);
    REQUIRE(is_forest(orbit_subgraph(x, e)));
    CellComplex y = forest_collapse(x, e);
    CHECK(y.count(0) == 21);
    CHECK(homology(x).betti == homology(y).betti);
    CHECK(stabilizer_incomparability(y));
    CHECK_FALSE(stabilizer_incomparability(x));
}

TEST_CASE("stabilizer incomparability") {
    CHECK(stabilizer_incomparability(expand(gamma_os_a5())));
    CHECK_FALSE(stabilizer_incomparability(expand(free_edges())));
    OrbitComplex single(a5());
    single.add_vertex({"", gamma_os_a5().vertices()[0].stabilizer, std::nullopt});
    CHECK(stabilizer_incomparability(expand(single)));
}

TEST_CASE("indices i_SLV") {
    auto lat = subgroup_lattice(a5());
    auto fam = solvable_family(lat);
    CHECK(fam.size() == 58);
    CHECK(index_i_F(a5(), trivial(), fam) == 1);
    OrbitComplex g = gamma_os_a5();
    CHECK(index_i_F(a5(), g.vertices()[0].stabilizer, fam) == 1);
    // maximal members: (1 - 0) / [N(H):H]
    for (int m : lat.maximal()) {
        const PermGroup& h = lat.subgroups[m];
        Rational expect(1, static_cast<long>(normalizer(a5(), h).order() / h.order()));
        expect.canonicalize();
        CHECK(index_i_F(a5(), h, fam) == expect);
    }
}

TEST_CASE("indices equal alternating orbit counts on the Poincare complex") {
    auto lat = subgroup_lattice(a5());
    auto fam = solvable_family(lat);
    auto rows = verify_lemma23(poincare_complex(), lat, fam);
    std::map<std::size_t, long> alt;
    for (const auto& r : rows) {
        CHECK_MESSAGE(r.match(), "order ", r.representative.order());
        alt[r.representative.order()] = r.alternating;
    }
    CHECK(alt == std::map<std::size_t, long>{{1, 1}, {2, -2}, {3, -1}, {6, 1}, {10, 1}, {12, 1}});
    for (const auto& r : verify_lemma23(poincare_complex(), lat, fam, true))
        CHECK(r.match());
}

TEST_CASE("brown presentation of gamma_os") {
    BrownPresentation bp = brown_presentation(gamma_os_a5());
    CHECK(bp.choices.in_tree == std::vector<bool>{true, true, false});
    for (const auto& g : bp.choices.g_e)
        CHECK(g.is_identity());
    CHECK(bp.raw.gens == std::vector<std::string>{"a1", "b1", "b2", "c2", "c3", "d3", "x12", "x23", "x31"});
    CHECK(bp.simplified.gens == std::vector<std::string>{"a", "b", "c", "d", "x"});
    std::vector<std::string> expected = {"a^2", "b^3", "c^2", "d^2", "(ab)^3", "(bc)^2", "(cd)^5", "x a x^-1 = d"};
    REQUIRE(bp.simplified.relators.size() == expected.size());
    for (const auto& e : expected) {
        FreeWord r = parse_relator(e);
        CHECK_MESSAGE(std::any_of(bp.simplified.relators.begin(), bp.simplified.relators.end(),
                                  [&](const FreeWord& q) { return same_relator(q, r); }),
                      e);
    }
    CHECK(bp.substitution.at("x31") == FreeWord::gen("x"));
    CHECK(bp.substitution.at("x12").empty());
    CHECK(bp.substitution.at("b2") == FreeWord::gen("b"));
}

TEST_CASE("brown presentation of the Poincare complex enumerates to 7200 then 60") {
    BrownPresentation bp = brown_presentation(poincare_complex());
    REQUIRE(bp.face_words.size() == 1);
    CHECK(bp.face_words[0] == parse_word("x12 x23 x31"));
    CHECK(bp.simplified_face_words[0] == FreeWord::gen("x"));
    Presentation full = bp.full();
    CHECK(todd_coxeter(full, {}).size() == 7200);
    full.relators.push_back(parse_word("(bac)^3"));
    CHECK(todd_coxeter(full, {}).size() == 60);
}

TEST_CASE("phi-bar kills every relator") {
    for (const OrbitComplex& c : {poincare_complex(), equivariant_expansion(poincare_complex(), trivial(), {0, id5()}, {2, id5()}),
                                  equivariant_expansion(gamma_os_a5(), grp({P("(3,5,4)")}), {0, id5()}, {1, id5()})}) {
        BrownPresentation bp = brown_presentation(c);
        for (const auto& r : bp.raw.relators)
            CHECK(eval_perm_word(bp.phi, r, 5).is_identity());
        for (const auto& r : bp.face_words)
            CHECK(eval_perm_word(bp.phi, r, 5).is_identity());
    }
}

TEST_CASE("r_omega: constant path, open path, translated paths") {
    OrbitComplex x = poincare_complex();
    BrownChoices ch = brown_choices(x);
    CHECK(r_omega(x, ch, {}).empty());
    CHECK_THROWS_AS(r_omega(x, ch, {{id5(), 0, 1}}), std::invalid_argument);

    // finite quotient of G~_Gamma with x = a; r_tau maps to a != 1
    BrownPresentation bp = brown_presentation(gamma_os_a5());
    Presentation q = bp.simplified;
    q.relators.push_back(parse_relator("x = a"));
    CosetTable t = todd_coxeter(q, {});
    REQUIRE(t.size() == 7200);
    CHECK_FALSE(conjugate_in_regular_action(t, FreeWord::gen("x"), FreeWord()));
    auto sub = [&](const FreeWord& w) { return w.substitute([&](const std::string& g) { return bp.substitution.at(g); }); };
    FreeWord tau = sub(r_omega(x, ch, x.faces()[0].path));
    CHECK(tau == FreeWord::gen("x"));
    int checked = 0;
    for (const auto& g : a5().elements()) {
        std::vector<PathStep> moved;
        for (const auto& s : x.faces()[0].path)
            moved.push_back({g * s.element, s.edge, s.orientation});
        VertexRef start = x.endpoints(moved.front()).first;
        if (!x.same_vertex(start, {start.orbit, ch.vertex_shift[start.orbit]}))
            continue;
        FreeWord w = sub(r_omega(x, ch, moved));
        CHECK(conjugate_in_regular_action(t, w, tau));
        CHECK(eval_perm_word(bp.phi, r_omega(x, ch, moved), 5).is_identity());
        ++checked;
    }
    CHECK(checked == 12);
}

TEST_CASE("orbit complex JSON round trip") {
    OrbitComplex x = equivariant_expansion(poincare_complex(), grp({P("(1,2)(3,5)")}), {1, id5()}, {2, id5()});
    OrbitComplex y = OrbitComplex::from_json(x.to_json());
    CHECK(y.to_json() == x.to_json());
    CellComplex a = expand(x), b = expand(y);
    CHECK(a.d1 == b.d1);
    CHECK(a.d2 == b.d2);
    nlohmann::json bad = x.to_json();
    bad["faces"][0]["path"].erase(0);
    CHECK_THROWS_AS(OrbitComplex::from_json(bad), std::invalid_argument);
}

TEST_CASE("tietze simplification") {
    Presentation p{{"a", "b", "c1", "c2"}, {parse_word("b"), parse_word("c1 c2^-1"), parse_word("a^3"), parse_word("(a c1)^2")}};
    auto [s, sub] = tietze_simplify(p);
    CHECK(s.gens == std::vector<std::string>{"a", "c"});
    CHECK(s.relators.size() == 2);
    CHECK(sub.at("b").empty());
    CHECK(sub.at("c2") == FreeWord::gen("c"));
    CHECK(same_relator(parse_word("a b c"), parse_word("c^-1 b^-1 a^-1")));
    CHECK(same_relator(parse_word("a b c"), parse_word("b c a")));
    CHECK_FALSE(same_relator(parse_word("a b c"), parse_word("a c b")));
}

TEST_CASE("property: boundary of boundary vanishes, orbit sizes are indices, fixed sets are monotone") {
    std::mt19937 rng(20261016);
    auto lat = subgroup_lattice(a5());
    OrbitComplex c = poincare_complex();
    for (int round = 0; round < 6; ++round) {
        // random expansion at a random subgroup fixing two random vertices
        const PermGroup& h = lat.subgroups[rng() % lat.subgroups.size()];
        CellComplex x = expand(c);
        std::vector<int> fixed;
        for (std::size_t v = 0; v < x.count(0); ++v)
            if (h.is_subgroup_of(x.stabilizers[0][v]))
                fixed.push_back(static_cast<int>(v));
        if (fixed.size() >= 1 && h.order() < 60) {
            int u = fixed[rng() % fixed.size()], w = fixed[rng() % fixed.size()];
            OrbitComplex next = equivariant_expansion(c, h, {x.cells[0][u].orbit, x.cells[0][u].rep},
                                                      {x.cells[0][w].orbit, x.cells[0][w].rep});
            CHECK(homology(next).acyclic());
            c = next;
        }
        CellComplex y = expand(c);
        CHECK(boundary_squares_to_zero(y));
        CHECK(orbit_sizes_are_indices(y, 60));
        const PermGroup& k = lat.subgroups[rng() % lat.subgroups.size()];
        for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
            if (lat.contains[lat.index_of(k)][i]) {
                CellComplex big = fixed_subcomplex(y, lat.subgroups[i]), small = fixed_subcomplex(y, k);
                for (int d = 0; d < 3; ++d)
                    for (const auto& cell : small.cells[d])
                        CHECK(std::find(big.cells[d].begin(), big.cells[d].end(), cell) != big.cells[d].end());
            }
    }
}

TEST_CASE("property: indices equal orbit counts after random expansions") {
    std::mt19937 rng(7);
    auto lat = subgroup_lattice(a5());
    auto fam = solvable_family(lat);
    OrbitComplex c = poincare_complex();
    for (int round = 0; round < 3; ++round) {
        const PermGroup& h = fam[rng() % fam.size()];
        CellComplex x = expand(c);
        std::vector<int> fixed;
        for (std::size_t v = 0; v < x.count(0); ++v)
            if (h.is_subgroup_of(x.stabilizers[0][v]))
                fixed.push_back(static_cast<int>(v));
        REQUIRE_FALSE(fixed.empty());
        int u = fixed[rng() % fixed.size()], w = fixed[rng() % fixed.size()];
        c = equivariant_expansion(c, h, {x.cells[0][u].orbit, x.cells[0][u].rep}, {x.cells[0][w].orbit, x.cells[0][w].rep});
        for (const auto& r : verify_lemma23(c, lat, fam, true))
            CHECK(r.match());
    }
}
