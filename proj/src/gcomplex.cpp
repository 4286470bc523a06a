#include "a5v/gcomplex.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace a5v {

namespace {

bool digits_only(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

void check_subgroup(const PermGroup& g, const PermGroup& h, const std::string& what) {
    if (h.degree() != g.degree() || !h.is_subgroup_of(g))
        throw std::invalid_argument(what + ": stabilizer is not a subgroup of the ambient group");
}

std::vector<std::string> cycles_of(const std::vector<Perm>& gens) {
    std::vector<std::string> out;
    for (const auto& p : gens)
        out.push_back(p.to_cycles());
    return out;
}

PermGroup group_from_json(const nlohmann::json& j, int degree) {
    std::vector<Perm> gens;
    for (const auto& s : j)
        gens.push_back(Perm::parse_cycles(s.get<std::string>(), degree));
    return PermGroup::closure(std::move(gens), degree);
}

}  // namespace

PermGroup OrbitComplex::vertex_stabilizer(const VertexRef& v) const {
    return vertices_.at(v.orbit).stabilizer.conjugate(v.element.inverse());
}

bool OrbitComplex::same_vertex(const VertexRef& u, const VertexRef& v) const {
    if (u.orbit != v.orbit)
        return false;
    const auto& h = vertices_.at(u.orbit).stabilizer;
    return h.left_coset_rep(u.element) == h.left_coset_rep(v.element);
}

std::pair<VertexRef, VertexRef> OrbitComplex::endpoints(const PathStep& s) const {
    const auto& e = edges_.at(s.edge);
    VertexRef src{e.source.orbit, s.element * e.source.element};
    VertexRef tgt{e.target.orbit, s.element * e.target.element};
    if (s.orientation < 0)
        std::swap(src, tgt);
    return {src, tgt};
}

int OrbitComplex::add_vertex(VertexOrbit v) {
    check_subgroup(group_, v.stabilizer, "vertex " + v.name);
    if (v.presentation) {
        const auto& p = *v.presentation;
        if (p.gens.size() != p.images.size())
            throw std::invalid_argument("vertex " + v.name + ": presentation images do not match generators");
        for (std::size_t i = 0; i < p.gens.size(); ++i) {
            if (p.gens[i].size() != 1 || !std::isalpha(static_cast<unsigned char>(p.gens[i][0])) || p.gens[i] == "x")
                throw std::invalid_argument("vertex " + v.name + ": presentation generators must be letters other than x");
            if (!v.stabilizer.contains(p.images[i]))
                throw std::invalid_argument("vertex " + v.name + ": generator image outside the stabilizer");
        }
        if (PermGroup::closure(p.images, group_.degree()).order() != v.stabilizer.order())
            throw std::invalid_argument("vertex " + v.name + ": presentation images do not generate the stabilizer");
        for (const auto& r : p.relators) {
            std::map<std::string, Perm> img;
            for (std::size_t i = 0; i < p.gens.size(); ++i)
                img[p.gens[i]] = p.images[i];
            if (!eval_perm_word(img, r, group_.degree()).is_identity())
                throw std::invalid_argument("vertex " + v.name + ": relator " + r.to_string() + " fails on images");
        }
    }
    if (v.name.empty())
        v.name = "v" + std::to_string(vertices_.size() + 1);
    vertices_.push_back(std::move(v));
    return static_cast<int>(vertices_.size()) - 1;
}

int OrbitComplex::add_edge(EdgeOrbit e) {
    check_subgroup(group_, e.stabilizer, "edge " + e.name);
    for (const auto* v : {&e.source, &e.target}) {
        if (v->orbit < 0 || v->orbit >= static_cast<int>(vertices_.size()))
            throw std::invalid_argument("edge " + e.name + ": endpoint orbit out of range");
        if (!group_.contains(v->element))
            throw std::invalid_argument("edge " + e.name + ": endpoint element outside the group");
        if (!e.stabilizer.is_subgroup_of(vertex_stabilizer(*v)))
            throw std::invalid_argument("edge " + e.name + ": stabilizer does not fix an endpoint");
    }
    if (e.name.empty()) {
        int n = static_cast<int>(edges_.size()) + 1;
        auto taken = [&](const std::string& s) {
            return std::any_of(edges_.begin(), edges_.end(), [&](const EdgeOrbit& x) { return x.name == s; });
        };
        while (taken(std::to_string(n)))
            ++n;
        e.name = std::to_string(n);
    }
    if (!digits_only(e.name))
        throw std::invalid_argument("edge name must be digits: " + e.name);
    for (const auto& x : edges_)
        if (x.name == e.name)
            throw std::invalid_argument("duplicate edge name " + e.name);
    edges_.push_back(std::move(e));
    return static_cast<int>(edges_.size()) - 1;
}

int OrbitComplex::add_face(FaceOrbit f) {
    check_subgroup(group_, f.stabilizer, "face " + f.name);
    if (f.path.empty())
        throw std::invalid_argument("face " + f.name + ": empty attaching path");
    for (const auto& s : f.path) {
        if (s.edge < 0 || s.edge >= static_cast<int>(edges_.size()))
            throw std::invalid_argument("face " + f.name + ": edge orbit out of range");
        if (s.orientation != 1 && s.orientation != -1)
            throw std::invalid_argument("face " + f.name + ": orientation must be +1 or -1");
        if (!group_.contains(s.element))
            throw std::invalid_argument("face " + f.name + ": path element outside the group");
    }
    for (std::size_t i = 0; i < f.path.size(); ++i) {
        auto end = endpoints(f.path[i]).second;
        auto next = endpoints(f.path[(i + 1) % f.path.size()]).first;
        if (!same_vertex(end, next))
            throw std::invalid_argument("face " + f.name + ": attaching path is not closed");
    }
    for (const auto& h : f.stabilizer.elements())
        for (const auto& s : f.path) {
            const auto& he = edges_[s.edge].stabilizer;
            if (he.left_coset_rep(h * s.element) != he.left_coset_rep(s.element))
                throw std::invalid_argument("face " + f.name + ": stabilizer moves an edge of the path");
        }
    if (f.name.empty())
        f.name = "f" + std::to_string(faces_.size() + 1);
    faces_.push_back(std::move(f));
    return static_cast<int>(faces_.size()) - 1;
}

nlohmann::json OrbitComplex::to_json() const {
    nlohmann::json j;
    j["degree"] = group_.degree();
    j["group"] = cycles_of(group_.generators());
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : vertices_) {
        nlohmann::json o{{"name", v.name}, {"stabilizer", cycles_of(v.stabilizer.generators())}};
        if (v.presentation) {
            std::vector<std::string> rels;
            for (const auto& r : v.presentation->relators)
                rels.push_back(r.to_string());
            o["presentation"] = {{"gens", v.presentation->gens},
                                 {"images", cycles_of(v.presentation->images)},
                                 {"relators", rels}};
        }
        j["vertices"].push_back(o);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : edges_)
        j["edges"].push_back({{"name", e.name},
                              {"stabilizer", cycles_of(e.stabilizer.generators())},
                              {"source", {e.source.orbit, e.source.element.to_cycles()}},
                              {"target", {e.target.orbit, e.target.element.to_cycles()}}});
    j["faces"] = nlohmann::json::array();
    for (const auto& f : faces_) {
        nlohmann::json path = nlohmann::json::array();
        for (const auto& s : f.path)
            path.push_back({s.element.to_cycles(), s.edge, s.orientation});
        j["faces"].push_back({{"name", f.name}, {"stabilizer", cycles_of(f.stabilizer.generators())}, {"path", path}});
    }
    return j;
}

OrbitComplex OrbitComplex::from_json(const nlohmann::json& j) {
    int degree = j.at("degree").get<int>();
    OrbitComplex c(group_from_json(j.at("group"), degree));
    auto ref = [&](const nlohmann::json& r) {
        return VertexRef{r.at(0).get<int>(), Perm::parse_cycles(r.at(1).get<std::string>(), degree)};
    };
    for (const auto& v : j.at("vertices")) {
        VertexOrbit o{v.value("name", ""), group_from_json(v.at("stabilizer"), degree), std::nullopt};
        if (v.contains("presentation")) {
            const auto& p = v.at("presentation");
            StabilizerPresentation sp;
            sp.gens = p.at("gens").get<std::vector<std::string>>();
            for (const auto& s : p.at("images"))
                sp.images.push_back(Perm::parse_cycles(s.get<std::string>(), degree));
            for (const auto& r : p.at("relators"))
                sp.relators.push_back(parse_relator(r.get<std::string>()));
            o.presentation = std::move(sp);
        }
        c.add_vertex(std::move(o));
    }
    if (j.contains("edges"))
        for (const auto& e : j.at("edges"))
            c.add_edge({e.value("name", ""), group_from_json(e.at("stabilizer"), degree), ref(e.at("source")),
                        ref(e.at("target"))});
    if (j.contains("faces"))
        for (const auto& f : j.at("faces")) {
            FaceOrbit o{f.value("name", ""), group_from_json(f.at("stabilizer"), degree), {}};
            for (const auto& s : f.at("path"))
                o.path.push_back({Perm::parse_cycles(s.at(0).get<std::string>(), degree), s.at(1).get<int>(),
                                  s.at(2).get<int>()});
            c.add_face(std::move(o));
        }
    return c;
}

// ---------------------------------------------------------------------------
// Expansion and homology

CellComplex expand(const OrbitComplex& c) {
    CellComplex out;
    out.elements = c.group().elements();
    const int degree = c.group().degree();
    std::array<std::vector<const PermGroup*>, 3> stabs;
    for (const auto& v : c.vertices())
        stabs[0].push_back(&v.stabilizer);
    for (const auto& e : c.edges())
        stabs[1].push_back(&e.stabilizer);
    for (const auto& f : c.faces())
        stabs[2].push_back(&f.stabilizer);

    std::array<std::map<std::pair<int, Perm>, int>, 3> index;
    for (int dim = 0; dim < 3; ++dim) {
        for (std::size_t o = 0; o < stabs[dim].size(); ++o) {
            const PermGroup& h = *stabs[dim][o];
            for (const auto& x : out.elements) {
                Perm rep = h.left_coset_rep(x);
                auto key = std::make_pair(static_cast<int>(o), rep);
                if (index[dim].count(key))
                    continue;
                index[dim][key] = static_cast<int>(out.cells[dim].size());
                out.cells[dim].push_back({static_cast<int>(o), rep});
                out.stabilizers[dim].push_back(h.conjugate(rep.inverse()));
            }
        }
        out.action[dim].assign(out.elements.size(), std::vector<int>(out.cells[dim].size()));
        for (std::size_t k = 0; k < out.elements.size(); ++k)
            for (std::size_t i = 0; i < out.cells[dim].size(); ++i) {
                const Cell& cell = out.cells[dim][i];
                Perm rep = stabs[dim][cell.orbit]->left_coset_rep(out.elements[k] * cell.rep);
                out.action[dim][k][i] = index[dim].at({cell.orbit, rep});
            }
    }
    (void)degree;

    auto vertex_index = [&](const VertexRef& v) {
        return index[0].at({v.orbit, c.vertices()[v.orbit].stabilizer.left_coset_rep(v.element)});
    };
    out.d1 = IntMat(out.count(0), out.count(1));
    for (std::size_t i = 0; i < out.count(1); ++i) {
        const Cell& cell = out.cells[1][i];
        auto [src, tgt] = c.endpoints({cell.rep, cell.orbit, 1});
        int s = vertex_index(src), t = vertex_index(tgt);
        out.edge_ends.emplace_back(s, t);
        out.d1(s, i) -= 1;
        out.d1(t, i) += 1;
    }
    out.d2 = IntMat(out.count(1), out.count(2));
    for (std::size_t i = 0; i < out.count(2); ++i) {
        const Cell& cell = out.cells[2][i];
        for (const auto& s : c.faces()[cell.orbit].path) {
            Perm x = cell.rep * s.element;
            int e = index[1].at({s.edge, c.edges()[s.edge].stabilizer.left_coset_rep(x)});
            out.d2(e, i) += s.orientation;
        }
    }
    return out;
}

bool HomologyResult::acyclic() const {
    return betti[0] == 1 && betti[1] == 0 && betti[2] == 0 && torsion[0].empty() && torsion[1].empty() &&
           torsion[2].empty();
}

std::string HomologyResult::to_string() const {
    std::ostringstream os;
    for (int d = 0; d < 3; ++d) {
        if (d)
            os << ", ";
        os << "H" << d << " = ";
        std::vector<std::string> parts;
        if (betti[d] == 1)
            parts.push_back("Z");
        else if (betti[d] > 1)
            parts.push_back("Z^" + std::to_string(betti[d]));
        for (const auto& t : torsion[d])
            parts.push_back("Z/" + t.get_str());
        if (parts.empty())
            os << "0";
        for (std::size_t i = 0; i < parts.size(); ++i)
            os << (i ? " + " : "") << parts[i];
    }
    return os.str();
}

nlohmann::json HomologyResult::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (int d = 0; d < 3; ++d) {
        std::vector<std::string> t;
        for (const auto& x : torsion[d])
            t.push_back(x.get_str());
        j.push_back({{"dim", d}, {"betti", betti[d]}, {"torsion", t}});
    }
    return j;
}

namespace {

std::vector<Integer> smith_factors(const IntMat& m) {
    if (m.rows() == 0 || m.cols() == 0)
        return {};
    return smith_normal_form(m).factors;
}

}  // namespace

HomologyResult homology(const CellComplex& c) {
    HomologyResult h;
    auto f1 = smith_factors(c.d1), f2 = smith_factors(c.d2);
    long r1 = static_cast<long>(f1.size()), r2 = static_cast<long>(f2.size());
    h.betti = {static_cast<long>(c.count(0)) - r1, static_cast<long>(c.count(1)) - r1 - r2,
               static_cast<long>(c.count(2)) - r2};
    for (const auto& x : f1)
        if (abs(x) > 1)
            h.torsion[0].push_back(abs(x));
    for (const auto& x : f2)
        if (abs(x) > 1)
            h.torsion[1].push_back(abs(x));
    return h;
}

HomologyResult homology(const OrbitComplex& c) { return homology(expand(c)); }

namespace {

/// Subcomplex on the kept cells; dimension-0 kept list must contain all
/// endpoints of kept edges, and so on.
CellComplex restrict_cells(const CellComplex& c, const std::array<std::vector<int>, 3>& keep) {
    CellComplex out;
    std::array<std::vector<int>, 3> pos;
    for (int d = 0; d < 3; ++d) {
        pos[d].assign(c.count(d), -1);
        for (std::size_t i = 0; i < keep[d].size(); ++i) {
            pos[d][keep[d][i]] = static_cast<int>(i);
            out.cells[d].push_back(c.cells[d][keep[d][i]]);
            out.stabilizers[d].push_back(c.stabilizers[d][keep[d][i]]);
        }
    }
    out.d1 = IntMat(keep[0].size(), keep[1].size());
    for (std::size_t j = 0; j < keep[1].size(); ++j) {
        auto [s, t] = c.edge_ends[keep[1][j]];
        if (pos[0][s] < 0 || pos[0][t] < 0)
            throw std::logic_error("subcomplex: edge without its endpoints");
        out.edge_ends.emplace_back(pos[0][s], pos[0][t]);
        for (std::size_t i = 0; i < keep[0].size(); ++i)
            out.d1(i, j) = c.d1(keep[0][i], keep[1][j]);
    }
    out.d2 = IntMat(keep[1].size(), keep[2].size());
    for (std::size_t j = 0; j < keep[2].size(); ++j)
        for (std::size_t e = 0; e < c.count(1); ++e)
            if (c.d2(e, keep[2][j]) != 0) {
                if (pos[1][e] < 0)
                    throw std::logic_error("subcomplex: face without its boundary");
                out.d2(pos[1][e], j) = c.d2(e, keep[2][j]);
            }
    return out;
}

}  // namespace

CellComplex fixed_subcomplex(const CellComplex& c, const PermGroup& h) {
    std::array<std::vector<int>, 3> keep;
    for (int d = 0; d < 3; ++d)
        for (std::size_t i = 0; i < c.count(d); ++i)
            if (h.is_subgroup_of(c.stabilizers[d][i]))
                keep[d].push_back(static_cast<int>(i));
    return restrict_cells(c, keep);
}

CellComplex fixed_subcomplex(const OrbitComplex& c, const PermGroup& h) { return fixed_subcomplex(expand(c), h); }

// ---------------------------------------------------------------------------
// Constructors

OrbitComplex gamma_os_a5() {
    const int n = 5;
    auto p = [&](const char* s) { return Perm::parse_cycles(s, n); };
    auto grp = [&](std::vector<Perm> g) { return PermGroup::closure(std::move(g), n); };
    Perm a = p("(2,5)(3,4)"), b = p("(3,5,4)"), c = p("(1,2)(3,5)"), d = p("(2,5)(3,4)");

    OrbitComplex x(a5());
    x.add_vertex({"v1", grp({a, b}),
                  StabilizerPresentation{{"a", "b"}, {a, b}, {parse_word("a^2"), parse_word("b^3"), parse_word("(ab)^3")}}});
    x.add_vertex({"v2", grp({b, c}),
                  StabilizerPresentation{{"b", "c"}, {b, c}, {parse_word("b^3"), parse_word("c^2"), parse_word("(bc)^2")}}});
    x.add_vertex({"v3", grp({c, d}),
                  StabilizerPresentation{{"c", "d"}, {c, d}, {parse_word("c^2"), parse_word("d^2"), parse_word("(cd)^5")}}});
    Perm id = Perm::identity(n);
    x.add_edge({"12", grp({b}), {0, id}, {1, id}});
    x.add_edge({"23", grp({c}), {1, id}, {2, id}});
    x.add_edge({"31", grp({d}), {2, id}, {0, id}});
    return x;
}

OrbitComplex attach_free_orbit(const OrbitComplex& c, std::vector<PathStep> path, const std::string& name) {
    OrbitComplex out = c;
    out.add_face({name, PermGroup::closure({}, c.group().degree()), std::move(path)});
    return out;
}

OrbitComplex poincare_complex() {
    Perm id = Perm::identity(5);
    return attach_free_orbit(gamma_os_a5(), {{id, 0, 1}, {id, 1, 1}, {id, 2, 1}});
}

OrbitComplex equivariant_expansion(const OrbitComplex& c, const PermGroup& h, const VertexRef& x0,
                                   const VertexRef& x1) {
    if (!h.is_subgroup_of(c.vertex_stabilizer(x0)) || !h.is_subgroup_of(c.vertex_stabilizer(x1)))
        throw std::invalid_argument("equivariant_expansion: endpoints are not fixed by H");
    CellComplex full = expand(c);
    auto vertex_index = [&](const VertexRef& v) {
        Perm rep = c.vertices()[v.orbit].stabilizer.left_coset_rep(v.element);
        for (std::size_t i = 0; i < full.count(0); ++i)
            if (full.cells[0][i].orbit == v.orbit && full.cells[0][i].rep == rep)
                return static_cast<int>(i);
        throw std::logic_error("equivariant_expansion: vertex not found");
    };
    int start = vertex_index(x1), goal = vertex_index(x0);
    // BFS in X^H from x1 to x0
    std::vector<std::pair<int, int>> prev(full.count(0), {-1, 0});  // (edge, orientation)
    std::vector<bool> seen(full.count(0), false);
    std::deque<int> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < full.count(1); ++e) {
            if (!h.is_subgroup_of(full.stabilizers[1][e]))
                continue;
            auto [s, t] = full.edge_ends[e];
            for (int o : {1, -1}) {
                int from = o > 0 ? s : t, to = o > 0 ? t : s;
                if (from == v && !seen[to]) {
                    seen[to] = true;
                    prev[to] = {static_cast<int>(e), o};
                    queue.push_back(to);
                }
            }
        }
    }
    if (!seen[goal])
        throw std::invalid_argument("equivariant_expansion: no H-fixed edge path between the vertices");
    std::vector<PathStep> gamma;
    for (int v = goal; v != start;) {
        auto [e, o] = prev[v];
        gamma.push_back({full.cells[1][e].rep, full.cells[1][e].orbit, o});
        v = o > 0 ? full.edge_ends[e].first : full.edge_ends[e].second;
    }
    std::reverse(gamma.begin(), gamma.end());

    OrbitComplex out = c;
    int e = out.add_edge({"", h, x0, x1});
    std::vector<PathStep> path{{Perm::identity(c.group().degree()), e, 1}};
    path.insert(path.end(), gamma.begin(), gamma.end());
    out.add_face({"", h, std::move(path)});
    return out;
}

// ---------------------------------------------------------------------------
// Forests

CellComplex orbit_subgraph(const CellComplex& c, int edge_orbit) {
    std::array<std::vector<int>, 3> keep;
    std::set<int> verts;
    for (std::size_t e = 0; e < c.count(1); ++e)
        if (c.cells[1][e].orbit == edge_orbit) {
            keep[1].push_back(static_cast<int>(e));
            verts.insert(c.edge_ends[e].first);
            verts.insert(c.edge_ends[e].second);
        }
    keep[0].assign(verts.begin(), verts.end());
    return restrict_cells(c, keep);
}

bool is_forest(const CellComplex& graph) {
    if (graph.count(2) != 0)
        throw std::invalid_argument("is_forest: input is not a graph");
    return homology(graph).betti[1] == 0;
}

bool is_reduced(const OrbitComplex& c) {
    CellComplex x = expand(c);
    for (std::size_t j = 0; j < c.edges().size(); ++j)
        if (is_forest(orbit_subgraph(x, static_cast<int>(j))))
            return false;
    return true;
}

CellComplex forest_collapse(const CellComplex& c, int edge_orbit) {
    if (!is_forest(orbit_subgraph(c, edge_orbit)))
        throw std::invalid_argument("forest_collapse: edge orbit does not span a forest");
    std::vector<int> parent(c.count(0));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (std::size_t e = 0; e < c.count(1); ++e)
        if (c.cells[1][e].orbit == edge_orbit) {
            int a = find(c.edge_ends[e].first), b = find(c.edge_ends[e].second);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

    CellComplex out;
    out.elements = c.elements;
    std::vector<int> vpos(c.count(0), -1), roots;
    for (std::size_t v = 0; v < c.count(0); ++v)
        if (find(static_cast<int>(v)) == static_cast<int>(v)) {
            vpos[v] = static_cast<int>(roots.size());
            roots.push_back(static_cast<int>(v));
        }
    auto comp = [&](int v) { return vpos[find(v)]; };
    for (int r : roots)
        out.cells[0].push_back(c.cells[0][r]);
    std::vector<int> epos(c.count(1), -1), kept;
    for (std::size_t e = 0; e < c.count(1); ++e)
        if (c.cells[1][e].orbit != edge_orbit) {
            epos[e] = static_cast<int>(kept.size());
            kept.push_back(static_cast<int>(e));
            out.cells[1].push_back(c.cells[1][e]);
            out.stabilizers[1].push_back(c.stabilizers[1][e]);
        }
    out.cells[2] = c.cells[2];
    out.stabilizers[2] = c.stabilizers[2];

    if (!c.elements.empty()) {
        out.action[0].assign(c.elements.size(), std::vector<int>(roots.size()));
        out.action[1].assign(c.elements.size(), std::vector<int>(kept.size()));
        out.action[2] = c.action[2];
        for (std::size_t k = 0; k < c.elements.size(); ++k) {
            for (std::size_t i = 0; i < roots.size(); ++i)
                out.action[0][k][i] = comp(c.action[0][k][roots[i]]);
            for (std::size_t i = 0; i < kept.size(); ++i)
                out.action[1][k][i] = epos[c.action[1][k][kept[i]]];
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            std::vector<Perm> st;
            for (std::size_t k = 0; k < c.elements.size(); ++k)
                if (out.action[0][k][i] == static_cast<int>(i))
                    st.push_back(c.elements[k]);
            out.stabilizers[0].push_back(PermGroup::closure(std::move(st), c.elements.front().degree()));
        }
    } else {
        for (int r : roots)
            out.stabilizers[0].push_back(c.stabilizers[0][r]);
    }

    out.d1 = IntMat(roots.size(), kept.size());
    for (std::size_t j = 0; j < kept.size(); ++j) {
        auto [s, t] = c.edge_ends[kept[j]];
        out.edge_ends.emplace_back(comp(s), comp(t));
        out.d1(comp(s), j) -= 1;
        out.d1(comp(t), j) += 1;
    }
    out.d2 = IntMat(kept.size(), c.count(2));
    for (std::size_t j = 0; j < kept.size(); ++j)
        for (std::size_t f = 0; f < c.count(2); ++f)
            out.d2(j, f) = c.d2(kept[j], f);
    return out;
}

bool stabilizer_incomparability(const CellComplex& c) {
    for (std::size_t u = 0; u < c.count(0); ++u)
        for (std::size_t v = u + 1; v < c.count(0); ++v)
            if (c.stabilizers[0][u].is_subgroup_of(c.stabilizers[0][v]) ||
                c.stabilizers[0][v].is_subgroup_of(c.stabilizers[0][u]))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// Indices

Rational index_i_F(const PermGroup& g, const PermGroup& h, const std::vector<PermGroup>& family) {
    std::vector<const PermGroup*> above;
    for (const auto& k : family)
        if (k.order() > h.order() && h.is_subgroup_of(k))
            above.push_back(&k);
    std::sort(above.begin(), above.end(), [](const PermGroup* a, const PermGroup* b) { return a->order() < b->order(); });
    // signed count of chains with top element k
    std::vector<long> top(above.size());
    long chi = 0;
    for (std::size_t i = 0; i < above.size(); ++i) {
        long s = 1;
        for (std::size_t j = 0; j < i; ++j)
            if (above[j]->order() < above[i]->order() && above[j]->is_subgroup_of(*above[i]))
                s -= top[j];
        top[i] = s;
        chi += s;
    }
    std::size_t n = normalizer(g, h).order() / h.order();
    Rational r(1 - chi, static_cast<long>(n));
    r.canonicalize();
    return r;
}

std::vector<PermGroup> solvable_family(const SubgroupLattice& lat) {
    std::vector<PermGroup> out;
    for (const auto& h : lat.subgroups)
        if (is_solvable(h))
            out.push_back(h);
    return out;
}

std::vector<Lemma23Row> verify_lemma23(const OrbitComplex& c, const SubgroupLattice& lat,
                                       const std::vector<PermGroup>& family, bool all_classes) {
    std::map<int, std::array<int, 3>> counts;
    auto note = [&](const PermGroup& s, int dim) {
        int k = lat.index_of(s);
        if (k < 0)
            throw std::invalid_argument("verify_lemma23: stabilizer missing from the lattice");
        counts[lat.conj_class[k]][dim] += 1;
    };
    for (const auto& v : c.vertices())
        note(v.stabilizer, 0);
    for (const auto& e : c.edges())
        note(e.stabilizer, 1);
    for (const auto& f : c.faces())
        note(f.stabilizer, 2);
    if (all_classes)
        for (const auto& h : family)
            counts.try_emplace(lat.conj_class[lat.index_of(h)], std::array<int, 3>{0, 0, 0});

    std::vector<Lemma23Row> rows;
    for (const auto& [cls, n] : counts) {
        const PermGroup& rep = lat.subgroups[lat.classes[cls].front()];
        rows.push_back({rep, n, index_i_F(c.group(), rep, family), static_cast<long>(n[0]) - n[1] + n[2]});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Brown presentations

namespace {

StabilizerPresentation fallback_presentation(const PermGroup& h) {
    StabilizerPresentation p;
    char letter = 'a';
    for (const auto& s : h.generators()) {
        if (s.is_identity())
            continue;
        if (letter == 'x')
            ++letter;
        if (letter > 'z')
            throw std::invalid_argument("stabilizer has too many generators for a default presentation");
        p.gens.push_back(std::string(1, letter++));
        p.images.push_back(s);
    }
    // words along a BFS tree of the Cayley graph
    std::map<Perm, FreeWord> word{{Perm::identity(h.degree()), FreeWord()}};
    std::deque<Perm> queue{Perm::identity(h.degree())};
    while (!queue.empty()) {
        Perm x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < p.gens.size(); ++i) {
            Perm y = x * p.images[i];
            if (!word.count(y)) {
                word[y] = word[x] * FreeWord::gen(p.gens[i]);
                queue.push_back(y);
            }
        }
    }
    for (const auto& [x, w] : word)
        for (std::size_t i = 0; i < p.gens.size(); ++i) {
            FreeWord r = w * FreeWord::gen(p.gens[i]) * word.at(x * p.images[i]).inverse();
            if (!r.empty() && std::none_of(p.relators.begin(), p.relators.end(),
                                           [&](const FreeWord& q) { return same_relator(q, r); }))
                p.relators.push_back(r);
        }
    return p;
}

StabilizerPresentation vertex_presentation(const VertexOrbit& v) {
    return v.presentation ? *v.presentation : fallback_presentation(v.stabilizer);
}

std::string copy_name(const std::string& gen, int orbit) { return gen + std::to_string(orbit + 1); }

FreeWord cyclic_reduce(const FreeWord& w) {
    auto letters = w.letters();
    std::size_t i = 0, j = letters.size();
    while (j - i >= 2 && letters[i].first == letters[j - 1].first && letters[i].second == -letters[j - 1].second) {
        ++i;
        --j;
    }
    FreeWord out;
    for (std::size_t k = i; k < j; ++k)
        out *= FreeWord::gen(letters[k].first, letters[k].second);
    return out;
}

}  // namespace

bool same_relator(const FreeWord& u, const FreeWord& v) {
    auto a = cyclic_reduce(u).letters();
    auto b = cyclic_reduce(v).letters();
    if (a.size() != b.size())
        return false;
    if (a.empty())
        return true;
    auto binv = cyclic_reduce(v.inverse()).letters();
    std::size_t n = a.size();
    for (std::size_t r = 0; r < n; ++r) {
        bool eq = true, eqi = true;
        for (std::size_t k = 0; k < n && (eq || eqi); ++k) {
            eq = eq && a[(k + r) % n] == b[k];
            eqi = eqi && a[(k + r) % n] == binv[k];
        }
        if (eq || eqi)
            return true;
    }
    return false;
}

BrownChoices brown_choices(const OrbitComplex& c) {
    const int nv = static_cast<int>(c.vertices().size()), ne = static_cast<int>(c.edges().size());
    const Perm id = Perm::identity(c.group().degree());
    BrownChoices ch;
    ch.vertex_shift.assign(nv, id);
    ch.edge_shift.assign(ne, id);
    ch.g_e.assign(ne, id);
    ch.in_tree.assign(ne, false);
    if (nv == 0)
        return ch;
    std::vector<bool> known(nv, false);
    known[0] = true;
    for (bool grew = true; grew;) {
        grew = false;
        for (int j = 0; j < ne && !grew; ++j) {
            const auto& e = c.edges()[j];
            int a = e.source.orbit, b = e.target.orbit;
            if (known[a] == known[b])
                continue;
            Perm z;
            if (known[a]) {
                z = ch.vertex_shift[a] * e.source.element.inverse();
                ch.vertex_shift[b] = z * e.target.element;
                known[b] = true;
            } else {
                z = ch.vertex_shift[b] * e.target.element.inverse();
                ch.vertex_shift[a] = z * e.source.element;
                known[a] = true;
            }
            ch.edge_shift[j] = z;
            ch.in_tree[j] = true;
            grew = true;
        }
    }
    if (std::find(known.begin(), known.end(), false) != known.end())
        throw std::invalid_argument("brown_presentation: the complex is not connected");
    for (int j = 0; j < ne; ++j) {
        if (ch.in_tree[j])
            continue;
        const auto& e = c.edges()[j];
        Perm z = ch.vertex_shift[e.source.orbit] * e.source.element.inverse();
        ch.edge_shift[j] = z;
        ch.g_e[j] = z * e.target.element * ch.vertex_shift[e.target.orbit].inverse();
    }
    return ch;
}

FreeWord stabilizer_word(const OrbitComplex& c, const BrownChoices& ch, int orbit, const Perm& h) {
    auto p = vertex_presentation(c.vertices().at(orbit));
    const Perm& y = ch.vertex_shift.at(orbit);
    Perm id = Perm::identity(c.group().degree());
    if (h == id)
        return {};
    std::map<Perm, FreeWord> word{{id, FreeWord()}};
    std::deque<Perm> queue{id};
    while (!queue.empty()) {
        Perm x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < p.gens.size(); ++i) {
            Perm s = y * p.images[i] * y.inverse();
            for (int sign : {1, -1}) {
                Perm next = x * (sign > 0 ? s : s.inverse());
                if (word.count(next))
                    continue;
                word[next] = word[x] * FreeWord::gen(copy_name(p.gens[i], orbit), sign);
                if (next == h)
                    return word[next];
                queue.push_back(next);
            }
        }
    }
    throw std::logic_error("stabilizer_word: " + h.to_cycles() + " is not in the stabilizer of V-vertex " +
                           std::to_string(orbit + 1));
}

FreeWord r_omega(const OrbitComplex& c, const BrownChoices& ch, const std::vector<PathStep>& path) {
    if (path.empty())
        return {};
    for (std::size_t i = 0; i < path.size(); ++i)
        if (!c.same_vertex(c.endpoints(path[i]).second, c.endpoints(path[(i + 1) % path.size()]).first))
            throw std::invalid_argument("r_omega: path is not closed");
    VertexRef start = c.endpoints(path.front()).first;
    int cur = start.orbit;
    if (!c.same_vertex(start, {cur, ch.vertex_shift[cur]}))
        throw std::invalid_argument("r_omega: path does not start at a vertex of V");

    const int degree = c.group().degree();
    Perm total = Perm::identity(degree);
    FreeWord out;
    for (const auto& s : path) {
        const auto& e = c.edges()[s.edge];
        const Perm& z = ch.edge_shift[s.edge];
        const Perm& ge = ch.g_e[s.edge];
        PermGroup ge_stab = e.stabilizer.conjugate(z.inverse());  // stabilizer of E = z.e
        Perm m = total.inverse() * s.element * z.inverse();
        std::optional<Perm> h;
        int expect = s.orientation > 0 ? e.source.orbit : e.target.orbit;
        if (expect != cur)
            throw std::logic_error("r_omega: step leaves from the wrong vertex orbit");
        for (const auto& k : ge_stab.elements()) {
            Perm cand = s.orientation > 0 ? m * k : m * k * ge;
            if (!h || cand < *h)
                h = cand;
        }
        out *= stabilizer_word(c, ch, cur, *h);
        out *= FreeWord::gen("x" + e.name, s.orientation);
        total = total * (s.orientation > 0 ? *h * ge : *h * ge.inverse());
        cur = s.orientation > 0 ? e.target.orbit : e.source.orbit;
    }
    out *= stabilizer_word(c, ch, start.orbit, total).inverse();
    return out;
}

std::pair<Presentation, std::map<std::string, FreeWord>> tietze_simplify(const Presentation& p) {
    std::vector<std::string> gens = p.gens;
    std::vector<FreeWord> rels = p.relators;
    std::map<std::string, FreeWord> subst;
    for (const auto& g : gens)
        subst[g] = FreeWord::gen(g);

    auto eliminate = [&](const std::string& g, const FreeWord& image) {
        auto f = [&](const std::string& x) { return x == g ? image : FreeWord::gen(x); };
        for (auto& r : rels)
            r = r.substitute(f);
        for (auto& [k, w] : subst)
            w = w.substitute(f);
        gens.erase(std::find(gens.begin(), gens.end(), g));
    };
    auto position = [&](const std::string& g) { return std::find(gens.begin(), gens.end(), g) - gens.begin(); };

    for (bool changed = true; changed;) {
        changed = false;
        std::vector<FreeWord> tidy;
        for (const auto& r : rels) {
            FreeWord w = cyclic_reduce(r);
            if (!w.empty() && std::none_of(tidy.begin(), tidy.end(), [&](const FreeWord& q) { return same_relator(q, w); }))
                tidy.push_back(w);
        }
        rels = std::move(tidy);
        for (const auto& r : rels) {
            auto l = r.letters();
            if (l.size() == 1) {
                eliminate(l[0].first, FreeWord());
                changed = true;
                break;
            }
            if (l.size() == 2 && l[0].first != l[1].first) {
                auto [g, eps] = l[0];
                auto [h, del] = l[1];
                if (position(g) > position(h)) {
                    std::swap(g, h);
                    std::swap(eps, del);
                }
                eliminate(h, FreeWord::gen(g, -eps * del));
                changed = true;
                break;
            }
        }
    }

    std::map<std::string, std::string> rename;
    auto stem = [](const std::string& g) {
        std::size_t k = g.size();
        while (k > 1 && std::isdigit(static_cast<unsigned char>(g[k - 1])))
            --k;
        return g.substr(0, k);
    };
    for (const auto& g : gens) {
        std::string s = stem(g);
        bool unique = std::count_if(gens.begin(), gens.end(), [&](const std::string& x) { return stem(x) == s; }) == 1;
        rename[g] = unique ? s : g;
    }
    auto f = [&](const std::string& x) { return FreeWord::gen(rename.count(x) ? rename.at(x) : x); };
    Presentation out;
    for (const auto& g : gens)
        out.gens.push_back(rename[g]);
    for (const auto& r : rels)
        out.relators.push_back(r.substitute(f));
    for (auto& [k, w] : subst)
        w = w.substitute(f);
    out.validate();
    return {out, subst};
}

BrownPresentation brown_presentation(const OrbitComplex& c) {
    BrownPresentation bp;
    bp.choices = brown_choices(c);
    const auto& ch = bp.choices;
    const int nv = static_cast<int>(c.vertices().size());

    for (int i = 0; i < nv; ++i) {
        auto p = vertex_presentation(c.vertices()[i]);
        const Perm& y = ch.vertex_shift[i];
        for (std::size_t k = 0; k < p.gens.size(); ++k) {
            std::string name = copy_name(p.gens[k], i);
            bp.raw.gens.push_back(name);
            bp.phi[name] = y * p.images[k] * y.inverse();
        }
        for (const auto& r : p.relators)
            bp.raw.relators.push_back(r.substitute([&](const std::string& g) { return FreeWord::gen(copy_name(g, i)); }));
    }
    for (std::size_t j = 0; j < c.edges().size(); ++j) {
        std::string x = "x" + c.edges()[j].name;
        bp.raw.gens.push_back(x);
        bp.phi[x] = ch.g_e[j];
    }
    for (std::size_t j = 0; j < c.edges().size(); ++j) {
        const auto& e = c.edges()[j];
        FreeWord x = FreeWord::gen("x" + e.name);
        if (ch.in_tree[j])
            bp.raw.relators.push_back(x);
        const Perm& z = ch.edge_shift[j];
        const Perm& ge = ch.g_e[j];
        for (const auto& h : e.stabilizer.generators()) {
            if (h.is_identity())
                continue;
            Perm g = z * h * z.inverse();
            FreeWord lhs = stabilizer_word(c, ch, e.source.orbit, g);
            FreeWord rhs = stabilizer_word(c, ch, e.target.orbit, ge.inverse() * g * ge);
            bp.raw.relators.push_back(x.inverse() * lhs * x * rhs.inverse());
        }
    }
    for (const auto& f : c.faces()) {
        VertexRef start = c.endpoints(f.path.front()).first;
        Perm u = ch.vertex_shift[start.orbit] * start.element.inverse();
        std::vector<PathStep> moved;
        for (const auto& s : f.path)
            moved.push_back({u * s.element, s.edge, s.orientation});
        bp.face_words.push_back(r_omega(c, ch, moved));
    }
    bp.raw.validate();

    std::tie(bp.simplified, bp.substitution) = tietze_simplify(bp.raw);
    for (const auto& w : bp.face_words)
        bp.simplified_face_words.push_back(w.substitute([&](const std::string& g) { return bp.substitution.at(g); }));
    return bp;
}

Presentation BrownPresentation::full() const {
    Presentation p = simplified;
    for (const auto& w : simplified_face_words)
        p.relators.push_back(w);
    return p;
}

}  // namespace a5v
