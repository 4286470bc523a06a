// Equivariant 2-complexes described by cell orbits, their expansion into
// plain cell complexes, homology, fixed subcomplexes, forest operations,
// the indices i_F(H), and Brown presentations of the extension G~_X.
//
// Cells of an orbit with representative stabilizer H are the left cosets
// xH, with g.(xH) = (gx)H. A cell is labelled by its orbit and the minimal
// element of its coset.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "a5v/fpgroups.hpp"
#include "a5v/groups.hpp"
#include "a5v/linalg.hpp"

namespace a5v {

/// Named generators with images in the ambient group, and relators.
struct StabilizerPresentation {
    std::vector<std::string> gens;  // single letters other than 'x'
    std::vector<Perm> images;
    std::vector<FreeWord> relators;
};

struct VertexOrbit {
    std::string name;
    PermGroup stabilizer;
    std::optional<StabilizerPresentation> presentation;
};

/// Endpoint g.v_orbit.
struct VertexRef {
    int orbit;
    Perm element;
};

struct EdgeOrbit {
    std::string name;  // digits; the Brown generator is "x" + name
    PermGroup stabilizer;
    VertexRef source, target;
};

/// The oriented edge element.e^orientation (orientation -1 reverses it).
struct PathStep {
    Perm element;
    int edge;
    int orientation;
};

struct FaceOrbit {
    std::string name;
    PermGroup stabilizer;
    std::vector<PathStep> path;
};

class OrbitComplex {
public:
    OrbitComplex() = default;
    explicit OrbitComplex(PermGroup group) : group_(std::move(group)) {}

    const PermGroup& group() const { return group_; }
    const std::vector<VertexOrbit>& vertices() const { return vertices_; }
    const std::vector<EdgeOrbit>& edges() const { return edges_; }
    const std::vector<FaceOrbit>& faces() const { return faces_; }
    int dimension() const { return faces_.empty() ? (edges_.empty() ? 0 : 1) : 2; }

    int add_vertex(VertexOrbit v);
    /// Throws std::invalid_argument unless the stabilizer fixes both ends.
    int add_edge(EdgeOrbit e);
    /// Throws std::invalid_argument unless the path is closed and fixed
    /// pointwise by the stabilizer.
    int add_face(FaceOrbit f);

    /// Stabilizer of element.v_orbit.
    PermGroup vertex_stabilizer(const VertexRef& v) const;
    /// Start and end vertex of an oriented edge.
    std::pair<VertexRef, VertexRef> endpoints(const PathStep& s) const;
    bool same_vertex(const VertexRef& u, const VertexRef& v) const;

    nlohmann::json to_json() const;
    static OrbitComplex from_json(const nlohmann::json& j);

private:
    PermGroup group_;
    std::vector<VertexOrbit> vertices_;
    std::vector<EdgeOrbit> edges_;
    std::vector<FaceOrbit> faces_;
};

struct Cell {
    int orbit;
    Perm rep;  // minimal element of the coset
    bool operator==(const Cell&) const = default;
};

/// Expanded complex with the action of every group element on the cells
/// of each dimension. Boundary matrices: d1 is vertices x edges, d2 is
/// edges x faces.
struct CellComplex {
    std::vector<Perm> elements;                         // the ambient group, sorted
    std::array<std::vector<Cell>, 3> cells;
    std::array<std::vector<PermGroup>, 3> stabilizers;
    std::array<std::vector<std::vector<int>>, 3> action;  // action[dim][element index][cell]
    std::vector<std::pair<int, int>> edge_ends;           // (source, target) vertex indices
    IntMat d1{0, 0}, d2{0, 0};

    std::size_t count(int dim) const { return cells[dim].size(); }
    bool empty() const { return cells[0].empty() && cells[1].empty() && cells[2].empty(); }
    long euler() const {
        return static_cast<long>(count(0)) - static_cast<long>(count(1)) + static_cast<long>(count(2));
    }
};

CellComplex expand(const OrbitComplex& c);

struct HomologyResult {
    std::array<long, 3> betti{0, 0, 0};
    std::array<std::vector<Integer>, 3> torsion;

    bool acyclic() const;  // H0 = Z, H1 = H2 = 0
    std::string to_string() const;
    nlohmann::json to_json() const;
};

HomologyResult homology(const CellComplex& c);
HomologyResult homology(const OrbitComplex& c);

/// Cells whose stabilizer contains h, as a plain complex (no action data).
CellComplex fixed_subcomplex(const CellComplex& c, const PermGroup& h);
CellComplex fixed_subcomplex(const OrbitComplex& c, const PermGroup& h);

OrbitComplex gamma_os_a5();
/// Attaches one face orbit with trivial stabilizer along `path`.
OrbitComplex attach_free_orbit(const OrbitComplex& c, std::vector<PathStep> path, const std::string& name = "tau");
/// Gamma_OS(A5) with the free orbit along (e12, e23, e31).
OrbitComplex poincare_complex();

/// Attaches an edge orbit of type G/H from x0 to x1 and a face orbit of
/// type G/H along that edge followed by a path in X^H from x1 back to x0.
OrbitComplex equivariant_expansion(const OrbitComplex& c, const PermGroup& h, const VertexRef& x0,
                                   const VertexRef& x1);

/// Graph formed by one orbit of edges and its endpoints.
CellComplex orbit_subgraph(const CellComplex& c, int edge_orbit);
bool is_forest(const CellComplex& graph);
bool is_reduced(const OrbitComplex& c);
/// Shrinks each component of the G-invariant forest G.e to a point.
/// Throws std::invalid_argument if G.e is not a forest.
CellComplex forest_collapse(const CellComplex& c, int edge_orbit);

bool stabilizer_incomparability(const CellComplex& c);

/// (1 - chi(K(F_{>H}))) / [N_G(H) : H], chi of the empty complex being 0.
Rational index_i_F(const PermGroup& g, const PermGroup& h, const std::vector<PermGroup>& family);

/// Solvable subgroups of the lattice.
std::vector<PermGroup> solvable_family(const SubgroupLattice& lat);

struct Lemma23Row {
    PermGroup representative;
    std::array<int, 3> orbit_counts;  // c_0, c_1, c_2
    Rational index;                   // from the order complex
    long alternating;                 // c_0 - c_1 + c_2
    bool match() const { return index == Rational(alternating); }
};

/// One row per conjugacy class of cell stabilizers (or per class in the
/// family when `all_classes`).
std::vector<Lemma23Row> verify_lemma23(const OrbitComplex& c, const SubgroupLattice& lat,
                                       const std::vector<PermGroup>& family, bool all_classes = false);

/// Brown's choices: vertex representatives V (y_i . v_i), edge
/// representatives E (z_j . e_j) with s(e) in V, elements g_e, and tree edges.
struct BrownChoices {
    std::vector<Perm> vertex_shift;  // y_i
    std::vector<Perm> edge_shift;    // z_j
    std::vector<Perm> g_e;
    std::vector<bool> in_tree;
};

struct BrownPresentation {
    BrownChoices choices;
    Presentation raw;                     // copies of stabilizer generators and x_e; types (i), (ii)
    std::vector<FreeWord> face_words;     // r_tau per face orbit, raw generators
    std::map<std::string, Perm> phi;      // generator -> G
    Presentation simplified;              // Tietze-reduced graph part
    std::map<std::string, FreeWord> substitution;  // raw generator -> word in simplified generators
    std::vector<FreeWord> simplified_face_words;

    /// simplified plus the face words.
    Presentation full() const;
};

/// Deterministic choices: BFS tree on the quotient graph in edge order.
BrownChoices brown_choices(const OrbitComplex& c);
/// Throws std::invalid_argument for a disconnected quotient graph.
BrownPresentation brown_presentation(const OrbitComplex& c);

/// r_omega for a closed path starting at the V representative of its first vertex.
FreeWord r_omega(const OrbitComplex& c, const BrownChoices& ch, const std::vector<PathStep>& path);

/// Word for h in the copy of the stabilizer of V-vertex `orbit`.
FreeWord stabilizer_word(const OrbitComplex& c, const BrownChoices& ch, int orbit, const Perm& h);

/// Removes generators killed by one-letter relators and identifies
/// generators related by two-letter relators, repeating until stable, then
/// drops trailing digits from names where unambiguous.
std::pair<Presentation, std::map<std::string, FreeWord>> tietze_simplify(const Presentation& p);

/// Equal up to cyclic rotation and inversion.
bool same_relator(const FreeWord& u, const FreeWord& v);

}  // namespace a5v
