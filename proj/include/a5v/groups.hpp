// Permutation groups small enough to enumerate: closure, subgroup lattice,
// solvability, and the fixed evaluation map onto A5.
//
// Products follow the left-to-right convention: (p * q)(x) = q(p(x)), so a
// word g1 g2 ... acts by g1 first. Points are 0-based internally and 1-based
// in cycle notation.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "a5v/words.hpp"

namespace a5v {

class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<int> images);
    static Perm identity(int degree);
    /// "(2,5)(3,4)"; "()" is the identity.
    static Perm parse_cycles(const std::string& text, int degree);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int point) const { return img_[point]; }
    const std::vector<int>& images() const { return img_; }
    bool is_identity() const;
    Perm inverse() const;
    long order() const;

    std::string to_cycles() const;

    friend Perm operator*(const Perm& p, const Perm& q);
    auto operator<=>(const Perm&) const = default;
    bool operator==(const Perm&) const = default;

private:
    std::vector<int> img_;
};

class PermGroup {
public:
    PermGroup() = default;
    /// Closure of the generators (all of one degree).
    static PermGroup closure(std::vector<Perm> generators, int degree);

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }
    /// Sorted element list.
    const std::vector<Perm>& elements() const { return elems_; }
    std::size_t order() const { return elems_.size(); }
    bool contains(const Perm& g) const;
    bool is_subgroup_of(const PermGroup& other) const;
    bool operator==(const PermGroup& other) const { return elems_ == other.elems_; }

    PermGroup conjugate(const Perm& g) const;  // g^-1 H g
    PermGroup derived_subgroup() const;

    /// Left coset representative of x (minimal element of xH).
    Perm left_coset_rep(const Perm& x) const;

private:
    int degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Perm> elems_;
};

bool is_solvable(const PermGroup& h);

/// Normalizer of h inside g.
PermGroup normalizer(const PermGroup& g, const PermGroup& h);

struct SubgroupLattice {
    std::vector<PermGroup> subgroups;       // ordered by order, then elements
    std::vector<std::vector<bool>> contains; // contains[i][j]: subgroups[j] <= subgroups[i]
    std::vector<int> conj_class;            // class id per subgroup
    std::vector<std::vector<int>> classes;  // members per class

    int index_of(const PermGroup& h) const;
    /// Maximal proper subgroups.
    std::vector<int> maximal() const;
};

SubgroupLattice subgroup_lattice(const PermGroup& g);

/// a -> (2,5)(3,4), b -> (3,5,4), c -> (1,2)(3,5), d -> (2,5)(3,4), x_i -> 1.
const std::map<std::string, Perm>& phi_images();
const PermGroup& a5();

/// Evaluates a word with the given generator images; generators named
/// x<digits> without an explicit image map to the identity when
/// `x_trivial` is set. Throws std::out_of_range on unknown generators.
Perm eval_perm_word(const std::map<std::string, Perm>& images, const FreeWord& w, int degree,
                    bool x_trivial = false);

Perm phi_eval(const FreeWord& w);
bool kernel_check(const FreeWord& w);

}  // namespace a5v
