// Finitely presented groups: presentation files, Todd-Coxeter coset
// enumeration (HLT with lookahead), coset actions, exponent matrices and
// word identities.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "a5v/groups.hpp"
#include "a5v/linalg.hpp"
#include "a5v/words.hpp"

namespace a5v {

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Presentation {
    std::vector<std::string> gens;
    std::vector<FreeWord> relators;

    /// Throws std::invalid_argument if a relator mentions an undeclared generator.
    void validate() const;
    int gen_index(const std::string& name) const;

    /// "gens: a b c" then one relator or equation per line; '#' comments.
    static Presentation parse(const std::string& text);
    std::string to_text() const;
};

inline constexpr std::size_t kDefaultMaxCosets = 200000;

class CosetTable {
public:
    /// Column 2*g is generator g, column 2*g+1 its inverse.
    CosetTable(std::vector<std::string> gens, std::vector<std::vector<int>> rows);

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::string>& gens() const { return gens_; }
    int act(int coset, int column) const { return rows_[coset][column]; }
    /// Coset reached from `coset` by reading `w` left to right.
    int apply(int coset, const FreeWord& w) const;
    int column(const std::string& gen, int sign) const;

    /// Re-verifies completeness, inverse consistency, relators at every
    /// coset, subgroup generators at coset 0 and transitivity.
    /// Returns an empty string on success, else the first failure.
    std::string self_check(const Presentation& p, const std::vector<FreeWord>& subgroup) const;

    /// Shortest (BFS) word reaching each coset from coset 0.
    std::vector<FreeWord> transversal() const;

private:
    std::vector<std::string> gens_;
    std::vector<std::vector<int>> rows_;
};

struct EnumerationStats {
    std::size_t defined = 0;     // total cosets ever defined
    std::size_t max_live = 0;
    std::size_t lookaheads = 0;
};

/// Throws BudgetExhausted if more than max_cosets live cosets are needed.
CosetTable todd_coxeter(const Presentation& p, const std::vector<FreeWord>& subgroup,
                        std::size_t max_cosets = kDefaultMaxCosets, EnumerationStats* stats = nullptr);

/// Generator -> permutation of cosets (right action, composed left to right).
std::map<std::string, Perm> coset_action(const CosetTable& t);

IntMat exponent_matrix(const std::vector<FreeWord>& relators, const std::vector<std::string>& variables);

struct NormalizationStep {
    std::string op;  // "multiply" (w_i <- w_i w_j), "invert" (w_i <- w_i^-1), "swap"
    std::size_t i, j;
};

struct Normalization {
    std::vector<FreeWord> relators;
    std::vector<NormalizationStep> log;
};

/// Reduces a unimodular exponent matrix to the identity using only the
/// three moves above. Throws std::invalid_argument otherwise.
Normalization normalize_relators(const std::vector<FreeWord>& relators, const std::vector<std::string>& variables);

bool verify_word_identity(const Presentation& p, const FreeWord& lhs, const FreeWord& rhs,
                          std::size_t max_cosets = kDefaultMaxCosets);

/// For a table of the trivial subgroup (regular action): are x and y
/// conjugate in the group?
bool conjugate_in_regular_action(const CosetTable& t, const FreeWord& x, const FreeWord& y);

/// Named presentations: lemma-bac3, a5-xy, gtilde-a5, gamma0.
Presentation builtin_presentation(const std::string& name);

}  // namespace a5v
