#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "a5v/linalg.hpp"

using namespace a5v;
using M = Mat3<AlgebraicNumber>;

namespace {

M matrix_a() {
    const auto& c = named_constants();
    AlgebraicNumber t = Rational(-2, 3) * c.sqrt2;
    return {{-1, 0, 0}, {0, Rational(1, 3), t}, {0, t, Rational(-1, 3)}};
}

M matrix_b() {
    const auto& c = named_constants();
    AlgebraicNumber h = c.sqrt3 * Rational(1, 2);
    return {{Rational(-1, 2), -h, 0}, {h, Rational(-1, 2), 0}, {0, 0, 1}};
}

M random_mat(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-6, 6);
    M m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m(i, j) = Rational(d(rng), 1) + Rational(d(rng), 3) * named_constants().sqrt5;
    return m;
}

IntMat random_intmat(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

// Leibniz determinant over the integers.
Integer leibniz(const IntMat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    std::vector<std::size_t> perm(cols.size());
    std::iota(perm.begin(), perm.end(), 0);
    Integer total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        Integer term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < rows.size(); ++i)
            term *= m(rows[i], cols[perm[i]]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
std::vector<Integer> invariant_factors_by_minors(const IntMat& m) {
    std::vector<Integer> dk{1}, out;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(m.rows(), k, 0, cur, rs);
        subsets(m.cols(), k, 0, cur, cs);
        Integer g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs)
                g = gcd(g, leibniz(m, r, c));
        if (g == 0)
            break;
        out.push_back(g / dk.back());
        dk.push_back(g);
    }
    return out;
}

}  // namespace

TEST_CASE("mat_arith basics") {
    CHECK(M::identity() * M::identity() == M::identity());
    CHECK(matrix_b().det() == AlgebraicNumber(1));
    M s1{{-1, 0, 0}, {0, 0, -1}, {0, -1, 0}};
    CHECK(s1 * s1.transpose() == M::identity());
    CHECK(matrix_b().trace() == AlgebraicNumber(0));
    CHECK(power(matrix_b(), 3).is_identity());
    CHECK(power(matrix_b(), -1) * matrix_b() == M::identity());
    CHECK((AlgebraicNumber(2) * M::identity()).det() == AlgebraicNumber(8));
    Vec3<AlgebraicNumber> e3{0, 0, 1};
    CHECK((matrix_b() * e3)[2] == AlgebraicNumber(1));
}

TEST_CASE("is_special_orthogonal") {
    CHECK(is_special_orthogonal(M::identity()));
    CHECK(is_special_orthogonal(matrix_a()));
    CHECK(is_special_orthogonal(matrix_b()));
    M refl{{1, 0, 0}, {0, 1, 0}, {0, 0, -1}};
    CHECK_FALSE(is_special_orthogonal(refl));
    CHECK_FALSE(is_special_orthogonal(AlgebraicNumber(2) * M::identity()));
}

TEST_CASE("ring mismatch surfaces as an error") {
    Tower other = adjoin_sqrt(TowerSpec::rationals(), AlgebraicNumber(7), "r7");
    M a = M::identity();
    M b = M::identity();
    b(0, 1) = AlgebraicNumber::generator(other);
    a(1, 0) = named_constants().sqrt2;
    CHECK_THROWS_AS(a * b, IncompatibleTowers);
}

TEST_CASE("property: transpose and determinant are multiplicative") {
    std::mt19937 rng(42);
    for (int i = 0; i < 30; ++i) {
        M a = random_mat(rng), b = random_mat(rng);
        CHECK((a * b).transpose() == b.transpose() * a.transpose());
        CHECK((a * b).det() == a.det() * b.det());
    }
}

TEST_CASE("dense_det agrees with the 3x3 expansion") {
    std::mt19937 rng(5);
    for (int i = 0; i < 10; ++i) {
        M a = random_mat(rng);
        DenseMat<AlgebraicNumber> d(3, std::vector<AlgebraicNumber>(3));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                d[r][c] = a(r, c);
        CHECK(dense_det(d) == a.det());
    }
    DenseMat<AlgebraicNumber> sing{{1, 2}, {2, 4}};
    CHECK(dense_det(sing).is_zero());
    DenseMat<AlgebraicNumber> swap{{0, 1}, {1, 0}};
    CHECK(dense_det(swap) == AlgebraicNumber(-1));
}

TEST_CASE("smith_normal_form examples") {
    IntMat z(3, 4);
    SmithForm sz = smith_normal_form(z);
    CHECK(sz.factors.empty());
    CHECK(sz.left == IntMat::identity(3));
    CHECK(sz.right == IntMat::identity(4));

    SmithForm s = smith_normal_form(IntMat{{2, 4}, {6, 8}});
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0] == 2);
    CHECK(s.factors[1] == 4);
    CHECK(s.left * IntMat{{2, 4}, {6, 8}} * s.right == s.diagonal);
}

TEST_CASE("property: Smith factors match determinantal divisors") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntMat m = random_intmat(rng, r, c, -5, 5);
        if (trial % 3 == 0)  // force some rank deficiency
            for (std::size_t j = 0; j < c; ++j)
                m(r - 1, j) = 2 * m(0, j);
        SmithForm s = smith_normal_form(m);
        CHECK(s.factors == invariant_factors_by_minors(m));
        CHECK(int_rank_det(m).rank == s.rank());
        CHECK(int_rank_det(s.left).det.value() * int_rank_det(s.left).det.value() == 1);
        CHECK(int_rank_det(s.right).det.value() * int_rank_det(s.right).det.value() == 1);
        if (r == c) {
            std::vector<std::size_t> idx(r);
            std::iota(idx.begin(), idx.end(), 0);
            CHECK(int_rank_det(m).det.value() == leibniz(m, idx, idx));
        }
    }
}

TEST_CASE("int_rank_det examples") {
    auto id = int_rank_det(IntMat::identity(3));
    CHECK(id.rank == 3);
    CHECK(*id.det == 1);
    auto ones = int_rank_det(IntMat{{1, 1}, {1, 1}});
    CHECK(ones.rank == 1);
    CHECK(*ones.det == 0);
    auto x0 = int_rank_det(IntMat{{1}});
    CHECK(x0.rank == 1);
    CHECK(*x0.det == 1);
    CHECK_FALSE(int_rank_det(IntMat{{1, 2, 3}}).det.has_value());
}
