// Dense matrices over exact rings: 3x3 matrices over any ring with
// (+, -, *, exact ==, construction from long), square matrices over a
// field for determinants, and integer matrices with Smith normal form.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "a5v/exactfield.hpp"

namespace a5v {

template <class R>
using Vec3 = std::array<R, 3>;

template <class R>
class Mat3 {
public:
    Mat3() : e_{{{R(0), R(0), R(0)}, {R(0), R(0), R(0)}, {R(0), R(0), R(0)}}} {}
    Mat3(std::initializer_list<std::initializer_list<R>> rows) : Mat3() {
        if (rows.size() != 3)
            throw std::invalid_argument("Mat3 needs 3 rows");
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != 3)
                throw std::invalid_argument("Mat3 needs 3 columns");
            std::size_t j = 0;
            for (const auto& x : row)
                e_[i][j++] = x;
            ++i;
        }
    }

    static Mat3 identity() {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            m.e_[i][i] = R(1);
        return m;
    }

    R& operator()(int i, int j) { return e_[i][j]; }
    const R& operator()(int i, int j) const { return e_[i][j]; }

    Mat3 transpose() const {
        Mat3 t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                t.e_[i][j] = e_[j][i];
        return t;
    }

    R trace() const { return e_[0][0] + e_[1][1] + e_[2][2]; }

    R det() const {
        const auto& m = e_;
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    Vec3<R> column(int j) const { return {e_[0][j], e_[1][j], e_[2][j]}; }

    template <class F>
    auto map(F&& f) const {
        using S = decltype(f(e_[0][0]));
        Mat3<S> out;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out(i, j) = f(e_[i][j]);
        return out;
    }

    friend Mat3 operator+(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c.e_[i][j] = a.e_[i][j] + b.e_[i][j];
        return c;
    }
    friend Mat3 operator-(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c.e_[i][j] = a.e_[i][j] - b.e_[i][j];
        return c;
    }
    friend Mat3 operator-(const Mat3& a) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c.e_[i][j] = -a.e_[i][j];
        return c;
    }
    friend Mat3 operator*(const Mat3& a, const Mat3& b) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c.e_[i][j] = a.e_[i][0] * b.e_[0][j] + a.e_[i][1] * b.e_[1][j] + a.e_[i][2] * b.e_[2][j];
        return c;
    }
    friend Mat3 operator*(const R& s, const Mat3& a) {
        Mat3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c.e_[i][j] = s * a.e_[i][j];
        return c;
    }
    friend Vec3<R> operator*(const Mat3& a, const Vec3<R>& v) {
        Vec3<R> out;
        for (int i = 0; i < 3; ++i)
            out[i] = a.e_[i][0] * v[0] + a.e_[i][1] * v[1] + a.e_[i][2] * v[2];
        return out;
    }
    friend bool operator==(const Mat3& a, const Mat3& b) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(a.e_[i][j] == b.e_[i][j]))
                    return false;
        return true;
    }

    bool is_identity() const { return *this == identity(); }

    std::string to_string() const {
        std::vector<std::string> cells;
        std::size_t width = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                std::ostringstream os;
                os << e_[i][j];
                cells.push_back(os.str());
                width = std::max(width, cells.back().size());
            }
        std::string out;
        for (int i = 0; i < 3; ++i) {
            out += "[ ";
            for (int j = 0; j < 3; ++j) {
                const auto& c = cells[i * 3 + j];
                out += std::string(width - c.size(), ' ') + c + (j < 2 ? "  " : " ");
            }
            out += "]\n";
        }
        return out;
    }

private:
    std::array<std::array<R, 3>, 3> e_;
};

template <class R>
bool is_special_orthogonal(const Mat3<R>& m) {
    return (m * m.transpose()).is_identity() && m.det() == R(1);
}

template <class R>
Mat3<R> power(const Mat3<R>& m, int n) {
    Mat3<R> out = Mat3<R>::identity();
    Mat3<R> base = n >= 0 ? m : m.transpose();
    for (int i = 0; i < (n >= 0 ? n : -n); ++i)
        out = out * base;
    return out;
}

/// Square matrix over a field (needs is_zero() and /). Determinant by
/// Gaussian elimination with exact pivoting on the first nonzero entry.
template <class F>
using DenseMat = std::vector<std::vector<F>>;

template <class F>
F dense_det(DenseMat<F> m) {
    const std::size_t n = m.size();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[c].size() != n)
            throw std::invalid_argument("dense_det: matrix not square");
        std::size_t p = c;
        while (p < n && m[p][c].is_zero())
            ++p;
        if (p == n)
            return F(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        F inv = m[c][c].inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero())
                continue;
            F f = m[r][c] * inv;
            for (std::size_t k = c; k < n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long>> rows);

    static IntMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMat transpose() const;
    bool is_zero() const;

    friend IntMat operator*(const IntMat& a, const IntMat& b);
    friend bool operator==(const IntMat& a, const IntMat& b);

    nlohmann::json to_json() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> a_;
};

struct SmithForm {
    IntMat diagonal;              // left * m * right
    IntMat left, right;           // unimodular
    std::vector<Integer> factors; // nonzero invariant factors d1 | d2 | ...
    std::size_t rank() const { return factors.size(); }
};

/// Smith normal form; the transforms are re-multiplied and checked before
/// returning (throws std::logic_error if that check ever fails).
SmithForm smith_normal_form(const IntMat& m);

struct RankDet {
    std::size_t rank;
    std::optional<Integer> det;  // set for square input
};

RankDet int_rank_det(const IntMat& m);

}  // namespace a5v
