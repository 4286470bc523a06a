#include "a5v/linalg.hpp"

#include <algorithm>
#include <utility>

namespace a5v {

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("IntMat: ragged rows");
        for (long x : r)
            a_.emplace_back(x);
    }
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Integer& x) { return x == 0; });
}

IntMat operator*(const IntMat& a, const IntMat& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("IntMat: dimension mismatch");
    IntMat c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += x * b(k, j);
        }
    return c;
}

bool operator==(const IntMat& a, const IntMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

nlohmann::json IntMat::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rows_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < cols_; ++j) {
            const Integer& x = (*this)(i, j);
            if (x.fits_slong_p())
                row.push_back(x.get_si());
            else
                row.push_back(x.get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string IntMat::to_string() const {
    std::size_t width = 1;
    for (const auto& x : a_)
        width = std::max(width, x.get_str().size());
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out += "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            std::string s = (*this)(i, j).get_str();
            out += " " + std::string(width - s.size(), ' ') + s;
        }
        out += " ]\n";
    }
    return out;
}

namespace {

struct SmithWork {
    IntMat d, left, right;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t c = 0; c < d.cols(); ++c)
            std::swap(d(i, c), d(j, c));
        for (std::size_t c = 0; c < left.cols(); ++c)
            std::swap(left(i, c), left(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t r = 0; r < d.rows(); ++r)
            std::swap(d(r, i), d(r, j));
        for (std::size_t r = 0; r < right.rows(); ++r)
            std::swap(right(r, i), right(r, j));
    }
    // row i += f * row j
    void add_row(std::size_t i, std::size_t j, const Integer& f) {
        for (std::size_t c = 0; c < d.cols(); ++c)
            if (d(j, c) != 0)
                d(i, c) += f * d(j, c);
        for (std::size_t c = 0; c < left.cols(); ++c)
            if (left(j, c) != 0)
                left(i, c) += f * left(j, c);
    }
    // col i += f * col j
    void add_col(std::size_t i, std::size_t j, const Integer& f) {
        for (std::size_t r = 0; r < d.rows(); ++r)
            if (d(r, j) != 0)
                d(r, i) += f * d(r, j);
        for (std::size_t r = 0; r < right.rows(); ++r)
            if (right(r, j) != 0)
                right(r, i) += f * right(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < d.cols(); ++c)
            d(i, c) = -d(i, c);
        for (std::size_t c = 0; c < left.cols(); ++c)
            left(i, c) = -left(i, c);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithWork w{m, IntMat::identity(rows), IntMat::identity(cols)};
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero magnitude in the trailing block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (w.d(i, j) != 0 && (pi == rows || abs(w.d(i, j)) < abs(w.d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                goto done;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (w.d(i, t) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), w.d(i, t).get_mpz_t(), w.d(t, t).get_mpz_t());
                w.add_row(i, t, -q);
                if (w.d(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (w.d(t, j) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), w.d(t, j).get_mpz_t(), w.d(t, t).get_mpz_t());
                w.add_col(j, t, -q);
                if (w.d(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the rest by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (w.d(i, j) % w.d(t, t) != 0) {
                        w.add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (w.d(t, t) < 0)
            w.negate_row(t);
    }
done:
    SmithForm out{w.d, w.left, w.right, {}};
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (out.diagonal(i, i) != 0)
            out.factors.push_back(out.diagonal(i, i));
    if (!(out.left * m * out.right == out.diagonal))
        throw std::logic_error("smith_normal_form: transform check failed");
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (i != j && out.diagonal(i, j) != 0)
                throw std::logic_error("smith_normal_form: result not diagonal");
    for (std::size_t i = 1; i < out.factors.size(); ++i)
        if (out.factors[i] % out.factors[i - 1] != 0)
            throw std::logic_error("smith_normal_form: divisibility chain broken");
    return out;
}

RankDet int_rank_det(const IntMat& m) {
    // fraction-free (Bareiss) elimination
    IntMat a = m;
    const std::size_t rows = m.rows(), cols = m.cols();
    Integer prev = 1;
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r) {
            for (std::size_t k = 0; k < cols; ++k)
                std::swap(a(p, k), a(r, k));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                a(i, k) = a(r, c) * a(i, k) - a(i, c) * a(r, k);
                mpz_divexact(a(i, k).get_mpz_t(), a(i, k).get_mpz_t(), prev.get_mpz_t());
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    RankDet out{r, std::nullopt};
    if (rows == cols)
        out.det = (r == rows) ? Integer(sign * prev) : Integer(0);
    if (rows == cols && rows == 0)
        out.det = Integer(1);
    return out;
}

}  // namespace a5v
