#pragma once

// Exact linear algebra over Q and prime fields: Gauss-Jordan elimination,
// rank, right kernels and linear solves. Pivoting takes the first nonzero
// entry of each column, so results are reproducible.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gammadelta/scalars.hpp"

namespace gammadelta::la {

template <class K>
using Vector = std::vector<K>;

template <class K>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, CoeffDomain domain = CoeffDomain::rational())
        : rows_(rows), cols_(cols), domain_(domain), entries_(rows) {}

    static Matrix identity(std::size_t n, CoeffDomain domain = CoeffDomain::rational()) {
        Matrix m(n, n, domain);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, m.one());
        return m;
    }

    static Matrix from_dense(const std::vector<std::vector<K>>& rows, std::size_t cols,
                             CoeffDomain domain = CoeffDomain::rational()) {
        Matrix m(rows.size(), cols, domain);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const CoeffDomain& domain() const noexcept { return domain_; }
    K one() const { return scalar_from<K>(1L, domain_); }

    K at(std::size_t r, std::size_t c) const {
        check(r, c);
        auto it = entries_[r].find(c);
        return it == entries_[r].end() ? K{} : it->second;
    }

    void set(std::size_t r, std::size_t c, const K& v) {
        check(r, c);
        if (is_zero(v))
            entries_[r].erase(c);
        else
            entries_[r][c] = v;
    }

    void add_to(std::size_t r, std::size_t c, const K& v) { set(r, c, at(r, c) + v); }

    const std::map<std::size_t, K>& row(std::size_t r) const { return entries_.at(r); }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : entries_) n += r.size();
        return n;
    }

    Vector<K> apply(const Vector<K>& x) const {
        if (x.size() != cols_) throw Error("Matrix::apply: dimension mismatch");
        Vector<K> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [j, v] : entries_[i]) y[i] = y[i] + v * x[j];
        return y;
    }

    std::vector<std::vector<K>> dense() const {
        std::vector<std::vector<K>> d(rows_, std::vector<K>(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [j, v] : entries_[i]) d[i][j] = v;
        return d;
    }

    /// Stacks the rows of another matrix with the same column count below this one.
    Matrix stacked(const Matrix& below) const {
        if (below.cols_ != cols_) throw Error("Matrix::stacked: column mismatch");
        Matrix m(rows_ + below.rows_, cols_, domain_);
        for (std::size_t i = 0; i < rows_; ++i) m.entries_[i] = entries_[i];
        for (std::size_t i = 0; i < below.rows_; ++i) m.entries_[rows_ + i] = below.entries_[i];
        return m;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_, domain_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (const auto& [j, v] : entries_[i]) m.entries_[j][i] = v;
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) throw Error("Matrix index out of range");
    }

    std::size_t rows_, cols_;
    CoeffDomain domain_;
    std::vector<std::map<std::size_t, K>> entries_;
};

template <class K>
struct RrefResult {
    Matrix<K> reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

template <class K>
RrefResult<K> rref(const Matrix<K>& m) {
    auto a = m.dense();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && is_zero(a[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const K inv = inverse(a[r][c]);
        for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a[i][c])) continue;
            const K f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(a[r][j])) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return {Matrix<K>::from_dense(a, cols, m.domain()), r, std::move(pivots)};
}

template <class K>
std::size_t rank(const Matrix<K>& m) {
    return rref(m).rank;
}

/// Basis of the right kernel {x : m x = 0}; its size is cols - rank.
template <class K>
std::vector<Vector<K>> kernel_basis(const Matrix<K>& m) {
    const auto red = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : red.pivots) is_pivot[c] = true;
    std::vector<Vector<K>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector<K> v(m.cols());
        v[free] = m.one();
        for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = -red.reduced.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some exact solution of m x = b, or nullopt when the system is inconsistent.
template <class K>
std::optional<Vector<K>> solve(const Matrix<K>& m, const Vector<K>& b) {
    if (b.size() != m.rows()) throw Error("solve: right-hand side has wrong length");
    Matrix<K> aug(m.rows(), m.cols() + 1, m.domain());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (const auto& [j, v] : m.row(i)) aug.set(i, j, v);
        aug.set(i, m.cols(), b[i]);
    }
    const auto red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
    Vector<K> x(m.cols());
    for (std::size_t i = 0; i < red.pivots.size(); ++i) x[red.pivots[i]] = red.reduced.at(i, m.cols());
    return x;
}

}  // namespace gammadelta::la
