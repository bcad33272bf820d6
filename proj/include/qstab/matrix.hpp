#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qstab/errors.hpp"
#include "qstab/field.hpp"

namespace qstab {

/// Dense matrix over an exact field, row-major. All entries share one field
/// context; degenerate shapes (zero rows or columns) are fully supported.
template <ScalarField F>
class Matrix {
public:
    using Context = typename F::Context;

    Matrix(std::size_t rows, std::size_t cols, Context ctx)
        : rows_(rows), cols_(cols), ctx_(ctx), e_(rows * cols, F::zero(ctx)) {}

    static Matrix identity(std::size_t n, Context ctx) {
        Matrix m(n, n, ctx);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F::one(ctx);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<F>>& rows, Context ctx) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        Matrix m(r, c, ctx);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] Context context() const { return ctx_; }

    [[nodiscard]] const F& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    F& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ctx_ == b.ctx_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator*(const Matrix& o) const {
        require_context(o);
        if (cols_ != o.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix out(rows_, o.cols_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out.at(i, j) += aik * o.at(k, j);
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const { return combined(o, false); }
    Matrix operator-(const Matrix& o) const { return combined(o, true); }

    Matrix scaled(const F& s) const {
        Matrix out = *this;
        for (auto& x : out.e_) x = x * s;
        return out;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix out(cols_, rows_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    /// Horizontal concatenation [this | o].
    [[nodiscard]] Matrix hstack(const Matrix& o) const {
        require_context(o);
        if (rows_ != o.rows_) throw std::invalid_argument("Matrix: hstack row mismatch");
        Matrix out(rows_, cols_ + o.cols_, ctx_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
        }
        return out;
    }

    [[nodiscard]] Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix out(rows_, idx.size(), ctx_);
        for (std::size_t j = 0; j < idx.size(); ++j)
            for (std::size_t i = 0; i < rows_; ++i) out.at(i, j) = at(i, idx[j]);
        return out;
    }

    [[nodiscard]] F trace() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: trace of non-square matrix");
        F acc = F::zero(ctx_);
        for (std::size_t i = 0; i < rows_; ++i) acc = acc + at(i, i);
        return acc;
    }

    /// Rank via Gaussian elimination with full pivoting (pivot searched in
    /// the entire remaining block, rows and columns both swapped).
    [[nodiscard]] std::size_t rank() const {
        Matrix w = *this;
        std::size_t r = 0;
        const std::size_t n = std::min(rows_, cols_);
        while (r < n) {
            std::size_t pi = rows_, pj = cols_;
            for (std::size_t i = r; i < rows_ && pi == rows_; ++i)
                for (std::size_t j = r; j < cols_; ++j)
                    if (!w.at(i, j).is_zero()) {
                        pi = i;
                        pj = j;
                        break;
                    }
            if (pi == rows_) break;
            w.swap_rows(r, pi);
            w.swap_cols(r, pj);
            const F inv = w.at(r, r).inverse();
            for (std::size_t i = r + 1; i < rows_; ++i) {
                const F factor = w.at(i, r) * inv;
                if (factor.is_zero()) continue;
                for (std::size_t j = r; j < cols_; ++j)
                    w.at(i, j) = w.at(i, j) - factor * w.at(r, j);
            }
            ++r;
        }
        return r;
    }

    [[nodiscard]] F determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: determinant of non-square matrix");
        Matrix w = *this;
        F det = F::one(ctx_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::size_t pi = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if (!w.at(i, r).is_zero()) {
                    pi = i;
                    break;
                }
            if (pi == rows_) return F::zero(ctx_);
            if (pi != r) {
                w.swap_rows(r, pi);
                det = -det;
            }
            det = det * w.at(r, r);
            const F inv = w.at(r, r).inverse();
            for (std::size_t i = r + 1; i < rows_; ++i) {
                const F factor = w.at(i, r) * inv;
                if (factor.is_zero()) continue;
                for (std::size_t j = r; j < cols_; ++j)
                    w.at(i, j) = w.at(i, j) - factor * w.at(r, j);
            }
        }
        return det;
    }

    /// Reduced row echelon form without column swaps. Pivot columns come out
    /// in increasing order; the result is the canonical representative of the
    /// row space.
    [[nodiscard]] Matrix rref(std::vector<std::size_t>* pivot_cols = nullptr) const {
        Matrix w = *this;
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t j = 0; j < cols_ && r < rows_; ++j) {
            std::size_t pi = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if (!w.at(i, j).is_zero()) {
                    pi = i;
                    break;
                }
            if (pi == rows_) continue;
            w.swap_rows(r, pi);
            const F inv = w.at(r, j).inverse();
            for (std::size_t k = j; k < cols_; ++k) w.at(r, k) = w.at(r, k) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                const F factor = w.at(i, j);
                if (factor.is_zero()) continue;
                for (std::size_t k = j; k < cols_; ++k)
                    w.at(i, k) = w.at(i, k) - factor * w.at(r, k);
            }
            pivots.push_back(j);
            ++r;
        }
        if (pivot_cols) *pivot_cols = std::move(pivots);
        return w;
    }

    /// Basis of the right kernel; columns are linearly independent and
    /// m * column = 0. Column count is cols() - rank().
    [[nodiscard]] Matrix kernel() const {
        std::vector<std::size_t> pivots;
        const Matrix r = rref(&pivots);
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;

        std::vector<std::size_t> free_cols;
        for (std::size_t j = 0; j < cols_; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);

        Matrix out(cols_, free_cols.size(), ctx_);
        for (std::size_t k = 0; k < free_cols.size(); ++k) {
            const std::size_t f = free_cols[k];
            out.at(f, k) = F::one(ctx_);
            for (std::size_t i = 0; i < pivots.size(); ++i)
                out.at(pivots[i], k) = -r.at(i, f);
        }
        return out;
    }

    /// Canonical basis of the column space (reduced column echelon form with
    /// zero columns dropped). Equal subspaces yield identical matrices.
    [[nodiscard]] Matrix column_space() const {
        std::vector<std::size_t> pivots;
        const Matrix r = transpose().rref(&pivots);
        Matrix out(rows_, pivots.size(), ctx_);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t j = 0; j < rows_; ++j) out.at(j, i) = r.at(i, j);
        return out;
    }

    [[nodiscard]] Matrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("Matrix: inverse of non-square matrix");
        std::vector<std::size_t> pivots;
        const Matrix aug = hstack(identity(rows_, ctx_)).rref(&pivots);
        if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= cols_))
            throw std::domain_error("Matrix: singular matrix");
        std::vector<std::size_t> right(rows_);
        for (std::size_t j = 0; j < rows_; ++j) right[j] = cols_ + j;
        return aug.select_columns(right);
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream os;
        os << rows_ << "x" << cols_ << " [";
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << "; ";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << ", ";
                os << at(i, j);
            }
        }
        os << "]";
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.str(); }

private:
    Matrix combined(const Matrix& o, bool subtract) const {
        require_context(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("Matrix: shape mismatch in sum");
        Matrix out = *this;
        for (std::size_t i = 0; i < e_.size(); ++i)
            out.e_[i] = subtract ? out.e_[i] - o.e_[i] : out.e_[i] + o.e_[i];
        return out;
    }

    void require_context(const Matrix& o) const {
        if (!(ctx_ == o.ctx_)) throw field_mismatch("Matrix: operands over different fields");
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
    }

    std::size_t rows_, cols_;
    Context ctx_;
    std::vector<F> e_;
};

/// True when every column of b lies in the column span of a.
template <ScalarField F>
bool column_span_contains(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("column_span_contains: row mismatch");
    return a.hstack(b).rank() == a.rank();
}

/// Subspace equality by mutual containment (rank tests, never basis
/// comparison).
template <ScalarField F>
bool same_column_span(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("same_column_span: row mismatch");
    const std::size_t ra = a.rank(), rb = b.rank();
    return ra == rb && a.hstack(b).rank() == ra;
}

} // namespace qstab
