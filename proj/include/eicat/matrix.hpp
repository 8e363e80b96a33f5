#pragma once

// Dense matrices over an exact field, with the elimination kernels the
// rest of the library is built on: reduced echelon form, linear solving
// with kernel bases, rank, span membership and quotient bases.
//
// Pivoting always takes the first nonzero entry and normalizes the pivot
// row, so every result is deterministic for a given input.

#include "eicat/field.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

namespace eicat {

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    Matrix() : field_(), rows_(0), cols_(0) {}
    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return field_; }

    Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

    bool is_zero() const {
        for (const auto& e : a_)
            if (!field_.is_zero(e)) return false;
        return true;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_) throw FieldError("matrix product: dimension mismatch");
        Matrix out(field_, rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& aik = (*this)(i, k);
                if (field_.is_zero(aik)) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out(i, j) = field_.add(out(i, j), field_.mul(aik, rhs(k, j)));
            }
        return out;
    }

    Matrix operator+(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw FieldError("matrix sum: dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(out.a_[i], rhs.a_[i]);
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw FieldError("matrix diff: dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.sub(out.a_[i], rhs.a_[i]);
        return out;
    }

    Matrix scaled(const Elem& c) const {
        Matrix out = *this;
        for (auto& e : out.a_) e = field_.mul(e, c);
        return out;
    }

    Matrix transposed() const {
        Matrix out(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Vec<F> apply(const Vec<F>& v) const {
        if (v.size() != cols_) throw FieldError("matrix apply: dimension mismatch");
        Vec<F> out(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero((*this)(i, j)))
                    out[i] = field_.add(out[i], field_.mul((*this)(i, j), v[j]));
        return out;
    }

    Vec<F> row(std::size_t i) const {
        Vec<F> out(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
        return out;
    }

    Vec<F> col(std::size_t j) const {
        Vec<F> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    static Matrix from_rows(F field, const std::vector<Vec<F>>& rows, std::size_t cols) {
        Matrix m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw FieldError("from_rows: ragged input");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_cols(F field, const std::vector<Vec<F>>& cols, std::size_t rows) {
        Matrix m(field, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw FieldError("from_cols: ragged input");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::string str() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << '[';
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << ' ';
                os << field_.str((*this)(i, j));
            }
            os << "]\n";
        }
        return os.str();
    }

  private:
    F field_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

// Reduced row echelon form, computed in place on a copy.
template <class F>
struct Echelon {
    Matrix<F> mat;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

template <class F>
Echelon<F> rref(Matrix<F> a) {
    const F& k = a.field();
    Echelon<F> e{std::move(a), {}};
    Matrix<F>& m = e.mat;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && k.is_zero(m(piv, c))) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        const auto inv_p = k.inv(m(r, c));
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), inv_p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || k.is_zero(m(i, c))) continue;
            const auto f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = k.sub(m(i, j), k.mul(f, m(r, j)));
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    return e;
}

template <class F>
std::size_t rank(const Matrix<F>& a) {
    return rref(a).rank();
}

template <class F>
struct LinearSolution {
    std::optional<Vec<F>> particular;
    std::vector<Vec<F>> kernel_basis;
};

// Solves A x = b exactly. Returns a particular solution when consistent
// (free variables set to zero) and always a basis of ker A.
template <class F>
LinearSolution<F> solve_linear(const Matrix<F>& a, const Vec<F>& b) {
    const F& k = a.field();
    if (b.size() != a.rows()) throw FieldError("solve_linear: dimension mismatch");
    Matrix<F> aug(k, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    Echelon<F> e = rref(std::move(aug));

    LinearSolution<F> out;
    bool consistent = true;
    std::vector<std::size_t> pivots;
    for (std::size_t c : e.pivot_cols) {
        if (c == a.cols()) consistent = false;  // pivot in the b column: 0 = 1
        else pivots.push_back(c);
    }
    std::vector<std::optional<std::size_t>> pivot_row(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) pivot_row[pivots[i]] = i;

    if (consistent) {
        Vec<F> x(a.cols(), k.zero());
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = e.mat(i, a.cols());
        out.particular = std::move(x);
    }
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (pivot_row[c]) continue;
        Vec<F> v(a.cols(), k.zero());
        v[c] = k.one();
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (pivot_row[j]) v[j] = k.neg(e.mat(*pivot_row[j], c));
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

// Reduces v against echelon rows (reduced form, unit pivots). Returns the
// remainder; zero remainder means v lies in the row span.
template <class F>
Vec<F> reduce_against(const F& k, const Echelon<F>& e, Vec<F> v) {
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
        const std::size_t c = e.pivot_cols[i];
        if (k.is_zero(v[c])) continue;
        const auto f = v[c];
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = k.sub(v[j], k.mul(f, e.mat(i, j)));
    }
    return v;
}

template <class F>
bool in_span(const F& k, const Echelon<F>& e, const Vec<F>& v) {
    Vec<F> r = reduce_against(k, e, v);
    for (const auto& x : r)
        if (!k.is_zero(x)) return false;
    return true;
}

// Representatives of a basis of span(V)/span(W). Scans V in order and keeps
// the vectors that are independent modulo W plus the kept ones; the
// returned representatives are the original vectors. Requires W <= span(V).
template <class F>
std::vector<Vec<F>> quotient_basis(const F& k, const std::vector<Vec<F>>& v_span,
                                   const std::vector<Vec<F>>& w_span, std::size_t dim) {
    for (const auto& v : v_span)
        if (v.size() != dim) throw FieldError("quotient_basis: dimension mismatch");
    for (const auto& w : w_span)
        if (w.size() != dim) throw FieldError("quotient_basis: dimension mismatch");

    Echelon<F> ev = rref(Matrix<F>::from_rows(k, v_span, dim));
    for (const auto& w : w_span)
        if (!in_span(k, ev, w)) throw FieldError("quotient_basis: W is not contained in span(V)");

    Echelon<F> acc = rref(Matrix<F>::from_rows(k, w_span, dim));
    std::vector<Vec<F>> reps;
    std::vector<Vec<F>> acc_rows = w_span;
    for (const auto& v : v_span) {
        if (in_span(k, acc, v)) continue;
        reps.push_back(v);
        acc_rows.push_back(v);
        acc = rref(Matrix<F>::from_rows(k, acc_rows, dim));
    }
    return reps;
}

} // namespace eicat
