#include "qinfo/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qinfo/errors.hpp"

namespace qinfo {

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("matrix entry count does not match rows*cols");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double> &values) {
    ComplexMatrix m(values.size(), values.size());
    for (size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::column(const ComplexVector &v) {
    return ComplexMatrix(v.size(), 1, v);
}

ComplexMatrix ComplexMatrix::projector(const ComplexVector &v) {
    return outer(v, v);
}

ComplexMatrix ComplexMatrix::outer(const ComplexVector &u, const ComplexVector &v) {
    ComplexMatrix m(u.size(), v.size());
    for (size_t i = 0; i < u.size(); i++) {
        for (size_t j = 0; j < v.size(); j++) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexVector ComplexMatrix::col(size_t c) const {
    ComplexVector v(rows_);
    for (size_t r = 0; r < rows_; r++) {
        v[r] = (*this)(r, c);
    }
    return v;
}

void ComplexMatrix::set_col(size_t c, const ComplexVector &v) {
    if (v.size() != rows_) {
        throw DimensionError("column length mismatch");
    }
    for (size_t r = 0; r < rows_; r++) {
        (*this)(r, c) = v[r];
    }
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m = *this;
    for (auto &z : m.data_) {
        z = std::conj(z);
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionError("trace of a non-square matrix");
    }
    Complex t = 0;
    for (size_t i = 0; i < rows_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) {
        throw DimensionError("hermiticity of a non-square matrix");
    }
    double m = 0;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw DimensionError("matrix sum shape mismatch");
    }
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] += o.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw DimensionError("matrix difference shape mismatch");
    }
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matrix product shape mismatch");
    }
    ComplexMatrix out(a.rows(), b.cols());
    size_t n = b.cols();
    for (size_t i = 0; i < a.rows(); i++) {
        Complex *orow = out.row_data(i);
        const Complex *arow = a.row_data(i);
        for (size_t k = 0; k < a.cols(); k++) {
            Complex aik = arow[k];
            if (aik == Complex(0)) {
                continue;
            }
            const Complex *brow = b.row_data(k);
            for (size_t j = 0; j < n; j++) {
                orow[j] += aik * brow[j];
            }
        }
    }
    return out;
}

ComplexMatrix operator*(ComplexMatrix a, Complex s) {
    a *= s;
    return a;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
}

ComplexVector operator*(const ComplexMatrix &a, const ComplexVector &v) {
    if (a.cols() != v.size()) {
        throw DimensionError("matrix-vector shape mismatch");
    }
    ComplexVector out(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        const Complex *row = a.row_data(i);
        Complex s = 0;
        for (size_t k = 0; k < v.size(); k++) {
            s += row[k] * v[k];
        }
        out[i] = s;
    }
    return out;
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("Hilbert-Schmidt inner product shape mismatch");
    }
    Complex s = 0;
    for (size_t i = 0; i < a.entries().size(); i++) {
        s += std::conj(a.entries()[i]) * b.entries()[i];
    }
    return s;
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace of product shape mismatch");
    }
    Complex s = 0;
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            s += a(i, k) * b(k, i);
        }
    }
    return s;
}

Complex expectation(const ComplexMatrix &m, const ComplexVector &v) {
    return inner(v, m * v);
}

Complex inner(const ComplexVector &a, const ComplexVector &b) {
    if (a.size() != b.size()) {
        throw DimensionError("inner product length mismatch");
    }
    Complex s = 0;
    for (size_t i = 0; i < a.size(); i++) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double norm(const ComplexVector &v) {
    double s = 0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexVector normalized(const ComplexVector &v) {
    double n = norm(v);
    if (n == 0) {
        throw DomainError("cannot normalize the zero vector");
    }
    ComplexVector out = v;
    for (auto &z : out) {
        z /= n;
    }
    return out;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            Complex aij = a(i, j);
            if (aij == Complex(0)) {
                continue;
            }
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

}  // namespace qinfo
