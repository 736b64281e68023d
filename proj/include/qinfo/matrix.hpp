#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qinfo {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(const std::vector<double> &values);
    static ComplexMatrix column(const ComplexVector &v);
    /// |v><v|
    static ComplexMatrix projector(const ComplexVector &v);
    /// |u><v|
    static ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Complex &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Complex &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    Complex *row_data(size_t r) { return data_.data() + r * cols_; }
    const Complex *row_data(size_t r) const { return data_.data() + r * cols_; }
    const std::vector<Complex> &entries() const { return data_; }
    std::vector<Complex> &entries() { return data_; }

    ComplexVector col(size_t c) const;
    void set_col(size_t c, const ComplexVector &v);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    /// max |m - m^dagger| entrywise
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-9) const { return hermiticity_defect() <= tol; }

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(Complex s);

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix &a, const ComplexVector &v);

/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);
/// tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);
/// <v|m|v>
Complex expectation(const ComplexMatrix &m, const ComplexVector &v);

Complex inner(const ComplexVector &a, const ComplexVector &b);
double norm(const ComplexVector &v);
ComplexVector normalized(const ComplexVector &v);
ComplexVector kron(const ComplexVector &a, const ComplexVector &b);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace qinfo
