#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qinfo/matrix.hpp"

namespace qinfo {

/// Default cap on the dimension of any dense operator the library will build.
inline constexpr size_t kDefaultSizeCap = 4096;

/// Local dimensions of a tensor-product space. Index convention is big-endian:
/// the first subsystem is the most significant digit.
using Dims = std::vector<size_t>;

size_t total_dim(const Dims &dims);
/// Throws DimensionError unless every entry is positive and the product equals `expected`.
void check_dims(const Dims &dims, size_t expected);
void check_size_cap(size_t dim, size_t cap);

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b, size_t cap = kDefaultSizeCap);
ComplexMatrix tensor(const std::vector<ComplexMatrix> &factors, size_t cap = kDefaultSizeCap);
ComplexVector tensor(const std::vector<ComplexVector> &factors, size_t cap = kDefaultSizeCap);
/// m tensored with itself n times.
ComplexMatrix tensor_power(const ComplexMatrix &m, size_t n, size_t cap = kDefaultSizeCap);
ComplexVector tensor_power(const ComplexVector &v, size_t n, size_t cap = kDefaultSizeCap);

/// Traces out every subsystem not listed in `keep`. Kept subsystems appear in
/// ascending index order regardless of the order given.
ComplexMatrix partial_trace(const ComplexMatrix &m, const Dims &dims, const std::vector<size_t> &keep);
Dims kept_dims(const Dims &dims, const std::vector<size_t> &keep);

/// Transposes the listed subsystems.
ComplexMatrix partial_transpose(const ComplexMatrix &m, const Dims &dims, const std::vector<size_t> &systems);

/// Reorders subsystems: output subsystem k is input subsystem order[k].
ComplexMatrix permute_systems(const ComplexMatrix &m, const Dims &dims, const std::vector<size_t> &order);
ComplexVector permute_systems(const ComplexVector &v, const Dims &dims, const std::vector<size_t> &order);

/// Operator on (C^d)^{\otimes n} sending |x_1..x_n> to the string whose slot pi[i] holds x_i.
/// Satisfies P(pi) P(sigma) = P(pi o sigma).
ComplexMatrix permutation_operator(size_t d, size_t n, const std::vector<size_t> &pi, size_t cap = kDefaultSizeCap);
ComplexVector apply_permutation(const ComplexVector &v, size_t d, size_t n, const std::vector<size_t> &pi);
/// Throws DomainError unless pi is a permutation of 0..n-1.
void check_permutation(const std::vector<size_t> &pi, size_t n);

struct EigenDecomposition {
    /// Descending.
    std::vector<double> values;
    /// Column i is the eigenvector for values[i].
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi. Inputs within 1e-9 of Hermitian are symmetrized;
/// anything further away raises DomainError.
EigenDecomposition hermitian_eig(const ComplexMatrix &m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m);

/// V f(Lambda) V^dagger
ComplexMatrix spectral_apply(const EigenDecomposition &eig, const std::function<double(double)> &f);
/// Square root of a PSD matrix; eigenvalues in [-1e-9, 0) are clipped.
ComplexMatrix psd_sqrt(const ComplexMatrix &m);
/// Scaling and squaring with a degree-12 Taylor core.
ComplexMatrix matrix_exp(const ComplexMatrix &m);

double trace_norm(const ComplexMatrix &m);
double trace_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma);
double operator_norm(const ComplexMatrix &m);

}  // namespace qinfo

namespace qinfo {

/// Applies a (possibly non-square) operator to one subsystem of a vector.
ComplexVector apply_on_subsystem(const ComplexVector &v, const Dims &dims, size_t subsystem, const ComplexMatrix &op);

}  // namespace qinfo
