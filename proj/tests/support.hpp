#pragma once

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "qinfo/matrix.hpp"
#include "qinfo/random.hpp"

namespace qtest {

using qinfo::Complex;
using qinfo::ComplexMatrix;
using qinfo::ComplexVector;

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); i++)
        for (size_t j = 0; j < m.cols(); j++) e(i, j) = m(i, j);
    return e;
}

// Eigenvalues from Eigen's solver, sorted descending.
inline std::vector<double> oracle_eigenvalues(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.rbegin(), v.rend());
    return v;
}

inline double oracle_trace_norm(const ComplexMatrix &m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues().sum();
}

inline ComplexMatrix random_hermitian(size_t d, qinfo::Rng &rng) {
    ComplexMatrix g = qinfo::ginibre(d, d, rng);
    return (g + g.adjoint()) * Complex(0.5);
}

inline void expect_matrix_near(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    ASSERT_EQ(a.rows(), b.rows());
    ASSERT_EQ(a.cols(), b.cols());
    EXPECT_LE((a - b).max_abs(), tol);
}

}  // namespace qtest
