#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qinfo/matrix.hpp"

namespace qinfo {

/// splitmix64 finalizer; used to derive independent seeds from (seed, index).
uint64_t mix_seed(uint64_t seed, uint64_t index);

class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return normal_(engine_); }
    Complex complex_normal() { return {normal() * M_SQRT1_2, normal() * M_SQRT1_2}; }
    size_t index(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(engine_); }
    std::mt19937_64 &engine() { return engine_; }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// Haar-random unit vector in C^d.
ComplexVector haar_state(size_t d, Rng &rng);
/// Haar-random unitary (Gram-Schmidt on a Ginibre matrix).
ComplexMatrix haar_unitary(size_t d, Rng &rng);
/// Ginibre matrix with i.i.d. standard complex normal entries.
ComplexMatrix ginibre(size_t rows, size_t cols, Rng &rng);
/// G G^dagger / tr, with G a d x rank Ginibre matrix. rank = 0 means full rank.
ComplexMatrix random_density(size_t d, Rng &rng, size_t rank = 0);
/// Convex mixture of `terms` random product pure states on C^da x C^db.
ComplexMatrix random_separable(size_t da, size_t db, size_t terms, Rng &rng);

/// Modified Gram-Schmidt, applied twice. Columns with norm below `tol` after
/// projection are dropped; the return value is the number kept.
size_t orthonormalize_columns(ComplexMatrix &m, double tol = 1e-12);

}  // namespace qinfo
