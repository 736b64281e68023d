#include "qinfo/random.hpp"

#include <cmath>

#include "qinfo/errors.hpp"
#include "qinfo/tensor.hpp"

namespace qinfo {

uint64_t mix_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ComplexVector haar_state(size_t d, Rng &rng) {
    ComplexVector v(d);
    for (auto &z : v) {
        z = rng.complex_normal();
    }
    return normalized(v);
}

ComplexMatrix ginibre(size_t rows, size_t cols, Rng &rng) {
    ComplexMatrix g(rows, cols);
    for (auto &z : g.entries()) {
        z = rng.complex_normal();
    }
    return g;
}

size_t orthonormalize_columns(ComplexMatrix &m, double tol) {
    size_t kept = 0;
    for (size_t c = 0; c < m.cols(); c++) {
        ComplexVector v = m.col(c);
        double original = norm(v);
        for (int pass = 0; pass < 2; pass++) {
            for (size_t k = 0; k < kept; k++) {
                ComplexVector u = m.col(k);
                Complex ov = inner(u, v);
                for (size_t r = 0; r < v.size(); r++) {
                    v[r] -= ov * u[r];
                }
            }
        }
        double nv = norm(v);
        if (nv <= tol * std::max(1.0, original)) {
            continue;
        }
        for (auto &z : v) {
            z /= nv;
        }
        m.set_col(kept, v);
        kept++;
    }
    for (size_t c = kept; c < m.cols(); c++) {
        m.set_col(c, ComplexVector(m.rows()));
    }
    return kept;
}

ComplexMatrix haar_unitary(size_t d, Rng &rng) {
    ComplexMatrix g = ginibre(d, d, rng);
    if (orthonormalize_columns(g) != d) {
        throw ConvergenceError("degenerate Ginibre sample");
    }
    return g;
}

ComplexMatrix random_density(size_t d, Rng &rng, size_t rank) {
    if (rank == 0) {
        rank = d;
    }
    ComplexMatrix g = ginibre(d, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

ComplexMatrix random_separable(size_t da, size_t db, size_t terms, Rng &rng) {
    if (terms == 0) {
        throw DomainError("separable mixture needs at least one term");
    }
    ComplexMatrix rho(da * db, da * db);
    std::vector<double> w(terms);
    double total = 0;
    for (auto &x : w) {
        x = rng.uniform() + 1e-3;
        total += x;
    }
    for (size_t t = 0; t < terms; t++) {
        ComplexVector v = kron(haar_state(da, rng), haar_state(db, rng));
        rho += ComplexMatrix::projector(v) * Complex(w[t] / total);
    }
    return rho;
}

}  // namespace qinfo
