#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "qinfo/states.hpp"
#include "qinfo/tensor.hpp"

namespace qinfo {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(uint64_t n, uint64_t k);

struct SymmetricProjector {
    size_t d;
    size_t n;
    ComplexMatrix matrix;
    /// C(n + d - 1, n)
    size_t dimension;
};

/// Built from normalized type vectors; never sums over n! permutations.
SymmetricProjector sym_projector(size_t d, size_t n, size_t cap = kDefaultSizeCap);

struct HaarMomentCheck {
    /// Max entrywise |avg (|phi><phi|)^{(x) n} - Pi_sym / C(n+d-1, n)|
    double max_deviation;
    /// Largest entrywise standard error of the Monte Carlo mean.
    double standard_error;
    size_t samples;
};

HaarMomentCheck haar_moment_identity_check(size_t d, size_t n, size_t samples, uint64_t seed,
                                           size_t cap = kDefaultSizeCap);

/// C(n+d-1, n) / C(n+k+d-1, n+k), as an exact fraction.
std::pair<BigInt, BigInt> estimation_overlap_exact(size_t d, size_t n, size_t k);
double estimation_overlap(size_t d, size_t n, size_t k);
/// ratio >= 1 - dk/n, decided in integer arithmetic.
bool estimation_overlap_bound_holds(size_t d, size_t n, size_t k);
/// 2 sqrt(1 - overlap), a trace-norm bound.
double definetti_error_bound(size_t d, size_t n, size_t k);

struct DeFinettiQuadrature {
    /// || tr_n |psi><psi| - int dphi p_phi (|phi><phi|)^{(x) k} ||_1
    double trace_norm_distance;
    /// Average fidelity from the quadrature; equals the overlap ratio for symmetric psi.
    double average_fidelity;
    double bound;
};

/// Exact product quadrature over the qubit Bloch sphere (Gauss-Legendre in cos(theta),
/// uniform in the azimuth). psi must lie in Sym^{n+k}(C^2).
DeFinettiQuadrature definetti_quadrature_check(const PureState &psi, size_t n, size_t k);

/// (sqrt(rho) (x) I)|Phi> with |Phi> = sum_x |x>|x>; subsystems ordered Q_1..Q_n R_1..R_n.
PureState symmetric_purification(const DensityMatrix &rho, size_t d, size_t n);

/// Multiplicity of spin j = twice_j / 2 in (C^2)^{(x) n}.
uint64_t spin_multiplicity(size_t n, size_t twice_j);
/// Same value from the recursion m_j^{(n+1)} = m_{j+1/2}^{(n)} + m_{j-1/2}^{(n)}.
uint64_t spin_multiplicity_recursive(size_t n, size_t twice_j);
double log2_spin_multiplicity(size_t n, size_t twice_j);
/// Allowed 2j values for n spins, descending.
std::vector<size_t> spin_values(size_t n);

struct SpinBlock {
    size_t twice_j;
    uint64_t multiplicity;
    ComplexMatrix projector;
    size_t rank;
};

struct SpinDecomposition {
    size_t n;
    /// Descending in j.
    std::vector<SpinBlock> blocks;
};

SpinDecomposition spin_projectors(size_t n);

struct SpinProbability {
    size_t twice_j;
    double probability;
};

/// Pr[j] on n copies of diag(1/2 + r, 1/2 - r), descending in j.
std::vector<SpinProbability> spectrum_estimation_distribution(double r, size_t n);
/// const * 2^{-n delta(1/2 + j/n || 1/2 + r)} with const = (1/2 + r)/(2r); +inf at r = 0.
double keyl_werner_bound(double r, size_t n, size_t twice_j);

struct KeylWernerTail {
    double eps;
    /// Exact Pr[|j/n - r| > eps]
    double probability;
    /// Sum of the per-j bound over the same j.
    double bound;
};

KeylWernerTail keyl_werner_tail(double r, size_t n, double eps);
std::vector<size_t> sample_spin_outcomes(double r, size_t n, size_t count, uint64_t seed);

struct KeylWernerEstimate {
    double r_hat;
    double standard_error;
    size_t samples;
    /// Present when a reference value was supplied: tail probability bound at the observed deviation.
    std::optional<KeylWernerTail> tail;
};

/// r_hat = mean(j)/n over observed 2j values.
KeylWernerEstimate keyl_werner_estimate(const std::vector<size_t> &twice_j_samples, size_t n,
                                        std::optional<double> reference_r = std::nullopt);

}  // namespace qinfo
