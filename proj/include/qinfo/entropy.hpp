#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qinfo/matrix.hpp"
#include "qinfo/states.hpp"
#include "qinfo/tensor.hpp"

namespace qinfo {

/// Probability vector; nonnegative entries summing to 1 within 1e-10.
class Distribution {
   public:
    explicit Distribution(std::vector<double> probs);
    const std::vector<double> &probs() const { return p_; }
    size_t size() const { return p_.size(); }
    double operator[](size_t i) const { return p_[i]; }

   private:
    std::vector<double> p_;
};

/// Bits. 0 log 0 = 0.
double shannon_entropy(const Distribution &p);
/// Entropy of a spectrum; entries in [-1e-9, 0) count as 0, anything lower is a DomainError.
double spectrum_entropy(const std::vector<double> &spectrum);
double von_neumann_entropy(const DensityMatrix &rho);
double von_neumann_entropy(const ComplexMatrix &rho);

struct InformationMeasures {
    double s_a, s_b, s_ab;
    double s_a_given_b;
    double mutual_information;
    /// Present when a conditioning part C was given.
    std::optional<double> s_c;
    std::optional<double> conditional_mutual_information;
};

/// Entropic quantities of the parts A, B (and optionally C) of a multipartite state.
/// Each part is a list of subsystem indices; parts must be disjoint and nonempty.
InformationMeasures information_measures(const ComplexMatrix &rho, const Dims &dims, const std::vector<size_t> &a,
                                         const std::vector<size_t> &b, const std::vector<size_t> &c = {});

/// Joint distribution p(x, y) given as rows indexed by x.
using JointDistribution = std::vector<std::vector<double>>;
double classical_mutual_information(const JointDistribution &pxy);
/// H(X|Y)
double classical_conditional_entropy(const JointDistribution &pxy);

/// delta(x||y) in bits; +infinity when y is 0 or 1 and x differs.
double binary_relative_entropy(double x, double y);
/// Binary entropy h(x) in bits.
double binary_entropy(double x);

struct TypicalSetReport {
    std::vector<double> p;
    double entropy;
    size_t n;
    double delta;
    /// n (H(p) + delta)
    double log_size_bound;
    /// Probability captured by the set: exact, or a Monte Carlo estimate.
    double mass;
    /// Zero for exact enumeration.
    double mass_standard_error;
    bool exact;
    /// log2 |T| from exact enumeration; empty in Monte Carlo mode.
    std::optional<double> log_size;

    bool contains(const std::vector<size_t> &x) const;
};

/// Exact enumeration; requires alphabet^n <= 2^22.
TypicalSetReport typical_set(const Distribution &p, size_t n, double delta);
/// Monte Carlo estimate of the mass from `samples` seeded draws.
TypicalSetReport typical_set_monte_carlo(const Distribution &p, size_t n, double delta, size_t samples,
                                         uint64_t seed);

struct TypicalSubspace {
    ComplexMatrix projector;
    size_t rank;
    /// n (S(rho) + delta)
    double log_rank_bound;
};

TypicalSubspace typical_subspace_projector(const DensityMatrix &rho, size_t n, double delta,
                                           size_t cap = kDefaultSizeCap);

struct CompressionResult {
    double success_frequency;
    size_t successes;
    size_t trials;
    /// log2 of the codebook size actually used.
    double log_codebook_size;
};

/// Simulates a fixed-length block code: the codebook holds the floor(2^{nR})
/// most likely strings (ties broken lexicographically) among those eligible.
/// With `delta` set only delta-typical strings are eligible; otherwise all are.
/// A trial succeeds when the sampled string is in the codebook.
CompressionResult compression_trial(const Distribution &p, size_t n, double rate, size_t trials, uint64_t seed,
                                    std::optional<double> delta = std::nullopt);

}  // namespace qinfo
