#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qinfo/random.hpp"
#include "qinfo/states.hpp"
#include "qinfo/tensor.hpp"

namespace qinfo {

inline constexpr double kPptTol = 1e-9;

struct PptVerdict {
    bool is_ppt;
    double min_eigenvalue;
    /// Spectrum of the partial transpose, descending.
    std::vector<double> spectrum;
};

/// Transposes the subsystems in `cut` (default: the first one) and inspects the spectrum.
PptVerdict ppt_check(const DensityMatrix &rho, const std::vector<size_t> &cut = {0});

/// Bisection for the p where the partial transpose of the noisy EPR state stops being PSD.
double noisy_epr_ppt_threshold(double tol = 1e-12);

class Witness {
   public:
    /// Throws DomainError unless Hermitian within 1e-9.
    explicit Witness(ComplexMatrix op);
    const ComplexMatrix &op() const { return op_; }

   private:
    ComplexMatrix op_;
};

double witness_value(const Witness &w, const DensityMatrix &rho);
/// I - 2|Phi+><Phi+|
Witness phi_plus_witness();
/// I/2 - (A0 B0 + A0 B1 + A1 B0 - A1 B1)/4 with the optimal CHSH observables.
Witness chsh_witness();
/// (|v><v|)^{T_cut} for the eigenvector v of rho^{T_cut} with the smallest eigenvalue.
Witness eigen_witness(const DensityMatrix &rho, const std::vector<size_t> &cut = {0});

/// Haar-random product pure states, or Dirichlet(1) mixtures of `terms` of them.
DensityMatrix sample_separable(size_t da, size_t db, size_t terms, Rng &rng);

enum class Feasibility { Feasible, InfeasibleEvidence, Undetermined };

std::string to_string(Feasibility f);

struct ExtendibilityOptions {
    double eps_feas = 1e-7;
    double eps_gap = 1e-4;
    size_t max_iterations = 5000;
    size_t plateau_window = 100;
    double plateau_tol = 1e-10;
    size_t cap = kDefaultSizeCap;
    /// Starting point on A B_1 ... B_k; defaults to rho (x) (I/d_B)^{(x)(k-1)}.
    std::optional<ComplexMatrix> warm_start;
};

struct FeasibilityReport {
    Feasibility status;
    /// Frobenius distance between the last pair of alternating iterates.
    double residual;
    size_t iterations;
    /// Permutation-invariant PSD candidate on A B_1 ... B_k; set when Feasible.
    std::optional<ComplexMatrix> extension;
    /// Largest constraint violation of the returned extension.
    double max_violation;
};

/// `cut` lists the A subsystems of rho; the others are grouped into B.
FeasibilityReport k_extendibility(const DensityMatrix &rho, const std::vector<size_t> &cut, size_t k,
                                  const ExtendibilityOptions &opts = {});

/// Max over: trace error, negative eigenvalue, permutation defect, marginal error.
double extension_violation(const ComplexMatrix &ext, const ComplexMatrix &rho, size_t da, size_t db, size_t k);

/// sum_pi sgn(pi) |pi(0) ... pi(d-1)> / sqrt(d!) on d qudits of dimension d.
PureState slater_extension(size_t d);

/// lambda_max of (I (x) Pi_sym)(M (x) I^{(x)(n-1)})(I (x) Pi_sym) on A B_1 ... B_n.
double h_n_ext(const ComplexMatrix &m, const Dims &dims, size_t n, size_t cap = kDefaultSizeCap);

/// Lower bound on max over product states of <phi psi|M|phi psi>, via alternating
/// top-eigenvector ascent from `samples` Haar-random starts.
double h_sep_sampled(const ComplexMatrix &m, const Dims &dims, size_t samples, uint64_t seed);

struct MotzkinStrausReport {
    size_t clique_number;
    /// 2 max_p sum_{(i,j) in E} p_i p_j over the simplex.
    double optimization_value;
    std::vector<double> optimizer;
    /// <phi phi|M|phi phi> at phi_i = sqrt(p_i), evaluated on the operator M.
    double product_state_value;
    double h_sep_lower;
};

MotzkinStrausReport motzkin_straus(size_t vertices, const std::vector<std::pair<size_t, size_t>> &edges,
                                   uint64_t seed = 0x5EED);

struct DataHidingReport {
    size_t d;
    /// 1/2 || (W+)^{T_A} - (W-)^{T_A} ||_1 from the two-eigenvalue structure.
    double ppt_norm_value;
    /// The same quantity from a dense partial transpose (d <= 8).
    std::optional<double> ppt_norm_numeric;
    /// Best bias of a PPT measurement between W+ and W-.
    double ppt_measurement_bias;
    /// The 1/d bound and whether ppt_norm_value respects it.
    double local_bound;
    bool bound_holds;
    /// 1/2 || W+ - W- ||_1
    double global_distance;
};

DataHidingReport data_hiding_bias(size_t d);

struct BcyReport {
    double lhs_bias;
    double rhs_bound;
    bool holds;
};

/// rhs = sqrt(2 ln(2) log2(d_A) / k); lhs = min over sampled separable sigma of
/// |tr M'(rho - sigma)| with M' = sum_x A_x (x) B_x.
BcyReport bcy_inequality_check(const DensityMatrix &rho, const std::vector<ComplexMatrix> &a_ops,
                               const std::vector<ComplexMatrix> &b_ops, size_t k, size_t samples = 200,
                               uint64_t seed = 0x5EED);

struct ExtendibleInstance {
    DensityMatrix rho;
    /// Pure state on A (x) Sym^k(C^{d_B}) whose A B_1 marginal is rho.
    PureState extension;
};

ExtendibleInstance random_extendible_state(size_t da, size_t db, size_t k, uint64_t seed);

}  // namespace qinfo
