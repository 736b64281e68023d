#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qinfo/entropy.hpp"
#include "qinfo/states.hpp"

namespace qinfo {

struct SchmidtDecomposition {
    /// Descending; min(d_A, d_B) of them.
    std::vector<double> coefficients;
    /// Columns e_i on A and f_i on B with psi = sum_i s_i e_i (x) f_i
    /// (subsystems reordered as A then B).
    ComplexMatrix left_basis;
    ComplexMatrix right_basis;
    Dims dims_a;
    Dims dims_b;
};

/// `cut` lists the subsystems forming part A; the rest form B.
SchmidtDecomposition schmidt(const PureState &psi, const std::vector<size_t> &cut);
double entanglement_entropy(const PureState &psi, const std::vector<size_t> &cut);

struct TeleportTranscript {
    /// 0: Phi+, 1: Phi-, 2: Psi+, 3: Psi- on the message and Alice's half.
    size_t outcome;
    std::array<double, 4> probabilities;
    ComplexMatrix correction;
    /// Bob's qubit after the correction (for a reference system R, the joint RB state).
    PureState bob_state;
    /// |<psi|bob_state>|^2
    double fidelity;
};

/// Pauli correction for each Bell outcome: I, sigma_z, sigma_x, sigma_y.
ComplexMatrix teleport_correction(size_t outcome);
TeleportTranscript teleport(const PureState &psi, uint64_t seed);
TeleportTranscript teleport_branch(const PureState &psi, size_t outcome);
/// Teleports the last (qubit) subsystem of psi; the other subsystems stay with a referee.
TeleportTranscript teleport_entangled_branch(const PureState &psi, size_t outcome);
/// Bob's state averaged over Alice's unknown outcome, before any correction.
DensityMatrix unconditioned_bob_state(const PureState &psi);

struct DistillationSample {
    std::vector<size_t> type;
    /// log2 of the number of strings of this type.
    double yield_bits;
};

DistillationSample distillation_yield(const Distribution &spectrum, size_t n, uint64_t seed);
/// ceil(n (S(rho_A) + delta))
size_t dilution_rank_bound(const PureState &psi, const std::vector<size_t> &cut, size_t n, double delta);

/// Normalized (A (x) B (x) ...)|psi>.
PureState slocc_apply(const std::vector<ComplexMatrix> &ops, const PureState &psi);

Complex hyperdeterminant(const PureState &psi);

enum class SloccClass { Product, BipartiteAB, BipartiteAC, BipartiteBC, W, GHZ };

std::string to_string(SloccClass c);

struct ThreeQubitClassification {
    /// Empty when the state sits inside a tolerance band between two classes.
    std::optional<SloccClass> slocc_class;
    std::array<double, 3> marginal_min_eigenvalues;
    double hyperdet_abs;
    bool undetermined() const { return !slocc_class.has_value(); }
};

ThreeQubitClassification classify_three_qubit(const PureState &psi);

/// Largest eigenvalue of each single-qubit marginal.
using LocalSpectra = std::array<double, 3>;

LocalSpectra local_lambda_max(const PureState &psi);
bool three_qubit_spectra_compatible(const LocalSpectra &lams);
/// a|000> + b|011> + c|101> + d|110> with nonnegative real amplitudes.
PureState three_qubit_state_from_spectra(const LocalSpectra &lams);
bool w_polytope_check(const LocalSpectra &lams);
bool w_polytope_check(const PureState &psi);

}  // namespace qinfo
