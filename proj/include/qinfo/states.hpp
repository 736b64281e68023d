#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qinfo/matrix.hpp"
#include "qinfo/tensor.hpp"

namespace qinfo {

class PureState {
   public:
    /// Throws DomainError unless the amplitudes have unit norm within 1e-10.
    PureState(ComplexVector amplitudes, Dims dims);
    PureState(ComplexVector amplitudes);
    static PureState normalize(ComplexVector amplitudes, Dims dims);

    const ComplexVector &amplitudes() const { return amps_; }
    const Dims &dims() const { return dims_; }
    size_t dim() const { return amps_.size(); }
    ComplexMatrix density() const { return ComplexMatrix::projector(amps_); }

   private:
    ComplexVector amps_;
    Dims dims_;
};

class DensityMatrix {
   public:
    /// Validates Hermiticity (1e-9, symmetrized), unit trace (1e-9) and
    /// positivity (min eigenvalue >= -1e-9).
    DensityMatrix(ComplexMatrix m, Dims dims);
    DensityMatrix(ComplexMatrix m);
    DensityMatrix(const PureState &psi);

    const ComplexMatrix &matrix() const { return m_; }
    const Dims &dims() const { return dims_; }
    size_t dim() const { return m_.rows(); }

   private:
    ComplexMatrix m_;
    Dims dims_;
};

/// Throws DomainError unless m is a density matrix within the usual tolerances.
void check_density(const ComplexMatrix &m);
/// Throws DomainError unless m is PSD within 1e-9.
void check_psd(const ComplexMatrix &m, const char *what);

class Povm {
   public:
    /// Each element PSD within 1e-9 and the sum within 1e-9 of the identity.
    explicit Povm(std::vector<ComplexMatrix> elements);
    const std::vector<ComplexMatrix> &elements() const { return elements_; }
    size_t size() const { return elements_.size(); }
    size_t dim() const { return elements_.front().rows(); }

   private:
    std::vector<ComplexMatrix> elements_;
};

class KrausChannel {
   public:
    /// Trace preserving within 1e-9: sum E_i^dagger E_i = I.
    explicit KrausChannel(std::vector<ComplexMatrix> kraus);
    const std::vector<ComplexMatrix> &kraus() const { return kraus_; }
    size_t input_dim() const { return kraus_.front().cols(); }
    size_t output_dim() const { return kraus_.front().rows(); }

   private:
    std::vector<ComplexMatrix> kraus_;
};

using BlochVector = std::array<double, 3>;

DensityMatrix from_ensemble(const std::vector<double> &probs, const std::vector<PureState> &states);
std::vector<double> born_probabilities(const DensityMatrix &rho, const Povm &povm);

struct MeasurementBranch {
    double probability;
    DensityMatrix state;
};

/// Projective update P rho P / tr(P rho). Throws ZeroProbabilityError below 1e-12.
MeasurementBranch post_measurement(const DensityMatrix &rho, const ComplexMatrix &projector);

struct NaimarkDilation {
    /// Unitary on system (x) ancilla, ancilla dimension = number of outcomes.
    ComplexMatrix unitary;
    size_t ancilla_dim;
    /// P_i = U^dagger (I (x) |i><i|) U
    std::vector<ComplexMatrix> projectors;
};

NaimarkDilation naimark_dilate(const Povm &povm);
/// Outcome statistics of the dilated projective measurement on rho (x) |0><0|.
std::vector<double> dilated_probabilities(const NaimarkDilation &dilation, const DensityMatrix &rho);

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho);
/// Applies the channel to one subsystem of rho.
DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho, size_t subsystem);

struct InstrumentBranch {
    double probability;
    /// Empty when the branch has probability below 1e-12.
    std::optional<DensityMatrix> state;
};

std::vector<InstrumentBranch> quantum_instrument(const KrausChannel &ch, const DensityMatrix &rho);

BlochVector to_bloch(const DensityMatrix &rho);
/// Throws DomainError if |r| > 1 + 1e-9.
DensityMatrix from_bloch(const BlochVector &r);

// Fixed operators.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
/// Swap operator F on C^d (x) C^d.
ComplexMatrix swap_operator(size_t d);

/// U_t = exp(i t e.sigma / 2) for a unit axis e.
ComplexMatrix rotation_unitary(const BlochVector &axis, double t);
/// The SO(3) matrix R with bloch(U_t rho U_t^dagger) = R bloch(rho) for U_t above.
std::array<BlochVector, 3> bloch_rotation(const BlochVector &axis, double t);

/// Depolarizing channel rho -> (1 - p) rho + p tr(rho) I/d.
KrausChannel depolarizing_channel(size_t d, double p);
/// Projective measurement in the computational basis of C^d.
Povm computational_povm(size_t d);
/// Four pure states forming a regular tetrahedron on the Bloch sphere.
std::array<ComplexVector, 4> tetrahedron_states();
/// {|a_i><a_i| / 2}
Povm tetrahedron_povm();

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState bell_state(BellState which);
PureState basis_state(const Dims &dims, const std::vector<size_t> &digits);
PureState ghz_state(size_t n = 3);
PureState w_state(size_t n = 3);
DensityMatrix maximally_mixed(size_t d);
/// (I + F) / (d(d+1)) on C^d (x) C^d
DensityMatrix rho_sym(size_t d);
/// (I - F) / (d(d-1)) on C^d (x) C^d
DensityMatrix rho_anti(size_t d);
/// p |Phi+><Phi+| + (1 - p) I/4
DensityMatrix noisy_epr(double p);

using AnyState = std::variant<PureState, DensityMatrix>;

/// Named lookup used by the command line: "phi_plus", "phi_minus", "psi_plus",
/// "psi_minus", "ghz", "w", "maximally_mixed" (param d), "rho_sym" (d),
/// "rho_anti" (d), "noisy_epr" (p).
AnyState standard_state(const std::string &name, double param = 0);
DensityMatrix as_density(const AnyState &s);

}  // namespace qinfo
