#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "qinfo/states.hpp"

namespace qinfo {

/// a[r] is Alice's answer to question r, b[s] Bob's answer to s.
struct DeterministicStrategy {
    std::array<int, 2> a;
    std::array<int, 2> b;
};

/// Outcome 0 <-> cos t|0> + sin t|1>, outcome 1 <-> -sin t|0> + cos t|1>.
struct QuantumStrategy {
    PureState state;
    std::array<double, 2> alice;
    std::array<double, 2> bob;
};

using ChshStrategy = std::variant<DeterministicStrategy, QuantumStrategy>;

double chsh_value(const ChshStrategy &strategy);
/// Number of the four question pairs a deterministic strategy wins.
int chsh_wins(const DeterministicStrategy &s);

struct ClassicalOptimum {
    /// Exactly wins/4.
    int wins;
    double value;
    std::vector<DeterministicStrategy> achievers;
};

ClassicalOptimum chsh_classical_optimum();

/// |phi_0(t)><phi_0(t)| - |phi_1(t)><phi_1(t)| = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
ComplexMatrix observable_from_angle(double t);

struct BellOperator {
    ComplexMatrix matrix;
};

/// A0 B0 + A0 B1 + A1 B0 - A1 B1; each observable must square to I within 1e-9.
BellOperator bell_operator(const ComplexMatrix &a0, const ComplexMatrix &a1, const ComplexMatrix &b0,
                           const ComplexMatrix &b1);
/// <psi|B|psi>/4 = 2 P_win - 1
double bell_bias(const BellOperator &bell, const PureState &psi);
/// Bell operator for the real-angle strategy.
BellOperator bell_operator(const QuantumStrategy &s);

struct ChshOptimizeOptions {
    size_t starts = 32;
    /// Keep the shared state at |00>.
    bool product_state = false;
    /// Optimize only the angles against this two-qubit state.
    std::optional<PureState> fixed_state;
};

struct ChshOptimum {
    double value;
    /// theta_A0, theta_A1, theta_B0, theta_B1
    std::array<double, 4> angles;
    /// Shared state cos(chi)|00> + sin(chi)|11> unless a fixed state was given.
    double schmidt_angle;
};

ChshOptimum chsh_optimize(uint64_t seed, const ChshOptimizeOptions &opts = {});

}  // namespace qinfo
