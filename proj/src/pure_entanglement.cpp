#include "qinfo/pure_entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qinfo/errors.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

namespace {

constexpr double kRankThreshold = 1e-7;
constexpr double kRankCertain = 1e-5;
constexpr double kHyperdetZero = 1e-9;
constexpr double kHyperdetCertain = 1e-7;
constexpr double kSpectraSlack = 1e-12;

std::vector<size_t> complement(const std::vector<size_t> &cut, size_t count) {
    std::vector<bool> in(count, false);
    for (size_t s : cut) {
        if (s >= count) {
            throw DimensionError("cut refers to a missing subsystem");
        }
        if (in[s]) {
            throw DimensionError("cut repeats a subsystem");
        }
        in[s] = true;
    }
    std::vector<size_t> rest;
    for (size_t s = 0; s < count; s++) {
        if (!in[s]) rest.push_back(s);
    }
    return rest;
}

void check_three_qubits(const PureState &psi) {
    if (psi.dims() != Dims{2, 2, 2}) {
        throw DimensionError("expected a three-qubit state with dims (2,2,2)");
    }
}

}  // namespace

SchmidtDecomposition schmidt(const PureState &psi, const std::vector<size_t> &cut) {
    const Dims &dims = psi.dims();
    if (cut.empty()) {
        throw DimensionError("cut must name at least one subsystem");
    }
    std::vector<size_t> a = cut;
    std::sort(a.begin(), a.end());
    std::vector<size_t> b = complement(a, dims.size());
    if (b.empty()) {
        throw DimensionError("cut must leave at least one subsystem on side B");
    }
    std::vector<size_t> order = a;
    order.insert(order.end(), b.begin(), b.end());
    ComplexVector v = permute_systems(psi.amplitudes(), dims, order);
    SchmidtDecomposition out;
    for (size_t s : a) out.dims_a.push_back(dims[s]);
    for (size_t s : b) out.dims_b.push_back(dims[s]);
    size_t da = total_dim(out.dims_a), db = total_dim(out.dims_b);
    ComplexMatrix m(da, db, v);
    size_t r = std::min(da, db);

    // Diagonalize the smaller Gram matrix, then map across.
    bool left_small = da <= db;
    ComplexMatrix gram = left_small ? m * m.adjoint() : m.adjoint() * m;
    auto eig = hermitian_eig(gram);
    ComplexMatrix small(left_small ? da : db, r);
    ComplexMatrix big(left_small ? db : da, r);
    size_t nonzero = 0;
    for (size_t i = 0; i < r; i++) {
        double s = std::sqrt(std::max(eig.values[i], 0.0));
        out.coefficients.push_back(s);
        ComplexVector u = eig.vectors.col(i);
        small.set_col(i, u);
        if (s > 1e-13) {
            // psi = sum_i s_i e_i (x) f_i with M = sum_i s_i e_i f_i^T.
            // Small side A: f = M^T conj(e) / s. Small side B: u = conj(f), e = M u / s.
            ComplexVector w(left_small ? db : da);
            for (size_t x = 0; x < w.size(); x++) {
                Complex acc = 0;
                for (size_t y = 0; y < u.size(); y++) {
                    acc += left_small ? m(y, x) * std::conj(u[y]) : m(x, y) * u[y];
                }
                w[x] = acc / s;
            }
            big.set_col(i, w);
            nonzero++;
        }
    }
    // Complete the partner basis where coefficients vanish.
    if (nonzero < r) {
        ComplexMatrix cand(big.rows(), nonzero + big.rows());
        for (size_t i = 0; i < nonzero; i++) cand.set_col(i, big.col(i));
        for (size_t k = 0; k < big.rows(); k++) cand(k, nonzero + k) = 1.0;
        orthonormalize_columns(cand, 1e-10);
        for (size_t i = nonzero; i < r; i++) big.set_col(i, cand.col(i));
    }
    if (left_small) {
        out.left_basis = small;
        out.right_basis = big;
    } else {
        out.left_basis = big;
        out.right_basis = small.conj();
    }
    return out;
}

double entanglement_entropy(const PureState &psi, const std::vector<size_t> &cut) {
    auto sd = schmidt(psi, cut);
    std::vector<double> sq;
    for (double s : sd.coefficients) sq.push_back(s * s);
    return spectrum_entropy(sq);
}

ComplexMatrix teleport_correction(size_t outcome) {
    switch (outcome) {
        case 0:
            return ComplexMatrix::identity(2);
        case 1:
            return pauli_z();
        case 2:
            return pauli_x();
        case 3:
            return pauli_y();
    }
    throw DomainError("Bell outcome must be 0..3");
}

namespace {

struct Branches {
    size_t d_ref;
    // Unnormalized joint (reference, Bob) vectors per outcome, before correction.
    std::array<ComplexVector, 4> bob;
    std::array<double, 4> probs;
};

Branches teleport_branches(const PureState &psi) {
    const Dims &dims = psi.dims();
    if (dims.back() != 2) {
        throw DimensionError("the teleported subsystem must be a qubit");
    }
    size_t d_ref = psi.dim() / 2;
    const auto &amp = psi.amplitudes();
    Branches out{d_ref, {}, {}};
    std::array<BellState, 4> basis = {BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                                      BellState::PsiMinus};
    double s = M_SQRT1_2;
    for (size_t i = 0; i < 4; i++) {
        ComplexVector eta = bell_state(basis[i]).amplitudes();
        ComplexVector v(d_ref * 2);
        // Joint amplitude of |r, m, a, b> is psi[r, m] * [a == b] / sqrt 2.
        for (size_t r = 0; r < d_ref; r++) {
            for (size_t m = 0; m < 2; m++) {
                for (size_t a = 0; a < 2; a++) {
                    Complex w = std::conj(eta[m * 2 + a]) * amp[r * 2 + m] * s;
                    v[r * 2 + a] += w;
                }
            }
        }
        out.probs[i] = norm(v) * norm(v);
        out.bob[i] = std::move(v);
    }
    return out;
}

TeleportTranscript finish_branch(const PureState &psi, const Branches &br, size_t outcome) {
    if (outcome > 3) {
        throw DomainError("Bell outcome must be 0..3");
    }
    if (br.probs[outcome] < 1e-12) {
        throw ZeroProbabilityError("teleportation outcome has probability zero");
    }
    ComplexMatrix corr = teleport_correction(outcome);
    Dims joint{br.d_ref, 2};
    ComplexVector fixed = normalized(apply_on_subsystem(br.bob[outcome], joint, 1, corr));
    Dims out_dims = psi.dims();
    double fid = std::norm(inner(psi.amplitudes(), fixed));
    return {outcome, br.probs, corr, PureState(fixed, out_dims), fid};
}

}  // namespace

TeleportTranscript teleport(const PureState &psi, uint64_t seed) {
    if (psi.dim() != 2) {
        throw DimensionError("teleport expects a single-qubit message");
    }
    auto br = teleport_branches(psi);
    Rng rng(seed);
    std::discrete_distribution<size_t> dist(br.probs.begin(), br.probs.end());
    return finish_branch(psi, br, dist(rng.engine()));
}

TeleportTranscript teleport_branch(const PureState &psi, size_t outcome) {
    if (psi.dim() != 2) {
        throw DimensionError("teleport expects a single-qubit message");
    }
    return finish_branch(psi, teleport_branches(psi), outcome);
}

TeleportTranscript teleport_entangled_branch(const PureState &psi, size_t outcome) {
    return finish_branch(psi, teleport_branches(psi), outcome);
}

DensityMatrix unconditioned_bob_state(const PureState &psi) {
    if (psi.dim() != 2) {
        throw DimensionError("teleport expects a single-qubit message");
    }
    auto br = teleport_branches(psi);
    ComplexMatrix rho(2, 2);
    for (const auto &v : br.bob) {
        rho += ComplexMatrix::projector(v);
    }
    return DensityMatrix(rho);
}

DistillationSample distillation_yield(const Distribution &spectrum, size_t n, uint64_t seed) {
    if (n == 0) {
        throw DomainError("distillation needs n >= 1");
    }
    Rng rng(seed);
    DistillationSample out;
    size_t left = n;
    double mass = 1;
    for (size_t x = 0; x < spectrum.size(); x++) {
        size_t t;
        if (x + 1 == spectrum.size()) {
            t = left;
        } else {
            double q = mass > 0 ? std::clamp(spectrum[x] / mass, 0.0, 1.0) : 0.0;
            t = std::binomial_distribution<size_t>(left, q)(rng.engine());
        }
        out.type.push_back(t);
        left -= t;
        mass -= spectrum[x];
    }
    double ln = std::lgamma(n + 1.0);
    for (size_t t : out.type) {
        ln -= std::lgamma(t + 1.0);
    }
    out.yield_bits = std::max(0.0, ln / std::log(2.0));
    return out;
}

size_t dilution_rank_bound(const PureState &psi, const std::vector<size_t> &cut, size_t n, double delta) {
    if (!(delta >= 0)) {
        throw DomainError("delta must be nonnegative");
    }
    double bits = n * (entanglement_entropy(psi, cut) + delta);
    return static_cast<size_t>(std::max(0.0, std::ceil(bits - 1e-9)));
}

PureState slocc_apply(const std::vector<ComplexMatrix> &ops, const PureState &psi) {
    const Dims &dims = psi.dims();
    if (ops.size() != dims.size()) {
        throw DimensionError("need one local operator per subsystem");
    }
    ComplexVector v = psi.amplitudes();
    for (size_t k = 0; k < ops.size(); k++) {
        if (ops[k].rows() != dims[k] || ops[k].cols() != dims[k]) {
            throw DimensionError("local operator does not match its subsystem");
        }
        auto sv = hermitian_eigenvalues(ops[k].adjoint() * ops[k]);
        if (!(sv.back() > 1e-28 * sv.front()) || !std::isfinite(sv.front())) {
            throw DomainError("local operator is not invertible");
        }
        v = apply_on_subsystem(v, dims, k, ops[k]);
    }
    if (norm(v) < 1e-12) {
        throw ZeroProbabilityError("local operators annihilated the state");
    }
    return PureState::normalize(v, dims);
}

Complex hyperdeterminant(const PureState &psi) {
    check_three_qubits(psi);
    const auto &a = psi.amplitudes();
    auto p = [&](int i, int j, int k) { return a[i * 4 + j * 2 + k]; };
    Complex p000 = p(0, 0, 0), p001 = p(0, 0, 1), p010 = p(0, 1, 0), p011 = p(0, 1, 1);
    Complex p100 = p(1, 0, 0), p101 = p(1, 0, 1), p110 = p(1, 1, 0), p111 = p(1, 1, 1);
    Complex sq = p000 * p000 * p111 * p111 + p100 * p100 * p011 * p011 + p010 * p010 * p101 * p101 +
                 p001 * p001 * p110 * p110;
    Complex cross = p000 * p111 * p100 * p011 + p000 * p111 * p010 * p101 + p000 * p111 * p001 * p110 +
                    p100 * p011 * p010 * p101 + p100 * p011 * p001 * p110 + p010 * p101 * p001 * p110;
    Complex quad = 4.0 * p000 * p110 * p101 * p011 + 4.0 * p111 * p001 * p010 * p100;
    return sq - 2.0 * cross + quad;
}

std::string to_string(SloccClass c) {
    switch (c) {
        case SloccClass::Product:
            return "Product";
        case SloccClass::BipartiteAB:
            return "BipartiteAB";
        case SloccClass::BipartiteAC:
            return "BipartiteAC";
        case SloccClass::BipartiteBC:
            return "BipartiteBC";
        case SloccClass::W:
            return "W";
        case SloccClass::GHZ:
            return "GHZ";
    }
    return "?";
}

ThreeQubitClassification classify_three_qubit(const PureState &psi) {
    check_three_qubits(psi);
    ThreeQubitClassification out{};
    ComplexMatrix rho = psi.density();
    Dims dims{2, 2, 2};
    std::array<int, 3> rank{};
    bool ambiguous = false;
    for (size_t k = 0; k < 3; k++) {
        double lmin = hermitian_eigenvalues(partial_trace(rho, dims, {k})).back();
        out.marginal_min_eigenvalues[k] = lmin;
        if (lmin <= kRankThreshold) {
            rank[k] = 1;
        } else if (lmin >= kRankCertain) {
            rank[k] = 2;
        } else {
            ambiguous = true;
        }
    }
    out.hyperdet_abs = std::abs(hyperdeterminant(psi));
    if (ambiguous) {
        return out;
    }
    int ones = (rank[0] == 1) + (rank[1] == 1) + (rank[2] == 1);
    if (ones == 3) {
        out.slocc_class = SloccClass::Product;
    } else if (ones == 1) {
        if (rank[2] == 1) out.slocc_class = SloccClass::BipartiteAB;
        if (rank[1] == 1) out.slocc_class = SloccClass::BipartiteAC;
        if (rank[0] == 1) out.slocc_class = SloccClass::BipartiteBC;
    } else if (ones == 0) {
        if (out.hyperdet_abs <= kHyperdetZero) {
            out.slocc_class = SloccClass::W;
        } else if (out.hyperdet_abs >= kHyperdetCertain) {
            out.slocc_class = SloccClass::GHZ;
        }
    }
    // ones == 2 cannot happen for a pure state; leave it undetermined.
    return out;
}

LocalSpectra local_lambda_max(const PureState &psi) {
    check_three_qubits(psi);
    ComplexMatrix rho = psi.density();
    LocalSpectra out{};
    for (size_t k = 0; k < 3; k++) {
        out[k] = hermitian_eigenvalues(partial_trace(rho, {2, 2, 2}, {k})).front();
    }
    return out;
}

namespace {

void check_lambda_range(const LocalSpectra &lams) {
    for (double l : lams) {
        if (!(l >= 0.5 - kSpectraSlack && l <= 1 + kSpectraSlack)) {
            throw DomainError("qubit lambda_max must lie in [1/2, 1]");
        }
    }
}

}  // namespace

bool three_qubit_spectra_compatible(const LocalSpectra &lams) {
    check_lambda_range(lams);
    for (size_t k = 0; k < 3; k++) {
        double a = lams[k], b = lams[(k + 1) % 3], c = lams[(k + 2) % 3];
        if (a + b > 1 + c + kSpectraSlack) {
            return false;
        }
    }
    return true;
}

PureState three_qubit_state_from_spectra(const LocalSpectra &lams) {
    if (!three_qubit_spectra_compatible(lams)) {
        throw DomainError("local spectra are not compatible with a pure three-qubit state");
    }
    double a2 = (lams[0] + lams[1] + lams[2] - 1) / 2;
    double root[4] = {a2, lams[0] - a2, lams[1] - a2, lams[2] - a2};
    ComplexVector v(8);
    size_t slots[4] = {0b000, 0b011, 0b101, 0b110};
    for (int i = 0; i < 4; i++) {
        v[slots[i]] = std::sqrt(std::max(root[i], 0.0));
    }
    return PureState::normalize(v, {2, 2, 2});
}

bool w_polytope_check(const LocalSpectra &lams) {
    return lams[0] + lams[1] + lams[2] >= 2 - 1e-9;
}

bool w_polytope_check(const PureState &psi) {
    return w_polytope_check(local_lambda_max(psi));
}

}  // namespace qinfo
