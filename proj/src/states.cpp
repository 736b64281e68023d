#include "qinfo/states.hpp"

#include <cmath>

#include "qinfo/errors.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

namespace {

constexpr double kTol = 1e-9;

ComplexMatrix symmetrized(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("state matrix must be square");
    }
    if (m.hermiticity_defect() > kTol) {
        throw DomainError("density matrix is not Hermitian");
    }
    return (m + m.adjoint()) * Complex(0.5);
}

double max_deviation_from_identity(const ComplexMatrix &m) {
    double dev = 0;
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            dev = std::max(dev, std::abs(m(r, c) - (r == c ? 1.0 : 0.0)));
        }
    }
    return dev;
}

}  // namespace

PureState::PureState(ComplexVector amplitudes, Dims dims) : amps_(std::move(amplitudes)), dims_(std::move(dims)) {
    if (amps_.empty()) {
        throw DimensionError("empty state vector");
    }
    check_dims(dims_, amps_.size());
    if (std::abs(norm(amps_) - 1) > 1e-10) {
        throw DomainError("state vector is not normalized");
    }
}

PureState::PureState(ComplexVector amplitudes) : PureState(amplitudes, Dims{amplitudes.size()}) {
}

PureState PureState::normalize(ComplexVector amplitudes, Dims dims) {
    return PureState(normalized(amplitudes), std::move(dims));
}

void check_psd(const ComplexMatrix &m, const char *what) {
    auto ev = hermitian_eigenvalues(m);
    if (ev.back() < -kTol) {
        throw DomainError(std::string(what) + " has a negative eigenvalue " + std::to_string(ev.back()));
    }
}

void check_density(const ComplexMatrix &m) {
    ComplexMatrix h = symmetrized(m);
    if (std::abs(h.trace() - 1.0) > kTol) {
        throw DomainError("density matrix trace is not 1");
    }
    check_psd(h, "density matrix");
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Dims dims) : m_(symmetrized(m)), dims_(std::move(dims)) {
    check_dims(dims_, m_.rows());
    check_density(m_);
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(m, Dims{m.rows()}) {
}

DensityMatrix::DensityMatrix(const PureState &psi) : m_(psi.density()), dims_(psi.dims()) {
}

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw DomainError("POVM has no elements");
    }
    size_t d = elements_.front().rows();
    ComplexMatrix sum(d, d);
    for (auto &e : elements_) {
        if (e.rows() != d || e.cols() != d) {
            throw DimensionError("POVM elements have inconsistent dimensions");
        }
        e = symmetrized(e);
        check_psd(e, "POVM element");
        sum += e;
    }
    if (max_deviation_from_identity(sum) > kTol) {
        throw DomainError("POVM elements do not sum to the identity");
    }
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw DomainError("channel has no Kraus operators");
    }
    size_t din = kraus_.front().cols(), dout = kraus_.front().rows();
    ComplexMatrix sum(din, din);
    for (const auto &e : kraus_) {
        if (e.cols() != din || e.rows() != dout) {
            throw DimensionError("Kraus operators have inconsistent shapes");
        }
        sum += e.adjoint() * e;
    }
    if (max_deviation_from_identity(sum) > kTol) {
        throw DomainError("Kraus operators are not trace preserving");
    }
}

DensityMatrix from_ensemble(const std::vector<double> &probs, const std::vector<PureState> &states) {
    if (probs.size() != states.size() || states.empty()) {
        throw DimensionError("ensemble needs one probability per state");
    }
    double total = 0;
    for (double p : probs) {
        if (!(p >= 0) || !std::isfinite(p)) {
            throw DomainError("ensemble probability is negative or not finite");
        }
        total += p;
    }
    if (std::abs(total - 1) > 1e-10) {
        throw DomainError("ensemble probabilities do not sum to 1");
    }
    const Dims &dims = states.front().dims();
    ComplexMatrix rho(states.front().dim(), states.front().dim());
    for (size_t i = 0; i < states.size(); i++) {
        if (states[i].dims() != dims) {
            throw DimensionError("ensemble states have different dimensions");
        }
        rho += states[i].density() * Complex(probs[i]);
    }
    return DensityMatrix(rho, dims);
}

std::vector<double> born_probabilities(const DensityMatrix &rho, const Povm &povm) {
    if (povm.dim() != rho.dim()) {
        throw DimensionError("POVM and state dimensions differ");
    }
    std::vector<double> p;
    for (const auto &q : povm.elements()) {
        p.push_back(std::max(0.0, trace_of_product(q, rho.matrix()).real()));
    }
    return p;
}

MeasurementBranch post_measurement(const DensityMatrix &rho, const ComplexMatrix &projector) {
    if (projector.rows() != rho.dim() || !projector.is_square()) {
        throw DimensionError("projector and state dimensions differ");
    }
    if (projector.hermiticity_defect() > kTol || (projector * projector - projector).max_abs() > kTol) {
        throw DomainError("effect is not a projector");
    }
    ComplexMatrix post = projector * rho.matrix() * projector;
    double p = post.trace().real();
    if (p < 1e-12) {
        throw ZeroProbabilityError("measurement outcome has probability zero");
    }
    return {p, DensityMatrix(post * Complex(1.0 / p), rho.dims())};
}

NaimarkDilation naimark_dilate(const Povm &povm) {
    size_t d = povm.dim(), m = povm.size();
    size_t n = d * m;
    std::vector<ComplexMatrix> roots;
    for (const auto &q : povm.elements()) {
        roots.push_back(psd_sqrt(q));
    }
    // Column b*m of U is V|b> with V|phi> = sum_i sqrt(Q_i)|phi> (x) |i>.
    ComplexMatrix u(n, n);
    for (size_t b = 0; b < d; b++) {
        for (size_t a = 0; a < d; a++) {
            for (size_t i = 0; i < m; i++) {
                u(a * m + i, b * m) = roots[i](a, b);
            }
        }
    }
    // Candidate columns: the isometry first, then the standard basis as complement.
    ComplexMatrix candidates(n, d + n);
    for (size_t b = 0; b < d; b++) {
        candidates.set_col(b, u.col(b * m));
    }
    for (size_t k = 0; k < n; k++) {
        candidates(k, d + k) = 1.0;
    }
    size_t rank = orthonormalize_columns(candidates, 1e-10);
    if (rank != n) {
        throw ConvergenceError("unitary completion lost rank");
    }
    // Place isometry columns at inputs |b>|0>, the completion everywhere else.
    size_t next = d;
    for (size_t b = 0; b < d; b++) {
        for (size_t i = 0; i < m; i++) {
            u.set_col(b * m + i, candidates.col(i == 0 ? b : next++));
        }
    }
    NaimarkDilation out{u, m, {}};
    ComplexMatrix ud = u.adjoint();
    for (size_t i = 0; i < m; i++) {
        ComplexMatrix anc(m, m);
        anc(i, i) = 1.0;
        out.projectors.push_back(ud * kron(ComplexMatrix::identity(d), anc) * u);
    }
    return out;
}

std::vector<double> dilated_probabilities(const NaimarkDilation &dilation, const DensityMatrix &rho) {
    size_t m = dilation.ancilla_dim;
    ComplexMatrix zero(m, m);
    zero(0, 0) = 1.0;
    ComplexMatrix joint = kron(rho.matrix(), zero);
    if (joint.rows() != dilation.unitary.rows()) {
        throw DimensionError("state does not match the dilation");
    }
    std::vector<double> p;
    for (const auto &proj : dilation.projectors) {
        p.push_back(trace_of_product(proj, joint).real());
    }
    return p;
}

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho) {
    if (ch.input_dim() != rho.dim()) {
        throw DimensionError("channel input dimension differs from the state");
    }
    ComplexMatrix out(ch.output_dim(), ch.output_dim());
    for (const auto &e : ch.kraus()) {
        out += e * rho.matrix() * e.adjoint();
    }
    Dims dims = ch.output_dim() == rho.dim() ? rho.dims() : Dims{ch.output_dim()};
    return DensityMatrix(out, dims);
}

DensityMatrix apply_channel(const KrausChannel &ch, const DensityMatrix &rho, size_t subsystem) {
    const Dims &dims = rho.dims();
    if (subsystem >= dims.size()) {
        throw DimensionError("subsystem index out of range");
    }
    if (ch.input_dim() != dims[subsystem]) {
        throw DimensionError("channel input dimension differs from the subsystem");
    }
    size_t left = 1, right = 1;
    for (size_t s = 0; s < subsystem; s++) left *= dims[s];
    for (size_t s = subsystem + 1; s < dims.size(); s++) right *= dims[s];
    Dims out_dims = dims;
    out_dims[subsystem] = ch.output_dim();
    size_t dout = total_dim(out_dims);
    ComplexMatrix out(dout, dout);
    ComplexMatrix il = ComplexMatrix::identity(left), ir = ComplexMatrix::identity(right);
    for (const auto &e : ch.kraus()) {
        ComplexMatrix lifted = kron(kron(il, e), ir);
        out += lifted * rho.matrix() * lifted.adjoint();
    }
    return DensityMatrix(out, out_dims);
}

std::vector<InstrumentBranch> quantum_instrument(const KrausChannel &ch, const DensityMatrix &rho) {
    if (ch.input_dim() != rho.dim()) {
        throw DimensionError("instrument input dimension differs from the state");
    }
    std::vector<InstrumentBranch> out;
    for (const auto &e : ch.kraus()) {
        ComplexMatrix branch = e * rho.matrix() * e.adjoint();
        double p = branch.trace().real();
        if (p < 1e-12) {
            out.push_back({std::max(p, 0.0), std::nullopt});
        } else {
            out.push_back({p, DensityMatrix(branch * Complex(1.0 / p), Dims{ch.output_dim()})});
        }
    }
    return out;
}

ComplexMatrix pauli_x() {
    return {{0, 1}, {1, 0}};
}

ComplexMatrix pauli_y() {
    return {{0, Complex(0, -1)}, {Complex(0, 1), 0}};
}

ComplexMatrix pauli_z() {
    return {{1, 0}, {0, -1}};
}

ComplexMatrix hadamard() {
    double s = M_SQRT1_2;
    return {{s, s}, {s, -s}};
}

ComplexMatrix swap_operator(size_t d) {
    return permutation_operator(d, 2, {1, 0});
}

BlochVector to_bloch(const DensityMatrix &rho) {
    if (rho.dim() != 2) {
        throw DimensionError("Bloch vector of a non-qubit state");
    }
    const auto &m = rho.matrix();
    return {trace_of_product(m, pauli_x()).real(), trace_of_product(m, pauli_y()).real(),
            trace_of_product(m, pauli_z()).real()};
}

DensityMatrix from_bloch(const BlochVector &r) {
    double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    if (len > 1 + kTol) {
        throw DomainError("Bloch vector outside the unit ball");
    }
    ComplexMatrix m = ComplexMatrix::identity(2) + pauli_x() * Complex(r[0]) + pauli_y() * Complex(r[1]) +
                      pauli_z() * Complex(r[2]);
    return DensityMatrix(m * Complex(0.5));
}

namespace {

void check_axis(const BlochVector &e) {
    double len = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
    if (std::abs(len - 1) > 1e-9) {
        throw DomainError("rotation axis is not a unit vector");
    }
}

}  // namespace

ComplexMatrix rotation_unitary(const BlochVector &axis, double t) {
    check_axis(axis);
    ComplexMatrix h = pauli_x() * Complex(axis[0]) + pauli_y() * Complex(axis[1]) + pauli_z() * Complex(axis[2]);
    return matrix_exp(h * Complex(0, t / 2));
}

std::array<BlochVector, 3> bloch_rotation(const BlochVector &e, double t) {
    check_axis(e);
    // exp(+i t e.sigma/2) is a right-handed rotation by -t about e.
    double c = std::cos(-t), s = std::sin(-t);
    std::array<BlochVector, 3> r{};
    double cross[3][3] = {{0, -e[2], e[1]}, {e[2], 0, -e[0]}, {-e[1], e[0], 0}};
    for (int i = 0; i < 3; i++) {
        for (int j = 0; j < 3; j++) {
            r[i][j] = (i == j ? c : 0.0) + s * cross[i][j] + (1 - c) * e[i] * e[j];
        }
    }
    return r;
}

KrausChannel depolarizing_channel(size_t d, double p) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("depolarizing parameter outside [0, 1]");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.push_back(ComplexMatrix::identity(d) * Complex(std::sqrt(1 - p)));
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            ComplexMatrix e(d, d);
            e(i, j) = std::sqrt(p / d);
            kraus.push_back(e);
        }
    }
    return KrausChannel(kraus);
}

Povm computational_povm(size_t d) {
    std::vector<ComplexMatrix> elems;
    for (size_t i = 0; i < d; i++) {
        ComplexMatrix e(d, d);
        e(i, i) = 1.0;
        elems.push_back(e);
    }
    return Povm(elems);
}

std::array<ComplexVector, 4> tetrahedron_states() {
    double a = std::sqrt(1.0 / 3), b = std::sqrt(2.0 / 3);
    auto phase = [](double phi) { return std::polar(1.0, phi); };
    return {ComplexVector{1, 0}, ComplexVector{a, b}, ComplexVector{a, b * phase(2 * M_PI / 3)},
            ComplexVector{a, b * phase(4 * M_PI / 3)}};
}

Povm tetrahedron_povm() {
    std::vector<ComplexMatrix> elems;
    for (const auto &v : tetrahedron_states()) {
        elems.push_back(ComplexMatrix::projector(v) * Complex(0.5));
    }
    return Povm(elems);
}

PureState bell_state(BellState which) {
    double s = M_SQRT1_2;
    switch (which) {
        case BellState::PhiPlus:
            return PureState({s, 0, 0, s}, {2, 2});
        case BellState::PhiMinus:
            return PureState({s, 0, 0, -s}, {2, 2});
        case BellState::PsiPlus:
            return PureState({0, s, s, 0}, {2, 2});
        case BellState::PsiMinus:
            return PureState({0, s, -s, 0}, {2, 2});
    }
    throw DomainError("unknown Bell state");
}

PureState basis_state(const Dims &dims, const std::vector<size_t> &digits) {
    if (digits.size() != dims.size()) {
        throw DimensionError("basis state needs one digit per subsystem");
    }
    size_t idx = 0;
    for (size_t i = 0; i < dims.size(); i++) {
        if (digits[i] >= dims[i]) {
            throw DimensionError("basis digit out of range");
        }
        idx = idx * dims[i] + digits[i];
    }
    ComplexVector v(total_dim(dims));
    v[idx] = 1.0;
    return PureState(v, dims);
}

PureState ghz_state(size_t n) {
    if (n < 2) {
        throw DimensionError("GHZ state needs at least two qubits");
    }
    ComplexVector v(size_t{1} << n);
    v.front() = M_SQRT1_2;
    v.back() = M_SQRT1_2;
    return PureState(v, Dims(n, 2));
}

PureState w_state(size_t n) {
    if (n < 2) {
        throw DimensionError("W state needs at least two qubits");
    }
    ComplexVector v(size_t{1} << n);
    for (size_t k = 0; k < n; k++) {
        v[size_t{1} << k] = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return PureState(v, Dims(n, 2));
}

DensityMatrix maximally_mixed(size_t d) {
    if (d == 0) {
        throw DimensionError("dimension must be positive");
    }
    return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / d));
}

DensityMatrix rho_sym(size_t d) {
    if (d == 0) {
        throw DimensionError("dimension must be positive");
    }
    ComplexMatrix m = ComplexMatrix::identity(d * d) + swap_operator(d);
    return DensityMatrix(m * Complex(1.0 / (d * (d + 1.0))), {d, d});
}

DensityMatrix rho_anti(size_t d) {
    if (d < 2) {
        throw DimensionError("antisymmetric state needs d >= 2");
    }
    ComplexMatrix m = ComplexMatrix::identity(d * d) - swap_operator(d);
    return DensityMatrix(m * Complex(1.0 / (d * (d - 1.0))), {d, d});
}

DensityMatrix noisy_epr(double p) {
    if (!(p >= 0 && p <= 1)) {
        throw DomainError("noisy EPR weight outside [0, 1]");
    }
    ComplexMatrix m = bell_state(BellState::PhiPlus).density() * Complex(p) +
                      ComplexMatrix::identity(4) * Complex((1 - p) / 4);
    return DensityMatrix(m, {2, 2});
}

AnyState standard_state(const std::string &name, double param) {
    if (name == "phi_plus") return bell_state(BellState::PhiPlus);
    if (name == "phi_minus") return bell_state(BellState::PhiMinus);
    if (name == "psi_plus") return bell_state(BellState::PsiPlus);
    if (name == "psi_minus") return bell_state(BellState::PsiMinus);
    if (name == "ghz") return ghz_state(3);
    if (name == "w") return w_state(3);
    auto dim_param = [&]() {
        if (param < 1 || param != std::floor(param)) {
            throw DomainError("state '" + name + "' needs an integer dimension parameter");
        }
        return static_cast<size_t>(param);
    };
    if (name == "maximally_mixed") return maximally_mixed(dim_param());
    if (name == "rho_sym") return rho_sym(dim_param());
    if (name == "rho_anti") return rho_anti(dim_param());
    if (name == "noisy_epr") return noisy_epr(param);
    throw DomainError("unknown standard state '" + name + "'");
}

DensityMatrix as_density(const AnyState &s) {
    if (const auto *p = std::get_if<PureState>(&s)) {
        return DensityMatrix(*p);
    }
    return std::get<DensityMatrix>(s);
}

}  // namespace qinfo
