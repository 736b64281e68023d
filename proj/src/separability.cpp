#include "qinfo/separability.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include "qinfo/errors.hpp"
#include "qinfo/games.hpp"
#include "qinfo/schur_weyl.hpp"

namespace qinfo {

PptVerdict ppt_check(const DensityMatrix &rho, const std::vector<size_t> &cut) {
    if (rho.dims().size() < 2) {
        throw DimensionError("PPT test needs at least two subsystems");
    }
    ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dims(), cut);
    auto spec = hermitian_eigenvalues(pt);
    double lo = spec.back();
    return {lo >= -kPptTol, lo, spec};
}

double noisy_epr_ppt_threshold(double tol) {
    auto min_eig = [](double p) {
        ComplexMatrix pt = partial_transpose(noisy_epr(p).matrix(), {2, 2}, {0});
        return hermitian_eigenvalues(pt).back();
    };
    double lo = 0, hi = 1;
    while (hi - lo > tol) {
        double mid = (lo + hi) / 2;
        (min_eig(mid) >= 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

Witness::Witness(ComplexMatrix op) : op_(std::move(op)) {
    if (!op_.is_square() || op_.hermiticity_defect() > 1e-9) {
        throw DomainError("witness must be Hermitian");
    }
}

double witness_value(const Witness &w, const DensityMatrix &rho) {
    if (w.op().rows() != rho.dim()) {
        throw DimensionError("witness and state dimensions differ");
    }
    return trace_of_product(w.op(), rho.matrix()).real();
}

Witness phi_plus_witness() {
    return Witness(ComplexMatrix::identity(4) - bell_state(BellState::PhiPlus).density() * Complex(2));
}

Witness chsh_witness() {
    auto bell = bell_operator(observable_from_angle(0), observable_from_angle(M_PI / 4),
                              observable_from_angle(M_PI / 8), observable_from_angle(-M_PI / 8));
    return Witness(ComplexMatrix::identity(4) * Complex(0.5) - bell.matrix * Complex(0.25));
}

Witness eigen_witness(const DensityMatrix &rho, const std::vector<size_t> &cut) {
    ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dims(), cut);
    auto eig = hermitian_eig(pt);
    ComplexVector v = eig.vectors.col(eig.values.size() - 1);
    return Witness(partial_transpose(ComplexMatrix::projector(v), rho.dims(), cut));
}

DensityMatrix sample_separable(size_t da, size_t db, size_t terms, Rng &rng) {
    if (terms == 0) {
        throw DomainError("need at least one term");
    }
    // Dirichlet(1) weights are normalized exponentials.
    std::vector<double> w(terms);
    double total = 0;
    for (auto &x : w) {
        x = -std::log(1 - rng.uniform());
        total += x;
    }
    ComplexMatrix rho(da * db, da * db);
    for (size_t t = 0; t < terms; t++) {
        ComplexVector v = kron(haar_state(da, rng), haar_state(db, rng));
        rho += ComplexMatrix::projector(v) * Complex(w[t] / total);
    }
    return DensityMatrix(rho, {da, db});
}

std::string to_string(Feasibility f) {
    switch (f) {
        case Feasibility::Feasible:
            return "Feasible";
        case Feasibility::InfeasibleEvidence:
            return "InfeasibleEvidence";
        case Feasibility::Undetermined:
            return "Undetermined";
    }
    return "Undetermined";
}

namespace {

// Orderings of A B_1 ... B_k that permute the B systems.
std::vector<std::vector<size_t>> b_permutations(size_t k) {
    std::vector<size_t> pi(k);
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<std::vector<size_t>> out;
    do {
        std::vector<size_t> order{0};
        for (size_t x : pi) order.push_back(x + 1);
        out.push_back(order);
    } while (std::next_permutation(pi.begin(), pi.end()));
    return out;
}

struct ExtensionGeometry {
    size_t da, db, k;
    Dims dims;
    std::vector<std::vector<size_t>> perms;
    std::vector<size_t> keep_ab1{0, 1};
    std::vector<size_t> keep_a{0};

    ExtensionGeometry(size_t a, size_t b, size_t kk) : da(a), db(b), k(kk), dims(1 + kk, b), perms(b_permutations(kk)) {
        dims[0] = a;
    }

    size_t rest_dim() const {
        size_t r = 1;
        for (size_t i = 1; i < k; i++) r *= db;
        return r;
    }

    ComplexMatrix average(const ComplexMatrix &x) const {
        if (k == 1) return x;
        ComplexMatrix g(x.rows(), x.cols());
        for (const auto &order : perms) {
            g += permute_systems(x, dims, order);
        }
        g *= Complex(1.0 / perms.size());
        return g;
    }

    ComplexMatrix marginal(const ComplexMatrix &x) const {
        return k == 1 ? x : partial_trace(x, dims, keep_ab1);
    }

    // Orthogonal projection onto {G X = X, tr_{B_2..B_k} X = rho}.
    ComplexMatrix affine(const ComplexMatrix &x, const ComplexMatrix &rho) const {
        if (k == 1) return rho;
        ComplexMatrix gx = average(x);
        ComplexMatrix r = rho - marginal(gx);
        double dk1 = static_cast<double>(rest_dim());
        double a = dk1 / k;
        double b = (k - 1) * (dk1 / db) / k;
        ComplexMatrix rb = partial_trace(r, {da, db}, keep_a) * Complex(1.0 / (a + b * db));
        ComplexMatrix y = (r - tensor(rb, ComplexMatrix::identity(db)) * Complex(b)) * Complex(1.0 / a);
        ComplexMatrix lift = tensor(y, ComplexMatrix::identity(rest_dim()), SIZE_MAX);
        return gx + average(lift);
    }
};

// Euclidean projection of a vector onto the probability simplex.
std::vector<double> simplex_projection(std::vector<double> v) {
    std::vector<double> s = v;
    std::sort(s.begin(), s.end(), std::greater<>());
    double cum = 0, theta = 0;
    for (size_t i = 0; i < s.size(); i++) {
        cum += s[i];
        double t = (cum - 1) / (i + 1);
        if (i + 1 == s.size() || s[i + 1] <= t) {
            theta = t;
            break;
        }
    }
    for (auto &x : v) x = std::max(0.0, x - theta);
    return v;
}

// Projection onto {X >= 0, tr X = 1, support inside the span of `basis`}; an empty
// basis means the whole space.
ComplexMatrix density_projection(const ComplexMatrix &x, const std::optional<ComplexMatrix> &basis) {
    if (!basis) {
        auto eig = hermitian_eig(x);
        auto lam = simplex_projection(eig.values);
        return spectral_apply({lam, eig.vectors}, [](double v) { return v; });
    }
    const ComplexMatrix &v = *basis;
    auto eig = hermitian_eig(v.adjoint() * x * v);
    auto lam = simplex_projection(eig.values);
    ComplexMatrix w = v * eig.vectors;
    ComplexMatrix out(x.rows(), x.cols());
    for (size_t c = 0; c < lam.size(); c++) {
        if (lam[c] > 0) out += ComplexMatrix::projector(w.col(c)) * Complex(lam[c]);
    }
    return out;
}

// Every extension X satisfies (P_ker(rho)_{A B_j} (x) I) X = 0 for each j, so X lives on
// the intersection of supp(rho)_{A B_j} (x) rest. Returns an orthonormal basis of that
// intersection, or nothing when rho has full rank.
std::optional<ComplexMatrix> extension_support(const ComplexMatrix &rho, const ExtensionGeometry &geo) {
    auto eig = hermitian_eig(rho);
    ComplexMatrix kernel(rho.rows(), rho.cols());
    size_t rank = 0;
    for (size_t c = 0; c < eig.values.size(); c++) {
        if (eig.values[c] > 1e-12) {
            rank++;
        } else {
            kernel += ComplexMatrix::projector(eig.vectors.col(c));
        }
    }
    if (rank == rho.rows()) return std::nullopt;
    ComplexMatrix spread = geo.average(tensor(kernel, ComplexMatrix::identity(geo.rest_dim()), SIZE_MAX));
    auto big = hermitian_eig(spread);
    size_t keep = 0;
    for (double lam : big.values) keep += lam < 1e-9;
    size_t n = big.values.size();
    ComplexMatrix basis(n, keep);
    for (size_t c = 0; c < keep; c++) basis.set_col(c, big.vectors.col(n - keep + c));
    return basis;
}

}  // namespace

double extension_violation(const ComplexMatrix &ext, const ComplexMatrix &rho, size_t da, size_t db, size_t k) {
    ExtensionGeometry geo(da, db, k);
    double v = std::abs(ext.trace() - 1.0);
    v = std::max(v, -hermitian_eigenvalues(ext).back());
    v = std::max(v, (geo.average(ext) - ext).max_abs());
    v = std::max(v, (geo.marginal(ext) - rho).max_abs());
    return v;
}

namespace {

FeasibilityReport run_dykstra(const ExtensionGeometry &geo, const ComplexMatrix &target, ComplexMatrix x,
                              const std::optional<ComplexMatrix> &support, const ExtendibilityOptions &opts) {
    // Dykstra: the affine set needs no correction term, the PSD set does.
    ComplexMatrix q(x.rows(), x.cols());
    std::deque<double> history;
    double residual = 0;
    size_t it = 0;
    Feasibility status = Feasibility::Undetermined;
    while (it < opts.max_iterations) {
        it++;
        ComplexMatrix y = geo.affine(x, target);
        ComplexMatrix z = y + q;
        x = density_projection(z, support);
        q = z - x;
        residual = (x - y).frobenius_norm();
        if (residual <= opts.eps_feas) {
            status = Feasibility::Feasible;
            break;
        }
        history.push_back(residual);
        if (history.size() > opts.plateau_window) {
            double old = history.front();
            history.pop_front();
            if (residual > opts.eps_gap && std::abs(old - residual) <= opts.plateau_tol * residual) {
                status = Feasibility::InfeasibleEvidence;
                break;
            }
        }
    }
    FeasibilityReport rep{status, residual, it, std::nullopt, 0};
    ComplexMatrix ext = geo.average(x);
    rep.max_violation = extension_violation(ext, target, geo.da, geo.db, geo.k);
    if (status == Feasibility::Feasible) {
        if (rep.max_violation > 1e-6) {
            rep.status = Feasibility::Undetermined;
        } else {
            rep.extension = std::move(ext);
        }
    }
    return rep;
}

// Douglas-Rachford splitting on the same two sets. It only ever certifies: near the
// boundary of the state space it reaches a common point far faster than Dykstra, but its
// iterates drift when the sets are disjoint, so it never reports infeasibility.
std::optional<FeasibilityReport> run_douglas_rachford(const ExtensionGeometry &geo, const ComplexMatrix &target,
                                                      ComplexMatrix s, const std::optional<ComplexMatrix> &support,
                                                      const ExtendibilityOptions &opts) {
    for (size_t it = 1; it <= opts.max_iterations; it++) {
        ComplexMatrix p = geo.affine(s, target);
        ComplexMatrix c = density_projection(p * Complex(2) - s, support);
        double residual = (c - p).frobenius_norm();
        if (residual <= opts.eps_feas) {
            ComplexMatrix ext = geo.average(c);
            double violation = extension_violation(ext, target, geo.da, geo.db, geo.k);
            if (violation <= 1e-6) return FeasibilityReport{Feasibility::Feasible, residual, it, std::move(ext), violation};
        }
        s += c - p;
    }
    return std::nullopt;
}

}  // namespace

FeasibilityReport k_extendibility(const DensityMatrix &rho, const std::vector<size_t> &cut, size_t k,
                                  const ExtendibilityOptions &opts) {
    if (k == 0) {
        throw DomainError("k must be at least 1");
    }
    const Dims &dims = rho.dims();
    std::vector<bool> in_a(dims.size(), false);
    for (size_t s : cut) {
        if (s >= dims.size()) throw DimensionError("cut names a missing subsystem");
        in_a[s] = true;
    }
    std::vector<size_t> order;
    size_t da = 1, db = 1;
    for (size_t s = 0; s < dims.size(); s++) {
        if (in_a[s]) {
            order.push_back(s);
            da *= dims[s];
        }
    }
    for (size_t s = 0; s < dims.size(); s++) {
        if (!in_a[s]) {
            order.push_back(s);
            db *= dims[s];
        }
    }
    if (da == 1 || db == 1) {
        throw DimensionError("cut must leave both sides nonempty");
    }
    size_t full = da;
    for (size_t i = 0; i < k; i++) {
        if (full > opts.cap / db) throw SizeCapError("d_A d_B^k exceeds the size cap");
        full *= db;
    }
    ComplexMatrix target = permute_systems(rho.matrix(), dims, order);
    ExtensionGeometry geo(da, db, k);

    ComplexMatrix x;
    if (opts.warm_start) {
        if (opts.warm_start->rows() != full || !opts.warm_start->is_square()) {
            throw DimensionError("warm start has the wrong dimension");
        }
        x = *opts.warm_start;
    } else {
        x = tensor(target, ComplexMatrix::identity(geo.rest_dim()) * Complex(1.0 / geo.rest_dim()), SIZE_MAX);
    }

    // Facial reduction only speeds up certification; any other verdict comes from the
    // plain run so the residual always measures the gap between the original sets.
    std::optional<ComplexMatrix> support = extension_support(target, geo);
    if (support && support->cols() > 0) {
        FeasibilityReport reduced = run_dykstra(geo, target, x, support, opts);
        if (reduced.status == Feasibility::Feasible) return reduced;
    }
    FeasibilityReport plain = run_dykstra(geo, target, x, std::nullopt, opts);
    if (plain.status != Feasibility::Undetermined) return plain;
    if (support && support->cols() > 0) {
        if (auto dr = run_douglas_rachford(geo, target, x, support, opts)) return *dr;
    }
    if (auto dr = run_douglas_rachford(geo, target, x, std::nullopt, opts)) return *dr;
    return plain;
}

PureState slater_extension(size_t d) {
    if (d < 2) {
        throw DomainError("Slater determinant needs d >= 2");
    }
    if (d > 6) {
        throw SizeCapError("Slater determinant is enumerated only for d <= 6");
    }
    std::vector<size_t> pi(d);
    std::iota(pi.begin(), pi.end(), 0);
    size_t dim = 1;
    for (size_t i = 0; i < d; i++) dim *= d;
    double fact = 1;
    for (size_t i = 2; i <= d; i++) fact *= i;
    ComplexVector psi(dim);
    double amp = 1 / std::sqrt(fact);
    do {
        size_t inversions = 0, idx = 0;
        for (size_t i = 0; i < d; i++) {
            idx = idx * d + pi[i];
            for (size_t j = i + 1; j < d; j++) inversions += pi[i] > pi[j];
        }
        psi[idx] = inversions % 2 ? -amp : amp;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return PureState(psi, Dims(d, d));
}

namespace {

void check_measurement_operator(const ComplexMatrix &m, const Dims &dims) {
    if (dims.size() != 2) {
        throw DimensionError("expected a bipartite operator");
    }
    check_dims(dims, m.rows());
    auto spec = hermitian_eigenvalues(m);
    if (spec.back() < -1e-9 || spec.front() > 1 + 1e-9) {
        throw DomainError("operator must satisfy 0 <= M <= I");
    }
}

// Top eigenpair of a Hermitian matrix.
std::pair<double, ComplexVector> top_eig(const ComplexMatrix &m) {
    auto eig = hermitian_eig(m);
    return {eig.values.front(), eig.vectors.col(0)};
}

// (<phi| (x) I) M (|phi> (x) I) when `left`, else (I (x) <psi|) M (I (x) |psi>).
ComplexMatrix conditioned(const ComplexMatrix &m, size_t da, size_t db, const ComplexVector &v, bool left) {
    size_t out = left ? db : da;
    ComplexMatrix c(out, out);
    for (size_t i = 0; i < out; i++) {
        for (size_t j = 0; j < out; j++) {
            Complex s = 0;
            size_t other = left ? da : db;
            for (size_t a = 0; a < other; a++) {
                for (size_t b = 0; b < other; b++) {
                    size_t r = left ? a * db + i : i * db + a;
                    size_t col = left ? b * db + j : j * db + b;
                    s += std::conj(v[a]) * m(r, col) * v[b];
                }
            }
            c(i, j) = s;
        }
    }
    return c;
}

double product_ascent(const ComplexMatrix &m, size_t da, size_t db, size_t samples, uint64_t seed) {
    double best = -std::numeric_limits<double>::infinity();
    for (size_t s = 0; s < std::max<size_t>(samples, 1); s++) {
        Rng rng(mix_seed(seed, s));
        ComplexVector phi = haar_state(da, rng);
        ComplexVector psi;
        double value = -std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 500; iter++) {
            auto [vb, nb] = top_eig(conditioned(m, da, db, phi, true));
            psi = nb;
            auto [va, na] = top_eig(conditioned(m, da, db, psi, false));
            phi = na;
            bool done = va - value < 1e-13;
            value = std::max(value, va);
            (void)vb;
            if (done) break;
        }
        best = std::max(best, value);
    }
    return best;
}

}  // namespace

double h_n_ext(const ComplexMatrix &m, const Dims &dims, size_t n, size_t cap) {
    check_measurement_operator(m, dims);
    if (n == 0) {
        throw DomainError("n must be at least 1");
    }
    size_t da = dims[0], db = dims[1];
    size_t full = da;
    for (size_t i = 0; i < n; i++) {
        if (full > cap / db) throw SizeCapError("d_A d_B^n exceeds the size cap");
        full *= db;
    }
    size_t rest = full / (da * db);
    ComplexMatrix proj = tensor(ComplexMatrix::identity(da), sym_projector(db, n, cap).matrix, SIZE_MAX);
    ComplexMatrix big = tensor(m, ComplexMatrix::identity(rest), SIZE_MAX);
    return hermitian_eigenvalues(proj * big * proj).front();
}

double h_sep_sampled(const ComplexMatrix &m, const Dims &dims, size_t samples, uint64_t seed) {
    check_measurement_operator(m, dims);
    return product_ascent(m, dims[0], dims[1], samples, seed);
}

MotzkinStrausReport motzkin_straus(size_t vertices, const std::vector<std::pair<size_t, size_t>> &edges,
                                   uint64_t seed) {
    if (vertices == 0) {
        throw DomainError("graph needs at least one vertex");
    }
    if (vertices > 20) {
        throw SizeCapError("Motzkin-Straus check is limited to 20 vertices");
    }
    std::vector<uint32_t> adj(vertices, 0);
    for (auto [i, j] : edges) {
        if (i >= vertices || j >= vertices || i == j) {
            throw DomainError("edge list must describe a simple graph");
        }
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
    }
    MotzkinStrausReport out{};
    out.clique_number = 1;
    for (uint32_t s = 1; s < (1u << vertices); s++) {
        size_t size = static_cast<size_t>(__builtin_popcount(s));
        if (size <= out.clique_number) continue;
        bool clique = true;
        for (size_t v = 0; v < vertices && clique; v++) {
            if ((s >> v) & 1) clique = ((s & ~(1u << v)) & ~adj[v]) == 0;
        }
        if (clique) out.clique_number = size;
    }

    auto quad = [&](const std::vector<double> &p) {
        double v = 0;
        for (size_t i = 0; i < vertices; i++)
            for (size_t j = 0; j < vertices; j++)
                if ((adj[i] >> j) & 1) v += p[i] * p[j];
        return v;
    };
    Rng rng(seed);
    std::vector<double> best_p(vertices, 1.0 / vertices);
    double best = quad(best_p);
    if (!edges.empty()) {
        for (size_t start = 0; start < 64; start++) {
            std::vector<double> p(vertices, 1.0 / vertices);
            if (start > 0) {
                double total = 0;
                for (auto &x : p) total += x = -std::log(1 - rng.uniform());
                for (auto &x : p) x /= total;
            }
            // Replicator dynamics: monotone in p^T A p for symmetric nonnegative A.
            for (int it = 0; it < 20000; it++) {
                double f = quad(p);
                if (f <= 0) break;
                std::vector<double> np(vertices);
                double change = 0;
                for (size_t i = 0; i < vertices; i++) {
                    double ap = 0;
                    for (size_t j = 0; j < vertices; j++)
                        if ((adj[i] >> j) & 1) ap += p[j];
                    np[i] = p[i] * ap / f;
                    change = std::max(change, std::abs(np[i] - p[i]));
                }
                p = np;
                if (change < 1e-15) break;
            }
            double f = quad(p);
            if (f > best) {
                best = f;
                best_p = p;
            }
        }
    }
    out.optimization_value = best;
    out.optimizer = best_p;

    size_t n2 = vertices * vertices;
    ComplexMatrix m(n2, n2);
    for (auto [i, j] : edges) {
        m(i * vertices + j, i * vertices + j) = 1.0;
    }
    ComplexVector phi(vertices);
    for (size_t i = 0; i < vertices; i++) phi[i] = std::sqrt(std::max(0.0, best_p[i]));
    ComplexVector pp = kron(phi, phi);
    out.product_state_value = expectation(m, pp).real();
    out.h_sep_lower = edges.empty() ? 0.0 : h_sep_sampled(m, {vertices, vertices}, 20, seed);
    return out;
}

DataHidingReport data_hiding_bias(size_t d) {
    if (d < 2) {
        throw DomainError("data hiding needs d >= 2");
    }
    double dd = static_cast<double>(d);
    DataHidingReport out{};
    out.d = d;
    // (W+ - W-)^{T_A} = 2/(d(d^2-1)) I - 2d/(d^2-1) Phi+: eigenvalue -2/d once and
    // 2/(d(d^2-1)) on the d^2 - 1 dimensional complement.
    double neg = -2 / dd;
    double pos = 2 / (dd * (dd * dd - 1));
    out.ppt_norm_value = 0.5 * (std::abs(neg) + (dd * dd - 1) * pos);
    out.ppt_measurement_bias = 2 / (dd + 1);
    out.local_bound = 1 / dd;
    out.bound_holds = out.ppt_norm_value <= out.local_bound + 1e-12;
    out.global_distance = 1;
    if (d <= 8) {
        ComplexMatrix diff = rho_sym(d).matrix() - rho_anti(d).matrix();
        out.ppt_norm_numeric = 0.5 * trace_norm(partial_transpose(diff, {d, d}, {0}));
        out.global_distance = 0.5 * trace_norm(diff);
    }
    return out;
}

BcyReport bcy_inequality_check(const DensityMatrix &rho, const std::vector<ComplexMatrix> &a_ops,
                               const std::vector<ComplexMatrix> &b_ops, size_t k, size_t samples, uint64_t seed) {
    if (k == 0) {
        throw DomainError("k must be at least 1");
    }
    if (rho.dims().size() != 2) {
        throw DimensionError("expected a bipartite state");
    }
    size_t da = rho.dims()[0], db = rho.dims()[1];
    if (a_ops.empty() || a_ops.size() != b_ops.size()) {
        throw DomainError("measurement needs matching nonempty {A_x} and {B_x}");
    }
    ComplexMatrix bsum(db, db);
    ComplexMatrix mprime(da * db, da * db);
    for (size_t x = 0; x < a_ops.size(); x++) {
        const auto &a = a_ops[x];
        const auto &b = b_ops[x];
        if (a.rows() != da || !a.is_square() || b.rows() != db || !b.is_square()) {
            throw DimensionError("measurement operator has the wrong dimension");
        }
        auto sa = hermitian_eigenvalues(a);
        if (sa.back() < -1e-9 || sa.front() > 1 + 1e-9) {
            throw DomainError("each A_x must satisfy 0 <= A_x <= I");
        }
        check_psd(b, "B_x");
        bsum += b;
        mprime += tensor(a, b);
    }
    if ((bsum - ComplexMatrix::identity(db)).max_abs() > 1e-9) {
        throw DomainError("the B_x must sum to the identity");
    }
    double target = trace_of_product(mprime, rho.matrix()).real();
    double lhs = std::numeric_limits<double>::infinity();
    auto consider = [&](const ComplexMatrix &sigma) {
        lhs = std::min(lhs, std::abs(target - trace_of_product(mprime, sigma).real()));
    };
    ComplexMatrix ra = partial_trace(rho.matrix(), {da, db}, {0});
    ComplexMatrix rb = partial_trace(rho.matrix(), {da, db}, {1});
    consider(tensor(ra, rb));
    // Measure B in the eigenbasis of each B_x and prepare the outcome.
    for (const auto &b : b_ops) {
        auto eig = hermitian_eig(b);
        ComplexMatrix sigma(da * db, da * db);
        for (size_t i = 0; i < db; i++) {
            ComplexMatrix pb = ComplexMatrix::projector(eig.vectors.col(i));
            ComplexMatrix cond = partial_trace(tensor(ComplexMatrix::identity(da), pb) * rho.matrix(), {da, db}, {0});
            sigma += tensor(cond, pb);
        }
        consider(sigma);
    }
    Rng rng(seed);
    for (size_t s = 0; s < samples; s++) {
        consider(sample_separable(da, db, 1 + s % 4, rng).matrix());
    }
    // tr M' sigma over Sep fills [-h(-M'), h(M')]; sampled ascent gives an inner interval.
    double hi = product_ascent(mprime, da, db, 10, seed);
    double lo = -product_ascent(mprime * Complex(-1), da, db, 10, mix_seed(seed, 1));
    lhs = std::min(lhs, std::max({0.0, target - hi, lo - target}));
    double rhs = std::sqrt(2 * std::log(2.0) * std::log2(static_cast<double>(da)) / k);
    return {lhs, rhs, lhs <= rhs};
}

ExtendibleInstance random_extendible_state(size_t da, size_t db, size_t k, uint64_t seed) {
    Rng rng(seed);
    ComplexMatrix proj = tensor(ComplexMatrix::identity(da), sym_projector(db, k).matrix);
    ComplexVector v = proj * haar_state(proj.rows(), rng);
    Dims dims(k + 1, db);
    dims[0] = da;
    PureState ext = PureState::normalize(v, dims);
    ComplexMatrix rho = k == 1 ? ext.density() : partial_trace(ext.density(), dims, {0, 1});
    return {DensityMatrix(rho, {da, db}), ext};
}

}  // namespace qinfo
