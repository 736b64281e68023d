#include "qinfo/schur_weyl.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "qinfo/entropy.hpp"
#include "qinfo/errors.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

namespace {

size_t checked_power(size_t d, size_t n, size_t cap) {
    if (d == 0 || n == 0) {
        throw DimensionError("need d >= 1 and n >= 1");
    }
    size_t dim = 1;
    for (size_t i = 0; i < n; i++) {
        if (dim > cap / d) {
            throw SizeCapError("d^n exceeds the size cap");
        }
        dim *= d;
    }
    return dim;
}

std::vector<std::vector<size_t>> indices_by_type(size_t d, size_t n, size_t dim) {
    std::map<std::vector<size_t>, size_t> ids;
    std::vector<std::vector<size_t>> groups;
    std::vector<size_t> counts(d);
    for (size_t x = 0; x < dim; x++) {
        std::fill(counts.begin(), counts.end(), 0);
        size_t rest = x;
        for (size_t i = 0; i < n; i++) {
            counts[rest % d]++;
            rest /= d;
        }
        auto [it, fresh] = ids.emplace(counts, groups.size());
        if (fresh) {
            groups.emplace_back();
        }
        groups[it->second].push_back(x);
    }
    return groups;
}

}  // namespace

BigInt binomial(uint64_t n, uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (uint64_t i = 1; i <= k; i++) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

SymmetricProjector sym_projector(size_t d, size_t n, size_t cap) {
    size_t dim = checked_power(d, n, cap);
    auto groups = indices_by_type(d, n, dim);
    ComplexMatrix p(dim, dim);
    // Each type vector |gamma_t> has equal amplitude 1/sqrt(|t|) on its strings.
    for (const auto &g : groups) {
        double w = 1.0 / static_cast<double>(g.size());
        for (size_t x : g) {
            for (size_t y : g) {
                p(x, y) = w;
            }
        }
    }
    return {d, n, p, groups.size()};
}

HaarMomentCheck haar_moment_identity_check(size_t d, size_t n, size_t samples, uint64_t seed, size_t cap) {
    if (samples == 0) {
        throw DomainError("need at least one sample");
    }
    size_t dim = checked_power(d, n, cap);
    auto sym = sym_projector(d, n, cap);
    double norm_const = static_cast<double>(sym.dimension);
    std::vector<Complex> sum(dim * dim);
    std::vector<double> sum_sq(dim * dim);
    Rng rng(seed);
    for (size_t s = 0; s < samples; s++) {
        ComplexVector v = tensor_power(haar_state(d, rng), n, cap);
        for (size_t x = 0; x < dim; x++) {
            for (size_t y = 0; y < dim; y++) {
                Complex z = v[x] * std::conj(v[y]);
                sum[x * dim + y] += z;
                sum_sq[x * dim + y] += std::norm(z);
            }
        }
    }
    HaarMomentCheck out{0, 0, samples};
    double ns = static_cast<double>(samples);
    for (size_t x = 0; x < dim; x++) {
        for (size_t y = 0; y < dim; y++) {
            Complex mean = sum[x * dim + y] / ns;
            double var = std::max(0.0, sum_sq[x * dim + y] / ns - std::norm(mean));
            out.max_deviation = std::max(out.max_deviation, std::abs(mean - sym.matrix(x, y) / norm_const));
            out.standard_error = std::max(out.standard_error, std::sqrt(var / ns));
        }
    }
    return out;
}

std::pair<BigInt, BigInt> estimation_overlap_exact(size_t d, size_t n, size_t k) {
    if (d == 0 || n == 0) {
        throw DomainError("estimation overlap needs d >= 1 and n >= 1");
    }
    return {binomial(n + d - 1, n), binomial(n + k + d - 1, n + k)};
}

double estimation_overlap(size_t d, size_t n, size_t k) {
    auto [num, den] = estimation_overlap_exact(d, n, k);
    // Both fit comfortably in long double range for the sizes used here.
    boost::multiprecision::cpp_int g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

bool estimation_overlap_bound_holds(size_t d, size_t n, size_t k) {
    auto [num, den] = estimation_overlap_exact(d, n, k);
    // num/den >= 1 - dk/n  <=>  n*num >= (n - dk)*den
    BigInt lhs = BigInt(n) * num;
    BigInt rhs = (BigInt(n) - BigInt(d) * k) * den;
    return lhs >= rhs;
}

double definetti_error_bound(size_t d, size_t n, size_t k) {
    return 2 * std::sqrt(std::max(0.0, 1 - estimation_overlap(d, n, k)));
}

DeFinettiQuadrature definetti_quadrature_check(const PureState &psi, size_t n, size_t k) {
    size_t total = n + k;
    if (n == 0 || k == 0) {
        throw DomainError("need n >= 1 and k >= 1");
    }
    if (psi.dims() != Dims(total, 2)) {
        throw DimensionError("state must live on n + k qubits");
    }
    for (size_t i = 0; i + 1 < total; i++) {
        std::vector<size_t> pi(total);
        for (size_t s = 0; s < total; s++) pi[s] = s;
        std::swap(pi[i], pi[i + 1]);
        ComplexVector moved = apply_permutation(psi.amplitudes(), 2, total, pi);
        double diff = 0;
        for (size_t x = 0; x < moved.size(); x++) diff = std::max(diff, std::abs(moved[x] - psi.amplitudes()[x]));
        if (diff > 1e-9) {
            throw DomainError("state is not in the symmetric subspace");
        }
    }
    // Polynomials of degree <= total in cos(theta) and trigonometric degree <= total in phi.
    int gl = static_cast<int>(total) + 2;
    std::vector<double> nodes, weights;
    for (double z : boost::math::legendre_p_zeros<double>(gl)) {
        double dp = boost::math::legendre_p_prime(gl, z);
        double w = 2 / ((1 - z * z) * dp * dp);
        nodes.push_back(z);
        weights.push_back(w);
        if (z != 0) {
            nodes.push_back(-z);
            weights.push_back(w);
        }
    }
    size_t m_phi = 2 * total + 3;
    size_t dn = size_t{1} << n, dk = size_t{1} << k;
    double c_n = static_cast<double>(n + 1);
    ComplexMatrix approx(dk, dk);
    double fidelity = 0;
    const auto &amp = psi.amplitudes();
    for (size_t i = 0; i < nodes.size(); i++) {
        double u = nodes[i];
        double ct = std::sqrt((1 + u) / 2), st = std::sqrt(std::max(0.0, (1 - u) / 2));
        for (size_t j = 0; j < m_phi; j++) {
            double phi = 2 * M_PI * j / m_phi;
            double w = weights[i] / (2.0 * m_phi);
            ComplexVector f{ct, std::polar(st, phi)};
            ComplexVector fn = tensor_power(f, n);
            ComplexVector fk = tensor_power(f, k);
            ComplexVector v(dk);
            for (size_t a = 0; a < dn; a++) {
                Complex ca = std::conj(fn[a]);
                for (size_t b = 0; b < dk; b++) {
                    v[b] += ca * amp[a * dk + b];
                }
            }
            double nv = norm(v);
            double p = c_n * nv * nv;
            approx += ComplexMatrix::projector(fk) * Complex(w * p);
            fidelity += w * c_n * std::norm(inner(fk, v));
        }
    }
    std::vector<size_t> keep;
    for (size_t s = n; s < total; s++) keep.push_back(s);
    ComplexMatrix reduced = partial_trace(psi.density(), psi.dims(), keep);
    return {trace_norm(reduced - approx), fidelity, 2 * std::sqrt(std::max(0.0, 1 - fidelity))};
}

PureState symmetric_purification(const DensityMatrix &rho, size_t d, size_t n) {
    size_t dim = checked_power(d, n, kDefaultSizeCap);
    if (rho.dim() != dim) {
        throw DimensionError("state dimension is not d^n");
    }
    for (size_t i = 0; i + 1 < n; i++) {
        std::vector<size_t> pi(n);
        for (size_t s = 0; s < n; s++) pi[s] = s;
        std::swap(pi[i], pi[i + 1]);
        ComplexMatrix p = permutation_operator(d, n, pi);
        if ((p * rho.matrix() * p.adjoint() - rho.matrix()).max_abs() > 1e-8) {
            throw DomainError("state is not permutation invariant");
        }
    }
    ComplexMatrix root = psd_sqrt(rho.matrix());
    ComplexVector psi(dim * dim);
    for (size_t x = 0; x < dim; x++) {
        for (size_t y = 0; y < dim; y++) {
            psi[x * dim + y] = root(x, y);
        }
    }
    return PureState::normalize(psi, Dims(2 * n, d));
}

namespace {

void check_spin(size_t n, size_t twice_j) {
    if (n == 0 || twice_j > n || (n - twice_j) % 2 != 0) {
        throw DomainError("invalid (n, j) pair");
    }
}

}  // namespace

uint64_t spin_multiplicity(size_t n, size_t twice_j) {
    check_spin(n, twice_j);
    if (n > 64) {
        throw SizeCapError("exact multiplicities are limited to n <= 64");
    }
    size_t a = (n - twice_j) / 2;
    BigInt m = binomial(n, a) - (a == 0 ? BigInt(0) : binomial(n, a - 1));
    return static_cast<uint64_t>(m);
}

uint64_t spin_multiplicity_recursive(size_t n, size_t twice_j) {
    check_spin(n, twice_j);
    if (n > 64) {
        throw SizeCapError("exact multiplicities are limited to n <= 64");
    }
    std::vector<uint64_t> m(n + 2, 0);
    m[1] = 1;
    for (size_t step = 1; step < n; step++) {
        std::vector<uint64_t> next(n + 2, 0);
        for (size_t t = 0; t <= step + 1; t++) {
            uint64_t v = m[t + 1];
            if (t >= 1) v += m[t - 1];
            next[t] = v;
        }
        m = next;
    }
    return m[twice_j];
}

double log2_spin_multiplicity(size_t n, size_t twice_j) {
    check_spin(n, twice_j);
    double a = (n - twice_j) / 2.0;
    double lc = (std::lgamma(n + 1.0) - std::lgamma(a + 1) - std::lgamma(n - a + 1)) / std::log(2.0);
    // m = C(n, a) (n - 2a + 1) / (n - a + 1)
    return lc + std::log2((n - 2 * a + 1) / (n - a + 1));
}

std::vector<size_t> spin_values(size_t n) {
    std::vector<size_t> out;
    for (size_t t = n + 2; t-- > 0;) {
        if (t <= n && (n - t) % 2 == 0) out.push_back(t);
    }
    return out;
}

SpinDecomposition spin_projectors(size_t n) {
    if (n == 0 || n > 12) {
        throw SizeCapError("spin projectors are built for 1 <= n <= 12");
    }
    size_t dim = size_t{1} << n;
    std::map<size_t, std::vector<ComplexVector>> vectors;
    for (size_t w = 0; w <= n; w++) {
        std::vector<size_t> basis;
        std::vector<size_t> pos(dim, 0);
        for (size_t x = 0; x < dim; x++) {
            if (static_cast<size_t>(__builtin_popcountll(x)) == w) {
                pos[x] = basis.size();
                basis.push_back(x);
            }
        }
        // J^2 = 3n/4 + sum_{i<j} (F_ij - 1/2) inside the weight-w sector.
        size_t s = basis.size();
        ComplexMatrix j2(s, s);
        double base = 0.75 * n - 0.25 * n * (n - 1.0);
        for (size_t a = 0; a < s; a++) {
            size_t x = basis[a];
            j2(a, a) += base;
            for (size_t i = 0; i < n; i++) {
                for (size_t k = i + 1; k < n; k++) {
                    size_t bi = (x >> i) & 1, bk = (x >> k) & 1;
                    if (bi == bk) {
                        j2(a, a) += 1.0;
                    } else {
                        size_t y = x ^ ((size_t{1} << i) | (size_t{1} << k));
                        j2(pos[y], a) += 1.0;
                    }
                }
            }
        }
        auto eig = hermitian_eig(j2);
        for (size_t c = 0; c < s; c++) {
            double lam = eig.values[c];
            double jj = (-1 + std::sqrt(std::max(0.0, 1 + 4 * lam))) / 2;
            long twice = std::lround(2 * jj);
            double jr = twice / 2.0;
            if (twice < 0 || std::abs(lam - jr * (jr + 1)) > 1e-7) {
                throw ConvergenceError("J^2 eigenvalue does not cluster at j(j+1)");
            }
            ComplexVector v(dim);
            for (size_t a = 0; a < s; a++) {
                v[basis[a]] = eig.vectors(a, c);
            }
            vectors[static_cast<size_t>(twice)].push_back(std::move(v));
        }
    }
    SpinDecomposition out{n, {}};
    for (auto it = vectors.rbegin(); it != vectors.rend(); ++it) {
        size_t twice_j = it->first;
        ComplexMatrix p(dim, dim);
        for (const auto &v : it->second) {
            for (size_t r = 0; r < dim; r++) {
                if (v[r] == Complex(0)) continue;
                Complex *row = p.row_data(r);
                for (size_t c = 0; c < dim; c++) {
                    row[c] += v[r] * std::conj(v[c]);
                }
            }
        }
        uint64_t mult = n <= 64 ? spin_multiplicity(n, twice_j) : 0;
        if (it->second.size() != (twice_j + 1) * mult) {
            throw ConvergenceError("spin block rank disagrees with (2j+1) m_j");
        }
        out.blocks.push_back({twice_j, mult, std::move(p), it->second.size()});
    }
    return out;
}

namespace {

void check_r(double r) {
    if (!(r >= 0 && r <= 0.5)) {
        throw DomainError("r must lie in [0, 1/2]");
    }
}

}  // namespace

std::vector<SpinProbability> spectrum_estimation_distribution(double r, size_t n) {
    check_r(r);
    if (n == 0) {
        throw DomainError("need n >= 1");
    }
    double p = 0.5 + r, q = 0.5 - r;
    std::vector<SpinProbability> out;
    for (size_t t : spin_values(n)) {
        size_t a = (n - t) / 2;
        if (q == 0 && a > 0) {
            out.push_back({t, 0.0});
            continue;
        }
        // sum_{s=0}^{2j} p^s q^{2j-s} = p^{2j} sum_l (q/p)^l
        double rho = q / p;
        double geo = rho == 1 ? t + 1.0 : (1 - std::pow(rho, t + 1.0)) / (1 - rho);
        double lg = log2_spin_multiplicity(n, t) + (a > 0 ? a * (std::log2(p) + std::log2(q)) : 0.0) +
                    t * std::log2(p) + std::log2(geo);
        out.push_back({t, std::exp2(lg)});
    }
    return out;
}

double keyl_werner_bound(double r, size_t n, size_t twice_j) {
    check_r(r);
    check_spin(n, twice_j);
    if (r == 0) {
        return std::numeric_limits<double>::infinity();
    }
    double x = 0.5 + twice_j / (2.0 * n);
    double delta = binary_relative_entropy(x, 0.5 + r);
    double c = (0.5 + r) / (2 * r);
    return std::isinf(delta) ? 0.0 : c * std::exp2(-static_cast<double>(n) * delta);
}

KeylWernerTail keyl_werner_tail(double r, size_t n, double eps) {
    KeylWernerTail out{eps, 0, 0};
    for (const auto &sp : spectrum_estimation_distribution(r, n)) {
        double jn = sp.twice_j / (2.0 * n);
        if (std::abs(jn - r) > eps) {
            out.probability += sp.probability;
            out.bound += keyl_werner_bound(r, n, sp.twice_j);
        }
    }
    return out;
}

std::vector<size_t> sample_spin_outcomes(double r, size_t n, size_t count, uint64_t seed) {
    auto dist = spectrum_estimation_distribution(r, n);
    std::vector<double> w;
    for (const auto &sp : dist) w.push_back(sp.probability);
    std::discrete_distribution<size_t> pick(w.begin(), w.end());
    Rng rng(seed);
    std::vector<size_t> out;
    for (size_t i = 0; i < count; i++) {
        out.push_back(dist[pick(rng.engine())].twice_j);
    }
    return out;
}

KeylWernerEstimate keyl_werner_estimate(const std::vector<size_t> &twice_j_samples, size_t n,
                                        std::optional<double> reference_r) {
    if (twice_j_samples.empty()) {
        throw DomainError("need at least one sample");
    }
    double sum = 0, sum_sq = 0;
    for (size_t t : twice_j_samples) {
        check_spin(n, t);
        double x = t / (2.0 * n);
        sum += x;
        sum_sq += x * x;
    }
    double cnt = static_cast<double>(twice_j_samples.size());
    double mean = sum / cnt;
    double var = cnt > 1 ? std::max(0.0, (sum_sq - cnt * mean * mean) / (cnt - 1)) : 0.0;
    KeylWernerEstimate out{mean, std::sqrt(var / cnt), twice_j_samples.size(), std::nullopt};
    if (reference_r) {
        out.tail = keyl_werner_tail(*reference_r, n, std::abs(mean - *reference_r));
    }
    return out;
}

}  // namespace qinfo
