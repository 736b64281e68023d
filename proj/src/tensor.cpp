#include "qinfo/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qinfo/errors.hpp"

namespace qinfo {

namespace {

constexpr double kHermitianTolerance = 1e-9;
constexpr double kJacobiRelativeTolerance = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

std::vector<size_t> strides_of(const Dims &dims) {
    std::vector<size_t> s(dims.size());
    size_t acc = 1;
    for (size_t i = dims.size(); i-- > 0;) {
        s[i] = acc;
        acc *= dims[i];
    }
    return s;
}

void check_subsystem_list(const std::vector<size_t> &systems, size_t count) {
    std::vector<bool> seen(count, false);
    for (size_t s : systems) {
        if (s >= count) {
            throw DimensionError("subsystem index " + std::to_string(s) + " out of range");
        }
        if (seen[s]) {
            throw DimensionError("subsystem index " + std::to_string(s) + " repeated");
        }
        seen[s] = true;
    }
}

// Maps each full index to its position inside the given ordered list of subsystems.
std::vector<size_t> sub_index_table(const Dims &dims, const std::vector<size_t> &systems) {
    size_t total = total_dim(dims);
    auto strides = strides_of(dims);
    std::vector<size_t> table(total);
    for (size_t x = 0; x < total; x++) {
        size_t idx = 0;
        for (size_t s : systems) {
            idx = idx * dims[s] + (x / strides[s]) % dims[s];
        }
        table[x] = idx;
    }
    return table;
}

}  // namespace

size_t total_dim(const Dims &dims) {
    size_t t = 1;
    for (size_t d : dims) {
        t *= d;
    }
    return t;
}

void check_dims(const Dims &dims, size_t expected) {
    if (dims.empty()) {
        throw DimensionError("empty dimension list");
    }
    for (size_t d : dims) {
        if (d == 0) {
            throw DimensionError("subsystem dimension must be positive");
        }
    }
    if (total_dim(dims) != expected) {
        throw DimensionError(
            "subsystem dimensions multiply to " + std::to_string(total_dim(dims)) + ", expected " +
            std::to_string(expected));
    }
}

void check_size_cap(size_t dim, size_t cap) {
    if (dim > cap) {
        throw SizeCapError("dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    }
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b, size_t cap) {
    check_size_cap(a.rows() * b.rows(), cap);
    check_size_cap(a.cols() * b.cols(), cap);
    return kron(a, b);
}

ComplexMatrix tensor(const std::vector<ComplexMatrix> &factors, size_t cap) {
    if (factors.empty()) {
        throw DimensionError("tensor product of no factors");
    }
    size_t r = 1, c = 1;
    for (const auto &f : factors) {
        r *= f.rows();
        c *= f.cols();
    }
    check_size_cap(r, cap);
    check_size_cap(c, cap);
    ComplexMatrix out = factors[0];
    for (size_t i = 1; i < factors.size(); i++) {
        out = kron(out, factors[i]);
    }
    return out;
}

ComplexVector tensor(const std::vector<ComplexVector> &factors, size_t cap) {
    if (factors.empty()) {
        throw DimensionError("tensor product of no factors");
    }
    size_t n = 1;
    for (const auto &f : factors) {
        n *= f.size();
    }
    check_size_cap(n, cap);
    ComplexVector out = factors[0];
    for (size_t i = 1; i < factors.size(); i++) {
        out = kron(out, factors[i]);
    }
    return out;
}

ComplexMatrix tensor_power(const ComplexMatrix &m, size_t n, size_t cap) {
    return tensor(std::vector<ComplexMatrix>(n, m), cap);
}

ComplexVector tensor_power(const ComplexVector &v, size_t n, size_t cap) {
    return tensor(std::vector<ComplexVector>(n, v), cap);
}

Dims kept_dims(const Dims &dims, const std::vector<size_t> &keep) {
    check_subsystem_list(keep, dims.size());
    std::vector<size_t> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    Dims out;
    for (size_t s : sorted) {
        out.push_back(dims[s]);
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const Dims &dims, const std::vector<size_t> &keep) {
    if (!m.is_square()) {
        throw DimensionError("partial trace of a non-square matrix");
    }
    check_dims(dims, m.rows());
    check_subsystem_list(keep, dims.size());
    std::vector<size_t> kept = keep;
    std::sort(kept.begin(), kept.end());
    std::vector<size_t> traced;
    for (size_t s = 0; s < dims.size(); s++) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) {
            traced.push_back(s);
        }
    }
    size_t dk = 1, dt = 1;
    for (size_t s : kept) dk *= dims[s];
    for (size_t s : traced) dt *= dims[s];

    auto kidx = sub_index_table(dims, kept);
    auto tidx = sub_index_table(dims, traced);
    // groups[t][k] = full index with traced part t and kept part k
    std::vector<size_t> groups(dt * dk);
    for (size_t x = 0; x < m.rows(); x++) {
        groups[tidx[x] * dk + kidx[x]] = x;
    }
    ComplexMatrix out(dk, dk);
    for (size_t t = 0; t < dt; t++) {
        const size_t *g = &groups[t * dk];
        for (size_t i = 0; i < dk; i++) {
            const Complex *row = m.row_data(g[i]);
            Complex *orow = out.row_data(i);
            for (size_t j = 0; j < dk; j++) {
                orow[j] += row[g[j]];
            }
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, const Dims &dims, const std::vector<size_t> &systems) {
    if (!m.is_square()) {
        throw DimensionError("partial transpose of a non-square matrix");
    }
    check_dims(dims, m.rows());
    check_subsystem_list(systems, dims.size());
    auto strides = strides_of(dims);
    size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (size_t x = 0; x < n; x++) {
        for (size_t y = 0; y < n; y++) {
            size_t nx = x, ny = y;
            for (size_t s : systems) {
                size_t dx = (x / strides[s]) % dims[s];
                size_t dy = (y / strides[s]) % dims[s];
                nx = nx - dx * strides[s] + dy * strides[s];
                ny = ny - dy * strides[s] + dx * strides[s];
            }
            out(nx, ny) = m(x, y);
        }
    }
    return out;
}

namespace {

std::vector<size_t> permuted_index_table(const Dims &dims, const std::vector<size_t> &order) {
    if (order.size() != dims.size()) {
        throw DimensionError("system order has the wrong length");
    }
    check_subsystem_list(order, dims.size());
    return sub_index_table(dims, order);
}

}  // namespace

ComplexMatrix permute_systems(const ComplexMatrix &m, const Dims &dims, const std::vector<size_t> &order) {
    if (!m.is_square()) {
        throw DimensionError("system permutation of a non-square matrix");
    }
    check_dims(dims, m.rows());
    auto table = permuted_index_table(dims, order);
    size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (size_t x = 0; x < n; x++) {
        for (size_t y = 0; y < n; y++) {
            out(table[x], table[y]) = m(x, y);
        }
    }
    return out;
}

ComplexVector permute_systems(const ComplexVector &v, const Dims &dims, const std::vector<size_t> &order) {
    check_dims(dims, v.size());
    auto table = permuted_index_table(dims, order);
    ComplexVector out(v.size());
    for (size_t x = 0; x < v.size(); x++) {
        out[table[x]] = v[x];
    }
    return out;
}

void check_permutation(const std::vector<size_t> &pi, size_t n) {
    if (pi.size() != n) {
        throw DomainError("permutation has the wrong length");
    }
    std::vector<bool> seen(n, false);
    for (size_t p : pi) {
        if (p >= n || seen[p]) {
            throw DomainError("not a permutation");
        }
        seen[p] = true;
    }
}

namespace {

// image[x] = index of P(pi)|x>
std::vector<size_t> permutation_images(size_t d, size_t n, const std::vector<size_t> &pi) {
    check_permutation(pi, n);
    Dims dims(n, d);
    // Output slot pi[i] holds input slot i, so output slot k holds input slot pi^{-1}(k).
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; i++) {
        order[pi[i]] = i;
    }
    return sub_index_table(dims, order);
}

}  // namespace

ComplexMatrix permutation_operator(size_t d, size_t n, const std::vector<size_t> &pi, size_t cap) {
    if (d == 0 || n == 0) {
        throw DimensionError("permutation operator needs d >= 1 and n >= 1");
    }
    size_t dim = 1;
    for (size_t i = 0; i < n; i++) {
        if (dim > cap / d + 1) {
            throw SizeCapError("permutation operator exceeds size cap");
        }
        dim *= d;
    }
    check_size_cap(dim, cap);
    auto image = permutation_images(d, n, pi);
    ComplexMatrix out(dim, dim);
    for (size_t x = 0; x < dim; x++) {
        out(image[x], x) = 1.0;
    }
    return out;
}

ComplexVector apply_permutation(const ComplexVector &v, size_t d, size_t n, const std::vector<size_t> &pi) {
    check_dims(Dims(n, d), v.size());
    auto image = permutation_images(d, n, pi);
    ComplexVector out(v.size());
    for (size_t x = 0; x < v.size(); x++) {
        out[image[x]] = v[x];
    }
    return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("eigendecomposition of a non-square matrix");
    }
    if (m.hermiticity_defect() > kHermitianTolerance) {
        throw DomainError("matrix is not Hermitian");
    }
    size_t n = m.rows();
    ComplexMatrix a(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    double scale = a.frobenius_norm();
    double target = kJacobiRelativeTolerance * scale;
    double negligible = 1e-17 * scale;

    for (int sweep = 0; sweep < kJacobiMaxSweeps && scale > 0; sweep++) {
        double off = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                off += 2 * std::norm(a(p, q));
            }
        }
        if (std::sqrt(off) <= target) {
            break;
        }
        bool rotated = false;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                Complex apq = a(p, q);
                double b = std::abs(apq);
                if (b <= negligible) {
                    a(p, q) = 0;
                    a(q, p) = 0;
                    continue;
                }
                rotated = true;
                Complex phase = std::conj(apq) / b;  // e^{-i alpha}
                double app = a(p, p).real();
                double aqq = a(q, q).real();
                double theta = (aqq - app) / (2 * b);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                Complex u00 = c, u01 = s, u10 = -s * phase, u11 = c * phase;
                for (size_t r = 0; r < n; r++) {
                    Complex xp = a(r, p), xq = a(r, q);
                    a(r, p) = xp * u00 + xq * u10;
                    a(r, q) = xp * u01 + xq * u11;
                }
                Complex *rp = a.row_data(p);
                Complex *rq = a.row_data(q);
                for (size_t col = 0; col < n; col++) {
                    Complex xp = rp[col], xq = rq[col];
                    rp[col] = std::conj(u00) * xp + std::conj(u10) * xq;
                    rq[col] = std::conj(u01) * xp + std::conj(u11) * xq;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = app - t * b;
                a(q, q) = aqq + t * b;
                for (size_t r = 0; r < n; r++) {
                    Complex xp = v(r, p), xq = v(r, q);
                    v(r, p) = xp * u00 + xq * u10;
                    v(r, q) = xp * u01 + xq * u11;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) { return a(i, i).real() > a(j, j).real(); });
    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (size_t k = 0; k < n; k++) {
        out.values[k] = a(order[k], order[k]).real();
        for (size_t r = 0; r < n; r++) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &m) {
    return hermitian_eig(m).values;
}

ComplexMatrix spectral_apply(const EigenDecomposition &eig, const std::function<double(double)> &f) {
    size_t n = eig.values.size();
    ComplexMatrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        double fk = f(eig.values[k]);
        if (fk == 0) {
            continue;
        }
        for (size_t r = 0; r < n; r++) {
            Complex vr = eig.vectors(r, k) * fk;
            for (size_t c = 0; c < n; c++) {
                out(r, c) += vr * std::conj(eig.vectors(c, k));
            }
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    auto eig = hermitian_eig(m);
    for (double x : eig.values) {
        if (x < -kHermitianTolerance) {
            throw DomainError("square root of a matrix with a negative eigenvalue");
        }
    }
    return spectral_apply(eig, [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix matrix_exp(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw DimensionError("exponential of a non-square matrix");
    }
    double nrm = 0;
    for (size_t r = 0; r < m.rows(); r++) {
        double row = 0;
        for (size_t c = 0; c < m.cols(); c++) {
            row += std::abs(m(r, c));
        }
        nrm = std::max(nrm, row);
    }
    int squarings = 0;
    if (nrm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    }
    ComplexMatrix x = m * Complex(std::ldexp(1.0, -squarings));
    size_t n = m.rows();
    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 12; k++) {
        term = (term * x) * Complex(1.0 / k);
        result += term;
    }
    for (int i = 0; i < squarings; i++) {
        result = result * result;
    }
    return result;
}

double trace_norm(const ComplexMatrix &m) {
    if (m.is_square() && m.hermiticity_defect() <= kHermitianTolerance) {
        double s = 0;
        for (double x : hermitian_eigenvalues(m)) {
            s += std::abs(x);
        }
        return s;
    }
    double s = 0;
    for (double x : hermitian_eigenvalues(m.adjoint() * m)) {
        s += std::sqrt(std::max(x, 0.0));
    }
    return s;
}

double trace_distance(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    return 0.5 * trace_norm(rho - sigma);
}

double operator_norm(const ComplexMatrix &m) {
    if (m.is_square() && m.hermiticity_defect() <= kHermitianTolerance) {
        auto ev = hermitian_eigenvalues(m);
        return std::max(std::abs(ev.front()), std::abs(ev.back()));
    }
    auto ev = hermitian_eigenvalues(m.adjoint() * m);
    return std::sqrt(std::max(ev.front(), 0.0));
}

}  // namespace qinfo

namespace qinfo {

ComplexVector apply_on_subsystem(const ComplexVector &v, const Dims &dims, size_t subsystem, const ComplexMatrix &op) {
    check_dims(dims, v.size());
    if (subsystem >= dims.size()) {
        throw DimensionError("subsystem index out of range");
    }
    if (op.cols() != dims[subsystem]) {
        throw DimensionError("operator does not act on this subsystem");
    }
    size_t left = 1, right = 1;
    for (size_t s = 0; s < subsystem; s++) left *= dims[s];
    for (size_t s = subsystem + 1; s < dims.size(); s++) right *= dims[s];
    size_t din = op.cols(), dout = op.rows();
    ComplexVector out(left * dout * right);
    for (size_t l = 0; l < left; l++) {
        for (size_t o = 0; o < dout; o++) {
            for (size_t i = 0; i < din; i++) {
                Complex w = op(o, i);
                if (w == Complex(0)) continue;
                const Complex *src = &v[(l * din + i) * right];
                Complex *dst = &out[(l * dout + o) * right];
                for (size_t r = 0; r < right; r++) {
                    dst[r] += w * src[r];
                }
            }
        }
    }
    return out;
}

}  // namespace qinfo
