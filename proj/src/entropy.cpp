#include "qinfo/entropy.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "qinfo/errors.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

using boost::multiprecision::cpp_int;

namespace {

constexpr double kClip = 1e-9;
constexpr size_t kEnumerationCap = size_t{1} << 22;
constexpr size_t kTypeCap = 2'000'000;

double xlogx(double x) {
    return x > 0 ? x * std::log2(x) : 0.0;
}

// Every composition of n into k nonnegative parts, in lexicographic order.
std::vector<std::vector<size_t>> compositions(size_t n, size_t k) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur(k, 0);
    auto rec = [&](auto &&self, size_t pos, size_t left) -> void {
        if (out.size() > kTypeCap) {
            throw SizeCapError("too many types to enumerate");
        }
        if (pos + 1 == k) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (size_t c = 0; c <= left; c++) {
            cur[pos] = c;
            self(self, pos + 1, left - c);
        }
    };
    rec(rec, 0, n);
    return out;
}

cpp_int multinomial(const std::vector<size_t> &counts) {
    cpp_int m = 1;
    size_t total = 0;
    for (size_t c : counts) {
        for (size_t i = 1; i <= c; i++) {
            total++;
            m *= total;
            m /= i;
        }
    }
    return m;
}

double log2_big(const cpp_int &x) {
    if (x <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    size_t bits = boost::multiprecision::msb(x);
    if (bits < 1000) {
        return std::log2(static_cast<double>(x));
    }
    cpp_int top = x >> (bits - 60);
    return std::log2(static_cast<double>(top)) + static_cast<double>(bits - 60);
}

// log2 p^n of a string of the given type; -inf if it uses a zero-probability symbol.
double type_log_prob(const std::vector<size_t> &t, const std::vector<double> &p) {
    double s = 0;
    for (size_t x = 0; x < t.size(); x++) {
        if (t[x] == 0) continue;
        if (p[x] == 0) return -std::numeric_limits<double>::infinity();
        s += t[x] * std::log2(p[x]);
    }
    return s;
}

bool typical_log_prob(double log_prob, size_t n, double entropy, double delta) {
    if (!std::isfinite(log_prob)) {
        return false;
    }
    return std::abs(-log_prob / static_cast<double>(n) - entropy) <= delta + 1e-12;
}

std::vector<size_t> type_of(const std::vector<size_t> &x, size_t alphabet) {
    std::vector<size_t> t(alphabet, 0);
    for (size_t s : x) {
        if (s >= alphabet) {
            throw DomainError("symbol outside the alphabet");
        }
        t[s]++;
    }
    return t;
}

std::vector<size_t> sample_string(const Distribution &p, size_t n, Rng &rng) {
    std::discrete_distribution<size_t> dist(p.probs().begin(), p.probs().end());
    std::vector<size_t> x(n);
    for (auto &s : x) {
        s = dist(rng.engine());
    }
    return x;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) {
        throw DomainError("empty distribution");
    }
    double total = 0;
    for (double x : p_) {
        if (!(x >= 0) || !std::isfinite(x)) {
            throw DomainError("distribution entry negative or not finite");
        }
        total += x;
    }
    if (std::abs(total - 1) > 1e-10) {
        throw DomainError("distribution does not sum to 1");
    }
}

double shannon_entropy(const Distribution &p) {
    double h = 0;
    for (double x : p.probs()) {
        h -= xlogx(x);
    }
    return std::max(h, 0.0);
}

double spectrum_entropy(const std::vector<double> &spectrum) {
    double h = 0;
    for (double x : spectrum) {
        if (x < -kClip) {
            throw DomainError("spectrum has a negative entry " + std::to_string(x));
        }
        h -= xlogx(std::max(x, 0.0));
    }
    return std::max(h, 0.0);
}

double von_neumann_entropy(const DensityMatrix &rho) {
    return spectrum_entropy(hermitian_eigenvalues(rho.matrix()));
}

double von_neumann_entropy(const ComplexMatrix &rho) {
    return spectrum_entropy(hermitian_eigenvalues(rho));
}

InformationMeasures information_measures(const ComplexMatrix &rho, const Dims &dims, const std::vector<size_t> &a,
                                         const std::vector<size_t> &b, const std::vector<size_t> &c) {
    check_dims(dims, rho.rows());
    if (a.empty() || b.empty()) {
        throw DimensionError("parts A and B must be nonempty");
    }
    std::vector<size_t> all;
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    all.insert(all.end(), c.begin(), c.end());
    std::vector<size_t> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DimensionError("partition parts overlap");
    }
    for (size_t s : sorted) {
        if (s >= dims.size()) {
            throw DimensionError("partition refers to a missing subsystem");
        }
    }
    auto s_of = [&](std::vector<size_t> part) { return von_neumann_entropy(partial_trace(rho, dims, part)); };
    auto join = [](std::vector<size_t> x, const std::vector<size_t> &y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    };
    InformationMeasures m{};
    m.s_a = s_of(a);
    m.s_b = s_of(b);
    m.s_ab = s_of(join(a, b));
    m.s_a_given_b = m.s_ab - m.s_b;
    m.mutual_information = m.s_a + m.s_b - m.s_ab;
    if (!c.empty()) {
        double s_c = s_of(c);
        double s_ac = s_of(join(a, c));
        double s_bc = s_of(join(b, c));
        double s_abc = s_of(join(join(a, b), c));
        m.s_c = s_c;
        m.conditional_mutual_information = s_ac + s_bc - s_abc - s_c;
    }
    return m;
}

namespace {

void check_joint(const JointDistribution &pxy) {
    if (pxy.empty() || pxy.front().empty()) {
        throw DomainError("empty joint distribution");
    }
    double total = 0;
    for (const auto &row : pxy) {
        if (row.size() != pxy.front().size()) {
            throw DimensionError("ragged joint distribution");
        }
        for (double v : row) {
            if (!(v >= 0)) {
                throw DomainError("negative joint probability");
            }
            total += v;
        }
    }
    if (std::abs(total - 1) > 1e-10) {
        throw DomainError("joint distribution does not sum to 1");
    }
}

}  // namespace

double classical_mutual_information(const JointDistribution &pxy) {
    check_joint(pxy);
    std::vector<double> px(pxy.size(), 0), py(pxy.front().size(), 0);
    for (size_t x = 0; x < pxy.size(); x++) {
        for (size_t y = 0; y < py.size(); y++) {
            px[x] += pxy[x][y];
            py[y] += pxy[x][y];
        }
    }
    double i = 0;
    for (size_t x = 0; x < px.size(); x++) {
        for (size_t y = 0; y < py.size(); y++) {
            double v = pxy[x][y];
            if (v > 0) {
                i += v * std::log2(v / (px[x] * py[y]));
            }
        }
    }
    return std::max(i, 0.0);
}

double classical_conditional_entropy(const JointDistribution &pxy) {
    check_joint(pxy);
    std::vector<double> py(pxy.front().size(), 0);
    double hxy = 0;
    for (const auto &row : pxy) {
        for (size_t y = 0; y < row.size(); y++) {
            py[y] += row[y];
            hxy -= xlogx(row[y]);
        }
    }
    double hy = 0;
    for (double v : py) {
        hy -= xlogx(v);
    }
    return hxy - hy;
}

double binary_entropy(double x) {
    if (!(x >= 0 && x <= 1)) {
        throw DomainError("binary entropy argument outside [0, 1]");
    }
    return -xlogx(x) - xlogx(1 - x);
}

double binary_relative_entropy(double x, double y) {
    if (!(x >= 0 && x <= 1) || !(y >= 0 && y <= 1)) {
        throw DomainError("relative entropy arguments outside [0, 1]");
    }
    auto term = [](double a, double b) {
        if (a == 0) return 0.0;
        if (b == 0) return std::numeric_limits<double>::infinity();
        return a * std::log2(a / b);
    };
    return std::max(0.0, term(x, y) + term(1 - x, 1 - y));
}

bool TypicalSetReport::contains(const std::vector<size_t> &x) const {
    if (x.size() != n) {
        throw DimensionError("string length differs from n");
    }
    return typical_log_prob(type_log_prob(type_of(x, p.size()), p), n, entropy, delta);
}

TypicalSetReport typical_set(const Distribution &p, size_t n, double delta) {
    if (n == 0 || !(delta >= 0)) {
        throw DomainError("typical set needs n >= 1 and delta >= 0");
    }
    double strings = std::pow(static_cast<double>(p.size()), static_cast<double>(n));
    if (strings > static_cast<double>(kEnumerationCap)) {
        throw SizeCapError("alphabet^n exceeds the enumeration cap; use Monte Carlo mode");
    }
    TypicalSetReport r{p.probs(), shannon_entropy(p), n, delta, 0, 0, 0, true, std::nullopt};
    r.log_size_bound = n * (r.entropy + delta);
    // Strings of one type share a probability, so enumerating types is exact.
    cpp_int count = 0;
    double mass = 0;
    for (const auto &t : compositions(n, p.size())) {
        double lp = type_log_prob(t, p.probs());
        if (typical_log_prob(lp, n, r.entropy, delta)) {
            cpp_int m = multinomial(t);
            count += m;
            mass += std::exp2(log2_big(m) + lp);
        }
    }
    r.mass = std::min(mass, 1.0);
    r.log_size = log2_big(count);
    return r;
}

TypicalSetReport typical_set_monte_carlo(const Distribution &p, size_t n, double delta, size_t samples,
                                         uint64_t seed) {
    if (n == 0 || !(delta >= 0) || samples == 0) {
        throw DomainError("typical set needs n >= 1, delta >= 0 and samples >= 1");
    }
    TypicalSetReport r{p.probs(), shannon_entropy(p), n, delta, 0, 0, 0, false, std::nullopt};
    r.log_size_bound = n * (r.entropy + delta);
    size_t hits = 0;
    for (size_t i = 0; i < samples; i++) {
        Rng rng(mix_seed(seed, i));
        if (r.contains(sample_string(p, n, rng))) {
            hits++;
        }
    }
    double m = static_cast<double>(hits) / samples;
    r.mass = m;
    r.mass_standard_error = std::sqrt(m * (1 - m) / samples);
    return r;
}

TypicalSubspace typical_subspace_projector(const DensityMatrix &rho, size_t n, double delta, size_t cap) {
    if (n == 0 || !(delta >= 0)) {
        throw DomainError("typical subspace needs n >= 1 and delta >= 0");
    }
    size_t d = rho.dim();
    double dim_d = std::pow(static_cast<double>(d), static_cast<double>(n));
    if (dim_d > static_cast<double>(cap)) {
        throw SizeCapError("d^n exceeds the size cap");
    }
    size_t dim = static_cast<size_t>(std::llround(dim_d));
    auto eig = hermitian_eig(rho.matrix());
    std::vector<double> lam(d);
    for (size_t i = 0; i < d; i++) {
        lam[i] = eig.values[i] < 1e-14 ? 0.0 : eig.values[i];
    }
    double s = spectrum_entropy(eig.values);
    // Columns of U^{(x) n} for typical eigen-strings.
    std::vector<ComplexVector> cols;
    std::vector<size_t> digits(n, 0);
    for (size_t idx = 0; idx < dim; idx++) {
        size_t rest = idx;
        for (size_t k = n; k-- > 0;) {
            digits[k] = rest % d;
            rest /= d;
        }
        double lp = 0;
        for (size_t k = 0; k < n && std::isfinite(lp); k++) {
            lp = lam[digits[k]] > 0 ? lp + std::log2(lam[digits[k]]) : -std::numeric_limits<double>::infinity();
        }
        if (!typical_log_prob(lp, n, s, delta)) {
            continue;
        }
        ComplexVector v{1.0};
        for (size_t k = 0; k < n; k++) {
            v = kron(v, eig.vectors.col(digits[k]));
        }
        cols.push_back(std::move(v));
    }
    ComplexMatrix proj(dim, dim);
    for (const auto &v : cols) {
        for (size_t r = 0; r < dim; r++) {
            if (v[r] == Complex(0)) continue;
            Complex *row = proj.row_data(r);
            for (size_t c = 0; c < dim; c++) {
                row[c] += v[r] * std::conj(v[c]);
            }
        }
    }
    return {proj, cols.size(), n * (s + delta)};
}

namespace {

struct TieClass {
    double log_prob;
    std::vector<std::vector<size_t>> types;
    cpp_int count;
    cpp_int before;
};

// Number of strings of type t that precede x lexicographically.
cpp_int lexicographic_rank_in_type(const std::vector<size_t> &x, std::vector<size_t> t) {
    size_t left = x.size();
    cpp_int m = multinomial(t);
    cpp_int rank = 0;
    for (size_t i = 0; i < x.size(); i++) {
        for (size_t s = 0; s < x[i]; s++) {
            if (t[s] > 0) {
                rank += m * t[s] / left;
            }
        }
        size_t xs = x[i];
        if (t[xs] == 0) {
            break;
        }
        m = m * t[xs] / left;
        t[xs]--;
        left--;
    }
    return rank;
}

cpp_int floor_pow2(double bits) {
    double ib = std::floor(bits);
    double frac = bits - ib;
    cpp_int mant = static_cast<uint64_t>(std::floor(std::exp2(frac) * 4503599627370496.0));  // 2^52
    cpp_int v = mant << static_cast<size_t>(ib);
    return v >> 52;
}

}  // namespace

CompressionResult compression_trial(const Distribution &p, size_t n, double rate, size_t trials, uint64_t seed,
                                    std::optional<double> delta) {
    if (n == 0 || trials == 0 || !(rate >= 0)) {
        throw DomainError("compression trial needs n >= 1, trials >= 1, rate >= 0");
    }
    double h = shannon_entropy(p);
    size_t a = p.size();
    cpp_int all = 1;
    for (size_t i = 0; i < n; i++) all *= a;

    // Eligible types grouped into classes of equal string probability, most likely first.
    std::vector<std::pair<double, std::vector<size_t>>> ranked;
    for (auto &t : compositions(n, a)) {
        double lp = type_log_prob(t, p.probs());
        if (!std::isfinite(lp)) continue;
        if (delta && !typical_log_prob(lp, n, h, *delta)) continue;
        ranked.emplace_back(lp, std::move(t));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto &x, const auto &y) { return x.first > y.first; });
    std::vector<TieClass> classes;
    for (auto &[lp, t] : ranked) {
        if (classes.empty() || std::abs(classes.back().log_prob - lp) > 1e-9 * std::max(1.0, std::abs(lp))) {
            classes.push_back({lp, {}, 0, 0});
        }
        classes.back().count += multinomial(t);
        classes.back().types.push_back(std::move(t));
    }
    cpp_int eligible = 0;
    std::map<std::vector<size_t>, size_t> class_of;
    for (size_t c = 0; c < classes.size(); c++) {
        classes[c].before = eligible;
        eligible += classes[c].count;
        for (const auto &t : classes[c].types) {
            class_of[t] = c;
        }
    }
    cpp_int size = rate * n >= std::log2(static_cast<double>(a)) * n ? all : floor_pow2(rate * n);
    if (size > eligible) {
        size = eligible;
    }
    bool uniform = std::all_of(p.probs().begin(), p.probs().end(), [&](double v) { return v == p[0]; });

    size_t successes = 0;
    for (size_t i = 0; i < trials; i++) {
        Rng rng(mix_seed(seed, i));
        auto x = sample_string(p, n, rng);
        auto it = class_of.find(type_of(x, a));
        if (it == class_of.end()) {
            continue;
        }
        const TieClass &cls = classes[it->second];
        if (cls.before >= size) {
            continue;
        }
        if (cls.before + cls.count <= size) {
            successes++;
            continue;
        }
        cpp_int rank = 0;
        if (uniform && !delta) {
            for (size_t s : x) rank = rank * a + s;
        } else {
            for (const auto &t : cls.types) {
                rank += lexicographic_rank_in_type(x, t);
            }
        }
        if (cls.before + rank < size) {
            successes++;
        }
    }
    return {static_cast<double>(successes) / trials, successes, trials, log2_big(size)};
}

}  // namespace qinfo
