#include "qinfo/games.hpp"

#include <cmath>

#include "qinfo/errors.hpp"
#include "qinfo/random.hpp"

namespace qinfo {

namespace {

ComplexVector basis_vector(double t, int outcome) {
    if (outcome == 0) return {std::cos(t), std::sin(t)};
    return {-std::sin(t), std::cos(t)};
}

void check_qubit_pair(const PureState &psi) {
    if (psi.dim() != 4) {
        throw DimensionError("CHSH strategies share a two-qubit state");
    }
}

double quantum_value(const QuantumStrategy &q) {
    check_qubit_pair(q.state);
    double win = 0;
    for (int r = 0; r < 2; r++) {
        for (int s = 0; s < 2; s++) {
            for (int a = 0; a < 2; a++) {
                int b = a ^ (r & s);
                ComplexVector v = kron(basis_vector(q.alice[r], a), basis_vector(q.bob[s], b));
                win += std::norm(inner(v, q.state.amplitudes())) / 4;
            }
        }
    }
    return win;
}

}  // namespace

int chsh_wins(const DeterministicStrategy &s) {
    for (int x : {s.a[0], s.a[1], s.b[0], s.b[1]}) {
        if (x != 0 && x != 1) throw DomainError("deterministic answers must be bits");
    }
    int wins = 0;
    for (int r = 0; r < 2; r++)
        for (int t = 0; t < 2; t++) wins += (s.a[r] ^ s.b[t]) == (r & t);
    return wins;
}

double chsh_value(const ChshStrategy &strategy) {
    if (auto d = std::get_if<DeterministicStrategy>(&strategy)) {
        return chsh_wins(*d) / 4.0;
    }
    return quantum_value(std::get<QuantumStrategy>(strategy));
}

ClassicalOptimum chsh_classical_optimum() {
    ClassicalOptimum out{0, 0, {}};
    for (int bits = 0; bits < 16; bits++) {
        DeterministicStrategy s{{bits & 1, (bits >> 1) & 1}, {(bits >> 2) & 1, (bits >> 3) & 1}};
        int w = chsh_wins(s);
        if (w > out.wins) {
            out.wins = w;
            out.achievers.clear();
        }
        if (w == out.wins) out.achievers.push_back(s);
    }
    out.value = out.wins / 4.0;
    return out;
}

ComplexMatrix observable_from_angle(double t) {
    double c = std::cos(2 * t), s = std::sin(2 * t);
    return {{c, s}, {s, -c}};
}

BellOperator bell_operator(const ComplexMatrix &a0, const ComplexMatrix &a1, const ComplexMatrix &b0,
                           const ComplexMatrix &b1) {
    for (const ComplexMatrix *o : {&a0, &a1, &b0, &b1}) {
        if (o->rows() != 2 || o->cols() != 2 || o->hermiticity_defect() > 1e-9 ||
            ((*o) * (*o) - ComplexMatrix::identity(2)).max_abs() > 1e-9) {
            throw DomainError("observables must be Hermitian 2x2 with spectrum {-1, +1}");
        }
    }
    return {kron(a0, b0) + kron(a0, b1) + kron(a1, b0) - kron(a1, b1)};
}

double bell_bias(const BellOperator &bell, const PureState &psi) {
    check_qubit_pair(psi);
    return expectation(bell.matrix, psi.amplitudes()).real() / 4;
}

BellOperator bell_operator(const QuantumStrategy &s) {
    return bell_operator(observable_from_angle(s.alice[0]), observable_from_angle(s.alice[1]),
                         observable_from_angle(s.bob[0]), observable_from_angle(s.bob[1]));
}

namespace {

struct Params {
    std::array<double, 5> x;
};

PureState schmidt_state(double chi) {
    return PureState({std::cos(chi), 0, 0, std::sin(chi)}, {2, 2});
}

// Golden-section search for a maximum of f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F f, double lo, double hi) {
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > 1e-12) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d);
        }
    }
    double x = (lo + hi) / 2;
    return {x, f(x)};
}

}  // namespace

ChshOptimum chsh_optimize(uint64_t seed, const ChshOptimizeOptions &opts) {
    if (opts.fixed_state) check_qubit_pair(*opts.fixed_state);
    size_t coords = (opts.product_state || opts.fixed_state) ? 4 : 5;
    auto evaluate = [&](const std::array<double, 5> &x) {
        PureState state = opts.fixed_state ? *opts.fixed_state : schmidt_state(opts.product_state ? 0.0 : x[4]);
        return quantum_value({state, {x[0], x[1]}, {x[2], x[3]}});
    };
    ChshOptimum best{-1, {}, 0};
    Rng rng(seed);
    for (size_t start = 0; start < std::max<size_t>(opts.starts, 1); start++) {
        std::array<double, 5> x{};
        for (size_t c = 0; c < coords; c++) x[c] = rng.uniform(-M_PI / 2, M_PI / 2);
        double value = evaluate(x);
        for (int sweep = 0; sweep < 1000; sweep++) {
            double before = value;
            for (size_t c = 0; c < coords; c++) {
                // Every coordinate has period pi; bracket the best of a coarse scan first.
                const int grid = 16;
                double step = M_PI / grid, best_t = x[c], best_v = value;
                for (int i = 0; i < grid; i++) {
                    auto y = x;
                    y[c] = x[c] + i * step;
                    double v = evaluate(y);
                    if (v > best_v) {
                        best_v = v;
                        best_t = y[c];
                    }
                }
                auto line = [&](double t) {
                    auto y = x;
                    y[c] = t;
                    return evaluate(y);
                };
                auto [t, v] = golden_max(line, best_t - step, best_t + step);
                if (v >= best_v) {
                    best_t = t;
                    best_v = v;
                }
                x[c] = std::remainder(best_t, M_PI);
                value = evaluate(x);
            }
            if (value - before < 1e-10) break;
        }
        if (value > best.value) {
            best.value = value;
            best.angles = {x[0], x[1], x[2], x[3]};
            best.schmidt_angle = coords == 5 ? x[4] : 0.0;
        }
    }
    return best;
}

}  // namespace qinfo
