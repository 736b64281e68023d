#include <algorithm>
#include <cmath>
#include <numeric>

#include "qinfo/entropy.hpp"
#include "qinfo/errors.hpp"
#include "qinfo/schur_weyl.hpp"
#include "support.hpp"

using namespace qinfo;

namespace {

// (1/n!) sum over all permutations, the definition the library avoids.
ComplexMatrix oracle_sym_projector(size_t d, size_t n) {
    std::vector<size_t> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    size_t dim = 1;
    for (size_t i = 0; i < n; i++) dim *= d;
    ComplexMatrix sum(dim, dim);
    size_t count = 0;
    do {
        sum += permutation_operator(d, n, pi);
        count++;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return sum * Complex(1.0 / count);
}

// Group average of a random state under all qubit permutations.
ComplexMatrix random_invariant(size_t d, size_t n, Rng &rng) {
    size_t dim = 1;
    for (size_t i = 0; i < n; i++) dim *= d;
    ComplexMatrix r = random_density(dim, rng, 2);
    std::vector<size_t> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    ComplexMatrix sum(dim, dim);
    size_t count = 0;
    do {
        ComplexMatrix p = permutation_operator(d, n, pi);
        sum += p * r * p.adjoint();
        count++;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return sum * Complex(1.0 / count);
}

// Explicit Pr[j] = tr(P_j rho^{(x)n}) on the full 2^n space.
std::vector<double> oracle_spin_distribution(double r, size_t n, const SpinDecomposition &dec) {
    ComplexMatrix rho_n = tensor_power(ComplexMatrix::diagonal({0.5 + r, 0.5 - r}), n);
    std::vector<double> out;
    for (auto &b : dec.blocks) out.push_back(trace_of_product(b.projector, rho_n).real());
    return out;
}

}  // namespace

TEST(SymProjector, Examples) {
    auto p = sym_projector(2, 2);
    EXPECT_EQ(p.dimension, 3u);
    ComplexVector s = normalized({0, 1, 1, 0});
    ComplexMatrix want = ComplexMatrix::projector({1, 0, 0, 0}) + ComplexMatrix::projector({0, 0, 0, 1}) +
                         ComplexMatrix::projector(s);
    qtest::expect_matrix_near(p.matrix, want, 1e-14);
    qtest::expect_matrix_near(sym_projector(2, 1).matrix, ComplexMatrix::identity(2), 1e-15);
    EXPECT_THROW(sym_projector(2, 13), SizeCapError);
}

TEST(SymProjector, IdentitiesAndPermutationAverage) {
    for (size_t d = 2; d <= 4; d++)
        for (size_t n = 1; n <= 6; n++) {
            size_t dim = 1;
            for (size_t i = 0; i < n; i++) dim *= d;
            if (dim > 1024) continue;
            auto p = sym_projector(d, n);
            EXPECT_EQ(p.dimension, static_cast<size_t>(binomial(n + d - 1, n)));
            EXPECT_LE((p.matrix * p.matrix - p.matrix).max_abs(), 1e-10);
            EXPECT_LE(p.matrix.hermiticity_defect(), 1e-12);
            EXPECT_NEAR(p.matrix.trace().real(), double(p.dimension), 1e-10);
            if (dim <= 256) qtest::expect_matrix_near(p.matrix, oracle_sym_projector(d, n), 1e-12);
        }
}

TEST(HaarMoment, MonteCarlo) {
    auto one = haar_moment_identity_check(2, 1, 100000, 5);
    EXPECT_LT(one.max_deviation, 0.01);
    auto two = haar_moment_identity_check(2, 2, 100000, 6);
    EXPECT_LT(two.max_deviation, 0.01);
    EXPECT_GT(two.standard_error, 0);
    EXPECT_LT(two.max_deviation, 6 * two.standard_error + 1e-12);
}

TEST(HaarMoment, TetrahedronIsTwoDesign) {
    ComplexMatrix avg(4, 4);
    for (auto &v : tetrahedron_states()) avg += ComplexMatrix::projector(kron(v, v)) * Complex(0.25);
    ComplexMatrix want = (ComplexMatrix::identity(4) + swap_operator(2)) * Complex(1.0 / 6);
    qtest::expect_matrix_near(avg, want, 1e-12);
    qtest::expect_matrix_near(sym_projector(2, 2).matrix * Complex(1.0 / 3), want, 1e-12);
}

TEST(EstimationOverlap, Examples) {
    EXPECT_EQ(estimation_overlap(3, 5, 0), 1);
    auto frac = estimation_overlap_exact(2, 1, 1);
    EXPECT_EQ(frac.first, 2);
    EXPECT_EQ(frac.second, 3);
    EXPECT_NEAR(estimation_overlap(2, 1, 1), 2.0 / 3, 1e-15);
    EXPECT_EQ(definetti_error_bound(2, 7, 0), 0);
    EXPECT_NEAR(definetti_error_bound(2, 100, 1), 2 * std::sqrt(1.0 / 102), 1e-14);
}

TEST(EstimationOverlap, BoundOnGrid) {
    for (size_t d = 1; d <= 5; d++)
        for (size_t n = 1; n <= 200; n++)
            for (size_t k = 0; k <= 20; k++) {
                ASSERT_TRUE(estimation_overlap_bound_holds(d, n, k)) << d << " " << n << " " << k;
                EXPECT_GE(estimation_overlap(d, n, k), 1.0 - double(d * k) / n - 1e-12);
            }
}

TEST(DeFinetti, BoundMonotonicity) {
    for (size_t d = 2; d <= 4; d++)
        for (size_t n = 2; n <= 40; n++)
            for (size_t k = 1; k <= 5; k++) {
                double b = definetti_error_bound(d, n, k);
                EXPECT_LE(definetti_error_bound(d, n + 1, k), b + 1e-15);
                EXPECT_GE(definetti_error_bound(d, n, k + 1), b - 1e-15);
                EXPECT_GE(definetti_error_bound(d + 1, n, k), b - 1e-15);
            }
}

TEST(DeFinetti, QuadratureWithinBound) {
    Rng rng(91);
    auto p = sym_projector(2, 3).matrix;
    for (int t = 0; t < 10; t++) {
        PureState psi = PureState::normalize(p * haar_state(8, rng), {2, 2, 2});
        auto q = definetti_quadrature_check(psi, 2, 1);
        EXPECT_NEAR(q.average_fidelity, estimation_overlap(2, 2, 1), 1e-10);
        EXPECT_NEAR(q.bound, definetti_error_bound(2, 2, 1), 1e-14);
        EXPECT_LE(q.trace_norm_distance, q.bound + 1e-10);
    }
    EXPECT_THROW(definetti_quadrature_check(PureState({0, 1, 0, 0, 0, 0, 0, 0}, {2, 2, 2}), 2, 1), DomainError);
}

TEST(DeFinetti, LargerInstances) {
    Rng rng(92);
    auto p = sym_projector(2, 5).matrix;
    PureState psi = PureState::normalize(p * haar_state(32, rng), Dims(5, 2));
    auto q = definetti_quadrature_check(psi, 3, 2);
    EXPECT_NEAR(q.average_fidelity, estimation_overlap(2, 3, 2), 1e-10);
    EXPECT_LE(q.trace_norm_distance, q.bound + 1e-10);
}

TEST(Purification, Examples) {
    std::vector<DensityMatrix> inputs{maximally_mixed(4), DensityMatrix(sym_projector(2, 2).matrix * Complex(1.0 / 3)),
                                      rho_anti(2)};
    for (auto &rho : inputs) {
        PureState psi = symmetric_purification(rho, 2, 2);
        qtest::expect_matrix_near(partial_trace(psi.density(), {2, 2, 2, 2}, {0, 1}), rho.matrix(), 1e-9);
        // Swap both the Q pair and the R pair.
        ComplexVector swapped = permute_systems(psi.amplitudes(), {2, 2, 2, 2}, {1, 0, 3, 2});
        for (size_t i = 0; i < 16; i++) EXPECT_LE(std::abs(swapped[i] - psi.amplitudes()[i]), 1e-9);
    }
    Rng rng(93);
    EXPECT_THROW(symmetric_purification(DensityMatrix(random_density(4, rng)), 2, 2), DomainError);
}

TEST(Purification, RandomInvariantInputs) {
    Rng rng(94);
    for (int t = 0; t < 10; t++) {
        DensityMatrix rho(random_invariant(2, 3, rng));
        PureState psi = symmetric_purification(rho, 2, 3);
        Dims dims(6, 2);
        qtest::expect_matrix_near(partial_trace(psi.density(), dims, {0, 1, 2}), rho.matrix(), 1e-9);
        std::vector<std::vector<size_t>> perms{{1, 0, 2}, {0, 2, 1}, {2, 0, 1}};
        for (auto &pi : perms) {
            std::vector<size_t> order{pi[0], pi[1], pi[2], 3 + pi[0], 3 + pi[1], 3 + pi[2]};
            ComplexVector moved = permute_systems(psi.amplitudes(), dims, order);
            for (size_t i = 0; i < moved.size(); i++) EXPECT_LE(std::abs(moved[i] - psi.amplitudes()[i]), 1e-9);
        }
    }
}

TEST(SpinMultiplicity, Examples) {
    EXPECT_EQ(spin_multiplicity(2, 2), 1u);
    EXPECT_EQ(spin_multiplicity(2, 0), 1u);
    EXPECT_EQ(spin_multiplicity(4, 4), 1u);
    EXPECT_EQ(spin_multiplicity(4, 2), 3u);
    EXPECT_EQ(spin_multiplicity(4, 0), 2u);
    EXPECT_THROW(spin_multiplicity(4, 1), DomainError);
    EXPECT_THROW(spin_multiplicity(4, 6), DomainError);
}

TEST(SpinMultiplicity, RecursionDimensionAndEntropyBound) {
    for (size_t n = 1; n <= 64; n++) {
        long double total = 0;
        for (size_t tj : spin_values(n)) {
            uint64_t m = spin_multiplicity(n, tj);
            EXPECT_EQ(m, spin_multiplicity_recursive(n, tj));
            total += static_cast<long double>(tj + 1) * m;
            double h = binary_entropy(0.5 + tj / (2.0 * n));
            EXPECT_LE(std::log2(double(m)), n * h + 1e-9);
            EXPECT_NEAR(log2_spin_multiplicity(n, tj), std::log2(double(m)), 1e-9);
        }
        EXPECT_EQ(total, std::pow(2.0L, static_cast<long double>(n)));
    }
}

TEST(SpinProjectors, Examples) {
    auto two = spin_projectors(2);
    ASSERT_EQ(two.blocks.size(), 2u);
    EXPECT_EQ(two.blocks[0].rank, 3u);
    EXPECT_EQ(two.blocks[1].rank, 1u);
    qtest::expect_matrix_near(two.blocks[0].projector, sym_projector(2, 2).matrix, 1e-10);
    qtest::expect_matrix_near(two.blocks[1].projector, rho_anti(2).matrix(), 1e-10);
    auto three = spin_projectors(3);
    ASSERT_EQ(three.blocks.size(), 2u);
    EXPECT_EQ(three.blocks[0].rank, 4u);
    EXPECT_EQ(three.blocks[1].rank, 4u);
    EXPECT_EQ(three.blocks[1].multiplicity, 2u);
    EXPECT_THROW(spin_projectors(13), SizeCapError);
}

TEST(SpinProjectors, CompleteAndOrthogonal) {
    for (size_t n = 1; n <= 8; n++) {
        auto dec = spin_projectors(n);
        size_t dim = size_t(1) << n;
        ComplexMatrix sum(dim, dim);
        for (size_t a = 0; a < dec.blocks.size(); a++) {
            auto &b = dec.blocks[a];
            EXPECT_EQ(b.rank, (b.twice_j + 1) * b.multiplicity);
            sum += b.projector;
            for (size_t c = a + 1; c < dec.blocks.size(); c++)
                EXPECT_LE((b.projector * dec.blocks[c].projector).max_abs(), 1e-10);
        }
        qtest::expect_matrix_near(sum, ComplexMatrix::identity(dim), 1e-10);
    }
}

TEST(SpectrumEstimation, Examples) {
    auto pure = spectrum_estimation_distribution(0.5, 6);
    EXPECT_EQ(pure.front().twice_j, 6u);
    EXPECT_NEAR(pure.front().probability, 1, 1e-12);
    auto flat = spectrum_estimation_distribution(0, 2);
    EXPECT_NEAR(flat[0].probability, 0.75, 1e-12);
    EXPECT_NEAR(flat[1].probability, 0.25, 1e-12);
    EXPECT_THROW(spectrum_estimation_distribution(0.6, 3), DomainError);
}

TEST(SpectrumEstimation, MatchesExplicitProjectors) {
    for (size_t n = 2; n <= 8; n++) {
        auto dec = spin_projectors(n);
        for (double r : {0.0, 0.1, 0.25, 0.4, 0.5}) {
            auto got = spectrum_estimation_distribution(r, n);
            auto want = oracle_spin_distribution(r, n, dec);
            ASSERT_EQ(got.size(), want.size());
            double total = 0;
            for (size_t i = 0; i < got.size(); i++) {
                EXPECT_EQ(got[i].twice_j, dec.blocks[i].twice_j);
                EXPECT_NEAR(got[i].probability, want[i], 1e-10);
                total += got[i].probability;
            }
            EXPECT_NEAR(total, 1, 1e-10);
        }
    }
}

TEST(SpectrumEstimation, ExponentialBound) {
    for (size_t n : {10, 50, 200})
        for (double r : {0.05, 0.2, 0.35, 0.49})
            for (auto &p : spectrum_estimation_distribution(r, n))
                EXPECT_LE(p.probability, keyl_werner_bound(r, n, p.twice_j) * (1 + 1e-9) + 1e-300);
    EXPECT_TRUE(std::isinf(keyl_werner_bound(0, 10, 4)));
}

TEST(KeylWerner, ModeNearTrueValue) {
    auto dist = spectrum_estimation_distribution(0.3, 512);
    auto mode = std::max_element(dist.begin(), dist.end(),
                                 [](auto &a, auto &b) { return a.probability < b.probability; });
    EXPECT_NEAR(mode->twice_j / 2.0 / 512, 0.3, 0.02);
}

TEST(KeylWerner, MeanAtZeroShrinks) {
    double prev = 1;
    for (size_t n : {16, 64, 256, 1024}) {
        double mean = 0;
        for (auto &p : spectrum_estimation_distribution(0, n)) mean += p.probability * p.twice_j / 2.0 / n;
        EXPECT_LT(mean, prev);
        EXPECT_LT(mean * std::sqrt(double(n)), 1.5);
        prev = mean;
    }
}

TEST(KeylWerner, TailBound) {
    auto tail = keyl_werner_tail(0.25, 256, 0.1);
    EXPECT_LE(tail.probability, tail.bound);
    double direct = 0;
    for (auto &p : spectrum_estimation_distribution(0.25, 256))
        if (std::abs(p.twice_j / 2.0 / 256 - 0.25) > 0.1) direct += p.probability;
    EXPECT_NEAR(tail.probability, direct, 1e-12);
}

TEST(KeylWerner, EstimateFromSamples) {
    auto samples = sample_spin_outcomes(0.3, 512, 400, 11);
    ASSERT_EQ(samples.size(), 400u);
    auto est = keyl_werner_estimate(samples, 512, 0.3);
    EXPECT_NEAR(est.r_hat, 0.3, 0.02);
    EXPECT_GT(est.standard_error, 0);
    ASSERT_TRUE(est.tail.has_value());
    EXPECT_EQ(samples, sample_spin_outcomes(0.3, 512, 400, 11));
}
