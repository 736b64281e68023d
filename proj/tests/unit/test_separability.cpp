#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qinfo/errors.hpp"
#include "qinfo/schur_weyl.hpp"
#include "qinfo/separability.hpp"
#include "support.hpp"

using namespace qinfo;

namespace {

DensityMatrix product_state(size_t da, size_t db, Rng &rng) {
    return DensityMatrix(ComplexMatrix::projector(kron(haar_state(da, rng), haar_state(db, rng))), {da, db});
}

// Random state pushed toward I/d until it passes the PPT test.
DensityMatrix random_ppt(size_t d, Rng &rng) {
    ComplexMatrix r = random_density(d * d, rng);
    for (double w = 0.9;; w *= 0.8) {
        DensityMatrix rho(r * Complex(w) + ComplexMatrix::identity(d * d) * Complex((1 - w) / (d * d)), {d, d});
        if (ppt_check(rho).is_ppt) return rho;
    }
}

ComplexMatrix random_measurement(size_t n, Rng &rng) {
    // U diag(u) U^dagger with u uniform in [0, 1].
    ComplexMatrix u = haar_unitary(n, rng);
    std::vector<double> vals(n);
    for (auto &v : vals) v = rng.uniform();
    return u * ComplexMatrix::diagonal(vals) * u.adjoint();
}

ComplexMatrix pi_anti_2() { return rho_anti(2).matrix(); }

}  // namespace

TEST(Ppt, Examples) {
    auto v = ppt_check(DensityMatrix(bell_state(BellState::PhiPlus)));
    EXPECT_FALSE(v.is_ppt);
    EXPECT_NEAR(v.min_eigenvalue, -0.5, 1e-12);
    std::vector<double> want{0.5, 0.5, 0.5, -0.5};
    for (size_t i = 0; i < 4; i++) EXPECT_NEAR(v.spectrum[i], want[i], 1e-12);
    EXPECT_TRUE(ppt_check(noisy_epr(0.2)).is_ppt);
    EXPECT_FALSE(ppt_check(noisy_epr(0.5)).is_ppt);
    EXPECT_NEAR(noisy_epr_ppt_threshold(), 1.0 / 3, 1e-9);
    EXPECT_THROW(ppt_check(maximally_mixed(4)), DimensionError);
}

TEST(Ppt, SeparableSamplesPass) {
    Rng rng(61);
    for (int t = 0; t < 20; t++) {
        auto rho = sample_separable(2 + t % 2, 2 + (t / 2) % 2, 1 + t % 5, rng);
        auto v = ppt_check(rho);
        EXPECT_TRUE(v.is_ppt);
        EXPECT_EQ(v.is_ppt, v.min_eigenvalue >= -kPptTol);
    }
}

TEST(Ppt, ClosedUnderTensor) {
    Rng rng(62);
    for (int t = 0; t < 20; t++) {
        DensityMatrix a = random_ppt(2, rng), b = random_ppt(2, rng);
        // Subsystem order A B A' B'; transposing A and A' is the AA':BB' cut.
        DensityMatrix joint(kron(a.matrix(), b.matrix()), {2, 2, 2, 2});
        EXPECT_TRUE(ppt_check(joint, {0, 2}).is_ppt);
    }
}

TEST(Ppt, ClosedUnderLocalFiltering) {
    Rng rng(63);
    for (int t = 0; t < 30; t++) {
        DensityMatrix rho = random_ppt(2 + t % 2, rng);
        size_t d = rho.dims()[0];
        ComplexMatrix f = kron(ginibre(d, d, rng), ginibre(d, d, rng));
        ComplexMatrix out = f * rho.matrix() * f.adjoint();
        out *= Complex(1 / out.trace().real());
        EXPECT_TRUE(ppt_check(DensityMatrix(out, {d, d})).is_ppt);
    }
}

TEST(Witness, PhiPlusExamples) {
    Witness w = phi_plus_witness();
    EXPECT_NEAR(witness_value(w, DensityMatrix(bell_state(BellState::PhiPlus))), -1, 1e-12);
    EXPECT_NEAR(witness_value(w, maximally_mixed(4)), 0.5, 1e-12);
    Rng rng(64);
    for (int t = 0; t < 200; t++) EXPECT_GE(witness_value(w, sample_separable(2, 2, 1 + t % 3, rng)), -1e-9);
    EXPECT_THROW(witness_value(w, maximally_mixed(2)), DimensionError);
    EXPECT_THROW(Witness(ComplexMatrix{{0, 1}, {0, 0}}), DomainError);
}

TEST(Witness, ChshSeparableAndMixed) {
    Witness w = chsh_witness();
    EXPECT_NEAR(witness_value(w, maximally_mixed(4)), 0.5, 1e-12);
    Rng rng(65);
    for (int t = 0; t < 200; t++) EXPECT_GE(witness_value(w, product_state(2, 2, rng)), -1e-9);
    // With W = I/2 - B/4 and <B> = 2 sqrt 2 on Phi+, the value is 1/2 - 1/sqrt 2.
    EXPECT_NEAR(witness_value(w, DensityMatrix(bell_state(BellState::PhiPlus))), 0.5 - M_SQRT1_2, 1e-10);
}

TEST(Witness, EigenWitnessDetectsNptStates) {
    Rng rng(66);
    int detected = 0;
    for (int t = 0; t < 40 && detected < 10; t++) {
        DensityMatrix rho(random_density(4, rng, 1 + t % 2), {2, 2});
        if (ppt_check(rho).is_ppt) continue;
        detected++;
        Witness w = eigen_witness(rho);
        EXPECT_LT(witness_value(w, rho), 0);
        for (int s = 0; s < 500; s++) EXPECT_GE(witness_value(w, product_state(2, 2, rng)), -1e-9);
    }
    EXPECT_EQ(detected, 10);
}

TEST(Extendibility, ProductStateK3) {
    Rng rng(67);
    DensityMatrix rho(kron(random_density(2, rng), random_density(2, rng)), {2, 2});
    auto r = k_extendibility(rho, {0}, 3);
    ASSERT_EQ(r.status, Feasibility::Feasible);
    EXPECT_LE(r.residual, 1e-7);
    ASSERT_TRUE(r.extension.has_value());
    EXPECT_LE(extension_violation(*r.extension, rho.matrix(), 2, 2, 3), 1e-6);
}

TEST(Extendibility, PhiPlusK2MatchesFixture) {
    std::ifstream in(std::string(QINFO_FIXTURES) + "/extension_gap.json");
    ASSERT_TRUE(in.good());
    auto fx = nlohmann::json::parse(in);
    auto r = k_extendibility(DensityMatrix(bell_state(BellState::PhiPlus)), {0}, 2);
    EXPECT_EQ(r.status, Feasibility::InfeasibleEvidence);
    EXPECT_GE(r.residual, 0.05);
    EXPECT_NEAR(r.residual, fx["frobenius_gap"].get<double>(), 1e-6);
    EXPECT_FALSE(r.extension.has_value());
}

TEST(Extendibility, EveryStateIsOneExtendible) {
    auto r = k_extendibility(DensityMatrix(bell_state(BellState::PhiPlus)), {0}, 1);
    EXPECT_EQ(r.status, Feasibility::Feasible);
}

TEST(Extendibility, RandomSeparableStates) {
    Rng rng(68);
    for (size_t k : {2, 3}) {
        for (int t = 0; t < 20; t++) {
            auto rho = sample_separable(2, 2, 1 + t % 4, rng);
            auto r = k_extendibility(rho, {0}, k);
            EXPECT_EQ(r.status, Feasibility::Feasible) << "k=" << k << " trial " << t << " residual " << r.residual;
            EXPECT_LE(r.residual, 1e-6);
            if (r.extension) EXPECT_LE(r.max_violation, 1e-6);
        }
    }
}

TEST(Extendibility, AntisymmetricWithSlaterStart) {
    // Slater determinant on A B1 B2 is an extension of rho_anti(3); its projector is B-swap invariant.
    DensityMatrix rho = rho_anti(3);
    ExtendibilityOptions opts;
    opts.warm_start = slater_extension(3).density();
    auto r = k_extendibility(rho, {0}, 2, opts);
    EXPECT_EQ(r.status, Feasibility::Feasible);
    auto cold = k_extendibility(rho, {0}, 2);
    EXPECT_EQ(cold.status, Feasibility::Feasible);
}

TEST(Extendibility, SizeCapAndArguments) {
    ExtendibilityOptions opts;
    opts.cap = 64;
    EXPECT_THROW(k_extendibility(rho_anti(3), {0}, 3, opts), SizeCapError);
    EXPECT_THROW(k_extendibility(rho_anti(3), {0}, 0), DomainError);
    EXPECT_THROW(k_extendibility(rho_anti(3), {0, 1}, 2), DimensionError);
}

TEST(Extendibility, IterationLimitGivesUndetermined) {
    Rng rng(69);
    auto rho = sample_separable(2, 2, 3, rng);
    ExtendibilityOptions opts;
    opts.max_iterations = 2;
    opts.warm_start = ComplexMatrix::identity(8) * Complex(1.0 / 8);
    auto r = k_extendibility(rho, {0}, 2, opts);
    EXPECT_NE(r.status, Feasibility::InfeasibleEvidence);
    if (r.status == Feasibility::Undetermined) EXPECT_FALSE(r.extension.has_value());
}

TEST(Slater, MarginalIsAntisymmetricState) {
    auto s2 = slater_extension(2);
    EXPECT_NEAR(s2.amplitudes()[1].real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(s2.amplitudes()[2].real(), -M_SQRT1_2, 1e-15);
    for (size_t d = 2; d <= 5; d++) {
        auto s = slater_extension(d);
        EXPECT_NEAR(norm(s.amplitudes()), 1, 1e-12);
        ComplexMatrix m = partial_trace(s.density(), Dims(d, d), {0, 1});
        qtest::expect_matrix_near(m, rho_anti(d).matrix(), 1e-10);
    }
    EXPECT_THROW(slater_extension(7), SizeCapError);
}

TEST(HExt, Examples) {
    auto pi_sym = sym_projector(2, 2).matrix;
    EXPECT_NEAR(h_n_ext(pi_sym, {2, 2}, 1), 1, 1e-10);
    for (size_t n : {1, 2, 3}) EXPECT_NEAR(h_n_ext(ComplexMatrix::identity(4), {2, 2}, n), 1, 1e-10);
    EXPECT_NEAR(h_n_ext(pi_anti_2() * Complex(1), {2, 2}, 1), 1, 1e-10);
    EXPECT_THROW(h_n_ext(ComplexMatrix::identity(4) * Complex(2), {2, 2}, 1), DomainError);
}

TEST(HExt, MonotoneAndSandwichesHSep) {
    Rng rng(70);
    for (int t = 0; t < 10; t++) {
        ComplexMatrix m = random_measurement(4, rng);
        double hs = h_sep_sampled(m, {2, 2}, 20, 100 + t);
        double prev = 2;
        for (size_t n = 1; n <= 4; n++) {
            double h = h_n_ext(m, {2, 2}, n);
            EXPECT_LE(h, prev + 1e-9);
            EXPECT_GE(h, hs - 1e-9);
            EXPECT_LE(h, hs + 2.0 / n + 1e-9);
            prev = h;
        }
    }
}

TEST(HSep, Examples) {
    EXPECT_NEAR(h_sep_sampled(sym_projector(2, 2).matrix, {2, 2}, 20, 1), 1, 1e-9);
    EXPECT_NEAR(h_sep_sampled(pi_anti_2(), {2, 2}, 20, 2), 0.5, 1e-9);
    EXPECT_NEAR(h_sep_sampled(bell_state(BellState::PhiPlus).density(), {2, 2}, 20, 3), 0.5, 1e-9);
}

TEST(MotzkinStraus, Examples) {
    auto k3 = motzkin_straus(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(k3.clique_number, 3u);
    EXPECT_NEAR(k3.optimization_value, 2.0 / 3, 1e-6);
    auto k2 = motzkin_straus(2, {{0, 1}});
    EXPECT_EQ(k2.clique_number, 2u);
    EXPECT_NEAR(k2.optimization_value, 0.5, 1e-6);
    auto empty = motzkin_straus(4, {});
    EXPECT_EQ(empty.clique_number, 1u);
    EXPECT_EQ(empty.optimization_value, 0);
    EXPECT_THROW(motzkin_straus(21, {}), SizeCapError);
    EXPECT_THROW(motzkin_straus(3, {{0, 0}}), DomainError);
}

TEST(MotzkinStraus, RandomGraphsAgreeWithBruteForce) {
    Rng rng(71);
    for (int t = 0; t < 15; t++) {
        size_t n = 4 + t % 6;
        std::vector<std::pair<size_t, size_t>> edges;
        for (size_t i = 0; i < n; i++)
            for (size_t j = i + 1; j < n; j++)
                if (rng.uniform() < 0.5) edges.emplace_back(i, j);
        auto r = motzkin_straus(n, edges, 1000 + t);
        double want = 1 - 1.0 / r.clique_number;
        EXPECT_NEAR(r.optimization_value, want, 1e-6) << "graph " << t;
        // Symmetric product states recover half of the quadratic form.
        EXPECT_NEAR(r.product_state_value, r.optimization_value / 2, 1e-6);
        EXPECT_GE(r.h_sep_lower, r.product_state_value - 1e-6);
    }
}

TEST(DataHiding, Structure) {
    for (size_t d = 2; d <= 6; d++) {
        auto r = data_hiding_bias(d);
        ASSERT_TRUE(r.ppt_norm_numeric.has_value());
        // Independent check of the closed form against a dense partial transpose via Eigen.
        ComplexMatrix diff = rho_sym(d).matrix() - rho_anti(d).matrix();
        double oracle = 0.5 * qtest::oracle_trace_norm(partial_transpose(diff, {d, d}, {0}));
        EXPECT_NEAR(r.ppt_norm_value, oracle, 1e-9);
        EXPECT_NEAR(*r.ppt_norm_numeric, oracle, 1e-9);
        EXPECT_NEAR(r.global_distance, 1, 1e-9);
        EXPECT_NEAR(r.ppt_measurement_bias, 2.0 / (d + 1), 1e-12);
        EXPECT_NEAR(r.local_bound, 1.0 / d, 1e-15);
    }
    EXPECT_THROW(data_hiding_bias(1), DomainError);
}

TEST(Bcy, SeparableStateHasZeroBias) {
    Rng rng(72);
    auto rho = sample_separable(2, 2, 3, rng);
    std::vector<ComplexMatrix> a{random_measurement(2, rng), random_measurement(2, rng)};
    std::vector<ComplexMatrix> b{ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({0, 1})};
    // The separable input itself is not among the candidates, but the interval bound covers it.
    auto r = bcy_inequality_check(rho, a, b, 1000);
    EXPECT_LE(r.lhs_bias, 1e-6);
    EXPECT_TRUE(r.holds);
}

TEST(Bcy, ExtendibleStates) {
    for (uint64_t seed = 0; seed < 5; seed++) {
        auto inst = random_extendible_state(2, 2, 4, seed);
        Rng rng(seed);
        std::vector<ComplexMatrix> a{random_measurement(2, rng), random_measurement(2, rng)};
        ComplexMatrix u = haar_unitary(2, rng);
        std::vector<ComplexMatrix> b{ComplexMatrix::projector(u.col(0)), ComplexMatrix::projector(u.col(1))};
        auto r = bcy_inequality_check(inst.rho, a, b, 4);
        EXPECT_NEAR(r.rhs_bound, std::sqrt(2 * std::log(2.0) / 4), 1e-12);
        EXPECT_TRUE(r.holds);
        ComplexMatrix back = partial_trace(inst.extension.density(), inst.extension.dims(), {0, 3});
        qtest::expect_matrix_near(back, inst.rho.matrix(), 1e-10);
    }
}

TEST(Bcy, PhiPlusOneExtendible) {
    std::vector<ComplexMatrix> a{ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({0, 1})};
    std::vector<ComplexMatrix> b{ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({0, 1})};
    auto r = bcy_inequality_check(DensityMatrix(bell_state(BellState::PhiPlus)), a, b, 1);
    EXPECT_NEAR(r.rhs_bound, std::sqrt(2 * std::log(2.0)), 1e-12);
    EXPECT_LE(r.lhs_bias, 1);
    EXPECT_TRUE(r.holds);
}

TEST(Bcy, RejectsInvalidMeasurements) {
    auto rho = DensityMatrix(bell_state(BellState::PhiPlus));
    std::vector<ComplexMatrix> a{ComplexMatrix::identity(2) * Complex(2)};
    std::vector<ComplexMatrix> b{ComplexMatrix::identity(2)};
    EXPECT_THROW(bcy_inequality_check(rho, a, b, 2), DomainError);
    std::vector<ComplexMatrix> a2{ComplexMatrix::identity(2)};
    std::vector<ComplexMatrix> b2{ComplexMatrix::diagonal({1, 0})};
    EXPECT_THROW(bcy_inequality_check(rho, a2, b2, 2), DomainError);
}
