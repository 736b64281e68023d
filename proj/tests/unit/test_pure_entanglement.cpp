#include <cmath>

#include "qinfo/entropy.hpp"
#include "qinfo/errors.hpp"
#include "qinfo/pure_entanglement.hpp"
#include "support.hpp"

using namespace qinfo;

namespace {

PureState random_pure(const Dims &dims, Rng &rng) { return PureState(haar_state(total_dim(dims), rng), dims); }

ComplexMatrix random_invertible(Rng &rng) {
    // Ginibre matrices are invertible with probability one; guard against bad luck.
    for (;;) {
        ComplexMatrix g = ginibre(2, 2, rng);
        if (std::abs(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)) > 0.1) return g;
    }
}

ComplexMatrix unit_determinant(Rng &rng) {
    ComplexMatrix g = random_invertible(rng);
    Complex det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    return g * (1.0 / std::sqrt(det));
}

// Polynomial evaluated directly from its definition, independent of the library.
Complex oracle_hyperdeterminant(const ComplexVector &p) {
    auto a = [&](int i, int j, int k) { return p[4 * i + 2 * j + k]; };
    Complex d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) + a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                 a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) + a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
    Complex d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                 a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                 a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
    Complex d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    return d1 - 2.0 * d2 + 4.0 * d3;
}

PureState schmidt_pair(double p) { return PureState({std::sqrt(p), 0, 0, std::sqrt(1 - p)}, {2, 2}); }

}  // namespace

TEST(Schmidt, Examples) {
    auto s = schmidt(bell_state(BellState::PhiPlus), {0});
    EXPECT_NEAR(s.coefficients[0], M_SQRT1_2, 1e-14);
    EXPECT_NEAR(s.coefficients[1], M_SQRT1_2, 1e-14);
    auto p = schmidt(PureState({0, 1, 0, 0}, {2, 2}), {0});
    EXPECT_NEAR(p.coefficients[0], 1, 1e-14);
    EXPECT_NEAR(p.coefficients[1], 0, 1e-14);
    EXPECT_THROW(schmidt(bell_state(BellState::PhiPlus), {2}), DimensionError);
}

TEST(Schmidt, MarginalSpectraAndReconstruction) {
    Rng rng(51);
    for (int t = 0; t < 30; t++) {
        Dims dims = t % 2 ? Dims{3, 3} : Dims{2, 3, 2};
        std::vector<size_t> cut = t % 2 ? std::vector<size_t>{0} : std::vector<size_t>{0, 2};
        PureState psi = random_pure(dims, rng);
        auto s = schmidt(psi, cut);
        double sum = 0;
        for (double c : s.coefficients) sum += c * c;
        EXPECT_NEAR(sum, 1, 1e-10);
        qtest::expect_matrix_near(s.left_basis.adjoint() * s.left_basis, ComplexMatrix::identity(s.left_basis.cols()), 1e-10);
        qtest::expect_matrix_near(s.right_basis.adjoint() * s.right_basis, ComplexMatrix::identity(s.right_basis.cols()),
                                  1e-10);
        // Reassemble in A|B order and compare with the permuted input.
        std::vector<size_t> order = cut;
        for (size_t i = 0; i < dims.size(); i++)
            if (std::find(cut.begin(), cut.end(), i) == cut.end()) order.push_back(i);
        ComplexVector want = permute_systems(psi.amplitudes(), dims, order);
        ComplexVector got(want.size());
        for (size_t i = 0; i < s.coefficients.size(); i++) {
            ComplexVector term = kron(s.left_basis.col(i), s.right_basis.col(i));
            for (size_t x = 0; x < got.size(); x++) got[x] += s.coefficients[i] * term[x];
        }
        for (size_t x = 0; x < got.size(); x++) EXPECT_LE(std::abs(got[x] - want[x]), 1e-9);
        // Both marginals share the spectrum {s_i^2}.
        std::vector<size_t> rest(order.begin() + cut.size(), order.end());
        auto ea = qtest::oracle_eigenvalues(partial_trace(psi.density(), dims, cut));
        auto eb = qtest::oracle_eigenvalues(partial_trace(psi.density(), dims, rest));
        for (size_t i = 0; i < std::min(ea.size(), eb.size()); i++) {
            EXPECT_NEAR(ea[i], eb[i], 1e-10);
            EXPECT_NEAR(ea[i], s.coefficients[i] * s.coefficients[i], 1e-10);
        }
    }
}

TEST(EntanglementEntropy, Examples) {
    EXPECT_NEAR(entanglement_entropy(bell_state(BellState::PhiPlus), {0}), 1, 1e-12);
    EXPECT_NEAR(entanglement_entropy(PureState({1, 0, 0, 0}, {2, 2}), {0}), 0, 1e-12);
    EXPECT_NEAR(entanglement_entropy(schmidt_pair(0.9), {0}), 0.468995593589281, 1e-12);
}

TEST(Teleport, ComputationalZero) {
    auto t = teleport_branch(PureState({1, 0}), 0);
    EXPECT_NEAR(std::abs(t.bob_state.amplitudes()[0]), 1, 1e-12);
    EXPECT_NEAR(t.fidelity, 1, 1e-12);
}

TEST(Teleport, AllBranchesFidelityOne) {
    Rng rng(52);
    for (int t = 0; t < 20; t++) {
        PureState psi(haar_state(2, rng));
        for (size_t i = 0; i < 4; i++) {
            auto tr = teleport_branch(psi, i);
            EXPECT_NEAR(tr.fidelity, 1, 1e-10);
            EXPECT_NEAR(std::norm(inner(psi.amplitudes(), tr.bob_state.amplitudes())), 1, 1e-10);
            EXPECT_NEAR(tr.probabilities[i], 0.25, 1e-10);
        }
    }
}

TEST(Teleport, EntanglementSwapping) {
    Rng rng(53);
    for (int t = 0; t < 10; t++) {
        PureState psi = random_pure({3, 2}, rng);
        for (size_t i = 0; i < 4; i++) {
            auto tr = teleport_entangled_branch(psi, i);
            EXPECT_NEAR(std::norm(inner(psi.amplitudes(), tr.bob_state.amplitudes())), 1, 1e-10);
        }
    }
}

TEST(Teleport, OutcomesUniformChiSquare) {
    PureState psi = PureState::normalize({0.3, Complex(0.4, 0.5)}, {2});
    std::array<int, 4> counts{};
    const int n = 4000;
    for (int s = 0; s < n; s++) {
        auto tr = teleport(psi, mix_seed(99, s));
        counts[tr.outcome]++;
        ASSERT_NEAR(tr.fidelity, 1, 1e-10);
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
    // 0.999 quantile of chi-square with 3 degrees of freedom.
    EXPECT_LT(chi2, 16.266);
}

TEST(Teleport, NoSignalling) {
    Rng rng(54);
    std::vector<PureState> inputs{PureState({1, 0}), PureState({M_SQRT1_2, M_SQRT1_2})};
    for (int t = 0; t < 10; t++) inputs.emplace_back(haar_state(2, rng));
    for (auto &psi : inputs)
        qtest::expect_matrix_near(unconditioned_bob_state(psi).matrix(), ComplexMatrix::identity(2) * Complex(0.5), 1e-10);
}

TEST(Distillation, Examples) {
    for (size_t n : {1, 5, 50}) EXPECT_EQ(distillation_yield(Distribution({1, 0}), n, 1).yield_bits, 0);
    // n = 2 at (1/2, 1/2): find a seed with type (1, 1).
    bool seen = false;
    for (uint64_t s = 0; s < 50 && !seen; s++) {
        auto y = distillation_yield(Distribution({0.5, 0.5}), 2, s);
        if (y.type[0] == 1) {
            EXPECT_NEAR(y.yield_bits, 1, 1e-12);
            seen = true;
        }
    }
    EXPECT_TRUE(seen);
    int inside = 0;
    for (uint64_t s = 0; s < 200; s++) {
        double r = distillation_yield(Distribution({0.5, 0.5}), 1000, s).yield_bits / 1000;
        inside += r >= 0.95 && r <= 1.0;
    }
    EXPECT_GE(inside, 198);
}

TEST(Distillation, ConcentratesAtEntropy) {
    Distribution spec({0.8, 0.2});
    double sum = 0;
    for (uint64_t s = 0; s < 100; s++) sum += distillation_yield(spec, 2000, s).yield_bits / 2000;
    EXPECT_NEAR(sum / 100, shannon_entropy(spec), 0.02);
}

TEST(Dilution, Examples) {
    EXPECT_EQ(dilution_rank_bound(PureState({1, 0, 0, 0}, {2, 2}), {0}, 10, 0), 0u);
    EXPECT_EQ(dilution_rank_bound(bell_state(BellState::PhiPlus), {0}, 10, 0), 10u);
    EXPECT_EQ(dilution_rank_bound(schmidt_pair(0.9), {0}, 20, 0.05), 11u);
}

TEST(Dilution, AgreesWithTypicalSubspace) {
    PureState psi = schmidt_pair(0.8);
    DensityMatrix rho_a(partial_trace(psi.density(), {2, 2}, {0}));
    for (size_t n : {4, 8}) {
        auto sub = typical_subspace_projector(rho_a, n, 0.3);
        EXPECT_LE(std::log2(double(sub.rank)), double(dilution_rank_bound(psi, {0}, n, 0.3)));
    }
}

TEST(Slocc, Examples) {
    PureState w = w_state(3);
    auto same = slocc_apply({ComplexMatrix::identity(2), ComplexMatrix::identity(2), ComplexMatrix::identity(2)}, w);
    for (size_t i = 0; i < 8; i++) EXPECT_LE(std::abs(same.amplitudes()[i] - w.amplitudes()[i]), 1e-14);
    double eps = 0.1;
    ComplexMatrix squeeze = ComplexMatrix::diagonal({eps, 1 / eps});
    auto sq = slocc_apply({squeeze, squeeze, squeeze}, w);
    for (size_t i = 0; i < 8; i++) EXPECT_LE(std::abs(sq.amplitudes()[i] - w.amplitudes()[i]), 1e-12);
    EXPECT_THROW(slocc_apply({ComplexMatrix::projector({1, 0}), ComplexMatrix::identity(2), ComplexMatrix::identity(2)},
                             PureState({0, 0, 0, 0, 1, 0, 0, 0}, {2, 2, 2})),
                 DomainError);
}

TEST(Hyperdeterminant, Examples) {
    EXPECT_NEAR(std::abs(hyperdeterminant(ghz_state(3)) - 0.25), 0, 1e-15);
    EXPECT_NEAR(std::abs(hyperdeterminant(w_state(3))), 0, 1e-15);
    EXPECT_NEAR(std::abs(hyperdeterminant(basis_state({2, 2, 2}, {0, 0, 0}))), 0, 1e-15);
    EXPECT_THROW(hyperdeterminant(bell_state(BellState::PhiPlus)), DimensionError);
}

TEST(Hyperdeterminant, MatchesOracleAndIsInvariant) {
    Rng rng(55);
    for (int t = 0; t < 50; t++) {
        ComplexVector v = haar_state(8, rng);
        PureState psi(v, {2, 2, 2});
        Complex h = hyperdeterminant(psi);
        EXPECT_LE(std::abs(h - oracle_hyperdeterminant(v)), 1e-14);
        // Unit-determinant operators, applied without renormalization.
        ComplexVector img = tensor(std::vector<ComplexMatrix>{unit_determinant(rng), unit_determinant(rng),
                                                              unit_determinant(rng)}) *
                            v;
        Complex h2 = oracle_hyperdeterminant(img);
        EXPECT_LE(std::abs(h2 - h), 1e-9 * std::max(1.0, std::abs(h)));
        double scale = norm(img);
        PureState unit(normalized(img), {2, 2, 2});
        EXPECT_LE(std::abs(hyperdeterminant(unit) * std::pow(scale, 4) - h), 1e-9 * std::max(1.0, std::abs(h)));
    }
}

TEST(Classify, Representatives) {
    auto cls = [](const PureState &p) { return classify_three_qubit(p).slocc_class; };
    EXPECT_EQ(cls(basis_state({2, 2, 2}, {0, 0, 0})), SloccClass::Product);
    ComplexVector z{1, 0};
    auto phi = bell_state(BellState::PhiPlus).amplitudes();
    EXPECT_EQ(cls(PureState(kron(phi, z), {2, 2, 2})), SloccClass::BipartiteAB);
    EXPECT_EQ(cls(PureState(kron(z, phi), {2, 2, 2})), SloccClass::BipartiteBC);
    EXPECT_EQ(cls(PureState(permute_systems(kron(phi, z), {2, 2, 2}, {0, 2, 1}), {2, 2, 2})), SloccClass::BipartiteAC);
    EXPECT_EQ(cls(w_state(3)), SloccClass::W);
    EXPECT_EQ(cls(ghz_state(3)), SloccClass::GHZ);
}

TEST(Classify, InvariantUnderInvertibleLocalOps) {
    Rng rng(56);
    ComplexVector z{1, 0};
    auto phi = bell_state(BellState::PhiPlus).amplitudes();
    std::vector<std::pair<PureState, SloccClass>> reps{
        {basis_state({2, 2, 2}, {0, 0, 0}), SloccClass::Product},
        {PureState(kron(phi, z), {2, 2, 2}), SloccClass::BipartiteAB},
        {PureState(kron(z, phi), {2, 2, 2}), SloccClass::BipartiteBC},
        {PureState(permute_systems(kron(phi, z), {2, 2, 2}, {0, 2, 1}), {2, 2, 2}), SloccClass::BipartiteAC},
        {w_state(3), SloccClass::W},
        {ghz_state(3), SloccClass::GHZ}};
    for (auto &[psi, want] : reps) {
        for (int t = 0; t < 50; t++) {
            auto img = slocc_apply({random_invertible(rng), random_invertible(rng), random_invertible(rng)}, psi);
            auto c = classify_three_qubit(img);
            if (!c.undetermined()) EXPECT_EQ(*c.slocc_class, want) << to_string(want) << " trial " << t;
            if (want == SloccClass::W) {
                EXPECT_FALSE(c.undetermined());
                EXPECT_TRUE(w_polytope_check(img));
            }
        }
    }
}

TEST(Marginals, Compatibility) {
    EXPECT_TRUE(three_qubit_spectra_compatible({0.5, 0.5, 0.5}));
    EXPECT_FALSE(three_qubit_spectra_compatible({0.9, 0.9, 0.5}));
    EXPECT_TRUE(three_qubit_spectra_compatible({1, 1, 1}));
    EXPECT_THROW(three_qubit_spectra_compatible({0.4, 0.5, 0.5}), DomainError);
    EXPECT_THROW(three_qubit_state_from_spectra({0.9, 0.9, 0.5}), DomainError);
}

TEST(Marginals, AnsatzExamples) {
    auto half = three_qubit_state_from_spectra({0.5, 0.5, 0.5});
    for (size_t i : {0, 3, 5, 6}) EXPECT_NEAR(half.amplitudes()[i].real(), 0.5, 1e-12);
    for (size_t s = 0; s < 3; s++)
        qtest::expect_matrix_near(partial_trace(half.density(), {2, 2, 2}, {s}), ComplexMatrix::identity(2) * Complex(0.5),
                                  1e-12);
    auto prod = three_qubit_state_from_spectra({1, 1, 1});
    EXPECT_NEAR(prod.amplitudes()[0].real(), 1, 1e-12);
    auto q = three_qubit_state_from_spectra({0.75, 0.75, 0.75});
    EXPECT_NEAR(std::norm(q.amplitudes()[0]), 0.625, 1e-12);
    EXPECT_NEAR(std::norm(q.amplitudes()[3]), 0.125, 1e-12);
    auto lam = local_lambda_max(q);
    for (double l : lam) EXPECT_NEAR(l, 0.75, 1e-10);
}

TEST(Marginals, AnsatzRoundTripGrid) {
    int checked = 0;
    for (int i = 0; i <= 10; i++)
        for (int j = 0; j <= 10; j++)
            for (int k = 0; k <= 10; k++) {
                LocalSpectra lams{0.5 + 0.05 * i, 0.5 + 0.05 * j, 0.5 + 0.05 * k};
                if (!three_qubit_spectra_compatible(lams)) continue;
                auto back = local_lambda_max(three_qubit_state_from_spectra(lams));
                for (size_t s = 0; s < 3; s++) EXPECT_NEAR(back[s], lams[s], 1e-9);
                checked++;
            }
    EXPECT_GT(checked, 500);
}

TEST(Marginals, RandomStatesAreCompatible) {
    Rng rng(57);
    for (int t = 0; t < 100; t++) {
        PureState psi(haar_state(8, rng), {2, 2, 2});
        EXPECT_TRUE(three_qubit_spectra_compatible(local_lambda_max(psi)));
    }
}

TEST(WPolytope, Examples) {
    EXPECT_FALSE(w_polytope_check(ghz_state(3)));
    EXPECT_TRUE(w_polytope_check(w_state(3)));
    auto lam = local_lambda_max(w_state(3));
    EXPECT_NEAR(lam[0] + lam[1] + lam[2], 2, 1e-12);
}
