#include "kholevo/bounds.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace kholevo;

namespace {

const double s2 = 1.0 / std::sqrt(2.0);

Ket ket(std::initializer_list<complex> amps) {
    Ket v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index k = 0;
    for (auto a : amps) v(k++) = a;
    return v;
}

Ensemble pure_ensemble(std::vector<double> probs, std::initializer_list<Ket> kets) {
    std::vector<DensityOperator> states;
    for (const auto& k : kets) states.push_back(pure_state(k));
    return Ensemble(std::move(probs), std::move(states));
}

Ensemble orthogonal_pair() { return pure_ensemble({0.5, 0.5}, {ket({1, 0}), ket({0, 1})}); }
Ensemble zero_plus() { return pure_ensemble({0.5, 0.5}, {ket({1, 0}), ket({s2, s2})}); }
Ensemble bb84() {
    return pure_ensemble({0.25, 0.25, 0.25, 0.25}, {ket({1, 0}), ket({0, 1}), ket({s2, s2}), ket({s2, -s2})});
}

std::vector<oracle::Mat> states_of(const Ensemble& e) {
    std::vector<oracle::Mat> out;
    for (const auto& s : e.states()) out.push_back(s.matrix());
    return out;
}

double grid_optimum(const Ensemble& e) { return oracle::qubit_grid_optimum(e.probs(), states_of(e)); }

OptimizerConfig quick_config(std::uint64_t seed = 1) {
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.steps = 120;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(Chi, Fixtures) {
    EXPECT_NEAR(holevo_chi(orthogonal_pair()), 1.0, 1e-9);
    Rng rng(40);
    const auto rho = random_density(3, 2, rng);
    EXPECT_NEAR(holevo_chi(Ensemble({0.3, 0.7}, {rho, rho})), 0.0, 1e-12);
    EXPECT_NEAR(holevo_chi(zero_plus()), oracle::binary_entropy(std::pow(std::sin(std::numbers::pi / 8), 2)), 1e-9);
    EXPECT_NEAR(holevo_chi(bb84()), 1.0, 1e-9);
}

TEST(ChiRange, SaturatesAtTheEnds) {
    // orthogonal pure states: chi = H[p]
    const auto r = chi_range(pure_ensemble({0.3, 0.7}, {ket({1, 0}), ket({0, 1})}));
    EXPECT_NEAR(r.value("chi"), oracle::binary_entropy(0.3), 1e-12);
    EXPECT_NEAR(r.check("chi <= H[p]").margin, 0.0, 1e-12);
    EXPECT_NEAR(r.check("S(rho) <= H[p] + sum p_i S(rho_i)").margin, 0.0, 1e-12);
    EXPECT_TRUE(r.all_satisfied());
    const auto same = chi_range(Ensemble({0.5, 0.5}, {maximally_mixed(2), maximally_mixed(2)}));
    EXPECT_NEAR(same.check("0 <= chi").margin, 0.0, 1e-12);
    EXPECT_NEAR(same.check("sum p_i S(rho_i) <= S(rho)").margin, 0.0, 1e-12);
}

TEST(ChiRange, RandomSweep) {
    for (std::uint64_t k = 0; k < 200; ++k) {
        Rng rng(case_seed(41, k));
        const std::size_t dim = 2 + k % 2;
        const auto e = random_ensemble(dim, 1 + k % 4, dim, rng);
        const auto r = chi_range(e);
        EXPECT_TRUE(r.all_satisfied()) << "case " << k;
        EXPECT_NEAR(r.value("chi"), holevo_chi(e), 1e-12);
    }
}

TEST(VerifyKholevo, OrthogonalPairIsTight) {
    const auto r = verify_kholevo(orthogonal_pair(), ProjectiveMeasurement::computational(2));
    EXPECT_NEAR(r.value("I = H(X:A)"), 1.0, 1e-9);
    EXPECT_NEAR(r.value("chi = S(X:Q)"), 1.0, 1e-9);
    EXPECT_NEAR(r.value("S(X':Q'|A')"), 0.0, 1e-9);
    EXPECT_NEAR(r.check("I <= chi").margin, 0.0, 1e-9);
    EXPECT_TRUE(r.all_satisfied());
}

TEST(VerifyKholevo, Bb84) {
    const auto r = verify_kholevo(bb84(), ProjectiveMeasurement::computational(2));
    EXPECT_NEAR(r.value("I = H(X:A)"), 0.5, 1e-9);
    EXPECT_NEAR(r.value("chi = S(X:Q)"), 1.0, 1e-9);
    EXPECT_NEAR(r.value("S(X':Q'A')"), 1.0, 1e-9);
    EXPECT_NEAR(r.value("I + S(X':Q'|A')"), 1.0, 1e-8);
    EXPECT_NEAR(r.check("I <= chi").margin, 0.5, 1e-9);
}

TEST(VerifyKholevo, NonCommutingPairsNeverSaturate) {
    const auto e = zero_plus();
    for (std::uint64_t k = 0; k < 50; ++k) {
        Rng rng(case_seed(42, k));
        const auto r = verify_kholevo(e, random_projective(2, rng));
        EXPECT_GT(r.check("I <= chi").margin, 1e-6) << "case " << k;
    }
}

TEST(VerifyKholevo, RandomSweepWithBalance) {
    for (std::uint64_t k = 0; k < 200; ++k) {
        Rng rng(case_seed(43, k));
        const std::size_t dim = 2 + k % 2;
        const auto e = random_ensemble(dim, 2 + k % 3, dim, rng);
        const auto r = verify_kholevo(e, random_projective(dim, rng, k % 2 == 1));
        EXPECT_TRUE(r.all_satisfied()) << "case " << k;
        EXPECT_NEAR(r.value("S(X':Q'A')"), r.value("chi = S(X:Q)"), 1e-9);
        EXPECT_NEAR(r.value("I + S(X':Q'|A')"), r.value("chi = S(X:Q)"), 1e-8);
        EXPECT_NEAR(r.value("S(X':A')"), r.value("I = H(X:A)"), 1e-9);
    }
}

TEST(VerifyKholevo, PovmPathAgreesWithDirectFormula) {
    const auto e = zero_plus();
    const auto r = verify_kholevo(e, trine_povm());
    EXPECT_NEAR(r.value("I = H(X:A)"), r.value("I direct (Tr E_a rho_i)"), 1e-9);
    EXPECT_NEAR(r.value("I direct (Tr E_a rho_i)"),
                oracle::information(e.probs(), states_of(e), trine_povm().elements()), 1e-10);
    EXPECT_NEAR(r.value("chi = S(X:Q)"), holevo_chi(e), 1e-9);
    EXPECT_TRUE(r.all_satisfied());
    for (std::uint64_t k = 0; k < 20; ++k) {
        Rng rng(case_seed(44, k));
        const auto ens = random_ensemble(2, 3, 2, rng);
        const auto rp = verify_kholevo(ens, random_povm(2, 3, rng));
        EXPECT_TRUE(rp.all_satisfied());
        EXPECT_NEAR(rp.value("I = H(X:A)"), rp.value("I direct (Tr E_a rho_i)"), 1e-9);
    }
}

TEST(GeneralInequality, DiagonalStatesAreEqual) {
    for (std::uint64_t k = 0; k < 100; ++k) {
        Rng rng(case_seed(45, k));
        const auto p = random_probabilities(4, rng);
        Operator d = Operator::Zero(4, 4);
        for (Eigen::Index i = 0; i < 4; ++i) d(i, i) = p[static_cast<std::size_t>(i)];
        const MultipartiteState s(validate_density(d), SubsystemLayout{{"X", 2}, {"Y", 2}});
        const auto r = general_inequality(s);
        std::vector<std::vector<double>> joint{{p[0], p[1]}, {p[2], p[3]}};
        EXPECT_NEAR(r.value("H(X:Y)"), oracle::classical_mutual(joint), 1e-12);
        EXPECT_NEAR(r.check("H(X:Y) <= S(X:Y)").margin, 0.0, 1e-9);
    }
}

TEST(GeneralInequality, BellState) {
    const MultipartiteState bell(pure_state(ket({s2, 0, 0, s2})), SubsystemLayout{{"X", 2}, {"Y", 2}});
    const auto r = general_inequality(bell);
    EXPECT_NEAR(r.value("H(X:Y)"), 1.0, 1e-12);
    EXPECT_NEAR(r.value("S(X:Y)"), 2.0, 1e-9);
    EXPECT_TRUE(r.all_satisfied());
}

TEST(GeneralInequality, RandomTwoQubitSweep) {
    for (std::uint64_t k = 0; k < 500; ++k) {
        Rng rng(case_seed(46, k));
        const auto s = random_multipartite(SubsystemLayout{{"X", 2}, {"Y", 2}}, rng);
        EXPECT_TRUE(general_inequality(s).all_satisfied()) << "case " << k;
    }
    Rng rng(47);
    const auto tri = random_multipartite(SubsystemLayout{{"X", 2}, {"Y", 2}, {"Z", 2}}, rng);
    EXPECT_THROW(general_inequality(tri), std::invalid_argument);
}

TEST(Report, RenderShowsBothSidesAndMargin) {
    BoundReport r;
    r.add("a", 0.25);
    r.require("a <= b", 0.25, 0.75);
    r.require("b <= a", 0.75, 0.25);
    EXPECT_FALSE(r.all_satisfied());
    EXPECT_NEAR(r.check("a <= b").margin, 0.5, 1e-15);
    const auto text = render(r, "demo");
    EXPECT_NE(text.find("a <= b"), std::string::npos);
    EXPECT_NE(text.find("0.750000"), std::string::npos);
    EXPECT_NE(text.find("-0.500000"), std::string::npos);
    EXPECT_THROW(r.value("missing"), std::out_of_range);
}

TEST(Generators, TracelessHermitianAndComplete) {
    for (std::size_t dim : {2u, 3u, 4u}) {
        const auto gens = hermitian_generators(dim);
        ASSERT_EQ(gens.size(), dim * dim - 1);
        for (std::size_t a = 0; a < gens.size(); ++a) {
            EXPECT_LE((gens[a] - gens[a].adjoint()).cwiseAbs().maxCoeff(), 0.0);
            EXPECT_NEAR(std::abs(gens[a].trace()), 0.0, 1e-15);
            for (std::size_t b = 0; b < gens.size(); ++b)
                EXPECT_NEAR(std::abs((gens[a] * gens[b]).trace()), a == b ? 2.0 : 0.0, 1e-12);
        }
        Rng rng(48);
        std::vector<double> theta(gens.size());
        std::normal_distribution<double> n;
        for (auto& t : theta) t = n(rng);
        const Operator u = unitary_from_parameters(gens, theta);
        EXPECT_LE((u * u.adjoint() - Operator::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Optimizer, OrthogonalPairReachesOneBit) {
    const auto res = optimize_accessible_info(orthogonal_pair(), quick_config());
    EXPECT_GE(res.bits, 1.0 - 1e-6);
    EXPECT_LE(res.bits, 1.0 + 1e-9);
}

TEST(Optimizer, Bb84ReachesHalfBit) {
    const auto e = bb84();
    const auto res = optimize_accessible_info(e, quick_config());
    EXPECT_GE(res.bits, 0.5 - 1e-6);
    EXPECT_NEAR(res.bits, grid_optimum(e), 1e-3);
    EXPECT_LE(res.bits, holevo_chi(e) + 1e-9);
}

TEST(Optimizer, ZeroPlusMatchesGridAndStaysBelowChi) {
    const auto e = zero_plus();
    const auto res = optimize_accessible_info(e, quick_config());
    const double grid = grid_optimum(e);
    EXPECT_NEAR(res.bits, grid, 1e-3);
    EXPECT_LT(res.bits, holevo_chi(e) - 1e-6);
    // the best basis reproduces the reported value
    EXPECT_NEAR(extracted_info(e, res.measurement()).bits, res.bits, 1e-12);
}

TEST(Optimizer, HistoryIsMonotone) {
    const auto res = optimize_accessible_info(zero_plus(), quick_config());
    ASSERT_FALSE(res.history.empty());
    for (std::size_t k = 1; k < res.history.size(); ++k) EXPECT_GE(res.history[k], res.history[k - 1]);
    EXPECT_DOUBLE_EQ(res.history.back(), res.bits);
}

TEST(Optimizer, ReproduciblePerSeed) {
    Rng rng(49);
    const auto e = random_ensemble(3, 3, 2, rng);
    const auto a = optimize_accessible_info(e, quick_config(7));
    const auto b = optimize_accessible_info(e, quick_config(7));
    EXPECT_EQ(a.bits, b.bits);
    EXPECT_EQ(a.restart, b.restart);
    EXPECT_EQ(a.history, b.history);
    EXPECT_TRUE(a.basis == b.basis);
    EXPECT_LE(a.bits, holevo_chi(e) + 1e-9);
}

TEST(Optimizer, EmbeddedSearchFindsAntiTrine) {
    // three real states at 120 degrees; the POVM onto the orthogonal complements
    // rules out one member per outcome and beats every basis measurement
    std::vector<DensityOperator> states;
    std::vector<oracle::Mat> anti;
    for (int k = 0; k < 3; ++k) {
        const double half = k * std::numbers::pi / 3.0;
        states.push_back(pure_state(ket({std::cos(half), std::sin(half)})));
        const Ket perp = ket({-std::sin(half), std::cos(half)});
        anti.push_back(2.0 / 3.0 * perp * perp.adjoint());
    }
    const Ensemble e({1.0 / 3, 1.0 / 3, 1.0 / 3}, states);
    const double anti_trine = oracle::information(e.probs(), states_of(e), anti);
    EXPECT_NEAR(anti_trine, std::log2(3.0) - 1.0, 1e-12);
    auto cfg = quick_config();
    const double projective = optimize_accessible_info(e, cfg).bits;
    EXPECT_NEAR(projective, grid_optimum(e), 1e-3);
    cfg.embed_dim = 3;
    const double embedded = optimize_accessible_info(e, cfg).bits;
    EXPECT_GT(anti_trine, projective + 0.05);
    EXPECT_GE(embedded, anti_trine - 1e-3);
    EXPECT_LE(embedded, holevo_chi(e) + 1e-9);
}

TEST(Optimizer, InvalidConfig) {
    const auto e = orthogonal_pair();
    auto cfg = quick_config();
    cfg.restarts = 0;
    EXPECT_THROW(optimize_accessible_info(e, cfg), std::invalid_argument);
    cfg = quick_config();
    cfg.decay = 1.0;
    EXPECT_THROW(optimize_accessible_info(e, cfg), std::invalid_argument);
    cfg = quick_config();
    cfg.initial_step = 0.0;
    EXPECT_THROW(optimize_accessible_info(e, cfg), std::invalid_argument);
}
