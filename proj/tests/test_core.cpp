#include "kholevo/core.hpp"
#include "kholevo/entropy.hpp"
#include "kholevo/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace kholevo;

namespace {

Operator diag(std::initializer_list<double> d) {
    Operator m = Operator::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index k = 0;
    for (double x : d) m(k, k) = x, ++k;
    return m;
}

Ket ket(std::initializer_list<complex> amps) {
    Ket v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index k = 0;
    for (auto a : amps) v(k++) = a;
    return v;
}

Ensemble pair(double p, const Ket& a, const Ket& b) { return Ensemble({p, 1.0 - p}, {pure_state(a), pure_state(b)}); }

void expect_matrix_near(const Operator& a, const Operator& b, double tol) {
    ASSERT_EQ(a.rows(), b.rows());
    ASSERT_EQ(a.cols(), b.cols());
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol);
}

MultipartiteState bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return MultipartiteState(pure_state(ket({s, 0, 0, s})), SubsystemLayout{{"A", 2}, {"B", 2}});
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
    expect_matrix_near(kron(Operator::Identity(2, 2), Operator::Identity(2, 2)), Operator::Identity(4, 4), 0.0);
}

TEST(Kron, BasisProjectorPlacement) {
    const Operator k = kron(basis_projector(2, 0), basis_projector(2, 1));
    Operator expected = Operator::Zero(4, 4);
    expected(1, 1) = 1.0;
    expect_matrix_near(k, expected, 0.0);
}

TEST(Kron, MatchesIndexFormula) {
    Rng rng(7);
    const Operator a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(3, 3, rng);
    expect_matrix_near(kron(a, b), oracle::kron(a, b), 1e-15);
}

TEST(Kron, AssociativeAndTraceMultiplicative) {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Operator a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(3, 3, rng), c = gaussian_matrix(2, 2, rng);
        expect_matrix_near(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-14 * (1.0 + a.norm() * b.norm() * c.norm()));
        EXPECT_NEAR(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-12);
    }
}

TEST(PartialTrace, RecoversChannelStateFromXQ) {
    Rng rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        const auto e = random_ensemble(3, 4, 3, rng);
        const auto q = partial_trace(assemble_xq(e), {"X"});
        expect_matrix_near(q.matrix(), e.average().matrix(), 1e-12);
        EXPECT_EQ(q.layout().labels(), LabelSet{"Q"});
    }
}

TEST(PartialTrace, ProductStateFactorizes) {
    Rng rng(5);
    const auto a = MultipartiteState(random_density(2, 2, rng), SubsystemLayout{{"A", 2}});
    const auto b = MultipartiteState(random_density(3, 2, rng), SubsystemLayout{{"B", 3}});
    const auto ab = tensor(a, b);
    expect_matrix_near(partial_trace(ab, {"B"}).matrix(), a.matrix(), 1e-14);
    expect_matrix_near(partial_trace(ab, {"A"}).matrix(), b.matrix(), 1e-14);
}

TEST(PartialTrace, BellStateMarginalIsMaximallyMixed) {
    const auto s = bell();
    const Operator expected = oracle::trace_second(s.matrix(), 2, 2);
    expect_matrix_near(expected, Operator::Identity(2, 2) / 2.0, 1e-15);
    expect_matrix_near(partial_trace(s, {"B"}).matrix(), expected, 1e-15);
}

TEST(PartialTrace, MatchesIndexSumsOnRandomStates) {
    Rng rng(21);
    const auto s = random_multipartite(SubsystemLayout{{"A", 3}, {"B", 2}}, rng);
    expect_matrix_near(partial_trace(s, {"B"}).matrix(), oracle::trace_second(s.matrix(), 3, 2), 1e-14);
    expect_matrix_near(partial_trace(s, {"A"}).matrix(), oracle::trace_first(s.matrix(), 3, 2), 1e-14);
}

TEST(PartialTrace, ComposesAndPreservesTrace) {
    Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const auto s = random_multipartite(SubsystemLayout{{"A", 2}, {"B", 3}, {"C", 2}}, rng);
        const auto stepwise = partial_trace(partial_trace(s, {"A"}), {"B"});
        const auto joint = partial_trace(s, {"A", "B"});
        expect_matrix_near(stepwise.matrix(), joint.matrix(), 1e-12);
        EXPECT_NEAR(joint.matrix().trace().real(), 1.0, 1e-12);
        // keeps original order
        EXPECT_EQ(partial_trace(s, {"B"}).layout().labels(), (LabelSet{"A", "C"}));
    }
}

TEST(PartialTrace, Errors) {
    const auto s = bell();
    EXPECT_THROW(partial_trace(s, {"Z"}), std::invalid_argument);
    EXPECT_THROW(partial_trace(s, {"A", "B"}), std::invalid_argument);
    EXPECT_THROW(partial_trace(s, {}), std::invalid_argument);
}

TEST(AssembleXQ, SingleMemberIsTheStateItself) {
    Rng rng(2);
    const auto rho = random_density(3, 2, rng);
    const auto xq = assemble_xq(Ensemble({1.0}, {rho}));
    EXPECT_EQ(xq.layout().parts()[0].dim, 1u);
    expect_matrix_near(xq.matrix(), rho.matrix(), 0.0);
}

TEST(AssembleXQ, OrthogonalPairHandExpansion) {
    const auto xq = assemble_xq(pair(0.5, ket({1, 0}), ket({0, 1})));
    expect_matrix_near(xq.matrix(), diag({0.5, 0, 0, 0.5}), 0.0);
}

TEST(AssembleXQ, PreparerMarginalIsDiagonalPrior) {
    Rng rng(9);
    for (int rep = 0; rep < 10; ++rep) {
        const auto e = random_ensemble(2, 3, 2, rng);
        const auto x = partial_trace(assemble_xq(e), {"Q"});
        Operator expected = Operator::Zero(3, 3);
        for (int i = 0; i < 3; ++i) expected(i, i) = e.probs()[static_cast<std::size_t>(i)];
        expect_matrix_near(x.matrix(), expected, 1e-14);
    }
}

TEST(AssembleXQ, BlockDiagonalExactly) {
    Rng rng(13);
    const auto e = random_ensemble(3, 4, 3, rng);
    const auto xq = assemble_xq(e);
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j)
            if (i != j) EXPECT_EQ(xq.matrix().block(i * 3, j * 3, 3, 3).cwiseAbs().maxCoeff(), 0.0);
}

TEST(AssembleXQ, SplitRoundTrip) {
    Rng rng(14);
    const auto e = random_ensemble(2, 3, 2, rng);
    const auto back = split_xq(assemble_xq(e));
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_NEAR(back.probs()[i], e.probs()[i], 1e-14);
        expect_matrix_near(back.states()[i].matrix(), e.states()[i].matrix(), 1e-13);
    }
}

TEST(AssembleXQ, GroupingProperty) {
    Rng rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        const auto e = random_ensemble(3, 3, 3, rng);
        double expected = oracle::shannon(e.probs());
        for (std::size_t i = 0; i < e.size(); ++i)
            expected += e.probs()[i] * oracle::entropy_generic(e.states()[i].matrix());
        EXPECT_NEAR(subset_entropy(assemble_xq(e), {"X", "Q"}), expected, 1e-9);
    }
}

TEST(ValidateDensity, AcceptsMaximallyMixed) { EXPECT_NO_THROW(validate_density(Operator::Identity(2, 2) / 2.0)); }

TEST(ValidateDensity, ReportsPositivityViolation) {
    try {
        validate_density(diag({1.5, -0.5}));
        FAIL() << "expected a positivity violation";
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.kind(), InvariantViolation::Kind::positivity);
        EXPECT_NEAR(e.magnitude(), 0.5, 1e-12);
    }
}

TEST(ValidateDensity, ReportsHermiticityViolation) {
    Operator m(2, 2);
    m << 1, 1, 0, 0;
    try {
        validate_density(m);
        FAIL() << "expected a hermiticity violation";
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.kind(), InvariantViolation::Kind::hermiticity);
        EXPECT_NEAR(e.magnitude(), 1.0, 1e-12);
    }
}

TEST(ValidateDensity, ReportsTraceViolation) {
    try {
        validate_density(diag({0.5, 0.4}));
        FAIL() << "expected a trace violation";
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.kind(), InvariantViolation::Kind::trace);
        EXPECT_NEAR(e.magnitude(), 0.1, 1e-12);
    }
}

TEST(Ensemble, RejectsBadProbabilities) {
    const auto rho = maximally_mixed(2);
    EXPECT_THROW(Ensemble({0.5, 0.4}, {rho, rho}), InvariantViolation);
    EXPECT_THROW(Ensemble({1.5, -0.5}, {rho, rho}), InvariantViolation);
    EXPECT_THROW(Ensemble({1.0}, {rho, rho}), InvariantViolation);
    EXPECT_THROW(Ensemble({0.5, 0.5}, {rho, maximally_mixed(3)}), InvariantViolation);
}

TEST(Random, RankOneIsPure) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(4, 1, seed);
        EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
        EXPECT_NO_THROW(validate_density(rho.matrix()));
    }
}

TEST(Random, UnitaryIsUnitary) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Operator u = random_unitary(3, seed);
        EXPECT_LE((u * u.adjoint() - Operator::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Random, DeterministicPerSeed) {
    EXPECT_EQ(random_density(3, 2, 42).matrix(), random_density(3, 2, 42).matrix());
    EXPECT_EQ(random_unitary(3, 42), random_unitary(3, 42));
    EXPECT_NE(random_unitary(3, 42), random_unitary(3, 43));
}

TEST(Random, InvalidRank) {
    EXPECT_THROW(random_density(2, 0, 1), std::invalid_argument);
    EXPECT_THROW(random_density(2, 3, 1), std::invalid_argument);
}

TEST(Layout, RejectsDuplicateLabelsAndMismatch) {
    EXPECT_THROW(SubsystemLayout({{"A", 2}, {"A", 2}}), std::invalid_argument);
    EXPECT_THROW(MultipartiteState(maximally_mixed(4), SubsystemLayout{{"A", 2}, {"B", 3}}), std::invalid_argument);
}

TEST(EmbedOperator, MatchesKronOnAdjacentFactors) {
    Rng rng(4);
    const Operator u = random_unitary(2, rng);
    const SubsystemLayout layout{{"A", 2}, {"B", 3}, {"C", 2}};
    expect_matrix_near(embed_operator(u, layout, {"C"}), kron(Operator::Identity(6, 6), u), 1e-15);
    expect_matrix_near(embed_operator(u, layout, {"A"}), kron(u, Operator::Identity(6, 6)), 1e-15);
    // non-adjacent targets: (A, C) with B in between
    const Operator v = random_unitary(4, rng);
    const Operator lifted = embed_operator(v, layout, {"A", "C"});
    EXPECT_LE((lifted * lifted.adjoint() - Operator::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-12);
}
