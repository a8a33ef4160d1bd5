// measurement.hpp
// Ancilla model of measurement without collapse: Q is coupled to an ancilla
// A by U_QA = sum_a P_a ⊗ U_a, and the outcome is read from A. Includes the
// dephased (decohered) variant, Neumark dilation of POVMs and sequential
// chains of measurements.

#pragma once

#include "kholevo/core.hpp"
#include "kholevo/entropy.hpp"
#include "kholevo/random.hpp"

#include <functional>
#include <numbers>

namespace kholevo {

namespace detail {

inline void check_square_family(const std::vector<Operator>& ops, const char* what) {
    if (ops.empty()) violation(InvariantViolation::Kind::shape, 1.0, std::string(what) + " has no elements");
    for (const auto& op : ops)
        if (op.rows() != op.cols() || op.rows() != ops.front().rows() || op.rows() == 0)
            violation(InvariantViolation::Kind::shape, 1.0, std::string(what) + " elements must be square of equal size");
}

inline void check_sums_to_identity(const std::vector<Operator>& ops, const char* what) {
    Operator sum = Operator::Zero(ops.front().rows(), ops.front().cols());
    for (const auto& op : ops) sum += op;
    const double defect = max_abs(sum - Operator::Identity(sum.rows(), sum.cols()));
    if (defect > tolerance::projector) violation(InvariantViolation::Kind::completeness, defect, what);
}

}  // namespace detail

/// Complete family of mutually orthogonal projectors on Q.
class ProjectiveMeasurement {
public:
    explicit ProjectiveMeasurement(std::vector<Operator> projectors) : projectors_(std::move(projectors)) {
        detail::check_square_family(projectors_, "projective measurement");
        for (std::size_t a = 0; a < projectors_.size(); ++a) {
            const auto& p = projectors_[a];
            const double herm = detail::max_abs(p - p.adjoint());
            if (herm > tolerance::projector)
                detail::violation(InvariantViolation::Kind::hermiticity, herm, "projector " + std::to_string(a));
            const double idem = detail::max_abs(p * p - p);
            if (idem > tolerance::projector)
                detail::violation(InvariantViolation::Kind::projector, idem, "projector " + std::to_string(a) + " idempotency");
            for (std::size_t b = 0; b < a; ++b) {
                const double overlap = detail::max_abs(p * projectors_[b]);
                if (overlap > tolerance::projector)
                    detail::violation(InvariantViolation::Kind::projector, overlap,
                                      "projectors " + std::to_string(b) + " and " + std::to_string(a) + " orthogonality");
            }
        }
        detail::check_sums_to_identity(projectors_, "projective measurement completeness");
    }

    /// Rank-1 measurement onto the given orthonormal basis vectors.
    static ProjectiveMeasurement from_basis(const std::vector<Ket>& basis) {
        std::vector<Operator> ps;
        for (const auto& v : basis) ps.push_back(projector_onto(v));
        return ProjectiveMeasurement(std::move(ps));
    }

    /// Measurement onto the columns of a unitary.
    static ProjectiveMeasurement from_unitary(const Operator& u) {
        std::vector<Ket> basis;
        for (Eigen::Index k = 0; k < u.cols(); ++k) basis.push_back(u.col(k));
        return from_basis(basis);
    }

    static ProjectiveMeasurement computational(std::size_t dim) {
        std::vector<Operator> ps;
        for (std::size_t k = 0; k < dim; ++k) ps.push_back(basis_projector(dim, k));
        return ProjectiveMeasurement(std::move(ps));
    }

    /// The trivial one-outcome measurement {I}.
    static ProjectiveMeasurement trivial(std::size_t dim) {
        const auto n = static_cast<Eigen::Index>(dim);
        return ProjectiveMeasurement({Operator::Identity(n, n)});
    }

    const std::vector<Operator>& projectors() const noexcept { return projectors_; }
    std::size_t outcomes() const noexcept { return projectors_.size(); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(projectors_.front().rows()); }

private:
    std::vector<Operator> projectors_;
};

/// Positive operators E_a summing to the identity.
class Povm {
public:
    explicit Povm(std::vector<Operator> elements) : elements_(std::move(elements)) {
        detail::check_square_family(elements_, "POVM");
        for (std::size_t a = 0; a < elements_.size(); ++a) {
            const auto& e = elements_[a];
            const double herm = detail::max_abs(e - e.adjoint());
            if (herm > tolerance::projector)
                detail::violation(InvariantViolation::Kind::hermiticity, herm, "POVM element " + std::to_string(a));
            const double min_eig = detail::hermitian_eigenvalues(e).minCoeff();
            if (min_eig < -tolerance::positivity)
                detail::violation(InvariantViolation::Kind::positivity, -min_eig, "POVM element " + std::to_string(a));
        }
        detail::check_sums_to_identity(elements_, "POVM completeness");
    }

    explicit Povm(const ProjectiveMeasurement& m) : elements_(m.projectors()) {}

    const std::vector<Operator>& elements() const noexcept { return elements_; }
    std::size_t outcomes() const noexcept { return elements_.size(); }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(elements_.front().rows()); }

private:
    std::vector<Operator> elements_;
};

/// Prior p_i, likelihood p_{a|i} = Tr(E_a rho_i), marginal p_a and
/// posterior p_{i|a}. Outcomes with p_a <= 1e-12 get an all-zero posterior column.
struct OutcomeTable {
    Eigen::VectorXd prior;        // p_i
    Eigen::MatrixXd conditional;  // rows i, columns a
    Eigen::VectorXd marginal;     // p_a
    Eigen::MatrixXd posterior;    // rows i, columns a

    std::size_t members() const { return static_cast<std::size_t>(prior.size()); }
    std::size_t outcomes() const { return static_cast<std::size_t>(marginal.size()); }
};

inline constexpr double negligible_outcome = 1e-12;

inline OutcomeTable outcome_table(const Ensemble& e, const std::vector<Operator>& effects) {
    if (effects.empty() || static_cast<std::size_t>(effects.front().rows()) != e.channel_dim())
        throw std::invalid_argument("measurement dimension does not match the channel dimension");
    const auto n = static_cast<Eigen::Index>(e.size());
    const auto na = static_cast<Eigen::Index>(effects.size());
    OutcomeTable t;
    t.prior.resize(n);
    t.conditional.resize(n, na);
    for (Eigen::Index i = 0; i < n; ++i) {
        t.prior(i) = e.probs()[static_cast<std::size_t>(i)];
        const Operator& rho = e.states()[static_cast<std::size_t>(i)].matrix();
        for (Eigen::Index a = 0; a < na; ++a)
            t.conditional(i, a) = std::max((effects[static_cast<std::size_t>(a)] * rho).trace().real(), 0.0);
    }
    t.marginal = t.conditional.transpose() * t.prior;
    t.posterior = Eigen::MatrixXd::Zero(n, na);
    for (Eigen::Index a = 0; a < na; ++a)
        if (t.marginal(a) > negligible_outcome)
            for (Eigen::Index i = 0; i < n; ++i) t.posterior(i, a) = t.prior(i) * t.conditional(i, a) / t.marginal(a);
    return t;
}

inline OutcomeTable outcome_table(const Ensemble& e, const ProjectiveMeasurement& m) {
    return outcome_table(e, m.projectors());
}

inline OutcomeTable outcome_table(const Ensemble& e, const Povm& m) { return outcome_table(e, m.elements()); }

/// H[p_a] - sum_i p_i H[p_{a|i}] = H(X:A).
inline double information(const OutcomeTable& t) {
    std::vector<double> marginal(t.marginal.data(), t.marginal.data() + t.marginal.size());
    double h = detail::raw_shannon(marginal);
    for (std::size_t i = 0; i < t.members(); ++i) {
        const Eigen::VectorXd row = t.conditional.row(static_cast<Eigen::Index>(i));
        h -= t.prior(static_cast<Eigen::Index>(i)) * detail::raw_shannon(std::span<const double>(row.data(), row.size()));
    }
    return h;
}

struct ExtractedInfo {
    double bits;
    OutcomeTable table;
};

inline ExtractedInfo extracted_info(const Ensemble& e, const ProjectiveMeasurement& m) {
    auto table = outcome_table(e, m);
    const double bits = information(table);
    return {bits, std::move(table)};
}

inline ExtractedInfo extracted_info(const MultipartiteState& xq, const ProjectiveMeasurement& m) {
    return extracted_info(split_xq(xq), m);
}

/// Cyclic shift on C^dim raised to `power`: |k> -> |k + power mod dim>.
inline Operator shift_operator(std::size_t dim, std::size_t power) {
    const auto n = static_cast<Eigen::Index>(dim);
    Operator s = Operator::Zero(n, n);
    for (std::size_t k = 0; k < dim; ++k)
        s(static_cast<Eigen::Index>((k + power) % dim), static_cast<Eigen::Index>(k)) = 1.0;
    return s;
}

/// U_QA = sum_a P_a ⊗ U_a for explicitly supplied ancilla unitaries. The images
/// U_a|0> must be mutually orthogonal for the ancilla to record the outcome.
inline Operator build_u_qa(const ProjectiveMeasurement& m, const std::vector<Operator>& ancilla_unitaries) {
    if (ancilla_unitaries.size() != m.outcomes())
        throw std::invalid_argument("build_u_qa: need one ancilla unitary per outcome");
    const auto da = ancilla_unitaries.front().rows();
    for (const auto& u : ancilla_unitaries)
        if (u.rows() != da || u.cols() != da) throw std::invalid_argument("build_u_qa: ancilla unitaries differ in size");
    for (std::size_t a = 0; a < m.outcomes(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
            const double overlap = std::abs(ancilla_unitaries[a].col(0).dot(ancilla_unitaries[b].col(0)));
            if (overlap > tolerance::projector)
                throw std::invalid_argument("build_u_qa: ancilla pointer states are not orthogonal");
        }
    const auto dq = static_cast<Eigen::Index>(m.dim());
    Operator u = Operator::Zero(dq * da, dq * da);
    for (std::size_t a = 0; a < m.outcomes(); ++a) u += kron(m.projectors()[a], ancilla_unitaries[a]);
    const double defect = detail::max_abs(u * u.adjoint() - Operator::Identity(u.rows(), u.cols()));
    if (defect > 1e-9) throw std::invalid_argument("build_u_qa: ancilla operators are not unitary (defect " +
                                                   detail::fmt_double(defect) + ")");
    return u;
}

/// U_QA with U_a the a-th power of the cyclic shift on an ancilla of size `ancilla_dim`.
inline Operator build_u_qa(const ProjectiveMeasurement& m, std::size_t ancilla_dim) {
    if (ancilla_dim < m.outcomes())
        throw std::invalid_argument("build_u_qa: ancilla dimension " + std::to_string(ancilla_dim) + " < " +
                                    std::to_string(m.outcomes()) + " outcomes");
    std::vector<Operator> shifts;
    for (std::size_t a = 0; a < m.outcomes(); ++a) shifts.push_back(shift_operator(ancilla_dim, a));
    return build_u_qa(m, shifts);
}

/// Appends an ancilla `ancilla` of dimension `ancilla_dim` in |0><0| and
/// conjugates by `u_qa` acting on (q, ancilla).
inline MultipartiteState couple_ancilla(const MultipartiteState& s, const Operator& u_qa, std::size_t ancilla_dim,
                                        const Label& q, const Label& ancilla) {
    const std::size_t dq = s.layout().dim_of(q);
    if (static_cast<std::size_t>(u_qa.rows()) != dq * ancilla_dim)
        throw std::invalid_argument("coupling unitary does not act on " + q + " ⊗ " + ancilla);
    const auto layout = s.layout().appended({ancilla, ancilla_dim});
    const Operator before = kron(s.matrix(), basis_projector(ancilla_dim, 0));
    const Operator u = embed_operator(u_qa, layout, {q, ancilla});
    return MultipartiteState(DensityOperator::trusted(u * before * u.adjoint()), layout);
}

/// rho_X'Q'A' = (1 ⊗ U_QA)(rho ⊗ |0><0|)(1 ⊗ U_QA)† with the minimal cyclic-shift
/// ancilla (dimension = number of outcomes).
inline MultipartiteState apply_measurement(const MultipartiteState& s, const ProjectiveMeasurement& m,
                                           const Label& q = channel_label, const Label& ancilla = ancilla_label) {
    if (s.layout().dim_of(q) != m.dim())
        throw std::invalid_argument("apply_measurement: " + q + " has dimension " + std::to_string(s.layout().dim_of(q)) +
                                    " but the measurement acts on dimension " + std::to_string(m.dim()));
    return couple_ancilla(s, build_u_qa(m, m.outcomes()), m.outcomes(), q, ancilla);
}

namespace detail {

inline void require_xqa(const MultipartiteState& s, const Label& ancilla) {
    const auto& l = s.layout();
    if (!l.contains(preparer_label) || !l.contains(channel_label) || !l.contains(ancilla))
        throw std::invalid_argument("expected a post-measurement state with subsystems X, Q and " + ancilla);
}

}  // namespace detail

/// rho_X'A' = Tr_Q rho_X'Q'A'.
inline MultipartiteState reduce_xa(const MultipartiteState& s, const Label& ancilla = ancilla_label) {
    detail::require_xqa(s, ancilla);
    return reduce_to(s, {preparer_label, ancilla});
}

/// Dephases the ancilla: every block coupling distinct ancilla outcomes is zeroed.
inline MultipartiteState decohere_ancilla(const MultipartiteState& s, const Label& ancilla = ancilla_label) {
    detail::require_xqa(s, ancilla);
    const auto& layout = s.layout();
    const auto k = layout.index_of(ancilla);
    const std::size_t n = layout.total_dim();
    std::vector<std::size_t> digit(n);
    for (std::size_t i = 0; i < n; ++i) digit[i] = layout.digits(i)[k];
    Operator out = s.matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (digit[i] != digit[j]) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
    return MultipartiteState(DensityOperator::trusted(std::move(out)), layout);
}

/// sum_a p_a [ S(sum_i p_{i|a} rho_{ai}) - sum_i p_{i|a} S(rho_{ai}) ],
/// rho_{ai} = P_a rho_i P_a / p_{a|i}. Negligible outcomes contribute 0.
inline double residual_info(const Ensemble& e, const ProjectiveMeasurement& m) {
    const auto t = outcome_table(e, m);
    double total = 0.0;
    for (std::size_t a = 0; a < m.outcomes(); ++a) {
        const double pa = t.marginal(static_cast<Eigen::Index>(a));
        if (pa <= negligible_outcome) continue;
        const Operator& p = m.projectors()[a];
        Operator mix = Operator::Zero(p.rows(), p.cols());
        double avg_entropy = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double pi_a = t.posterior(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
            const double pa_i = t.conditional(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
            if (pi_a <= 0.0 || pa_i <= negligible_outcome) continue;
            const Operator post = p * e.states()[i].matrix() * p / pa_i;
            mix += pi_a * post;
            avg_entropy += pi_a * von_neumann(DensityOperator::trusted(post));
        }
        mix /= mix.trace().real();
        total += pa * (von_neumann(DensityOperator::trusted(mix)) - avg_entropy);
    }
    return total;
}

inline double residual_info(const MultipartiteState& xq, const ProjectiveMeasurement& m) {
    return residual_info(split_xq(xq), m);
}

/// Projective measurement on an enlarged space together with the isometry
/// that embeds Q into it. The enlarged space is (outcome register) ⊗ Q, the
/// a-th block of the isometry is E_a^{1/2}, and P~_a = |a><a| ⊗ 1.
struct NeumarkDilation {
    ProjectiveMeasurement measurement;
    Operator isometry;  // (n d) x d
    Operator unitary;   // (n d) x (n d), first d columns equal the isometry

    DensityOperator embed(const DensityOperator& rho) const {
        return DensityOperator::trusted(isometry * rho.matrix() * isometry.adjoint());
    }

    Ensemble embed(const Ensemble& e) const {
        std::vector<DensityOperator> states;
        for (const auto& s : e.states()) states.push_back(embed(s));
        return Ensemble(e.probs(), std::move(states));
    }
};

inline NeumarkDilation neumark_dilate(const Povm& povm) {
    const auto d = static_cast<Eigen::Index>(povm.dim());
    const auto n = static_cast<Eigen::Index>(povm.outcomes());
    Operator v(n * d, d);
    for (Eigen::Index a = 0; a < n; ++a) v.block(a * d, 0, d, d) = psd_sqrt(povm.elements()[static_cast<std::size_t>(a)]);

    const double iso_defect = detail::max_abs(v.adjoint() * v - Operator::Identity(d, d));
    if (iso_defect > 1e-9) throw Error("neumark_dilate: block column is not an isometry (defect " +
                                       detail::fmt_double(iso_defect) + ")");

    // complete the columns of v to a unitary with the orthogonal complement of its range
    Eigen::HouseholderQR<Operator> qr(v);
    const Operator q = qr.householderQ() * Operator::Identity(n * d, n * d);
    Operator w(n * d, n * d);
    w.leftCols(d) = v;
    w.rightCols(n * d - d) = q.rightCols(n * d - d);
    const double unit_defect = detail::max_abs(w * w.adjoint() - Operator::Identity(n * d, n * d));
    if (unit_defect > 1e-9) throw Error("neumark_dilate: unitary completion failed (defect " +
                                        detail::fmt_double(unit_defect) + ")");

    std::vector<Operator> projectors;
    const Operator id = Operator::Identity(d, d);
    for (Eigen::Index a = 0; a < n; ++a)
        projectors.push_back(kron(basis_projector(static_cast<std::size_t>(n), static_cast<std::size_t>(a)), id));
    return {ProjectiveMeasurement(std::move(projectors)), std::move(v), std::move(w)};
}

/// Outcome statistics of a chain of measurements applied in order, the
/// chain-rule split of H(X : A_1 ... A_m), and its running sum.
struct ChainResult {
    std::vector<std::size_t> outcome_counts;  // n_a for each step
    Eigen::VectorXd prior;                    // p_i
    Eigen::MatrixXd conditional;              // rows i, columns (a_1 ... a_m), a_1 most significant
    std::vector<double> step_info;            // H(X : A_j | A_1 ... A_{j-1})
    std::vector<double> cumulative;

    double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
};

namespace detail {

/// H(X, A_1..A_len) for the joint distribution p_i p_{a|i}, marginalized to a prefix of the chain.
inline double prefix_entropy(const ChainResult& r, std::size_t len, bool with_x) {
    std::size_t tail = 1;
    for (std::size_t j = len; j < r.outcome_counts.size(); ++j) tail *= r.outcome_counts[j];
    const auto cols = static_cast<std::size_t>(r.conditional.cols());
    const std::size_t heads = cols / tail;
    const auto n = static_cast<std::size_t>(r.prior.size());
    std::vector<double> dist(with_x ? n * heads : heads, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < cols; ++c) {
            const double p = r.prior(static_cast<Eigen::Index>(i)) *
                             r.conditional(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
            dist[(with_x ? i * heads : 0) + c / tail] += p;
        }
    return raw_shannon(dist);
}

}  // namespace detail

/// Joint outcome probabilities p_{a_1..a_m|i} = Tr(P_{a_m}..P_{a_1} rho_i P_{a_1}..P_{a_m})
/// with the first measurement of the chain applied first.
inline ChainResult sequential_measure(const Ensemble& e, const std::vector<ProjectiveMeasurement>& chain) {
    if (chain.empty()) throw std::invalid_argument("sequential_measure: empty chain");
    for (const auto& m : chain)
        if (m.dim() != e.channel_dim())
            throw std::invalid_argument("sequential_measure: measurement dimension does not match the channel");
    ChainResult r;
    std::size_t cols = 1;
    for (const auto& m : chain) {
        r.outcome_counts.push_back(m.outcomes());
        cols *= m.outcomes();
    }
    const auto n = static_cast<Eigen::Index>(e.size());
    r.prior.resize(n);
    r.conditional = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(cols));

    for (Eigen::Index i = 0; i < n; ++i) {
        r.prior(i) = e.probs()[static_cast<std::size_t>(i)];
        // depth-first over outcome prefixes, carrying the unnormalized post-measurement operator
        std::function<void(std::size_t, std::size_t, const Operator&)> descend =
            [&](std::size_t step, std::size_t index, const Operator& sigma) {
                if (step == chain.size()) {
                    r.conditional(i, static_cast<Eigen::Index>(index)) = std::max(sigma.trace().real(), 0.0);
                    return;
                }
                const auto& ps = chain[step].projectors();
                for (std::size_t a = 0; a < ps.size(); ++a)
                    descend(step + 1, index * ps.size() + a, ps[a] * sigma * ps[a]);
            };
        descend(0, 0, e.states()[static_cast<std::size_t>(i)].matrix());
    }

    double running = 0.0;
    for (std::size_t j = 1; j <= chain.size(); ++j) {
        const double step = detail::prefix_entropy(r, j - 1, true) + detail::prefix_entropy(r, j, false) -
                            detail::prefix_entropy(r, j - 1, false) - detail::prefix_entropy(r, j, true);
        r.step_info.push_back(step);
        running += step;
        r.cumulative.push_back(running);
    }
    return r;
}

inline ChainResult sequential_measure(const MultipartiteState& xq, const std::vector<ProjectiveMeasurement>& chain) {
    return sequential_measure(split_xq(xq), chain);
}

/// Explicit X ⊗ Q ⊗ A_1 ⊗ ... ⊗ A_m state after coupling one fresh ancilla
/// per measurement. Exponential in m; meant for small cross-checks.
inline MultipartiteState apply_chain(const MultipartiteState& xq, const std::vector<ProjectiveMeasurement>& chain) {
    MultipartiteState s = xq;
    for (std::size_t j = 0; j < chain.size(); ++j)
        s = apply_measurement(s, chain[j], channel_label, ancilla_label + std::to_string(j + 1));
    return s;
}

/// Random projective measurement on `dim`: a random orthonormal basis, or
/// with `coarse` set, a random grouping of its vectors into 2..dim-1 projectors
/// (falls back to the complete basis when dim < 3).
inline ProjectiveMeasurement random_projective(std::size_t dim, Rng& rng, bool coarse = false) {
    const Operator u = random_unitary(dim, rng);
    if (!coarse || dim < 3) return ProjectiveMeasurement::from_unitary(u);
    std::uniform_int_distribution<std::size_t> groups_dist(2, dim - 1);
    const std::size_t groups = groups_dist(rng);
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    // the first `groups` vectors seed the groups, the rest land anywhere
    std::vector<std::size_t> group_of(dim);
    std::uniform_int_distribution<std::size_t> pick(0, groups - 1);
    for (std::size_t k = 0; k < dim; ++k) group_of[order[k]] = k < groups ? k : pick(rng);
    const auto n = static_cast<Eigen::Index>(dim);
    std::vector<Operator> ps(groups, Operator::Zero(n, n));
    for (std::size_t k = 0; k < dim; ++k) ps[group_of[k]] += projector_onto(u.col(static_cast<Eigen::Index>(k)));
    return ProjectiveMeasurement(std::move(ps));
}

/// Random n-outcome POVM: E_a = S^{-1/2} G_a S^{-1/2} with G_a = A_a A_a†, S = sum G_a.
inline Povm random_povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
    std::vector<Operator> g;
    const auto d = static_cast<Eigen::Index>(dim);
    Operator s = Operator::Zero(d, d);
    for (std::size_t a = 0; a < outcomes; ++a) {
        const Operator m = gaussian_matrix(dim, dim, rng);
        g.push_back(m * m.adjoint());
        s += g.back();
    }
    const Operator s_inv_sqrt = psd_sqrt(s).inverse();
    std::vector<Operator> elements;
    for (const auto& ga : g) {
        Operator e = s_inv_sqrt * ga * s_inv_sqrt;
        elements.push_back((e + e.adjoint()) / 2.0);
    }
    return Povm(std::move(elements));
}

/// Qubit trine: (2/3)|psi_k><psi_k| with the |psi_k> real and 120 degrees apart on the Bloch circle.
inline Povm trine_povm() {
    std::vector<Operator> elements;
    for (int k = 0; k < 3; ++k) {
        const double half_angle = k * std::numbers::pi / 3.0;  // Bloch angle 2*pi*k/3
        Ket psi(2);
        psi << std::cos(half_angle), std::sin(half_angle);
        elements.push_back(2.0 / 3.0 * projector_onto(psi));
    }
    return Povm(std::move(elements));
}

}  // namespace kholevo
