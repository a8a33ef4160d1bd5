// bounds.hpp
// The entropy inequalities around the Kholevo quantity chi as verifiers that
// report both sides and the signed margin, plus a derivative-free search for
// good measurements (lower bounds on the accessible information).

#pragma once

#include "kholevo/core.hpp"
#include "kholevo/entropy.hpp"
#include "kholevo/measurement.hpp"
#include "kholevo/random.hpp"

#include <optional>

namespace kholevo {

struct Quantity {
    std::string name;
    double bits;
};

/// lhs <= rhs is satisfied when margin = rhs - lhs >= -tolerance.
struct InequalityCheck {
    std::string name;
    double lhs;
    double rhs;
    double margin;
    bool satisfied;
};

struct BoundReport {
    std::vector<Quantity> quantities;
    std::vector<InequalityCheck> checks;
    double tolerance = tolerance::inequality;

    bool all_satisfied() const {
        return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.satisfied; });
    }

    double value(const std::string& name) const {
        for (const auto& q : quantities)
            if (q.name == name) return q.bits;
        throw std::out_of_range("no quantity named '" + name + "' in report");
    }

    const InequalityCheck& check(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw std::out_of_range("no inequality named '" + name + "' in report");
    }

    void add(std::string name, double bits) { quantities.push_back({std::move(name), bits}); }

    void require(std::string name, double lhs, double rhs) {
        const double margin = rhs - lhs;
        checks.push_back({std::move(name), lhs, rhs, margin, margin >= -tolerance});
    }
};

inline std::string render(const BoundReport& r, const std::string& title) {
    std::size_t width = 0;
    for (const auto& q : r.quantities) width = std::max(width, q.name.size());
    for (const auto& c : r.checks) width = std::max(width, c.name.size());
    std::ostringstream os;
    os << title << "\n";
    for (const auto& q : r.quantities)
        os << "  " << std::left << std::setw(static_cast<int>(width)) << q.name << "  " << std::right << std::setw(10)
           << detail::bits(q.bits) << " bits\n";
    if (!r.checks.empty()) os << "  inequalities (tolerance " << detail::fmt_double(r.tolerance) << "):\n";
    for (const auto& c : r.checks)
        os << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::right << std::setw(10)
           << detail::bits(c.lhs) << " <= " << std::setw(10) << detail::bits(c.rhs) << "  margin " << std::setw(10)
           << detail::bits(c.margin) << "  " << (c.satisfied ? "ok" : "VIOLATED") << "\n";
    return os.str();
}

/// S(sum_i p_i rho_i) - sum_i p_i S(rho_i)
inline double holevo_chi(const Ensemble& e) {
    double avg = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) avg += e.probs()[i] * von_neumann(e.states()[i]);
    return von_neumann(e.average()) - avg;
}

/// Concavity sandwich sum p S(rho_i) <= S(rho) <= H[p] + sum p S(rho_i) and 0 <= chi <= H[p].
inline BoundReport chi_range(const Ensemble& e, double tol = tolerance::inequality) {
    BoundReport r;
    r.tolerance = tol;
    double avg = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) avg += e.probs()[i] * von_neumann(e.states()[i]);
    const double s_rho = von_neumann(e.average());
    const double h_p = detail::raw_shannon(e.probs());
    const double chi = s_rho - avg;
    r.add("chi", chi);
    r.add("S(rho)", s_rho);
    r.add("sum p_i S(rho_i)", avg);
    r.add("H[p]", h_p);
    r.require("sum p_i S(rho_i) <= S(rho)", avg, s_rho);
    r.require("S(rho) <= H[p] + sum p_i S(rho_i)", s_rho, h_p + avg);
    r.require("0 <= chi", 0.0, chi);
    r.require("chi <= H[p]", chi, h_p);
    return r;
}

/// Runs the ancilla model for `m` on the ensemble and reports I, chi, the
/// conserved S(X':Q'A') and the balance I + S(X':Q'|A') = S(X:Q).
inline BoundReport verify_kholevo(const Ensemble& e, const ProjectiveMeasurement& m,
                                  double tol = tolerance::inequality) {
    BoundReport r;
    r.tolerance = tol;
    const auto xq = assemble_xq(e);
    const double chi = mutual(xq, {preparer_label}, {channel_label});
    const auto info = extracted_info(e, m);
    const auto post = apply_measurement(xq, m);
    const double conserved = mutual(post, {preparer_label}, {channel_label, ancilla_label});
    const double residual = conditional_mutual(post, {preparer_label}, {channel_label}, {ancilla_label});
    r.add("I = H(X:A)", info.bits);
    r.add("chi = S(X:Q)", chi);
    r.add("S(X':Q'A')", conserved);
    r.add("S(X':A')", mutual(post, {preparer_label}, {ancilla_label}));
    r.add("S(X':Q'|A')", residual);
    r.add("I + S(X':Q'|A')", info.bits + residual);
    r.add("residual after decoherence", residual_info(e, m));
    r.require("I <= chi", info.bits, chi);
    return r;
}

/// POVMs go through their Neumark dilation; the direct Tr(E_a rho_i) value is reported alongside.
inline BoundReport verify_kholevo(const Ensemble& e, const Povm& povm, double tol = tolerance::inequality) {
    const auto dilation = neumark_dilate(povm);
    auto r = verify_kholevo(dilation.embed(e), dilation.measurement, tol);
    r.add("I direct (Tr E_a rho_i)", information(outcome_table(e, povm)));
    return r;
}

/// H(X:Y) from the diagonal joint distribution against the quantum S(X:Y).
inline BoundReport general_inequality(const MultipartiteState& s, double tol = tolerance::inequality) {
    if (s.layout().size() != 2) throw std::invalid_argument("general_inequality: expected a bipartite state");
    const LabelSet x{s.layout().parts()[0].label}, y{s.layout().parts()[1].label};
    BoundReport r;
    r.tolerance = tol;
    const double h = diagonal_mutual_shannon(s, x, y);
    const double q = mutual(s, x, y);
    r.add("H(X:Y)", h);
    r.add("S(X:Y)", q);
    r.require("H(X:Y) <= S(X:Y)", h, q);
    return r;
}

struct OptimizerConfig {
    std::size_t restarts = 8;
    std::size_t steps = 200;  // coordinate sweeps per restart
    double initial_step = 0.5;
    double decay = 0.5;
    std::uint64_t seed = 1;
    double step_floor = 1e-7;
    // > channel dim: search rank-1 projective measurements on the channel
    // padded to this dimension, i.e. POVMs with this many outcomes
    std::size_t embed_dim = 0;

    void validate() const {
        if (restarts == 0 || steps == 0) throw std::invalid_argument("optimizer: restarts and steps must be positive");
        if (!(initial_step > 0.0)) throw std::invalid_argument("optimizer: initial step must be positive");
        if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("optimizer: decay must lie in (0, 1)");
        if (!(step_floor > 0.0)) throw std::invalid_argument("optimizer: step floor must be positive");
    }
};

struct OptimizationResult {
    double bits;
    Operator basis;  // columns are the measurement vectors
    std::size_t restart;
    std::vector<double> history;  // best-so-far after every sweep, across restarts

    ProjectiveMeasurement measurement() const { return ProjectiveMeasurement::from_unitary(basis); }
};

/// Generalized Gell-Mann matrices: dim^2 - 1 traceless Hermitian generators.
inline std::vector<Operator> hermitian_generators(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    std::vector<Operator> gens;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
            Operator sym = Operator::Zero(n, n), anti = Operator::Zero(n, n);
            sym(j, k) = sym(k, j) = 1.0;
            anti(j, k) = complex(0.0, -1.0);
            anti(k, j) = complex(0.0, 1.0);
            gens.push_back(std::move(sym));
            gens.push_back(std::move(anti));
        }
    for (Eigen::Index l = 1; l < n; ++l) {
        Operator diag = Operator::Zero(n, n);
        const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
        for (Eigen::Index k = 0; k < l; ++k) diag(k, k) = scale;
        diag(l, l) = -scale * static_cast<double>(l);
        gens.push_back(std::move(diag));
    }
    return gens;
}

/// exp(i sum_k theta_k G_k) via the eigendecomposition of the Hermitian exponent.
inline Operator unitary_from_parameters(const std::vector<Operator>& gens, const std::vector<double>& theta) {
    Operator h = Operator::Zero(gens.front().rows(), gens.front().cols());
    for (std::size_t k = 0; k < gens.size(); ++k) h += theta[k] * gens[k];
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    const Eigen::VectorXcd phases = (solver.eigenvalues().cast<complex>() * complex(0.0, 1.0)).array().exp();
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

namespace detail {

inline Ensemble padded(const Ensemble& e, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(e.channel_dim());
    const auto n = static_cast<Eigen::Index>(dim);
    std::vector<DensityOperator> states;
    for (const auto& s : e.states()) {
        Operator big = Operator::Zero(n, n);
        big.topLeftCorner(d, d) = s.matrix();
        states.push_back(DensityOperator::trusted(std::move(big)));
    }
    return Ensemble(e.probs(), std::move(states));
}

inline double basis_information(const Ensemble& e, const Operator& u) {
    std::vector<Operator> effects;
    for (Eigen::Index k = 0; k < u.cols(); ++k) effects.push_back(projector_onto(u.col(k)));
    return information(outcome_table(e, effects));
}

}  // namespace detail

/// Random-restart coordinate hill climbing over rank-1 projective
/// measurements U|a><a|U†, U = exp(i sum theta_k G_k). Each sweep tries
/// theta_k +- step for every coordinate, keeping the first improvement; a
/// sweep without improvement multiplies the step by `decay`.
inline OptimizationResult optimize_accessible_info(const Ensemble& e, const OptimizerConfig& cfg) {
    cfg.validate();
    const std::size_t dim = std::max(cfg.embed_dim, e.channel_dim());
    const Ensemble target = dim == e.channel_dim() ? e : detail::padded(e, dim);
    const auto gens = hermitian_generators(dim);
    const double chi = holevo_chi(e);

    std::optional<OptimizationResult> best;
    std::vector<double> history;
    for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
        Rng rng(case_seed(cfg.seed, restart));
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        std::vector<double> theta(gens.size());
        for (auto& t : theta) t = angle(rng);
        Operator u = dim == 1 ? Operator::Identity(1, 1) : unitary_from_parameters(gens, theta);
        double current = detail::basis_information(target, u);
        if (!best || current > best->bits) best = OptimizationResult{current, u, restart, {}};

        double step = cfg.initial_step;
        for (std::size_t sweep = 0; sweep < cfg.steps && step >= cfg.step_floor && !gens.empty(); ++sweep) {
            bool improved = false;
            for (std::size_t k = 0; k < theta.size(); ++k)
                for (double sign : {1.0, -1.0}) {
                    auto trial = theta;
                    trial[k] += sign * step;
                    const Operator v = unitary_from_parameters(gens, trial);
                    const double value = detail::basis_information(target, v);
                    if (value > current) {
                        current = value;
                        theta = std::move(trial);
                        u = v;
                        improved = true;
                        break;
                    }
                }
            if (current > best->bits) best = OptimizationResult{current, u, restart, {}};
            history.push_back(best->bits);
            if (!improved) step *= cfg.decay;
        }
    }
    best->history = std::move(history);
    if (best->bits > chi + tolerance::inequality)
        throw Error("optimizer exceeded chi: " + detail::fmt_double(best->bits) + " > " + detail::fmt_double(chi));
    return *std::move(best);
}

}  // namespace kholevo
