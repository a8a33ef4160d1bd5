// core.hpp
// Finite-dimensional operator algebra: tensor products, partial traces,
// density-operator validation and the preparer/channel state X ⊗ Q.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kholevo {

using complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using Label = std::string;
using LabelSet = std::vector<Label>;

namespace tolerance {
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double positivity = 1e-10;
inline constexpr double probability_sum = 1e-10;
inline constexpr double projector = 1e-10;
inline constexpr double inequality = 1e-9;
}  // namespace tolerance

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A state, ensemble or measurement failed one of its defining invariants.
class InvariantViolation : public Error {
public:
    enum class Kind { hermiticity, trace, positivity, probabilities, shape, projector, completeness };

    InvariantViolation(Kind kind, double magnitude, const std::string& what)
        : Error(what), kind_(kind), magnitude_(magnitude) {}

    Kind kind() const noexcept { return kind_; }
    /// How far the offending quantity is from satisfying the invariant.
    double magnitude() const noexcept { return magnitude_; }

private:
    Kind kind_;
    double magnitude_;
};

inline const char* to_string(InvariantViolation::Kind k) {
    switch (k) {
        case InvariantViolation::Kind::hermiticity: return "hermiticity";
        case InvariantViolation::Kind::trace: return "trace";
        case InvariantViolation::Kind::positivity: return "positivity";
        case InvariantViolation::Kind::probabilities: return "probabilities";
        case InvariantViolation::Kind::shape: return "shape";
        case InvariantViolation::Kind::projector: return "projector";
        case InvariantViolation::Kind::completeness: return "completeness";
    }
    return "unknown";
}

namespace detail {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

[[noreturn]] inline void violation(InvariantViolation::Kind kind, double magnitude, const std::string& subject) {
    throw InvariantViolation(kind, magnitude,
                             subject + ": " + to_string(kind) + " violation of magnitude " + fmt_double(magnitude));
}

inline double max_abs(const Operator& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Eigenvalues (ascending) of the Hermitian part (M + M†)/2.
inline Eigen::VectorXd hermitian_eigenvalues(const Operator& m) {
    const Operator h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Operator> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

}  // namespace detail

/// Square root of a positive semidefinite operator via its eigendecomposition;
/// eigenvalues below zero (roundoff) are clamped.
inline Operator psd_sqrt(const Operator& m) {
    const Operator h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    Eigen::VectorXd lam = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
inline Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Operator projector_onto(const Ket& v) { return v * v.adjoint(); }

inline Operator basis_projector(std::size_t dim, std::size_t index) {
    Operator p = Operator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    p(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return p;
}

/// Trace-one positive Hermitian operator. Construction goes through
/// validate_density(), which reports the first failed invariant.
class DensityOperator {
public:
    const Operator& matrix() const noexcept { return op_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(op_.rows()); }
    double purity() const { return (op_ * op_).trace().real(); }

    /// Wraps an operator that is already known to satisfy the invariants
    /// (e.g. the image of a valid state under a trace-preserving map).
    static DensityOperator trusted(Operator op) { return DensityOperator(std::move(op)); }

    friend DensityOperator validate_density(const Operator& o);

private:
    explicit DensityOperator(Operator op) : op_(std::move(op)) {}
    Operator op_;
};

inline DensityOperator validate_density(const Operator& o) {
    if (o.rows() != o.cols() || o.rows() == 0)
        detail::violation(InvariantViolation::Kind::shape, 1.0, "density operator is not a nonempty square matrix");
    const double herm = detail::max_abs(o - o.adjoint());
    if (herm > tolerance::hermiticity) detail::violation(InvariantViolation::Kind::hermiticity, herm, "density operator");
    const double tr = std::abs(o.trace() - complex(1.0, 0.0));
    if (tr > tolerance::trace) detail::violation(InvariantViolation::Kind::trace, tr, "density operator");
    const double min_eig = detail::hermitian_eigenvalues(o).minCoeff();
    if (min_eig < -tolerance::positivity)
        detail::violation(InvariantViolation::Kind::positivity, -min_eig, "density operator");
    return DensityOperator(o);
}

inline DensityOperator pure_state(const Ket& psi) { return validate_density(projector_onto(psi.normalized())); }

inline DensityOperator maximally_mixed(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityOperator::trusted(Operator::Identity(n, n) / static_cast<double>(dim));
}

struct Subsystem {
    Label label;
    std::size_t dim;
};

/// Ordered tensor factorization of a Hilbert space; the first factor is the
/// most significant digit of a composite index.
class SubsystemLayout {
public:
    SubsystemLayout() = default;
    SubsystemLayout(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i].dim == 0) throw std::invalid_argument("subsystem '" + parts_[i].label + "' has dimension 0");
            for (std::size_t j = 0; j < i; ++j)
                if (parts_[j].label == parts_[i].label)
                    throw std::invalid_argument("duplicate subsystem label '" + parts_[i].label + "'");
        }
    }
    SubsystemLayout(std::initializer_list<Subsystem> parts) : SubsystemLayout(std::vector<Subsystem>(parts)) {}

    const std::vector<Subsystem>& parts() const noexcept { return parts_; }
    std::size_t size() const noexcept { return parts_.size(); }

    std::size_t total_dim() const {
        std::size_t d = 1;
        for (const auto& p : parts_) d *= p.dim;
        return d;
    }

    bool contains(const Label& l) const {
        return std::any_of(parts_.begin(), parts_.end(), [&](const Subsystem& s) { return s.label == l; });
    }

    std::size_t index_of(const Label& l) const {
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (parts_[i].label == l) return i;
        throw std::invalid_argument("unknown subsystem label '" + l + "'");
    }

    std::size_t dim_of(const Label& l) const { return parts_[index_of(l)].dim; }

    LabelSet labels() const {
        LabelSet out;
        for (const auto& p : parts_) out.push_back(p.label);
        return out;
    }

    SubsystemLayout appended(Subsystem s) const {
        auto parts = parts_;
        parts.push_back(std::move(s));
        return SubsystemLayout(std::move(parts));
    }

    /// Digits of a composite index, one per factor.
    std::vector<std::size_t> digits(std::size_t index) const {
        std::vector<std::size_t> d(parts_.size());
        for (std::size_t k = parts_.size(); k-- > 0;) {
            d[k] = index % parts_[k].dim;
            index /= parts_[k].dim;
        }
        return d;
    }

    std::size_t compose(const std::vector<std::size_t>& digits) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < parts_.size(); ++k) idx = idx * parts_[k].dim + digits[k];
        return idx;
    }

    friend bool operator==(const SubsystemLayout& a, const SubsystemLayout& b) {
        return a.parts_.size() == b.parts_.size() &&
               std::equal(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                          [](const Subsystem& x, const Subsystem& y) { return x.label == y.label && x.dim == y.dim; });
    }

private:
    std::vector<Subsystem> parts_;
};

class MultipartiteState {
public:
    MultipartiteState(DensityOperator state, SubsystemLayout layout)
        : state_(std::move(state)), layout_(std::move(layout)) {
        if (layout_.total_dim() != state_.dim())
            throw std::invalid_argument("layout dimension " + std::to_string(layout_.total_dim()) +
                                        " does not match state dimension " + std::to_string(state_.dim()));
    }

    const DensityOperator& state() const noexcept { return state_; }
    const Operator& matrix() const noexcept { return state_.matrix(); }
    const SubsystemLayout& layout() const noexcept { return layout_; }

private:
    DensityOperator state_;
    SubsystemLayout layout_;
};

inline MultipartiteState tensor(const MultipartiteState& a, const MultipartiteState& b) {
    std::vector<Subsystem> parts = a.layout().parts();
    for (const auto& p : b.layout().parts()) parts.push_back(p);
    return MultipartiteState(DensityOperator::trusted(kron(a.matrix(), b.matrix())), SubsystemLayout(std::move(parts)));
}

namespace detail {

/// Splits the layout's factors into those named in `labels` and the rest,
/// validating the labels.
inline std::vector<bool> selection_mask(const SubsystemLayout& layout, const LabelSet& labels) {
    std::vector<bool> mask(layout.size(), false);
    for (const auto& l : labels) {
        const auto i = layout.index_of(l);
        if (mask[i]) throw std::invalid_argument("label '" + l + "' listed twice");
        mask[i] = true;
    }
    return mask;
}

}  // namespace detail

/// Reduced state on the labels not in `discard`, kept factors in their original order.
inline MultipartiteState partial_trace(const MultipartiteState& s, const LabelSet& discard) {
    const auto& layout = s.layout();
    if (discard.empty()) throw std::invalid_argument("partial_trace: nothing to discard");
    const auto drop = detail::selection_mask(layout, discard);
    if (std::all_of(drop.begin(), drop.end(), [](bool b) { return b; }))
        throw std::invalid_argument("partial_trace: cannot discard every subsystem");

    std::vector<Subsystem> kept_parts, dropped_parts;
    for (std::size_t k = 0; k < layout.size(); ++k)
        (drop[k] ? dropped_parts : kept_parts).push_back(layout.parts()[k]);
    const SubsystemLayout kept(kept_parts), dropped(dropped_parts);
    const std::size_t nk = kept.total_dim(), nd = dropped.total_dim();

    // full_index[r * nd + t]: composite index for kept digits r and traced digits t
    std::vector<std::size_t> full_index(nk * nd);
    std::vector<std::size_t> digits(layout.size());
    for (std::size_t r = 0; r < nk; ++r) {
        const auto rd = kept.digits(r);
        for (std::size_t t = 0; t < nd; ++t) {
            const auto td = dropped.digits(t);
            std::size_t ri = 0, ti = 0;
            for (std::size_t k = 0; k < layout.size(); ++k) digits[k] = drop[k] ? td[ti++] : rd[ri++];
            full_index[r * nd + t] = layout.compose(digits);
        }
    }

    const Operator& rho = s.matrix();
    Operator out = Operator::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
    for (std::size_t r = 0; r < nk; ++r)
        for (std::size_t c = 0; c < nk; ++c) {
            complex acc = 0.0;
            for (std::size_t t = 0; t < nd; ++t)
                acc += rho(static_cast<Eigen::Index>(full_index[r * nd + t]),
                           static_cast<Eigen::Index>(full_index[c * nd + t]));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    return MultipartiteState(DensityOperator::trusted(std::move(out)), kept);
}

/// Reduced state on exactly `keep` (in layout order).
inline MultipartiteState reduce_to(const MultipartiteState& s, const LabelSet& keep) {
    const auto mask = detail::selection_mask(s.layout(), keep);
    LabelSet discard;
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (!mask[k]) discard.push_back(s.layout().parts()[k].label);
    if (discard.empty()) return s;
    return partial_trace(s, discard);
}

/// Lifts `op`, acting on the factors `targets` (in that order), to the whole
/// space described by `layout`, with identity on every other factor.
inline Operator embed_operator(const Operator& op, const SubsystemLayout& layout, const LabelSet& targets) {
    std::vector<std::size_t> pos;
    std::size_t sub_dim = 1;
    for (const auto& l : targets) {
        pos.push_back(layout.index_of(l));
        sub_dim *= layout.parts()[pos.back()].dim;
    }
    if (static_cast<std::size_t>(op.rows()) != sub_dim || op.rows() != op.cols())
        throw std::invalid_argument("embed_operator: operator dimension does not match target factors");
    std::vector<bool> is_target(layout.size(), false);
    for (auto p : pos) is_target[p] = true;

    const std::size_t n = layout.total_dim();
    std::vector<std::size_t> sub(n), rest(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto d = layout.digits(i);
        std::size_t s = 0, r = 0;
        for (auto p : pos) s = s * layout.parts()[p].dim + d[p];
        for (std::size_t k = 0; k < layout.size(); ++k)
            if (!is_target[k]) r = r * layout.parts()[k].dim + d[k];
        sub[i] = s;
        rest[i] = r;
    }
    const auto N = static_cast<Eigen::Index>(n);
    Operator out = Operator::Zero(N, N);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rest[i] == rest[j])
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    op(static_cast<Eigen::Index>(sub[i]), static_cast<Eigen::Index>(sub[j]));
    return out;
}

/// Preparer's codebook: channel state rho_i is sent with probability p_i.
class Ensemble {
public:
    Ensemble(std::vector<double> probs, std::vector<DensityOperator> states)
        : probs_(std::move(probs)), states_(std::move(states)) {
        if (probs_.empty() || probs_.size() != states_.size())
            detail::violation(InvariantViolation::Kind::shape, 1.0,
                              "ensemble needs matching nonempty probability and state lists");
        double sum = 0.0;
        for (double p : probs_) {
            if (!(p >= 0.0)) detail::violation(InvariantViolation::Kind::probabilities, -p, "ensemble probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > tolerance::probability_sum)
            detail::violation(InvariantViolation::Kind::probabilities, std::abs(sum - 1.0), "ensemble probability sum");
        for (const auto& s : states_)
            if (s.dim() != states_.front().dim())
                detail::violation(InvariantViolation::Kind::shape, 1.0, "ensemble states differ in dimension");
    }

    std::size_t size() const noexcept { return probs_.size(); }
    std::size_t channel_dim() const noexcept { return states_.front().dim(); }
    const std::vector<double>& probs() const noexcept { return probs_; }
    const std::vector<DensityOperator>& states() const noexcept { return states_; }

    /// rho = sum_i p_i rho_i
    DensityOperator average() const {
        Operator rho = Operator::Zero(states_.front().matrix().rows(), states_.front().matrix().cols());
        for (std::size_t i = 0; i < size(); ++i) rho += probs_[i] * states_[i].matrix();
        return DensityOperator::trusted(std::move(rho));
    }

private:
    std::vector<double> probs_;
    std::vector<DensityOperator> states_;
};

inline const Label preparer_label = "X";
inline const Label channel_label = "Q";
inline const Label ancilla_label = "A";

/// rho_XQ = sum_i p_i |x_i><x_i| ⊗ rho_i on the layout (X, Q).
inline MultipartiteState assemble_xq(const Ensemble& e) {
    const auto n = static_cast<Eigen::Index>(e.size());
    const auto d = static_cast<Eigen::Index>(e.channel_dim());
    Operator rho = Operator::Zero(n * d, n * d);
    for (Eigen::Index i = 0; i < n; ++i)
        rho.block(i * d, i * d, d, d) = e.probs()[static_cast<std::size_t>(i)] * e.states()[static_cast<std::size_t>(i)].matrix();
    return MultipartiteState(DensityOperator::trusted(std::move(rho)),
                             SubsystemLayout{{preparer_label, e.size()}, {channel_label, e.channel_dim()}});
}

/// Inverse of assemble_xq. Members whose weight is zero get the maximally
/// mixed state; they carry no weight in any quantity.
inline Ensemble split_xq(const MultipartiteState& xq) {
    const auto& layout = xq.layout();
    if (layout.size() != 2 || layout.parts()[0].label != preparer_label || layout.parts()[1].label != channel_label)
        throw std::invalid_argument("expected a state with layout (X, Q)");
    const auto n = static_cast<Eigen::Index>(layout.parts()[0].dim);
    const auto d = static_cast<Eigen::Index>(layout.parts()[1].dim);
    const Operator& rho = xq.matrix();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && detail::max_abs(rho.block(i * d, j * d, d, d)) > 1e-12)
                throw std::invalid_argument("state is not block-diagonal in the preparer register");
    std::vector<double> probs;
    std::vector<DensityOperator> states;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Operator block = rho.block(i * d, i * d, d, d);
        const double p = block.trace().real();
        probs.push_back(std::max(p, 0.0));
        states.push_back(p > 1e-15 ? DensityOperator::trusted(block / p) : maximally_mixed(static_cast<std::size_t>(d)));
    }
    const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (auto& p : probs) p /= sum;
    return Ensemble(std::move(probs), std::move(states));
}

}  // namespace kholevo
