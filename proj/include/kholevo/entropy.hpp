// entropy.hpp
// Von Neumann and Shannon entropies over labeled subsystems, plus the
// two- and three-set entropy Venn diagrams. All values are in bits.

#pragma once

#include "kholevo/core.hpp"

#include <iomanip>
#include <map>
#include <span>

namespace kholevo {

/// Probabilities after clamping tiny negatives (>= -1e-12) to zero.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {
        double sum = 0.0;
        for (auto& x : p_) {
            if (x < -1e-12) detail::violation(InvariantViolation::Kind::probabilities, -x, "probability vector entry");
            x = std::max(x, 0.0);
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            detail::violation(InvariantViolation::Kind::probabilities, std::abs(sum - 1.0), "probability vector sum");
    }
    ProbabilityVector(std::initializer_list<double> p) : ProbabilityVector(std::vector<double>(p)) {}

    const std::vector<double>& values() const noexcept { return p_; }

private:
    std::vector<double> p_;
};

namespace detail {

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// -sum p log2 p without any normalization check.
inline double raw_shannon(std::span<const double> p) {
    double h = 0.0;
    for (double x : p) h -= xlog2x(x);
    return h;
}

inline double entropy_of_spectrum(const Eigen::VectorXd& eig) {
    double h = 0.0;
    for (Eigen::Index k = 0; k < eig.size(); ++k) {
        const double lam = eig(k);
        if (lam < -tolerance::positivity)
            violation(InvariantViolation::Kind::positivity, -lam, "entropy argument");
        h -= xlog2x(lam);
    }
    return h;
}

}  // namespace detail

inline double shannon(const ProbabilityVector& p) { return detail::raw_shannon(p.values()); }

/// -Tr rho log2 rho; eigenvalues in [-1e-10, 0] count as zero.
inline double von_neumann(const DensityOperator& rho) {
    return detail::entropy_of_spectrum(detail::hermitian_eigenvalues(rho.matrix()));
}

inline double subset_entropy(const MultipartiteState& s, const LabelSet& subset) {
    if (subset.empty()) throw std::invalid_argument("subset_entropy: empty subset");
    return von_neumann(reduce_to(s, subset).state());
}

namespace detail {

inline LabelSet join(const LabelSet& a, const LabelSet& b) {
    LabelSet out = a;
    for (const auto& l : b) {
        if (std::find(a.begin(), a.end(), l) != a.end())
            throw std::invalid_argument("label sets overlap on '" + l + "'");
        out.push_back(l);
    }
    return out;
}

inline LabelSet join(const LabelSet& a, const LabelSet& b, const LabelSet& c) { return join(join(a, b), c); }

/// Subset entropies, memoized on the (sorted) label set; the empty set has entropy 0.
class EntropyTable {
public:
    explicit EntropyTable(const MultipartiteState& s) : s_(s) {}

    double operator()(LabelSet labels) {
        if (labels.empty()) return 0.0;
        std::sort(labels.begin(), labels.end());
        auto it = cache_.find(labels);
        if (it != cache_.end()) return it->second;
        const double h = subset_entropy(s_, labels);
        cache_.emplace(std::move(labels), h);
        return h;
    }

private:
    const MultipartiteState& s_;
    std::map<LabelSet, double> cache_;
};

}  // namespace detail

/// S(xs) + S(ys) - S(xs ∪ ys)
inline double mutual(const MultipartiteState& s, const LabelSet& xs, const LabelSet& ys) {
    if (xs.empty() || ys.empty()) throw std::invalid_argument("mutual: label sets must be nonempty");
    const auto xy = detail::join(xs, ys);
    return subset_entropy(s, xs) + subset_entropy(s, ys) - subset_entropy(s, xy);
}

/// S(xs : ys ∪ zs) - S(xs : zs); an empty zs reduces to mutual().
inline double conditional_mutual(const MultipartiteState& s, const LabelSet& xs, const LabelSet& ys,
                                 const LabelSet& zs) {
    if (xs.empty() || ys.empty()) throw std::invalid_argument("conditional_mutual: xs and ys must be nonempty");
    if (zs.empty()) return mutual(s, xs, ys);
    detail::join(xs, ys, zs);  // disjointness
    detail::EntropyTable S(s);
    return S(detail::join(xs, zs)) + S(detail::join(ys, zs)) - S(zs) - S(detail::join(xs, ys, zs));
}

struct VennDiagram2 {
    double left;    // S(X|Y)
    double center;  // S(X:Y)
    double right;   // S(Y|X)

    double total() const { return left + center + right; }
};

struct VennDiagram3 {
    double x_given_yz;   // S(X|YZ)
    double y_given_xz;   // S(Y|XZ)
    double z_given_xy;   // S(Z|XY)
    double xy_given_z;   // S(X:Y|Z)
    double xz_given_y;   // S(X:Z|Y)
    double yz_given_x;   // S(Y:Z|X)
    double xyz;          // S(X:Y:Z), may be negative

    double total() const { return x_given_yz + y_given_xz + z_given_xy + xy_given_z + xz_given_y + yz_given_x + xyz; }
};

inline VennDiagram2 venn2(const MultipartiteState& s, const LabelSet& x, const LabelSet& y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("venn2: label sets must be nonempty");
    detail::EntropyTable S(s);
    const auto xy = detail::join(x, y);
    const double sx = S(x), sy = S(y), sxy = S(xy);
    return {sxy - sy, sx + sy - sxy, sxy - sx};
}

inline VennDiagram3 venn3(const MultipartiteState& s, const LabelSet& x, const LabelSet& y, const LabelSet& z) {
    if (x.empty() || y.empty() || z.empty()) throw std::invalid_argument("venn3: label sets must be nonempty");
    detail::EntropyTable S(s);
    const auto xyz = detail::join(x, y, z);
    const double sx = S(x), sy = S(y), sz = S(z);
    const double sxy = S(detail::join(x, y)), sxz = S(detail::join(x, z)), syz = S(detail::join(y, z));
    const double sall = S(xyz);
    VennDiagram3 v{};
    v.x_given_yz = sall - syz;
    v.y_given_xz = sall - sxz;
    v.z_given_xy = sall - sxy;
    v.xy_given_z = sxz + syz - sz - sall;
    v.xz_given_y = sxy + syz - sy - sall;
    v.yz_given_x = sxy + sxz - sx - sall;
    v.xyz = sx + sy + sz - sxy - sxz - syz + sall;
    return v;
}

/// Shannon mutual information of the diagonal of the reduced state on x ∪ y,
/// read in the computational product basis: p(x, y) = <x, y|rho|x, y>.
inline double diagonal_mutual_shannon(const MultipartiteState& s, const LabelSet& x, const LabelSet& y) {
    if (x.empty() || y.empty()) throw std::invalid_argument("diagonal_mutual_shannon: label sets must be nonempty");
    const auto xy = detail::join(x, y);
    const auto reduced = reduce_to(s, xy);
    const auto& layout = reduced.layout();
    const auto mask = detail::selection_mask(layout, x);

    std::size_t nx = 1, ny = 1;
    for (std::size_t k = 0; k < layout.size(); ++k) (mask[k] ? nx : ny) *= layout.parts()[k].dim;
    std::vector<double> joint(nx * ny, 0.0), px(nx, 0.0), py(ny, 0.0);
    for (std::size_t i = 0; i < layout.total_dim(); ++i) {
        const auto d = layout.digits(i);
        std::size_t ix = 0, iy = 0;
        for (std::size_t k = 0; k < layout.size(); ++k) {
            auto& acc = mask[k] ? ix : iy;
            acc = acc * layout.parts()[k].dim + d[k];
        }
        const double p = std::max(reduced.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(), 0.0);
        joint[ix * ny + iy] += p;
        px[ix] += p;
        py[iy] += p;
    }
    return detail::raw_shannon(px) + detail::raw_shannon(py) - detail::raw_shannon(joint);
}

namespace detail {

inline std::string set_name(const LabelSet& s) {
    std::string out;
    for (const auto& l : s) out += l;
    return out;
}

inline std::string bits(double v) {
    if (std::abs(v) < 5e-7) v = 0.0;  // no "-0.000000"
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

}  // namespace detail

/// Region name -> bits, with the diagram's actual subsystem names substituted.
inline std::vector<std::pair<std::string, double>> named_regions(const VennDiagram2& v, const LabelSet& x,
                                                                 const LabelSet& y) {
    const auto X = detail::set_name(x), Y = detail::set_name(y);
    return {{"S(" + X + "|" + Y + ")", v.left}, {"S(" + X + ":" + Y + ")", v.center}, {"S(" + Y + "|" + X + ")", v.right}};
}

inline std::vector<std::pair<std::string, double>> named_regions(const VennDiagram3& v, const LabelSet& x,
                                                                 const LabelSet& y, const LabelSet& z) {
    const auto X = detail::set_name(x), Y = detail::set_name(y), Z = detail::set_name(z);
    return {{"S(" + X + "|" + Y + Z + ")", v.x_given_yz},   {"S(" + Y + "|" + X + Z + ")", v.y_given_xz},
            {"S(" + Z + "|" + X + Y + ")", v.z_given_xy},   {"S(" + X + ":" + Y + "|" + Z + ")", v.xy_given_z},
            {"S(" + X + ":" + Z + "|" + Y + ")", v.xz_given_y}, {"S(" + Y + ":" + Z + "|" + X + ")", v.yz_given_x},
            {"S(" + X + ":" + Y + ":" + Z + ")", v.xyz}};
}

inline std::string render(const std::vector<std::pair<std::string, double>>& regions, const std::string& title) {
    std::size_t width = 0;
    for (const auto& [name, _] : regions) width = std::max(width, name.size());
    std::ostringstream os;
    os << title << "\n";
    for (const auto& [name, value] : regions)
        os << "  " << std::left << std::setw(static_cast<int>(width)) << name << "  " << std::right << std::setw(10)
           << detail::bits(value) << " bits\n";
    return os.str();
}

}  // namespace kholevo
