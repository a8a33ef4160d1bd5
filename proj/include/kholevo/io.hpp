// io.hpp
// JSON ensemble files: members (kets or density matrices) with
// probabilities, named measurements (basis vectors, projectors or POVM
// elements) and named measurement chains. Complex numbers are [re, im]
// pairs (a bare number is accepted as a real value); matrices are row-major
// nested lists.

#pragma once

#include "kholevo/core.hpp"
#include "kholevo/measurement.hpp"

#include <json.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <string_view>
#include <variant>

namespace kholevo {

/// Malformed document: bad JSON, missing fields, wrong shapes.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A name (measurement, chain) that the document does not define.
class ReferenceError : public Error {
public:
    using Error::Error;
};

using MeasurementDef = std::variant<ProjectiveMeasurement, Povm>;
using WarningSink = std::function<void(const std::string&)>;

struct EnsembleFile {
    int version;
    Ensemble ensemble;
    std::map<std::string, MeasurementDef> measurements;
    std::map<std::string, std::vector<std::string>> chains;

    const MeasurementDef& measurement(const std::string& name) const {
        auto it = measurements.find(name);
        if (it == measurements.end()) throw ReferenceError("unknown measurement '" + name + "'");
        return it->second;
    }

    /// Projective measurements of a named chain, in application order.
    std::vector<ProjectiveMeasurement> chain(const std::string& name) const {
        auto it = chains.find(name);
        if (it == chains.end()) throw ReferenceError("unknown chain '" + name + "'");
        std::vector<ProjectiveMeasurement> out;
        for (const auto& step : it->second) {
            const auto& def = measurement(step);
            if (!std::holds_alternative<ProjectiveMeasurement>(def))
                throw ReferenceError("chain '" + name + "' step '" + step + "' is not a projective measurement");
            out.push_back(std::get<ProjectiveMeasurement>(def));
        }
        return out;
    }
};

inline constexpr int ensemble_file_version = 1;
inline constexpr double renormalize_warning = 1e-9;
inline constexpr double renormalize_limit = 1e-6;

namespace detail {

using json = nlohmann::json;

inline complex complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(where + ": expected a number or an [re, im] pair");
}

inline Ket ket_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty list of amplitudes");
    Ket v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k)
        v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], where + "[" + std::to_string(k) + "]");
    return v;
}

inline Operator matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty list of rows");
    const auto n = j.size();
    Operator m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n) throw ParseError(where + ": matrix must be square");
        for (std::size_t c = 0; c < n; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
    return m;
}

inline Ket normalized_ket(Ket v, const std::string& where, const WarningSink& warn) {
    const double norm = v.norm();
    const double deviation = std::abs(norm - 1.0);
    if (deviation > renormalize_limit)
        violation(InvariantViolation::Kind::trace, deviation, where + " norm");
    if (deviation > renormalize_warning && warn)
        warn("warning: " + where + " has norm deviation " + fmt_double(deviation) + "; renormalized");
    return v / norm;
}

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::vector<Operator> matrix_list(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty list of matrices");
    std::vector<Operator> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(matrix_from_json(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

inline MeasurementDef measurement_from_json(const json& j, const std::string& where, std::size_t dim,
                                            const WarningSink& warn) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    const int kinds = int(j.contains("basis")) + int(j.contains("projectors")) + int(j.contains("povm"));
    if (kinds != 1) throw ParseError(where + ": expected exactly one of 'basis', 'projectors', 'povm'");
    auto check_dim = [&](Eigen::Index n) {
        if (static_cast<std::size_t>(n) != dim)
            throw ParseError(where + ": acts on dimension " + std::to_string(n) + " but the channel has dimension " +
                             std::to_string(dim));
    };
    if (j.contains("basis")) {
        const auto& b = j.at("basis");
        if (!b.is_array() || b.empty()) throw ParseError(where + ".basis: expected a nonempty list of vectors");
        std::vector<Ket> basis;
        for (std::size_t k = 0; k < b.size(); ++k) {
            const auto name = where + ".basis[" + std::to_string(k) + "]";
            basis.push_back(normalized_ket(ket_from_json(b[k], name), name, warn));
            check_dim(basis.back().size());
        }
        return ProjectiveMeasurement::from_basis(basis);
    }
    if (j.contains("projectors")) {
        auto ps = matrix_list(j.at("projectors"), where + ".projectors");
        for (const auto& p : ps) check_dim(p.rows());
        return ProjectiveMeasurement(std::move(ps));
    }
    auto es = matrix_list(j.at("povm"), where + ".povm");
    for (const auto& e : es) check_dim(e.rows());
    return Povm(std::move(es));
}

inline json to_json(complex c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const Operator& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json ket_to_json(const Ket& v) {
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
    return out;
}

}  // namespace detail

inline EnsembleFile parse_ensemble_file(const nlohmann::json& doc, const WarningSink& warn = {}) {
    using detail::field;
    if (!doc.is_object()) throw ParseError("ensemble file: expected a JSON object");
    const auto& version = field(doc, "version", "ensemble file");
    if (!version.is_number_integer() || version.get<int>() != ensemble_file_version)
        throw ParseError("ensemble file: unsupported version (expected " + std::to_string(ensemble_file_version) + ")");

    const auto& members = field(doc, "members", "ensemble file");
    if (!members.is_array() || members.empty()) throw ParseError("ensemble file: 'members' must be a nonempty list");
    std::vector<double> probs;
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto where = "member " + std::to_string(i);
        const auto& m = members[i];
        const auto& p = field(m, "p", where);
        if (!p.is_number()) throw ParseError(where + ": 'p' must be a number");
        probs.push_back(p.get<double>());
        const bool has_ket = m.contains("ket"), has_rho = m.contains("rho");
        if (has_ket == has_rho) throw ParseError(where + ": expected exactly one of 'ket' and 'rho'");
        if (has_ket) {
            const Ket psi = detail::normalized_ket(detail::ket_from_json(m.at("ket"), where + ".ket"), where + " ket", warn);
            states.push_back(DensityOperator::trusted(projector_onto(psi)));
        } else {
            try {
                states.push_back(validate_density(detail::matrix_from_json(m.at("rho"), where + ".rho")));
            } catch (const InvariantViolation& e) {
                throw InvariantViolation(e.kind(), e.magnitude(), where + " " + e.what());
            }
        }
        if (states.back().dim() != states.front().dim())
            throw ParseError(where + ": dimension differs from member 0");
    }
    const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    const double deviation = std::abs(sum - 1.0);
    if (deviation > tolerance::probability_sum && deviation <= renormalize_limit) {
        if (warn) warn("warning: probabilities sum to 1 - " + detail::fmt_double(1.0 - sum) + "; renormalized");
        for (auto& p : probs) p /= sum;
    }
    Ensemble ensemble(std::move(probs), std::move(states));
    const std::size_t dim = ensemble.channel_dim();

    std::map<std::string, MeasurementDef> measurements;
    if (doc.contains("measurements")) {
        const auto& ms = doc.at("measurements");
        if (!ms.is_object()) throw ParseError("ensemble file: 'measurements' must be an object");
        for (const auto& [name, def] : ms.items())
            measurements.emplace(name, detail::measurement_from_json(def, "measurement '" + name + "'", dim, warn));
    }

    std::map<std::string, std::vector<std::string>> chains;
    if (doc.contains("chains")) {
        const auto& cs = doc.at("chains");
        if (!cs.is_object()) throw ParseError("ensemble file: 'chains' must be an object");
        for (const auto& [name, steps] : cs.items()) {
            if (!steps.is_array() || steps.empty()) throw ParseError("chain '" + name + "': expected a nonempty list");
            std::vector<std::string> names;
            for (const auto& s : steps) {
                if (!s.is_string()) throw ParseError("chain '" + name + "': steps must be measurement names");
                names.push_back(s.get<std::string>());
            }
            chains.emplace(name, std::move(names));
        }
    }

    EnsembleFile file{ensemble_file_version, std::move(ensemble), std::move(measurements), std::move(chains)};
    for (const auto& [name, _] : file.chains) file.chain(name);  // resolve every reference up front
    return file;
}

inline EnsembleFile parse_ensemble_text(std::string_view text, const WarningSink& warn = {}) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_ensemble_file(doc, warn);
}

inline EnsembleFile load_ensemble_file(const std::string& path, const WarningSink& warn = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_ensemble_text(buffer.str(), warn);
}

/// Members are written as density matrices and projective measurements as
/// projector lists; parsing the result reproduces the same objects.
inline nlohmann::json to_json(const EnsembleFile& file) {
    using json = nlohmann::json;
    json doc;
    doc["version"] = file.version;
    json members = json::array();
    for (std::size_t i = 0; i < file.ensemble.size(); ++i)
        members.push_back({{"p", file.ensemble.probs()[i]}, {"rho", detail::to_json(file.ensemble.states()[i].matrix())}});
    doc["members"] = std::move(members);
    json ms = json::object();
    for (const auto& [name, def] : file.measurements) {
        json list = json::array();
        if (const auto* pm = std::get_if<ProjectiveMeasurement>(&def)) {
            for (const auto& p : pm->projectors()) list.push_back(detail::to_json(p));
            ms[name] = {{"projectors", std::move(list)}};
        } else {
            for (const auto& e : std::get<Povm>(def).elements()) list.push_back(detail::to_json(e));
            ms[name] = {{"povm", std::move(list)}};
        }
    }
    doc["measurements"] = std::move(ms);
    doc["chains"] = file.chains;
    return doc;
}

}  // namespace kholevo
