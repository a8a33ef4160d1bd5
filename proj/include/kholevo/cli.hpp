// cli.hpp
// Command-line front end. run() parses arguments, executes one command and
// returns the process exit code:
//   0 success, 2 parse/usage error, 3 state invariant violated,
//   4 unknown measurement or chain, 5 inequality violated (check only).

#pragma once

#include "kholevo/bounds.hpp"
#include "kholevo/entropy.hpp"
#include "kholevo/io.hpp"
#include "kholevo/measurement.hpp"
#include "kholevo/random.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>

namespace kholevo::cli {

using json = nlohmann::json;

enum ExitCode : int { ok = 0, failure = 1, parse_error = 2, invariant_error = 3, reference_error = 4, inequality_error = 5 };

struct GlobalOptions {
    std::string input;
    bool json = false;
    std::uint64_t seed = 1;
    double tolerance = tolerance::inequality;
};

namespace detail {

using kholevo::detail::bits;

inline json regions_json(const std::vector<std::pair<std::string, double>>& regions) {
    json out = json::object();
    for (const auto& [name, value] : regions) out[name] = value;
    return out;
}

inline json report_json(const BoundReport& r) {
    json q = json::object();
    for (const auto& x : r.quantities) q[x.name] = x.bits;
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}, {"satisfied", c.satisfied}});
    return {{"quantities", q}, {"inequalities", checks}, {"tolerance", r.tolerance}};
}

inline std::string table_text(const OutcomeTable& t) {
    std::ostringstream os;
    os << "outcome table (rows: member i; columns: p(a|i) per outcome a)\n";
    os << "  " << std::setw(4) << "i" << std::setw(10) << "p_i";
    for (std::size_t a = 0; a < t.outcomes(); ++a) os << std::setw(11) << ("a=" + std::to_string(a));
    os << "\n";
    for (std::size_t i = 0; i < t.members(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        os << "  " << std::setw(4) << i << std::setw(10) << bits(t.prior(ii));
        for (std::size_t a = 0; a < t.outcomes(); ++a) os << std::setw(11) << bits(t.conditional(ii, static_cast<Eigen::Index>(a)));
        os << "\n";
    }
    os << "  " << std::setw(4) << "p_a" << std::setw(10) << "";
    for (std::size_t a = 0; a < t.outcomes(); ++a) os << std::setw(11) << bits(t.marginal(static_cast<Eigen::Index>(a)));
    os << "\n";
    return os.str();
}

inline json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json table_json(const OutcomeTable& t) {
    return {{"prior", std::vector<double>(t.prior.data(), t.prior.data() + t.prior.size())},
            {"conditional", matrix_json(t.conditional)},
            {"marginal", std::vector<double>(t.marginal.data(), t.marginal.data() + t.marginal.size())},
            {"posterior", matrix_json(t.posterior)}};
}

inline void emit(std::ostream& out, const GlobalOptions& g, const json& record, const std::string& text) {
    if (g.json)
        out << record.dump(2) << "\n";
    else
        out << text;
}

inline std::string line(const std::string& name, double value) {
    std::ostringstream os;
    os << std::left << std::setw(28) << name << std::right << std::setw(10) << bits(value) << " bits\n";
    return os.str();
}

}  // namespace detail

inline int cmd_chi(const EnsembleFile& file, const GlobalOptions& g, std::ostream& out) {
    const auto& e = file.ensemble;
    const double chi = holevo_chi(e);
    const auto range = chi_range(e, g.tolerance);
    const auto xq = assemble_xq(e);
    const auto regions = named_regions(venn2(xq, {preparer_label}, {channel_label}), {preparer_label}, {channel_label});

    json record{{"command", "chi"}, {"chi", chi}, {"range", detail::report_json(range)}, {"venn2", detail::regions_json(regions)}};
    std::string text = detail::line("chi = S(X:Q)", chi) + "\n" + render(range, "range of chi") + "\n" +
                       render(regions, "entropy Venn diagram of XQ");
    detail::emit(out, g, record, text);
    return ok;
}

struct MeasureOptions {
    std::string measurement;
    bool decohere = false;
    bool venn = false;
};

inline int cmd_measure(const EnsembleFile& file, const MeasureOptions& opt, const GlobalOptions& g, std::ostream& out) {
    const auto& def = file.measurement(opt.measurement);
    const double chi = holevo_chi(file.ensemble);

    // POVMs run through their Neumark dilation on an enlarged channel
    std::optional<NeumarkDilation> dilation;
    if (const auto* povm = std::get_if<Povm>(&def)) dilation = neumark_dilate(*povm);
    const Ensemble e = dilation ? dilation->embed(file.ensemble) : file.ensemble;
    const ProjectiveMeasurement m = dilation ? dilation->measurement : std::get<ProjectiveMeasurement>(def);

    const auto xq = assemble_xq(e);
    auto post = apply_measurement(xq, m);
    if (opt.decohere) post = decohere_ancilla(post);
    const auto info = extracted_info(e, m);
    const double conserved = mutual(post, {preparer_label}, {channel_label, ancilla_label});
    const double residual = conditional_mutual(post, {preparer_label}, {channel_label}, {ancilla_label});
    const double residual_closed = residual_info(e, m);

    BoundReport r;
    r.tolerance = g.tolerance;
    r.add("I = H(X:A)", info.bits);
    r.add("chi = S(X:Q)", chi);
    r.add("S(X':Q'A')", conserved);
    r.add("S(X':Q'|A')", residual);
    r.add("S(X':Q'|A') dephased form", residual_closed);
    r.add("I + S(X':Q'|A')", info.bits + residual);
    r.add("balance defect", info.bits + residual - chi);
    r.require("I <= chi", info.bits, chi);
    if (opt.decohere) {
        r.require("S(X':Q'A') <= S(X:Q)", conserved, chi);
        r.require("I <= chi - S(X':Q'|A')", info.bits, chi - residual);
    }

    json record{{"command", "measure"},
                {"measurement", opt.measurement},
                {"kind", dilation ? "povm" : "projective"},
                {"decohere", opt.decohere},
                {"report", detail::report_json(r)},
                {"outcome_table", detail::table_json(dilation ? outcome_table(file.ensemble, std::get<Povm>(def)) : info.table)}};
    std::string text = render(r, "measurement '" + opt.measurement + "'" + (dilation ? " (via Neumark dilation)" : "") +
                                     (opt.decohere ? ", ancilla decohered" : "")) +
                       "\n" + detail::table_text(dilation ? outcome_table(file.ensemble, std::get<Povm>(def)) : info.table);
    if (opt.venn) {
        const auto regions = named_regions(venn3(post, {preparer_label}, {channel_label}, {ancilla_label}),
                                           {preparer_label}, {channel_label}, {ancilla_label});
        record["venn3"] = detail::regions_json(regions);
        text += "\n" + render(regions, "entropy Venn diagram of X'Q'A'");
    }
    detail::emit(out, g, record, text);
    return ok;
}

/// Venn diagram of XQ, or with a measurement, of X'Q'A' after it.
inline int cmd_venn(const EnsembleFile& file, const MeasureOptions& opt, const GlobalOptions& g, std::ostream& out) {
    json record{{"command", "venn"}};
    std::string text;
    const auto xq = assemble_xq(file.ensemble);
    const auto regions2 = named_regions(venn2(xq, {preparer_label}, {channel_label}), {preparer_label}, {channel_label});
    record["venn2"] = detail::regions_json(regions2);
    text += render(regions2, "entropy Venn diagram of XQ");
    if (!opt.measurement.empty()) {
        const auto& def = file.measurement(opt.measurement);
        std::optional<NeumarkDilation> dilation;
        if (const auto* povm = std::get_if<Povm>(&def)) dilation = neumark_dilate(*povm);
        const Ensemble e = dilation ? dilation->embed(file.ensemble) : file.ensemble;
        const ProjectiveMeasurement m = dilation ? dilation->measurement : std::get<ProjectiveMeasurement>(def);
        auto post = apply_measurement(assemble_xq(e), m);
        if (opt.decohere) post = decohere_ancilla(post);
        const auto regions3 = named_regions(venn3(post, {preparer_label}, {channel_label}, {ancilla_label}),
                                            {preparer_label}, {channel_label}, {ancilla_label});
        record["measurement"] = opt.measurement;
        record["decohere"] = opt.decohere;
        record["venn3"] = detail::regions_json(regions3);
        text += "\n" + render(regions3, "entropy Venn diagram of X'Q'A' after '" + opt.measurement + "'" +
                                            (opt.decohere ? ", ancilla decohered" : ""));
    }
    detail::emit(out, g, record, text);
    return ok;
}

inline int cmd_sequential(const EnsembleFile& file, const std::string& chain_name, const GlobalOptions& g,
                          std::ostream& out) {
    const auto chain = file.chain(chain_name);
    const auto result = sequential_measure(file.ensemble, chain);
    const double chi = holevo_chi(file.ensemble);

    BoundReport r;
    r.tolerance = g.tolerance;
    const auto& names = file.chains.at(chain_name);
    for (std::size_t j = 0; j < result.step_info.size(); ++j)
        r.add("step " + std::to_string(j + 1) + " (" + names[j] + ") H(X:A" + std::to_string(j + 1) + "|earlier)",
              result.step_info[j]);
    r.add("sum of steps", result.total());
    r.add("chi = S(X:Q)", chi);
    r.require("sum of steps <= chi", result.total(), chi);

    json record{{"command", "sequential"},
                {"chain", chain_name},
                {"steps", names},
                {"step_info", result.step_info},
                {"cumulative", result.cumulative},
                {"chi", chi},
                {"margin", chi - result.total()},
                {"outcome_counts", result.outcome_counts},
                {"conditional", detail::matrix_json(result.conditional)},
                {"report", detail::report_json(r)}};
    std::ostringstream text;
    text << render(r, "sequential chain '" + chain_name + "'");
    text << "  cumulative:";
    for (double c : result.cumulative) text << " " << detail::bits(c);
    text << "\n";
    detail::emit(out, g, record, text.str());
    return ok;
}

inline int cmd_optimize(const EnsembleFile& file, OptimizerConfig cfg, const GlobalOptions& g, std::ostream& out) {
    cfg.seed = g.seed;
    const auto result = optimize_accessible_info(file.ensemble, cfg);
    const double chi = holevo_chi(file.ensemble);

    json basis = json::array();
    for (Eigen::Index k = 0; k < result.basis.cols(); ++k) basis.push_back(kholevo::detail::ket_to_json(result.basis.col(k)));
    json record{{"command", "optimize"},
                {"best_information", result.bits},
                {"chi", chi},
                {"gap", chi - result.bits},
                {"restart", result.restart},
                {"basis", basis},
                {"config",
                 {{"restarts", cfg.restarts},
                  {"steps", cfg.steps},
                  {"initial_step", cfg.initial_step},
                  {"decay", cfg.decay},
                  {"seed", cfg.seed},
                  {"embed_dim", cfg.embed_dim}}}};
    std::ostringstream text;
    text << detail::line("best I found", result.bits) << detail::line("chi = S(X:Q)", chi)
         << detail::line("gap chi - I", chi - result.bits);
    text << "found in restart " << result.restart << "; measurement basis (columns as [re, im] amplitudes):\n";
    for (Eigen::Index k = 0; k < result.basis.cols(); ++k) {
        text << "  |b" << k << ">:";
        for (Eigen::Index r = 0; r < result.basis.rows(); ++r) {
            const complex c = result.basis(r, k);
            text << " [" << detail::bits(c.real()) << ", " << detail::bits(c.imag()) << "]";
        }
        text << "\n";
    }
    detail::emit(out, g, record, text.str());
    return ok;
}

struct CheckOptions {
    std::vector<std::size_t> dims{2};
    std::size_t count = 1000;
};

namespace detail {

struct MarginStats {
    std::string name;
    std::size_t dim = 0;
    std::size_t cases = 0;
    std::size_t violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double sum_margin = 0.0;

    void record(double margin, double tol) {
        ++cases;
        if (margin < -tol) ++violations;
        min_margin = std::min(min_margin, margin);
        sum_margin += margin;
    }
    double mean_margin() const { return cases ? sum_margin / static_cast<double>(cases) : 0.0; }
};

}  // namespace detail

/// Randomized inequality suite: H(X:Y) <= S(X:Y), 0 <= chi <= H[p], I <= chi,
/// the sequential bound and strong subadditivity, `count` cases each.
inline int cmd_check(const std::optional<EnsembleFile>& file, const CheckOptions& opt, const GlobalOptions& g,
                     std::ostream& out) {
    std::vector<detail::MarginStats> stats;
    for (std::size_t dim : opt.dims) {
        if (dim < 2 || dim > 8) throw std::invalid_argument("check: dimensions must lie in [2, 8]");
        auto stream = [&](std::uint64_t check_id, std::size_t k) {
            return Rng(case_seed(case_seed(g.seed, check_id * 64 + dim), k));
        };
        detail::MarginStats general{"H(X:Y) <= S(X:Y)", dim}, range{"0 <= chi <= H[p]", dim},
            holevo{"I <= chi", dim}, chain{"sum_j H(X:A_j|A_<j) <= chi", dim}, ssa{"S(A:B|C) >= 0", dim};
        std::uniform_int_distribution<std::size_t> members(2, 4), rank(1, dim);
        std::bernoulli_distribution coin(0.5);
        for (std::size_t k = 0; k < opt.count; ++k) {
            {
                auto rng = stream(0, k);
                const auto s = random_multipartite(SubsystemLayout{{"X", dim}, {"Y", dim}}, rng);
                general.record(mutual(s, {"X"}, {"Y"}) - diagonal_mutual_shannon(s, {"X"}, {"Y"}), g.tolerance);
            }
            {
                auto rng = stream(1, k);
                const auto n = members(rng);
                const auto e = random_ensemble(dim, n, rank(rng), rng);
                const double chi = holevo_chi(e);
                range.record(std::min(chi, kholevo::detail::raw_shannon(e.probs()) - chi), g.tolerance);
            }
            {
                auto rng = stream(2, k);
                const auto n = members(rng);
                const auto e = random_ensemble(dim, n, rank(rng), rng);
                const auto m = random_projective(dim, rng, coin(rng));
                holevo.record(holevo_chi(e) - extracted_info(e, m).bits, g.tolerance);
            }
            {
                auto rng = stream(3, k);
                const auto n = members(rng);
                const auto e = random_ensemble(dim, n, rank(rng), rng);
                std::vector<ProjectiveMeasurement> steps;
                for (int j = 0; j < 2; ++j) steps.push_back(random_projective(dim, rng, coin(rng)));
                chain.record(holevo_chi(e) - sequential_measure(e, steps).total(), g.tolerance);
            }
            {
                auto rng = stream(4, k);
                const auto s = random_multipartite(SubsystemLayout{{"A", dim}, {"B", dim}, {"C", dim}}, rng);
                ssa.record(conditional_mutual(s, {"A"}, {"B"}, {"C"}), g.tolerance);
            }
        }
        for (auto* s : {&general, &range, &holevo, &chain, &ssa}) stats.push_back(*s);
    }

    std::optional<BoundReport> file_report;
    if (file) file_report = chi_range(file->ensemble, g.tolerance);

    bool failed = file_report && !file_report->all_satisfied();
    json rows = json::array();
    std::ostringstream text;
    text << "randomized inequality suite: seed " << g.seed << ", " << opt.count << " cases per check, tolerance "
         << kholevo::detail::fmt_double(g.tolerance) << "\n";
    text << "  " << std::left << std::setw(30) << "inequality" << std::right << std::setw(5) << "dim" << std::setw(8)
         << "cases" << std::setw(11) << "violations" << std::setw(12) << "min margin" << std::setw(12) << "mean margin"
         << "\n";
    for (const auto& s : stats) {
        failed = failed || s.violations > 0;
        rows.push_back({{"inequality", s.name},
                        {"dim", s.dim},
                        {"cases", s.cases},
                        {"violations", s.violations},
                        {"min_margin", s.min_margin},
                        {"mean_margin", s.mean_margin()}});
        text << "  " << std::left << std::setw(30) << s.name << std::right << std::setw(5) << s.dim << std::setw(8)
             << s.cases << std::setw(11) << s.violations << std::setw(12) << detail::bits(s.min_margin) << std::setw(12)
             << detail::bits(s.mean_margin()) << "\n";
    }
    json record{{"command", "check"}, {"seed", g.seed}, {"tolerance", g.tolerance}, {"results", rows}, {"passed", !failed}};
    if (file_report) {
        record["input"] = detail::report_json(*file_report);
        text << "\n" << render(*file_report, "input ensemble");
    }
    text << (failed ? "FAILED\n" : "all inequalities hold\n");
    detail::emit(out, g, record, text.str());
    return failed ? inequality_error : ok;
}

/// Parses `argv`, runs the selected command and maps errors onto exit codes.
/// Results go to `out`; warnings and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kholevo bound toolkit: ensembles, ancilla-model measurements and entropy inequalities"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--input,-i", g.input, "Ensemble definition file (JSON)");
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--tolerance", g.tolerance, "Inequality margin tolerance")->capture_default_str();

    auto* chi = app.add_subcommand("chi", "Kholevo quantity chi, its range and the XQ Venn diagram")->fallthrough();

    MeasureOptions measure_opt;
    auto* measure = app.add_subcommand("measure", "Run the ancilla measurement model for a named measurement")->fallthrough();
    measure->add_option("--measurement,-m", measure_opt.measurement, "Measurement name")->required();
    measure->add_flag("--decohere", measure_opt.decohere, "Dephase the ancilla after the interaction");
    measure->add_flag("--venn", measure_opt.venn, "Also print the X'Q'A' Venn diagram");

    MeasureOptions venn_opt;
    auto* venn = app.add_subcommand("venn", "Entropy Venn diagrams before (and after) a measurement")->fallthrough();
    venn->add_option("--measurement,-m", venn_opt.measurement, "Measurement name");
    venn->add_flag("--decohere", venn_opt.decohere, "Dephase the ancilla after the interaction");

    std::string chain_name;
    auto* sequential = app.add_subcommand("sequential", "Chain of measurements and the sequential bound")->fallthrough();
    sequential->add_option("--chain,-c", chain_name, "Chain name")->required();

    OptimizerConfig cfg;
    auto* optimize = app.add_subcommand("optimize", "Search measurements for high extracted information")->fallthrough();
    optimize->add_option("--restarts", cfg.restarts, "Random restarts")->capture_default_str();
    optimize->add_option("--steps", cfg.steps, "Coordinate sweeps per restart")->capture_default_str();
    optimize->add_option("--step", cfg.initial_step, "Initial step size")->capture_default_str();
    optimize->add_option("--decay", cfg.decay, "Step decay factor in (0, 1)")->capture_default_str();
    optimize->add_option("--embed-dim", cfg.embed_dim, "Search rank-1 POVMs via projective measurements on this dimension");

    CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "Randomized inequality suite")->fallthrough();
    check->add_option("--dims", check_opt.dims, "Channel dimensions")->delimiter(',')->capture_default_str();
    check->add_option("--count", check_opt.count, "Cases per inequality and dimension")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_error;
    }

    try {
        const WarningSink warn = [&err](const std::string& w) { err << w << "\n"; };
        if (check->parsed()) {
            std::optional<EnsembleFile> file;
            if (!g.input.empty()) file = load_ensemble_file(g.input, warn);
            return cmd_check(file, check_opt, g, out);
        }
        if (g.input.empty()) throw ParseError("--input is required for this command");
        const auto file = load_ensemble_file(g.input, warn);
        if (chi->parsed()) return cmd_chi(file, g, out);
        if (measure->parsed()) return cmd_measure(file, measure_opt, g, out);
        if (venn->parsed()) return cmd_venn(file, venn_opt, g, out);
        if (sequential->parsed()) return cmd_sequential(file, chain_name, g, out);
        if (optimize->parsed()) return cmd_optimize(file, cfg, g, out);
        return parse_error;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return invariant_error;
    } catch (const ReferenceError& e) {
        err << "reference error: " << e.what() << "\n";
        return reference_error;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return parse_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    }
}

}  // namespace kholevo::cli
