#include "kedlab/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kedlab/errors.hpp"
#include "kedlab/fit.hpp"
#include "kedlab/grid.hpp"
#include "kedlab/probe.hpp"
#include "kedlab/profiles.hpp"
#include "kedlab/reference.hpp"
#include "kedlab/term.hpp"
#include "kedlab/util.hpp"

namespace kedlab::cli {

namespace {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream& os, const std::string& command, const ConfigEcho& config) {
    os << "# kedlab " << command << "\n";
    for (const auto& [k, v] : config) os << "# " << k << '=' << v << "\n";
}

nlohmann::ordered_json config_json(const std::string& command, const ConfigEcho& config) {
    nlohmann::ordered_json j;
    j["command"] = command;
    for (const auto& [k, v] : config) j[k] = v;
    return j;
}

/// "n1,n2,..." with "tf" accepted for the pure-density term.
ExponentVector parse_term_flag(const std::string& text) {
    if (text == "tf") return ExponentVector{};
    return ExponentVector::parse(text);
}

void deliver(const std::string& content, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw DomainError("cannot open output file \"" + out_path + "\"");
    file << content;
}

struct CommonFlags {
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", flags.out_path, "Write primary output to this file");
}

// --- enumerate -------------------------------------------------------------

int run_enumerate(int dim, bool periodic, std::optional<int> max_order,
                  const CommonFlags& flags, std::ostream& out) {
    const BoundaryMode mode = periodic ? BoundaryMode::Periodic : BoundaryMode::Localized;
    const auto terms = enumerate_terms(dim, mode, max_order);

    ConfigEcho config{
        {"dim", std::to_string(dim)},
        {"boundary", periodic ? "periodic" : "localized"},
        {"max_order", max_order ? std::to_string(*max_order)
                                : std::to_string(max_derivative_order(dim, mode))},
        {"format", flags.format},
        {"out", flags.out_path.empty() ? "-" : flags.out_path},
        {"seedless", "true"},
    };

    std::ostringstream os;
    if (flags.format == "csv") {
        write_header(os, "enumerate", config);
        os << term_csv_header() << "\n";
        for (const auto& t : terms) os << term_csv_row(t) << "\n";
    } else {
        nlohmann::ordered_json j;
        j["config"] = config_json("enumerate", config);
        j["terms"] = nlohmann::ordered_json::array();
        for (const auto& t : terms) {
            nlohmann::ordered_json row;
            row["token"] = term_token(t);
            row["exponents"] = t.exponents().str();
            row["total_order"] = t.exponents().total_order();
            row["ell"] = t.ell();
            row["q"] = t.decay_index().str();
            row["class"] = admissibility_name(classify(t, BoundaryMode::Localized).admissibility);
            j["terms"].push_back(row);
        }
        os << j.dump(2) << "\n";
    }
    deliver(os.str(), flags.out_path, out);
    return kExitOk;
}

// --- check -----------------------------------------------------------------

int run_check(int dim, const std::vector<std::string>& term_texts, bool periodic,
              const CommonFlags& flags, std::ostream& out) {
    const BoundaryMode mode = periodic ? BoundaryMode::Periodic : BoundaryMode::Localized;
    std::vector<KedTerm> terms;
    for (const auto& text : term_texts) terms.push_back(make_term(dim, parse_term_flag(text)));

    std::string joined;
    for (std::size_t i = 0; i < term_texts.size(); ++i)
        joined += (i ? " " : "") + term_texts[i];
    ConfigEcho config{
        {"dim", std::to_string(dim)},
        {"boundary", periodic ? "periodic" : "localized"},
        {"terms", joined},
        {"format", flags.format},
        {"out", flags.out_path.empty() ? "-" : flags.out_path},
        {"seedless", "true"},
    };

    std::ostringstream os;
    if (flags.format == "csv") {
        write_header(os, "check", config);
        os << term_csv_header() << ",finite\n";
        for (const auto& t : terms) {
            const auto c = classify(t, mode);
            os << term_csv_row(t) << ',' << (c.finite ? "true" : "false") << "\n";
        }
    } else {
        nlohmann::ordered_json j;
        j["config"] = config_json("check", config);
        j["terms"] = nlohmann::ordered_json::array();
        for (const auto& t : terms) {
            const auto c = classify(t, mode);
            nlohmann::ordered_json row;
            row["token"] = term_token(t);
            row["ell"] = t.ell();
            row["q"] = t.decay_index().str();
            row["class"] = admissibility_name(c.admissibility);
            row["finite"] = c.finite;
            j["terms"].push_back(row);
        }
        os << j.dump(2) << "\n";
    }
    deliver(os.str(), flags.out_path, out);
    return kExitOk;
}

// --- probe -------------------------------------------------------------------

int run_probe(const std::string& profile_id, const std::vector<std::string>& term_texts,
              std::optional<double> rlo, std::optional<double> rhi, int samples, double tol,
              int cells, const std::string& dump_profile, const CommonFlags& flags,
              std::ostream& out) {
    const RadialProfile profile = parse_profile_id(profile_id);
    std::vector<KedTerm> terms;
    for (const auto& text : term_texts)
        terms.push_back(make_term(profile.dim(), parse_term_flag(text)));

    std::string joined;
    for (std::size_t i = 0; i < term_texts.size(); ++i)
        joined += (i ? " " : "") + term_texts[i];

    if (!dump_profile.empty()) {
        std::ofstream file(dump_profile, std::ios::binary);
        if (!file) throw DomainError("cannot open dump file \"" + dump_profile + "\"");
        write_profile_csv(profile, default_grid(profile), file);
    }

    std::ostringstream os;
    int code = kExitOk;

    if (profile.periodic()) {
        ConfigEcho config{
            {"profile", profile.id()},
            {"terms", joined},
            {"cells", std::to_string(cells)},
            {"format", flags.format},
            {"out", flags.out_path.empty() ? "-" : flags.out_path},
            {"seedless", "true"},
        };
        if (flags.format == "csv") {
            write_header(os, "probe", config);
            os << "term,profile,cells,bounded,max_over_cells\n";
            for (const auto& t : terms) {
                const auto p = probe_periodic(t, profile, cells);
                os << '"' << term_token(t) << "\",\"" << profile.id() << "\"," << cells << ','
                   << (p.bounded ? "true" : "false") << ',' << fmt_g(p.max_over_cells) << "\n";
            }
        } else {
            nlohmann::ordered_json j;
            j["config"] = config_json("probe", config);
            j["reports"] = nlohmann::ordered_json::array();
            for (const auto& t : terms) {
                const auto p = probe_periodic(t, profile, cells);
                nlohmann::ordered_json row;
                row["term"] = term_token(t);
                row["bounded"] = p.bounded;
                row["max_over_cells"] = p.max_over_cells;
                j["reports"].push_back(row);
            }
            os << j.dump(2) << "\n";
        }
    } else {
        ProbeWindow window = default_window(profile);
        if (rlo || rhi) {
            window = ProbeWindow(rlo.value_or(window.r_lo), rhi.value_or(window.r_hi), samples,
                                 window.abscissa);
        } else if (samples != 64) {
            window = ProbeWindow(window.r_lo, window.r_hi, samples, window.abscissa);
        }
        ConfigEcho config{
            {"profile", profile.id()},
            {"terms", joined},
            {"r_lo", fmt_g(window.r_lo)},
            {"r_hi", fmt_g(window.r_hi)},
            {"samples", std::to_string(window.samples)},
            {"tol", fmt_g(tol)},
            {"format", flags.format},
            {"out", flags.out_path.empty() ? "-" : flags.out_path},
            {"seedless", "true"},
        };
        std::vector<ProbeReport> reports;
        for (const auto& t : terms) reports.push_back(probe_term(t, profile, window, tol));
        for (const auto& r : reports)
            if (!r.agrees_with_theory) code = kExitDisagreement;

        if (flags.format == "csv") {
            write_header(os, "probe", config);
            os << probe_csv_header() << "\n";
            for (const auto& r : reports) os << probe_csv_row(r) << "\n";
        } else {
            nlohmann::ordered_json j;
            j["config"] = config_json("probe", config);
            j["reports"] = nlohmann::ordered_json::array();
            for (const auto& r : reports) {
                nlohmann::ordered_json row;
                row["term"] = r.term;
                row["profile"] = r.profile;
                row["r_lo"] = r.r_lo;
                row["r_hi"] = r.r_hi;
                row["samples"] = r.samples;
                row["abscissa"] = r.abscissa == Abscissa::R ? "r" : "r2";
                row["measured_slope"] = r.measured_slope;
                row["predicted_slope"] = r.predicted_slope;
                row["fit_r2"] = r.fit_r2;
                row["verdict"] = verdict_name(r.verdict);
                row["agrees"] = r.agrees_with_theory;
                j["reports"].push_back(row);
            }
            os << j.dump(2) << "\n";
        }
    }
    deliver(os.str(), flags.out_path, out);
    return code;
}

// --- fit -----------------------------------------------------------------------

int run_fit(const std::string& profile_id, const std::string& reference_name,
            const std::vector<std::string>& basis_texts, const std::string& weighting_name,
            std::size_t grid_n, const std::string& dump_grid, const CommonFlags& flags,
            std::ostream& out) {
    const RadialProfile profile = parse_profile_id(profile_id);
    const ReferenceKind kind = parse_reference_kind(reference_name);
    const Weighting weighting =
        weighting_name == "uniform" ? Weighting::Uniform : Weighting::Measure;

    std::vector<KedTerm> basis;
    std::string basis_echo;
    if (basis_texts.size() == 1 && basis_texts[0] == "auto") {
        basis = standard_basis(profile.dim());
        basis_echo = "auto";
    } else {
        for (std::size_t i = 0; i < basis_texts.size(); ++i) {
            basis.push_back(make_term(profile.dim(), parse_term_flag(basis_texts[i])));
            basis_echo += (i ? " " : "") + basis_texts[i];
        }
    }

    const RadialGrid grid = default_grid(profile, grid_n);
    if (!dump_grid.empty()) {
        std::ofstream file(dump_grid, std::ios::binary);
        if (!file) throw DomainError("cannot open dump file \"" + dump_grid + "\"");
        write_grid_csv(grid, file);
    }

    const FitResult result =
        fit_expansion(reference_evaluator(kind, profile), basis, profile, grid, weighting);

    ConfigEcho config{
        {"profile", profile.id()},
        {"reference", reference_name},
        {"basis", basis_echo},
        {"weighting", weighting == Weighting::Uniform ? "uniform" : "measure"},
        {"grid_n", std::to_string(grid_n)},
        {"format", flags.format},
        {"out", flags.out_path.empty() ? "-" : flags.out_path},
        {"seedless", "true"},
    };

    std::ostringstream os;
    if (flags.format == "json") {
        nlohmann::ordered_json j;
        j["config"] = config_json("fit", config);
        j["fit"] = nlohmann::ordered_json::parse(fit_result_json(result));
        os << j.dump(2) << "\n";
    } else {
        write_header(os, "fit", config);
        os << "term,a\n";
        for (std::size_t i = 0; i < result.coefficients.size(); ++i)
            os << '"' << result.basis_tokens[i] << "\"," << fmt_g(result.coefficients[i]) << "\n";
        os << "# residual_rms=" << fmt_g(result.residual_rms) << "\n";
        os << "# T_fit=" << fmt_g(result.t_fit) << "\n";
        os << "# T_ref=" << fmt_g(result.t_ref) << "\n";
        os << "# cond=" << fmt_g(result.cond) << "\n";
    }
    deliver(os.str(), flags.out_path, out);
    return kExitOk;
}

// --- validate --------------------------------------------------------------------

int run_validate(int dim, const std::vector<std::string>& profile_ids,
                 std::optional<int> max_order, double tol, const CommonFlags& flags,
                 std::ostream& out) {
    std::vector<RadialProfile> profiles;
    std::string profile_echo;
    if (profile_ids.empty()) {
        profiles = default_validation_profiles(dim);
    } else {
        for (const auto& id : profile_ids) profiles.push_back(parse_profile_id(id));
    }
    for (std::size_t i = 0; i < profiles.size(); ++i)
        profile_echo += (i ? " " : "") + profiles[i].id();

    const int order = max_order.value_or(dim + 3);
    const ValidationSummary summary = validate_bound(dim, profiles, order, tol);

    ConfigEcho config{
        {"dim", std::to_string(dim)},
        {"profiles", profile_echo},
        {"max_order", std::to_string(order)},
        {"tol", fmt_g(tol)},
        {"format", flags.format},
        {"out", flags.out_path.empty() ? "-" : flags.out_path},
        {"seedless", "true"},
    };

    std::ostringstream os;
    if (flags.format == "csv") {
        write_header(os, "validate", config);
        os << probe_csv_header() << ",theory_asserted\n";
        for (std::size_t i = 0; i < summary.reports.size(); ++i)
            os << probe_csv_row(summary.reports[i]) << ','
               << (summary.theory_asserted[i] ? "true" : "false") << "\n";
        os << "# summary " << summary_json(summary) << "\n";
    } else {
        nlohmann::ordered_json j;
        j["config"] = config_json("validate", config);
        j["reports"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < summary.reports.size(); ++i) {
            const auto& r = summary.reports[i];
            nlohmann::ordered_json row;
            row["term"] = r.term;
            row["profile"] = r.profile;
            row["measured_slope"] = r.measured_slope;
            row["predicted_slope"] = r.predicted_slope;
            row["verdict"] = verdict_name(r.verdict);
            row["agrees"] = r.agrees_with_theory;
            row["theory_asserted"] = static_cast<bool>(summary.theory_asserted[i]);
            j["reports"].push_back(row);
        }
        j["summary"] = nlohmann::ordered_json::parse(summary_json(summary));
        os << j.dump(2) << "\n";
    }
    deliver(os.str(), flags.out_path, out);
    return summary.passed() ? kExitOk : kExitDisagreement;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kedlab: admissible kinetic-energy-density terms, asymptotic probes, and fits"};
    app.require_subcommand(1);

    // enumerate
    int en_dim = 3;
    bool en_periodic = false;
    std::optional<int> en_max_order;
    CommonFlags en_flags;
    auto* enumerate_cmd =
        app.add_subcommand("enumerate", "List every admissible term for a dimension");
    enumerate_cmd->add_option("--dim", en_dim, "Spatial dimension")->required()
        ->check(CLI::PositiveNumber);
    enumerate_cmd->add_flag("--periodic", en_periodic, "Use the periodic admissibility bound");
    enumerate_cmd->add_option("--max-order", en_max_order,
                              "Override the total-order bound (includes divergent terms)");
    add_common(enumerate_cmd, en_flags);

    // check
    int ch_dim = 3;
    bool ch_periodic = false;
    std::vector<std::string> ch_terms;
    CommonFlags ch_flags;
    auto* check_cmd = app.add_subcommand("check", "Classify explicit terms");
    check_cmd->add_option("--dim", ch_dim, "Spatial dimension")->required()
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--term", ch_terms,
                          "Exponents n1,n2,...,nm (last >= 1; \"tf\" for the pure-density term)")
        ->required();
    check_cmd->add_flag("--periodic", ch_periodic, "Judge finitude for periodic densities");
    add_common(check_cmd, ch_flags);

    // probe
    std::string pr_profile;
    std::vector<std::string> pr_terms;
    std::optional<double> pr_rlo, pr_rhi;
    int pr_samples = 64;
    double pr_tol = 0.02;
    int pr_cells = 4;
    std::string pr_dump;
    CommonFlags pr_flags;
    auto* probe_cmd =
        app.add_subcommand("probe", "Measure a term's asymptotic log-slope on a profile");
    probe_cmd->add_option("--profile", pr_profile, "Profile id")->required();
    probe_cmd->add_option("--term", pr_terms, "Exponents n1,n2,...,nm")->required();
    probe_cmd->add_option("--rlo", pr_rlo, "Window lower edge");
    probe_cmd->add_option("--rhi", pr_rhi, "Window upper edge");
    probe_cmd->add_option("--samples", pr_samples, "Samples in the window")
        ->capture_default_str();
    probe_cmd->add_option("--tol", pr_tol, "Agreement tolerance")->capture_default_str();
    probe_cmd->add_option("--cells", pr_cells, "Periods to scan (periodic profiles)")
        ->capture_default_str();
    probe_cmd->add_option("--dump-profile", pr_dump, "Write r,rho,g1..g6 CSV to this file");
    add_common(probe_cmd, pr_flags);

    // fit
    std::string fit_profile, fit_reference = "positive", fit_weighting = "measure", fit_dump;
    std::vector<std::string> fit_basis{"auto"};
    std::size_t fit_grid_n = 2000;
    CommonFlags fit_flags;
    fit_flags.format = "json";
    auto* fit_cmd = app.add_subcommand("fit", "Least-squares fit of a KED expansion");
    fit_cmd->add_option("--profile", fit_profile, "Profile id")->required();
    fit_cmd->add_option("--reference", fit_reference, "Reference KED")
        ->check(CLI::IsMember({"tf", "vw", "positive", "laplacian"}))
        ->capture_default_str();
    fit_cmd->add_option("--basis", fit_basis,
                        "\"auto\" (TF, vW, laplacian shapes) or exponent lists")
        ->capture_default_str();
    fit_cmd->add_option("--weighting", fit_weighting, "Least-squares weighting")
        ->check(CLI::IsMember({"measure", "uniform"}))
        ->capture_default_str();
    fit_cmd->add_option("--grid-n", fit_grid_n, "Quadrature nodes")->capture_default_str();
    fit_cmd->add_option("--dump-grid", fit_dump, "Write the r,w grid CSV to this file");
    add_common(fit_cmd, fit_flags);

    // validate
    int va_dim = 3;
    std::vector<std::string> va_profiles;
    std::optional<int> va_max_order;
    double va_tol = 0.02;
    CommonFlags va_flags;
    auto* validate_cmd =
        app.add_subcommand("validate", "Sweep every term against theory and report m");
    validate_cmd->add_option("--dim", va_dim, "Spatial dimension")->required()
        ->check(CLI::PositiveNumber);
    validate_cmd->add_option("--profiles", va_profiles, "Profile ids (default: catalog set)");
    validate_cmd->add_option("--max-order", va_max_order, "Total-order ceiling (default D+3)");
    validate_cmd->add_option("--tol", va_tol, "Agreement tolerance")->capture_default_str();
    add_common(validate_cmd, va_flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (enumerate_cmd->parsed())
            return run_enumerate(en_dim, en_periodic, en_max_order, en_flags, out);
        if (check_cmd->parsed())
            return run_check(ch_dim, ch_terms, ch_periodic, ch_flags, out);
        if (probe_cmd->parsed())
            return run_probe(pr_profile, pr_terms, pr_rlo, pr_rhi, pr_samples, pr_tol, pr_cells,
                             pr_dump, pr_flags, out);
        if (fit_cmd->parsed())
            return run_fit(fit_profile, fit_reference, fit_basis, fit_weighting, fit_grid_n,
                           fit_dump, fit_flags, out);
        if (validate_cmd->parsed())
            return run_validate(va_dim, va_profiles, va_max_order, va_tol, va_flags, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "usage error: no subcommand given\n";
    return kExitUsage;
}

} // namespace kedlab::cli
