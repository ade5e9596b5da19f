#include "plspower/cli.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "plspower/errors.hpp"
#include "plspower/mc_oracle.hpp"
#include "plspower/messages.hpp"
#include "plspower/power_core.hpp"
#include "plspower/report.hpp"
#include "plspower/service.hpp"

namespace plspower::cli {

namespace {

constexpr std::array<double, 3> kPaperAlphas = {0.01, 0.05, 0.10};

struct UsageError {
    std::string message;
};

struct Flags {
    double alpha = 0.05;
    double power = kDefaultPower;
    std::optional<double> mdes;
    std::optional<double> n;
    std::string format;
    std::string out_path;
    std::optional<std::int64_t> arrowheads;
    std::int64_t reps = 20000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool strict_paper = false;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<double> step;
    std::string host;
    int port = 0;
    std::string static_dir;
};

void add_spec_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--alpha", f.alpha, "Significance level")->default_val(0.05);
    cmd->add_option("--power", f.power, "Target power")->default_val(kDefaultPower);
    cmd->add_flag("--strict-paper", f.strict_paper,
                  "Only accept alpha in {0.01, 0.05, 0.10}");
}

PowerSpec spec_of(const Flags& f) {
    if (f.strict_paper &&
        std::find(kPaperAlphas.begin(), kPaperAlphas.end(), f.alpha) == kPaperAlphas.end()) {
        throw UsageError{"--strict-paper: alpha must be one of 0.01, 0.05, 0.1"};
    }
    return PowerSpec::make(f.alpha, f.power);
}

std::int64_t whole(double v, const char* what) {
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw DomainError(std::string(what) + " must be an integer");
    }
    return static_cast<std::int64_t>(v);
}

void print_json(std::ostream& out, const nlohmann::json& j) {
    out << j.dump(2) << '\n';
}

int cmd_apriori(const Flags& f, std::ostream& out) {
    const auto result = a_priori(*f.mdes, spec_of(f));
    const auto baseline = make_baseline(f.arrowheads);
    if (f.format == "json") {
        print_json(out, to_json(result, baseline));
        return kSuccess;
    }
    out << apriori_message(result) << '\n';
    if (result.small_sample_flag) {
        out << small_sample_warning(result.n_required) << '\n';
    }
    if (baseline) {
        out << "Heuristic baseline (10-times rule, " << baseline->max_arrowheads
            << " arrowheads): " << baseline->n << " observations.\n";
    }
    return kSuccess;
}

int cmd_sensitivity(const Flags& f, std::ostream& out) {
    const auto result = sensitivity(*f.n, spec_of(f));
    if (f.format == "json") {
        print_json(out, to_json(result));
        return kSuccess;
    }
    out << sensitivity_message(result) << '\n';
    if (result.small_sample_flag) {
        out << small_sample_warning(result.n) << '\n';
    }
    return kSuccess;
}

int cmd_graph(const Flags& f, std::ostream& out, std::ostream& err) {
    if (f.mdes.has_value() == f.n.has_value()) {
        throw UsageError{"graph: give exactly one of --mdes (a priori) or --n (sensitivity)"};
    }
    const PowerSpec spec = spec_of(f);
    CurveSeries curve;
    if (f.mdes) {
        const double ref = *f.mdes;
        curve = a_priori_curve(spec, f.lo.value_or(std::min(CurveDefaults::mdes_lo, ref)),
                               f.hi.value_or(std::max(CurveDefaults::mdes_hi, ref)),
                               f.step.value_or(CurveDefaults::mdes_step), ref);
    } else {
        const std::int64_t ref = whole(*f.n, "sample size N");
        curve = sensitivity_curve(
            spec, f.lo ? whole(*f.lo, "--lo") : std::min(CurveDefaults::n_lo, ref),
            f.hi ? whole(*f.hi, "--hi") : std::max(CurveDefaults::n_hi, ref),
            f.step ? whole(*f.step, "--step") : CurveDefaults::n_step, ref);
    }

    const std::string body = f.format == "csv" ? to_csv(curve) : to_svg(curve);
    if (f.out_path.empty() || f.out_path == "-") {
        out << body;
        return kSuccess;
    }
    std::ofstream file(f.out_path, std::ios::binary);
    if (file) file << body;
    if (!file) {
        err << "error: cannot write '" << f.out_path << "'\n";
        return kDomainError;
    }
    out << "wrote " << f.out_path << '\n';
    return kSuccess;
}

int cmd_validate(const Flags& f, std::ostream& out) {
    if (f.reps < mc::kMinReplications) {
        throw UsageError{"--reps must be at least " + std::to_string(mc::kMinReplications)};
    }
    const auto report = mc::validate_apriori(*f.mdes, spec_of(f), f.reps, f.seed, f.threads);
    if (f.format == "json") {
        print_json(out, to_json(report));
    } else {
        out << validation_table(report);
    }
    return validation_exit_code(report);
}

int cmd_serve(const Flags& f, std::ostream& out, std::ostream& err) {
    service::Options opts = service::options_from_env();
    if (!f.host.empty()) opts.host = f.host;
    if (f.port != 0) opts.port = f.port;
    if (!f.static_dir.empty()) opts.static_dir = f.static_dir;

    service::Server server(opts);
    const int port = server.bind();
    if (port < 0) {
        err << "error: cannot listen on " << opts.host << ':' << opts.port << '\n';
        return kDomainError;
    }
    out << "listening on http://" << opts.host << ':' << port << '\n' << std::flush;
    return server.listen_after_bind() ? kSuccess : kDomainError;
}

}  // namespace

int validation_exit_code(const mc::ValidationReport& report) {
    return report.pass ? kSuccess : kValidationFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sample size and minimum detectable effect size for PLS-SEM path coefficients "
                 "(inverse square root method)",
                 "plspower"};
    app.require_subcommand(1);
    Flags f;

    auto* apriori = app.add_subcommand("apriori", "Minimum sample size for a target MDES");
    apriori->add_option("--mdes", f.mdes, "Target path coefficient in (0, 1)")->required();
    add_spec_flags(apriori, f);
    apriori->add_option("--format", f.format)
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");
    apriori->add_option("--arrowheads", f.arrowheads,
                        "Also report the 10-times-rule baseline for this many arrowheads");

    auto* sens = app.add_subcommand("sensitivity", "Minimum detectable effect size for a sample size");
    sens->add_option("--n", f.n, "Sample size")->required();
    add_spec_flags(sens, f);
    sens->add_option("--format", f.format)
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");

    auto* graph = app.add_subcommand("graph", "Export the MDES / sample size trade-off curve");
    graph->add_option("--mdes", f.mdes, "Reference MDES (a priori curve)");
    graph->add_option("--n", f.n, "Reference sample size (sensitivity curve)");
    add_spec_flags(graph, f);
    graph->add_option("--format", f.format)
        ->check(CLI::IsMember({"csv", "svg"}))
        ->default_val("svg");
    graph->add_option("--out", f.out_path, "Output file (default: stdout)");
    graph->add_option("--lo", f.lo, "Lower end of the x axis");
    graph->add_option("--hi", f.hi, "Upper end of the x axis");
    graph->add_option("--step", f.step, "Grid step along the x axis");

    auto* validate = app.add_subcommand("validate", "Monte Carlo check of the a priori sample size");
    validate->add_option("--mdes", f.mdes, "Target path coefficient in (0, 1)")->required();
    add_spec_flags(validate, f);
    validate->add_option("--reps", f.reps, "Replications (>= 100)")->default_val(20000);
    validate->add_option("--seed", f.seed, "Master seed")->default_val(1);
    validate->add_option("--threads", f.threads, "Worker threads (0 = all cores)")->default_val(0);
    validate->add_option("--format", f.format)
        ->check(CLI::IsMember({"text", "json"}))
        ->default_val("text");

    auto* serve = app.add_subcommand("serve", "Run the JSON API and web calculator");
    serve->add_option("--host", f.host, "Listen address (env PLSPOWER_HOST)");
    serve->add_option("--port", f.port, "Listen port (env PLSPOWER_PORT)");
    serve->add_option("--static-dir", f.static_dir, "Web UI bundle directory");

    try {
        std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
        std::reverse(rest.begin(), rest.end());
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*apriori) return cmd_apriori(f, out);
        if (*sens) return cmd_sensitivity(f, out);
        if (*graph) return cmd_graph(f, out, err);
        if (*validate) return cmd_validate(f, out);
        if (*serve) return cmd_serve(f, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.message << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kUsageError;
}

}  // namespace plspower::cli
