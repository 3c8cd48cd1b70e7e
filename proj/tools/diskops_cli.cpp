// diskops: run verification suites and one-off computations from the shell.
//
// Every numeric flag can also be set through the environment:
// DISKOPS_TRUNCATION, DISKOPS_TOL, DISKOPS_QUAD_NODES, DISKOPS_SEED,
// DISKOPS_OUTPUT. Flags on the command line win.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "diskops/blaschke.hpp"
#include "diskops/errors.hpp"
#include "diskops/operators.hpp"
#include "diskops/pick.hpp"
#include "diskops/report.hpp"
#include "diskops/series.hpp"
#include "diskops/spaces.hpp"
#include "diskops/suites.hpp"

using namespace diskops;

namespace {

nlohmann::json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IOError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::exception& e) {
        throw IOError(path + ": " + e.what());
    }
}

// "0.5", "[0.5, -0.2]" or "0.5,-0.2"
cplx parse_complex(const std::string& text)
{
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (!j.is_discarded())
        return complex_from_json(j);
    const auto comma = text.find(',');
    if (comma != std::string::npos)
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    throw std::invalid_argument("not a complex number: " + text);
}

// c z^k, if the series is a single monomial
std::optional<std::pair<std::size_t, cplx>> as_monomial(const PowerSeries& f)
{
    std::optional<std::pair<std::size_t, cplx>> found;
    for (std::size_t n = 0; n <= f.order(); ++n)
        if (f[n] != cplx{}) {
            if (found)
                return std::nullopt;
            found.emplace(n, f[n]);
        }
    return found;
}

VerificationReport norm_report(const SpaceWeights& space, const PowerSeries& f)
{
    Stopwatch clock;
    VerificationReport r;
    r.check_id = "norm_" + space.name();
    r.status = Status::pass;
    r.add("norm", space_norm(space, f));
    r.add("norm_sq", space_norm_sq(space, f));
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport opnorm_report(const SpaceWeights& space, OperatorKind kind, const PowerSeries& f,
                                 const Config& cfg)
{
    Stopwatch clock;
    VerificationReport r;
    r.check_id = std::string(kind == OperatorKind::multiplication ? "mult" : "comp") + "_norm_" + space.name();
    r.tolerance = cfg.tol;
    r.status = Status::pass;
    if (const auto mono = as_monomial(f)) {
        r.add("exact", monomial_symbol_norm(space, kind, mono->first, mono->second));
        r.note = "monomial symbol: exact supremum of column norms";
    }
    else {
        const auto profile = convergence_profile(space, kind, f, cfg.tol, std::min<std::size_t>(32, cfg.truncation),
                                                 std::max<std::size_t>(8192, cfg.truncation));
        for (const auto& [N, est] : profile.history)
            r.add("N=" + std::to_string(N), est);
        r.add("estimate", profile.estimate);
        r.note = "compression lower bound, converged at N=" + std::to_string(profile.truncation);
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport kernel_report(const SpaceWeights& space, cplx w, cplx z)
{
    Stopwatch clock;
    VerificationReport r;
    r.check_id = "kernel_" + space.name();
    r.status = Status::pass;
    r.add("K_w(z)", kernel_eval(space, w, z));
    r.note = space.has_closed_kernel() ? "closed form" : "series";
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport pick_report(const PickProblem& p)
{
    Stopwatch clock;
    const PsdVerdict v = psd_check(pick_matrix(p));
    VerificationReport r;
    r.check_id = "pick_" + p.space.name();
    r.status = v.is_psd ? Status::pass : Status::fail;
    r.tolerance = psd_tolerance;
    r.add("min_eigenvalue", v.min_eigenvalue);
    r.add("matrix_scale", v.matrix_scale);
    r.note = v.is_psd ? "Pick matrix is positive semi-definite" : "Pick matrix has a negative eigenvalue";
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical checks for weighted Hilbert spaces of analytic functions on the disk"};
    app.require_subcommand(1);

    Config cfg;
    std::string output = "text";
    app.add_option("--truncation", cfg.truncation, "series truncation order N")->envname("DISKOPS_TRUNCATION");
    app.add_option("--tol", cfg.tol, "tolerance for identity checks")->envname("DISKOPS_TOL");
    app.add_option("--quad-nodes", cfg.quad_nodes, "circle quadrature nodes")->envname("DISKOPS_QUAD_NODES");
    app.add_option("--seed", cfg.seed, "seed for random probes")->envname("DISKOPS_SEED");
    app.add_option("--output", output, "text, json or csv")
        ->envname("DISKOPS_OUTPUT")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    std::string suite, space_name, file, kind_name, w_text, z_text;
    int m = 3;

    auto* verify = app.add_subcommand("verify", "run a check suite");
    verify->add_option("suite", suite, "kernels, constants, isometries, blaschke, pick, composition or all")
        ->required();

    auto* norm = app.add_subcommand("norm", "norm of a series");
    norm->add_option("space", space_name)->required();
    norm->add_option("series", file, "JSON array of [re, im] pairs")->required();

    auto* opnorm = app.add_subcommand("opnorm", "norm of a multiplication or composition operator");
    opnorm->add_option("space", space_name)->required();
    opnorm->add_option("kind", kind_name)->required()->check(CLI::IsMember({"mult", "comp"}));
    opnorm->add_option("series", file)->required();

    auto* kernel = app.add_subcommand("kernel", "reproducing kernel K_w(z)");
    kernel->add_option("space", space_name)->required();
    kernel->add_option("w", w_text)->required();
    kernel->add_option("z", z_text)->required();

    auto* isometry = app.add_subcommand("isometry", "m-isometry alternating sums of a Blaschke multiplier");
    isometry->add_option("space", space_name)->required();
    isometry->add_option("blaschke", file, "{\"a\": [re, im], \"zeros\": [[re, im], ...]}")->required();
    isometry->add_option("m", m)->required()->check(CLI::PositiveNumber);

    auto* pick = app.add_subcommand("pick", "positivity of a Pick matrix");
    pick->add_option("problem", file, "{\"space\": ..., \"nodes\": [...], \"targets\": [...]}")->required();

    CLI11_PARSE(app, argc, argv);

    std::vector<VerificationReport> reports;
    try {
        cfg.output = output_format_from_string(output);
        cfg.validate();
        if (*verify)
            reports = run_suite(suite_from_string(suite), cfg);
        else if (*norm)
            reports.push_back(norm_report(SpaceWeights::parse(space_name), series_from_json(read_json(file))));
        else if (*opnorm)
            reports.push_back(opnorm_report(SpaceWeights::parse(space_name),
                                            kind_name == "mult" ? OperatorKind::multiplication
                                                                : OperatorKind::composition,
                                            series_from_json(read_json(file)), cfg));
        else if (*kernel)
            reports.push_back(kernel_report(SpaceWeights::parse(space_name), parse_complex(w_text),
                                            parse_complex(z_text)));
        else if (*isometry) {
            const std::vector<PowerSeries> probes{PowerSeries::constant(1.0), PowerSeries::monomial(1),
                                                  PowerSeries({1.0, 1.0})};
            reports.push_back(blaschke_isometry_check(SpaceWeights::parse(space_name),
                                                      blaschke_from_json(read_json(file)), probes, cfg.truncation,
                                                      m, cfg.tol));
        }
        else if (*pick)
            reports.push_back(pick_report(pick_problem_from_json(read_json(file))));
        emit_report(reports, cfg.output, std::cout);
    }
    catch (const std::exception& e) {
        std::cerr << "diskops: " << e.what() << '\n';
        return 2;
    }
    return all_ok(reports) ? 0 : 1;
}
