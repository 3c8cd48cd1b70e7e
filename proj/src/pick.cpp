#include "diskops/pick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "diskops/errors.hpp"

namespace diskops {

namespace {

constexpr double sign_tol = 1e-13;

cplx kernel(const SpaceWeights& space, cplx w, cplx z, KernelMode mode)
{
    if (mode == KernelMode::automatic)
        return kernel_eval(space, w, z);
    const double r = std::abs(std::conj(w) * z);
    return kernel_eval_series(space, w, z, kernel_series_order(space, r));
}

void require_in_disk(const std::vector<cplx>& points, const char* what)
{
    for (cplx p : points)
        if (!(std::abs(p) < 1.0))
            throw DomainError(std::string(what) + ": point " + format_number(p) + " is not inside the disk");
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& M)
{
    return 0.5 * (M + M.adjoint());
}

} // namespace

PickProblem pick_problem_from_json(const nlohmann::json& j)
{
    PickProblem p{SpaceWeights::parse(j.at("space").get<std::string>()), {}, {}};
    for (const auto& v : j.at("nodes"))
        p.nodes.push_back(complex_from_json(v));
    for (const auto& v : j.at("targets"))
        p.targets.push_back(complex_from_json(v));
    if (p.nodes.size() != p.targets.size())
        throw ShapeError("pick problem: nodes and targets differ in length");
    return p;
}

VerificationReport kaluza_check(const SpaceWeights& space, std::size_t n_max)
{
    Stopwatch clock;
    VerificationReport r;
    r.check_id = "kaluza_" + space.name();
    r.tolerance = 0.0;
    const double a0 = space.kernel_coefficient(0);
    r.add("a_0", a0);
    if (a0 != 1.0) {
        r.status = Status::fail;
        r.note = "a_0 != 1";
        r.elapsed_ms = clock.elapsed_ms();
        return r;
    }
    std::size_t first_failure = 0;
    bool strict = true;
    long double min_margin = std::numeric_limits<long double>::infinity();
    for (std::size_t n = 1; n <= n_max; ++n) {
        const long double lhs = std::pow(static_cast<long double>(space.kernel_coefficient(n)), 2);
        const long double rhs = static_cast<long double>(space.kernel_coefficient(n - 1)) *
                                static_cast<long double>(space.kernel_coefficient(n + 1));
        const long double margin = (rhs - lhs) / rhs;
        min_margin = std::min(min_margin, margin);
        if (!(lhs <= rhs * (1.0L + 1e-15L))) {
            first_failure = n;
            break;
        }
        if (!(lhs < rhs))
            strict = false;
    }
    r.add("min_relative_margin", static_cast<double>(min_margin));
    if (first_failure) {
        r.add("first_failure", static_cast<double>(first_failure));
        r.status = Status::fail;
        r.note = "log-convexity fails at n=" + std::to_string(first_failure);
    }
    else {
        r.status = Status::pass;
        r.note = std::string(strict ? "strict" : "non-strict") + " up to n=" + std::to_string(n_max);
    }
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport reciprocal_sign_check(const SpaceWeights& space, std::size_t n_max)
{
    Stopwatch clock;
    const PowerSeries k = PowerSeries::generate(n_max, [&](std::size_t n) { return cplx(space.kernel_coefficient(n)); });
    const PowerSeries c = reciprocal(k, n_max);
    VerificationReport r;
    r.check_id = "reciprocal_signs_" + space.name();
    r.tolerance = sign_tol;
    for (std::size_t n = 0; n <= std::min<std::size_t>(n_max, 2); ++n)
        r.add("c_" + std::to_string(n), c[n].real());
    r.status = Status::pass;
    for (std::size_t n = 1; n <= n_max; ++n)
        if (c[n].real() > sign_tol) {
            r.add("first_violation", static_cast<double>(n));
            r.add("violation_value", c[n].real());
            r.status = Status::fail;
            r.note = "c_" + std::to_string(n) + " > 0";
            break;
        }
    if (r.status == Status::pass)
        r.note = "c_n <= 0 for 1 <= n <= " + std::to_string(n_max);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

Eigen::MatrixXcd pick_matrix(const PickProblem& problem, KernelMode mode)
{
    const auto& nodes = problem.nodes;
    const auto& w = problem.targets;
    if (nodes.size() != w.size())
        throw ShapeError("pick_matrix: nodes and targets differ in length");
    require_in_disk(nodes, "pick_matrix");
    const auto n = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXcd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            M(j, i) = (1.0 - std::conj(w[si]) * w[sj]) * kernel(problem.space, nodes[si], nodes[sj], mode);
        }
    return hermitian_part(M);
}

PsdVerdict psd_check(const Eigen::MatrixXcd& M, double tol)
{
    if (M.rows() != M.cols())
        throw ShapeError("psd_check: matrix is " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()));
    PsdVerdict v;
    if (M.rows() == 0)
        return v;
    v.matrix_scale = M.diagonal().cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(M), Eigen::EigenvaluesOnly);
    v.min_eigenvalue = es.eigenvalues().minCoeff();
    v.is_psd = v.min_eigenvalue >= -tol * v.matrix_scale;
    return v;
}

PickCounterexample pick_counterexample_values(const SpaceWeights& space, double z0, double w0_sq)
{
    if (!(std::abs(z0) < 1.0))
        throw DomainError("pick_counterexample_values: |z0| >= 1");
    const double r = z0 * z0;
    long double att = 0.0L;
    long double power = 1.0L;
    for (std::size_t n = 1; n < 100000; ++n) {
        power *= r;
        const long double term = power * space.kernel_coefficient(n + 1);
        att += term;
        if (term < 1e-18L * att)
            break;
    }
    const double k = std::real(kernel_eval(space, z0, z0));
    return {(1.0 - w0_sq) * k, static_cast<double>(att)};
}

VerificationReport scalar_pick_counterexample()
{
    Stopwatch clock;
    const SpaceWeights s2(SpaceKind::S2);
    const double z0 = 0.5, w0_sq = 0.1;
    const auto values = pick_counterexample_values(s2, z0, w0_sq);
    const PsdVerdict v = psd_check(pick_matrix({s2, {0.0, z0}, {0.0, std::sqrt(w0_sq)}}));

    VerificationReport r;
    r.check_id = "prop54_values";
    r.tolerance = 5e-4;
    r.add("condition_value", values.condition_value);
    r.add("attainability", values.attainability);
    r.add("pick_min_eigenvalue", v.min_eigenvalue);
    r.expect("condition_value", 1.1409, Provenance::paper);
    r.expect("attainability", 0.0706, Provenance::paper);
    const bool matched = std::abs(values.condition_value - 1.1409) <= r.tolerance &&
                         std::abs(values.attainability - 0.0706) <= r.tolerance;
    const bool counterexample = values.condition_value > 1.0 && values.attainability < w0_sq && v.is_psd;
    r.status = matched && counterexample ? Status::pass : Status::fail;
    r.note = "Pick matrix PSD, yet no contractive multiplier attains |w0|^2 = 0.1";
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

std::vector<cplx> default_corona_grid()
{
    std::vector<cplx> grid;
    for (int i = 1; i <= 5; ++i)
        for (int k = 0; k < 5; ++k)
            grid.push_back(std::polar(0.18 * i, 2.0 * std::numbers::pi * k / 5.0));
    return grid;
}

PsdVerdict corona_kernel_check(const SpaceWeights& space, const std::vector<PowerSeries>& symbols, double delta,
                               std::vector<cplx> grid)
{
    if (grid.empty())
        grid = default_corona_grid();
    require_in_disk(grid, "corona_kernel_check");
    const auto n = static_cast<Eigen::Index>(grid.size());
    std::vector<std::vector<cplx>> values;
    for (const auto& phi : symbols) {
        std::vector<cplx> v;
        for (cplx p : grid)
            v.push_back(evaluate(phi, p));
        values.push_back(std::move(v));
    }
    Eigen::MatrixXcd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            cplx s = -delta * delta;
            for (const auto& v : values)
                s += std::conj(v[si]) * v[sj];
            M(j, i) = s * kernel_eval(space, grid[si], grid[sj]);
        }
    return psd_check(M);
}

} // namespace diskops
