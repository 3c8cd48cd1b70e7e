#include "diskops/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include <Eigen/Eigenvalues>

#include "diskops/errors.hpp"

namespace diskops {

namespace {

using SparseC = Eigen::SparseMatrix<cplx>;
using Triplet = Eigen::Triplet<cplx>;

long double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0L;
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

SparseC build(std::size_t N, std::vector<Triplet>& triplets)
{
    const auto dim = static_cast<Eigen::Index>(N + 1);
    SparseC m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

// Columns with pairwise disjoint row supports make A^* A diagonal.
bool columns_disjoint(const SparseC& A)
{
    std::vector<char> seen(static_cast<std::size_t>(A.rows()), 0);
    for (Eigen::Index j = 0; j < A.outerSize(); ++j)
        for (SparseC::InnerIterator it(A, j); it; ++it) {
            if (it.value() == cplx{})
                continue;
            auto& s = seen[static_cast<std::size_t>(it.row())];
            if (s)
                return false;
            s = 1;
        }
    return true;
}

double lanczos_largest_singular_value(const SparseC& A)
{
    const Eigen::Index n = A.cols();
    const Eigen::Index kmax = std::min<Eigen::Index>(n, 400);

    Eigen::MatrixXcd V(n, kmax + 1);
    std::mt19937_64 rng(0x1a2b3c4dULL);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = cplx(gauss(rng), gauss(rng));
    V.col(0) = v / v.norm();

    std::vector<double> alpha, beta;
    double theta = 0.0;
    for (Eigen::Index j = 0; j < kmax; ++j) {
        Eigen::VectorXcd w = A.adjoint() * (A * V.col(j));
        const double a = V.col(j).dot(w).real();
        alpha.push_back(a);
        w -= a * V.col(j);
        if (j > 0)
            w -= beta.back() * V.col(j - 1);
        for (int pass = 0; pass < 2; ++pass)
            w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
        const double b = w.norm();

        const bool last = (j + 1 == kmax);
        const bool check = j < 48 || j % 8 == 7 || last || b == 0.0;
        if (check) {
            const auto m = static_cast<Eigen::Index>(alpha.size());
            Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
            Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), m - 1))
                                        : Eigen::VectorXd(0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
            es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            theta = es.eigenvalues()[m - 1];
            const double s_last = std::abs(es.eigenvectors()(m - 1, m - 1));
            if (last || b * s_last <= 1e-14 * std::max(theta, std::numeric_limits<double>::min()))
                break;
        }
        if (b <= 1e-300)
            break;
        beta.push_back(b);
        V.col(j + 1) = w / b;
    }
    return std::sqrt(std::max(theta, 0.0));
}

void check_probe_budget(std::size_t needed, std::size_t N)
{
    if (needed > N)
        throw TruncationError("probe degree too high: needs order " + std::to_string(needed) + " > N = " +
                              std::to_string(N));
}

// coefficient mass in (N/2, N]; stands in for the mass discarded above N
long double upper_half_mass(const SpaceWeights& space, const PowerSeries& f)
{
    const std::size_t N = f.order();
    long double acc = 0.0L;
    for (std::size_t n = N / 2 + 1; n <= N; ++n)
        acc += static_cast<long double>(space.weight(n)) * std::norm(f[n]);
    return acc;
}

long double dirichlet_mass(const PowerSeries& f)
{
    long double acc = 0.0L;
    for (std::size_t n = 1; n <= f.order(); ++n)
        acc += static_cast<long double>(n) * std::norm(f[n]);
    return acc;
}

// psi^k f for k = 0..k_max at order N
std::vector<PowerSeries> blaschke_powers_times(const BlaschkeProduct& psi, const PowerSeries& f, int k_max,
                                               std::size_t N)
{
    if (f.degree() > N)
        throw TruncationError("probe degree exceeds the working truncation");
    const PowerSeries s = blaschke_series(psi, N);
    std::vector<PowerSeries> out;
    out.push_back(f.truncated(N));
    for (int k = 1; k <= k_max; ++k)
        out.push_back(cauchy_product(out.back(), s, N));
    return out;
}

void check_tail(const SpaceWeights& space, const PowerSeries& p, double budget)
{
    const auto tail = static_cast<double>(upper_half_mass(space, p));
    if (tail > budget)
        throw TruncationError("coefficient tail " + format_number(tail) + " exceeds the tolerance budget " +
                              format_number(budget) + "; raise N");
}

} // namespace

OperatorMatrix multiplication_matrix(const SpaceWeights& space, const PowerSeries& f, std::size_t N)
{
    const std::size_t d = f.degree();
    std::vector<Triplet> t;
    t.reserve((N + 1) * (d + 1));
    for (std::size_t j = 0; j <= N; ++j) {
        const double wj = space.weight(j);
        for (std::size_t s = 0; s <= d && j + s <= N; ++s) {
            if (f[s] == cplx{})
                continue;
            const std::size_t i = j + s;
            t.emplace_back(static_cast<int>(i), static_cast<int>(j), f[s] * std::sqrt(space.weight(i) / wj));
        }
    }
    return {build(N, t), space, OperatorKind::multiplication, f};
}

OperatorMatrix composition_matrix(const SpaceWeights& space, const PowerSeries& phi, std::size_t N)
{
    if (!(std::abs(phi[0]) < 1.0))
        throw DomainError("composition_matrix: |phi(0)| >= 1");
    std::vector<Triplet> t;
    PowerSeries p = PowerSeries::constant(1.0, N);
    const PowerSeries sym = phi.truncated(N);
    for (std::size_t j = 0; j <= N; ++j) {
        const double wj = space.weight(j);
        for (std::size_t i = 0; i <= N; ++i)
            if (p[i] != cplx{})
                t.emplace_back(static_cast<int>(i), static_cast<int>(j), p[i] * std::sqrt(space.weight(i) / wj));
        if (j < N)
            p = cauchy_product(p, sym, N);
    }
    return {build(N, t), space, OperatorKind::composition, phi};
}

double operator_norm(const OperatorMatrix& T)
{
    const SparseC& A = T.entries;
    if (A.nonZeros() == 0)
        return 0.0;
    if (columns_disjoint(A)) {
        double best = 0.0;
        for (Eigen::Index j = 0; j < A.outerSize(); ++j)
            best = std::max(best, A.col(j).norm());
        return best;
    }
    return lanczos_largest_singular_value(A);
}

NormProfile convergence_profile(const SpaceWeights& space, OperatorKind kind, const PowerSeries& symbol,
                                double tol, std::size_t start, std::size_t cap)
{
    if (kind == OperatorKind::custom)
        throw std::invalid_argument("convergence_profile needs a multiplication or composition symbol");
    NormProfile profile;
    std::size_t N = std::max<std::size_t>(start, 1);
    if (N > cap)
        throw ConvergenceError("convergence_profile: start exceeds cap");
    double previous = -1.0;
    while (true) {
        const OperatorMatrix T = kind == OperatorKind::multiplication ? multiplication_matrix(space, symbol, N)
                                                                      : composition_matrix(space, symbol, N);
        const double est = operator_norm(T);
        profile.history.emplace_back(N, est);
        profile.estimate = std::max(profile.estimate, est);
        profile.truncation = N;
        if (previous >= 0.0 && std::abs(est - previous) <= tol * std::max(est, 1e-300))
            return profile;
        previous = est;
        if (N * 2 > cap)
            throw ConvergenceError("convergence_profile: no stabilisation up to N = " + std::to_string(N) +
                                   " (last estimate " + format_number(est) + ")");
        N *= 2;
    }
}

double monomial_symbol_norm(const SpaceWeights& space, OperatorKind kind, std::size_t k, cplx c)
{
    const double c2 = std::norm(c);
    if (kind == OperatorKind::multiplication) {
        if (k == 0)
            return std::abs(c);
        auto ratio = [&](std::size_t n) { return space.weight(n + k) / space.weight(n); };
        double best = 0.0;
        for (std::size_t n = 0; n <= 4096; ++n)
            best = std::max(best, ratio(n));
        for (std::size_t n = 8192; n <= (std::size_t{1} << 52); n *= 2)
            best = std::max(best, ratio(n));
        return std::sqrt(c2 * best);
    }
    if (kind != OperatorKind::composition)
        throw std::invalid_argument("monomial_symbol_norm: custom operators have no symbol");

    if (k == 0) {
        // C_c f = f(c): rank one, norm^2 = weight(0) K_c(c)
        if (!(std::abs(c) < 1.0))
            throw DomainError("monomial_symbol_norm: |c| >= 1 leaves the disk");
        return std::sqrt(space.weight(0) * std::real(kernel_eval(space, c, c)));
    }
    if (c2 > 1.0)
        return std::numeric_limits<double>::infinity();
    // ||C e_n||^2 = |c|^{2n} weight(kn) / weight(n)
    auto ratio = [&](std::size_t n) {
        const double scale = c2 == 1.0 ? 1.0 : std::pow(c2, static_cast<double>(n));
        return scale * space.weight(k * n) / space.weight(n);
    };
    double best = 0.0;
    for (std::size_t n = 0; n <= 4096; ++n)
        best = std::max(best, ratio(n));
    const std::size_t limit = (std::size_t{1} << 60) / k;
    for (std::size_t n = 8192; n <= std::min(limit, std::size_t{1} << 52); n *= 2)
        best = std::max(best, ratio(n));
    return std::sqrt(best);
}

double hilbert_schmidt_norm_sq(const SpaceWeights& space, const PowerSeries& phi, std::size_t N)
{
    if (!(std::abs(phi[0]) < 1.0))
        throw DomainError("hilbert_schmidt_norm_sq: |phi(0)| >= 1");
    const PowerSeries sym = phi.truncated(N);
    PowerSeries p = PowerSeries::constant(1.0, N);
    long double acc = 0.0L;
    for (std::size_t n = 0; n <= N; ++n) {
        acc += weighted_mass(space, p) / static_cast<long double>(space.weight(n));
        if (n < N)
            p = cauchy_product(p, sym, N);
    }
    return static_cast<double>(acc);
}

double isometry_defect(const OperatorMatrix& T, int m, const PowerSeries& probe)
{
    if (m < 1)
        throw std::invalid_argument("isometry_defect: m must be >= 1");
    const std::size_t N = T.truncation();
    const std::size_t dh = probe.degree();
    std::vector<long double> mass;

    switch (T.kind) {
    case OperatorKind::multiplication: {
        const std::size_t d = T.symbol.degree();
        const std::size_t top = dh + static_cast<std::size_t>(m) * d;
        check_probe_budget(top, N);
        PowerSeries p = probe.truncated(top);
        for (int k = 0; k <= m; ++k) {
            mass.push_back(weighted_mass(T.space, p));
            if (k < m)
                p = cauchy_product(p, T.symbol, top);
        }
        break;
    }
    case OperatorKind::composition: {
        const std::size_t d = std::max<std::size_t>(T.symbol.degree(), 1);
        std::size_t top = dh;
        for (int k = 0; k < m; ++k)
            top *= d;
        check_probe_budget(top, N);
        PowerSeries p = probe.truncated(std::max<std::size_t>(top, dh));
        for (int k = 0; k <= m; ++k) {
            mass.push_back(weighted_mass(T.space, p));
            if (k < m)
                p = compose(p, T.symbol, std::max<std::size_t>(top, dh));
        }
        break;
    }
    case OperatorKind::custom: {
        check_probe_budget(dh, N);
        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(N + 1));
        for (std::size_t n = 0; n <= dh; ++n)
            x[static_cast<Eigen::Index>(n)] = probe[n] * std::sqrt(T.space.weight(n));
        for (int k = 0; k <= m; ++k) {
            mass.push_back(static_cast<long double>(x.squaredNorm()));
            if (k < m)
                x = T.entries * x;
        }
        break;
    }
    }

    long double acc = 0.0L;
    for (int k = 0; k <= m; ++k)
        acc += ((m - k) % 2 == 0 ? 1.0L : -1.0L) * binomial(m, k) * mass[static_cast<std::size_t>(k)];
    return static_cast<double>(acc);
}

std::vector<double> shift_weights_sq(const SpaceWeights& space, std::size_t N)
{
    std::vector<double> w(N);
    for (std::size_t n = 0; n < N; ++n)
        w[n] = space.weight(n + 1) / space.weight(n);
    return w;
}

ShiftClassification shift_isometry_order(std::span<const double> weights_sq, int m_max, double fit_tol)
{
    ShiftClassification best;
    best.residual = std::numeric_limits<double>::infinity();
    const auto count = static_cast<Eigen::Index>(weights_sq.size());
    if (count == 0 || m_max < 1)
        return best;
    for (double w : weights_sq)
        if (!(w > 0.0))
            throw DomainError("shift_isometry_order: weights must be positive");

    // P in the scaled variable x = n / S keeps the columns O(1)
    const double S = static_cast<double>(std::max<Eigen::Index>(count, 1));

    for (int m = 1; m <= m_max; ++m) {
        const int unknowns = m - 1;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(unknowns);
        if (unknowns > 0) {
            Eigen::MatrixXd A(count, unknowns);
            Eigen::VectorXd rhs(count);
            for (Eigen::Index n = 0; n < count; ++n) {
                const double x0 = static_cast<double>(n) / S;
                const double x1 = static_cast<double>(n + 1) / S;
                const double w = weights_sq[static_cast<std::size_t>(n)];
                // P(n+1) - w P(n) = 0 with P = 1 + sum_k c_k x^k
                for (int k = 1; k <= unknowns; ++k)
                    A(n, k - 1) = std::pow(x1, k) - w * std::pow(x0, k);
                rhs[n] = w - 1.0;
            }
            c = A.colPivHouseholderQr().solve(rhs);
        }
        auto P = [&](double n) {
            const double x = n / S;
            double v = 0.0;
            for (int k = unknowns; k >= 1; --k)
                v = (v + c[k - 1]) * x;
            return 1.0 + v;
        };

        double residual = 0.0;
        bool positive = true;
        for (Eigen::Index n = 0; n < count; ++n) {
            const double pn = P(static_cast<double>(n));
            const double pn1 = P(static_cast<double>(n + 1));
            if (!(pn > 0.0) || !(pn1 > 0.0))
                positive = false;
            const double w = weights_sq[static_cast<std::size_t>(n)];
            const double scale = std::abs(pn1) + w * std::abs(pn);
            residual = std::max(residual, std::abs(pn1 - w * pn) / std::max(scale, 1e-300));
        }
        if (positive && residual < fit_tol) {
            best.order = m;
            best.residual = residual;
            best.polynomial.assign(static_cast<std::size_t>(m), 0.0);
            best.polynomial[0] = 1.0;
            for (int k = 1; k <= unknowns; ++k)
                best.polynomial[static_cast<std::size_t>(k)] = c[k - 1] / std::pow(S, k);
            return best;
        }
        best.residual = std::min(best.residual, residual);
    }
    return best;
}

VerificationReport blaschke_isometry_check(const SpaceWeights& space, const BlaschkeProduct& psi,
                                           std::span<const PowerSeries> probes, std::size_t N, int m, double tol)
{
    Stopwatch clock;
    VerificationReport r;
    r.check_id = "blaschke_isometry_" + space.name();
    r.tolerance = tol;
    bool all = true;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto powers = blaschke_powers_times(psi, probes[i], m, N);
        const long double f_mass = weighted_mass(space, powers[0]);
        const double budget = tol * (1.0 + static_cast<double>(f_mass));
        long double tails = 0.0L;
        long double acc = 0.0L;
        for (int k = 0; k <= m; ++k) {
            const auto& p = powers[static_cast<std::size_t>(k)];
            tails += binomial(m, k) * upper_half_mass(space, p);
            acc += ((m - k) % 2 == 0 ? 1.0L : -1.0L) * binomial(m, k) * weighted_mass(space, p);
        }
        if (static_cast<double>(tails) > budget)
            throw TruncationError("blaschke_isometry_check: truncation tail " +
                                  format_number(static_cast<double>(tails)) + " exceeds budget; raise N");
        const auto residual = static_cast<double>(acc);
        r.add("probe[" + std::to_string(i) + "].residual", residual);
        r.expect("probe[" + std::to_string(i) + "].residual", 0.0, Provenance::paper);
        if (!(std::abs(residual) < budget))
            all = false;
    }
    r.status = all ? Status::pass : Status::fail;
    r.note = "m=" + std::to_string(m) + ", N=" + std::to_string(N);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

double s2_three_isometry_correction(cplx psi0, cplx f0)
{
    const double x = std::norm(psi0);
    return -std::norm(f0) * (1.0 - x) * (1.0 - x) * (1.0 - x);
}

VerificationReport growth_formula_check(const SpaceWeights& space, const BlaschkeProduct& psi, const PowerSeries& h,
                                        int n_max, std::size_t N, double tol)
{
    Stopwatch clock;
    int iso_order = 0;
    switch (space.kind()) {
    case SpaceKind::S2: break;
    case SpaceKind::H2: iso_order = 1; break;
    case SpaceKind::D2: iso_order = 2; break;
    case SpaceKind::S12: iso_order = 3; break;
    case SpaceKind::Km: iso_order = space.m() + 2; break;
    default: throw UnsupportedError("growth_formula_check: no growth formula for " + space.name());
    }
    if (n_max < 2)
        throw std::invalid_argument("growth_formula_check: n_max must be >= 2");

    const int top = std::max(n_max, iso_order - 1);
    const auto powers = blaschke_powers_times(psi, h, top, N);
    std::vector<long double> mass;
    for (const auto& p : powers)
        mass.push_back(weighted_mass(space, p));
    const double budget = tol * (1.0 + static_cast<double>(mass[0]));
    check_tail(space, powers.back(), budget);

    VerificationReport r;
    r.check_id = "growth_formula_" + space.name();
    r.tolerance = tol;
    double worst = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        long double rhs = 0.0L;
        if (space.kind() == SpaceKind::S2) {
            const long double f0 = std::norm(h[0]);
            const long double x = std::norm(psi(0.0));
            const long double a = n * (n - 1) / 2.0L;
            const long double b = static_cast<long double>(n) * (n - 2);
            const long double c = (n - 1) * (n - 2) / 2.0L;
            rhs = a * mass[2] - b * mass[1] + c * mass[0] - c * f0 - a * x * x * f0 + b * x * f0 +
                  std::pow(x, static_cast<long double>(n)) * f0;
        }
        else {
            for (int k = 0; k < iso_order; ++k) {
                long double beta = 0.0L;
                for (int j = 0; j <= k; ++j)
                    beta += ((k - j) % 2 == 0 ? 1.0L : -1.0L) * binomial(k, j) * mass[static_cast<std::size_t>(j)];
                rhs += binomial(n, k) * beta;
            }
        }
        const long double lhs = mass[static_cast<std::size_t>(n)];
        r.add("lhs[n=" + std::to_string(n) + "]", static_cast<double>(lhs));
        r.add("rhs[n=" + std::to_string(n) + "]", static_cast<double>(rhs));
        worst = std::max(worst, static_cast<double>(std::abs(lhs - rhs)));
    }
    r.add("max_residual", worst);
    r.expect("max_residual", 0.0, Provenance::paper);
    r.status = worst < budget ? Status::pass : Status::fail;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport dirichlet_linearity_check(const BlaschkeProduct& psi, const PowerSeries& f, int n_max,
                                             std::size_t N, double tol)
{
    Stopwatch clock;
    const auto powers = blaschke_powers_times(psi, f, std::max(n_max, 1), N);
    const SpaceWeights d2(SpaceKind::D2);
    const long double d_f = dirichlet_mass(powers[0]);
    const long double d_psi_f = dirichlet_mass(powers[1]);
    const double budget = tol * (1.0 + static_cast<double>(d_f + d_psi_f));
    check_tail(d2, powers.back(), budget);

    VerificationReport r;
    r.check_id = "dirichlet_linearity";
    r.tolerance = tol;
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const long double lhs = dirichlet_mass(powers[static_cast<std::size_t>(n)]);
        const long double rhs = d_f + n * (d_psi_f - d_f);
        r.add("D(psi^" + std::to_string(n) + " f)", static_cast<double>(lhs));
        worst = std::max(worst, static_cast<double>(std::abs(lhs - rhs)));
    }
    r.add("max_residual", worst);
    r.expect("max_residual", 0.0, Provenance::paper);
    r.status = worst < budget ? Status::pass : Status::fail;
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

VerificationReport composition_norm_bound_check(const SpaceWeights& space, const PowerSeries& phi, std::size_t N,
                                                double tol)
{
    Stopwatch clock;
    for (std::size_t n = 0; n <= N; ++n)
        if (space.kernel_coefficient(n) > 1.0 + 1e-15)
            throw PreconditionError("composition_norm_bound_check: " + space.name() +
                                    " has kernel coefficient a_" + std::to_string(n) + " > 1");

    const double mult = operator_norm(multiplication_matrix(space, phi, N));
    if (mult > 1.0 + 1e-12)
        throw PreconditionError("composition_norm_bound_check: compression norm of M_phi is " +
                                format_number(mult) + " > 1");

    const double comp = operator_norm(composition_matrix(space, phi, N));
    const double comp_sq = comp * comp;
    const double a = std::abs(phi[0]);
    const double upper = (1.0 + a) / (1.0 - a);

    VerificationReport r;
    r.check_id = "composition_norm_bound_" + space.name();
    r.tolerance = tol;
    r.add("mult_norm", mult);
    r.add("comp_norm_sq", comp_sq);
    r.expect("upper_bound", upper, Provenance::paper);

    bool violated = comp_sq > upper * (1.0 + 1e-12);
    if (space.kind() == SpaceKind::D2) {
        const double a2 = a * a;
        const double lower = a2 == 0.0 ? 1.0 : -std::log1p(-a2) / a2;
        r.expect("lower_bound", lower, Provenance::paper);
        if (comp_sq < lower - tol)
            violated = true;
    }
    r.status = violated ? Status::fail : Status::consistent;
    r.note = "compression norm is a lower bound of ||C_phi||; N=" + std::to_string(N);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
}

void write_csv(const OperatorMatrix& T, std::ostream& out)
{
    const Eigen::MatrixXcd M = T.dense();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            out << (j ? "," : "") << '"' << format_number(M(i, j).real()) << ',' << format_number(M(i, j).imag())
                << '"';
        out << '\n';
    }
    if (!out)
        throw IOError("write_csv: stream failure");
}

} // namespace diskops
