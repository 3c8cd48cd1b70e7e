#include <doctest.h>

#include <cmath>
#include <numbers>

#include "diskops/errors.hpp"
#include "diskops/pick.hpp"
#include "oracles.hpp"

using namespace diskops;

namespace {

const SpaceWeights H2{SpaceKind::H2};
const SpaceWeights S2{SpaceKind::S2};
const SpaceWeights S12{SpaceKind::S12};
const SpaceWeights S22{SpaceKind::S22};

cplx value_of(const VerificationReport& r, const std::string& label)
{
    for (const auto& v : r.computed)
        if (v.label == label)
            return v.value;
    FAIL("missing label " << label);
    return {};
}

// 1 / sum a_n t^n by the textbook recurrence, in long double
std::vector<long double> reciprocal_coefficients(const SpaceWeights& space, std::size_t n_max)
{
    std::vector<long double> a(n_max + 1), c(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n)
        a[n] = 1.0L / static_cast<long double>(space.weight(n));
    c[0] = 1.0L / a[0];
    for (std::size_t n = 1; n <= n_max; ++n) {
        long double s = 0.0L;
        for (std::size_t k = 1; k <= n; ++k)
            s += a[k] * c[n - k];
        c[n] = -s / a[0];
    }
    return c;
}

cplx oracle_kernel(const SpaceWeights& space, cplx w, cplx z)
{
    const auto k = oracle::kernel_sum([&](std::size_t n) { return 1.0L / space.weight(n); },
                                      std::complex<long double>(std::conj(w) * z), 4000);
    return {static_cast<double>(k.real()), static_cast<double>(k.imag())};
}

double oracle_min_eigenvalue(const Eigen::MatrixXcd& M)
{
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    return es.eigenvalues().real().minCoeff();
}

} // namespace

TEST_CASE("kaluza log-convexity")
{
    const auto s12 = kaluza_check(S12, 2000);
    CHECK(s12.status == Status::pass);
    CHECK(s12.check_id == "kaluza_S12");
    // n(n+3) < (n+1)(n+2): strictly log-convex
    CHECK(value_of(s12, "min_relative_margin").real() > 0.0);

    CHECK(kaluza_check(H2, 500).status == Status::pass);
    CHECK(kaluza_check(SpaceWeights::parse("D2"), 500).status == Status::pass);

    // a_1^2 = 1 > a_0 a_2 = 1/4
    const auto s2 = kaluza_check(S2, 50);
    CHECK(s2.status == Status::fail);
    CHECK(value_of(s2, "first_failure").real() == 1.0);

    // A2 has a_0 = 1 but a_n = n+1 is log-concave
    CHECK(kaluza_check(SpaceWeights::parse("A2"), 10).status == Status::fail);
    // (1+n)^{-alpha} is log-convex
    CHECK(kaluza_check(SpaceWeights::dirichlet_type(0.5), 200).status == Status::pass);
}

TEST_CASE("reciprocal kernel coefficients")
{
    for (const SpaceWeights& space : {S2, S22, S12, H2}) {
        const auto r = reciprocal_sign_check(space, 60);
        const auto c = reciprocal_coefficients(space, 2);
        for (std::size_t n = 0; n <= 2; ++n)
            CHECK(std::abs(value_of(r, "c_" + std::to_string(n)).real() - double(c[n])) < 1e-15);
    }
    const auto s2 = reciprocal_sign_check(S2, 10);
    CHECK(std::abs(value_of(s2, "c_1").real() + 1.0) < 1e-12);
    CHECK(std::abs(value_of(s2, "c_2").real() - 0.75) < 1e-12);
    CHECK(s2.status == Status::fail);
    CHECK(value_of(s2, "first_violation").real() == 2.0);

    const auto s22 = reciprocal_sign_check(S22, 10);
    CHECK(std::abs(value_of(s22, "c_1").real() + 0.5) < 1e-12);
    CHECK(std::abs(value_of(s22, "c_2").real() - 0.05) < 1e-12);
    CHECK(s22.status == Status::fail);

    const auto s12 = reciprocal_sign_check(S12, 2000);
    CHECK(s12.status == Status::pass);
    CHECK(s12.check_id == "reciprocal_signs_S12");
}

TEST_CASE("pick matrices")
{
    const PickProblem p{S12, {0.0, cplx(0.3, 0.2), cplx(-0.5, 0.1)}, {0.1, cplx(0.2, -0.1), 0.3}};
    const Eigen::MatrixXcd M = pick_matrix(p);
    const Eigen::MatrixXcd Ms = pick_matrix(p, KernelMode::series);
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) {
            const auto si = std::size_t(i), sj = std::size_t(j);
            const cplx expected = (1.0 - std::conj(p.targets[si]) * p.targets[sj]) *
                                  oracle_kernel(S12, p.nodes[si], p.nodes[sj]);
            CHECK(std::abs(M(j, i) - expected) < 1e-12);
            CHECK(std::abs(Ms(j, i) - expected) < 1e-12);
        }
    CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    // values of the multiplier z/2 (norm sqrt(3)/2 on S12) give a PSD matrix
    oracle::Gen gen(21);
    for (int trial = 0; trial < 30; ++trial) {
        PickProblem q{S12, {}, {}};
        const std::size_t n = gen.integer(2, 8);
        for (std::size_t i = 0; i < n; ++i) {
            q.nodes.push_back(gen.in_disk(0.9));
            q.targets.push_back(q.nodes.back() / 2.0);
        }
        const PsdVerdict v = psd_check(pick_matrix(q));
        CHECK(v.is_psd);
        CHECK(v.min_eigenvalue == doctest::Approx(oracle_min_eigenvalue(pick_matrix(q))).epsilon(1e-9).scale(1.0));

        // a unimodular factor on the targets leaves the matrix unchanged
        PickProblem rotated = q;
        const cplx u = std::polar(1.0, gen.uniform(0.0, 6.0));
        for (auto& w : rotated.targets)
            w *= u;
        CHECK((pick_matrix(rotated) - pick_matrix(q)).cwiseAbs().maxCoeff() < 1e-12);
    }

    // |w| > 1 at a single node is never interpolable
    CHECK_FALSE(psd_check(pick_matrix({H2, {0.2}, {1.5}})).is_psd);

    CHECK_THROWS_AS(pick_matrix({H2, {0.2, 0.3}, {0.1}}), ShapeError);
    CHECK_THROWS_AS(pick_matrix({H2, {0.2, 1.0}, {0.1, 0.1}}), DomainError);
}

TEST_CASE("psd verdicts")
{
    CHECK(psd_check(Eigen::MatrixXcd::Identity(4, 4)).is_psd);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = -0.1;
    const PsdVerdict v = psd_check(D);
    CHECK_FALSE(v.is_psd);
    CHECK(v.min_eigenvalue == doctest::Approx(-0.1));
    CHECK(v.matrix_scale == 1.0);

    // rounding-size negatives pass at the relative tolerance
    D(1, 1) = -1e-12;
    CHECK(psd_check(D).is_psd);
    CHECK(psd_check(Eigen::MatrixXcd(0, 0)).is_psd);
    CHECK_THROWS_AS(psd_check(Eigen::MatrixXcd::Zero(2, 3)), ShapeError);

    // unitary conjugation keeps the verdict and the spectrum
    oracle::Gen gen(22);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = Eigen::Index(gen.integer(2, 7));
        Eigen::MatrixXcd A(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                A(i, j) = gen.in_disk(1.0);
        Eigen::MatrixXcd H = A * A.adjoint();
        H -= gen.uniform(0.0, 1.0) * H.trace().real() / double(n) * Eigen::MatrixXcd::Identity(n, n);
        const Eigen::MatrixXcd Q = Eigen::HouseholderQR<Eigen::MatrixXcd>(A).householderQ();
        const PsdVerdict a = psd_check(H), b = psd_check(Q * H * Q.adjoint());
        CHECK(std::abs(a.min_eigenvalue - b.min_eigenvalue) < 1e-12 * std::max(1.0, a.matrix_scale));
        CHECK(a.min_eigenvalue == doctest::Approx(oracle_min_eigenvalue(H)).epsilon(1e-10));
    }
}

TEST_CASE("scalar pick counterexample")
{
    // frozen from a 50-digit evaluation; the S2 kernel series stops at a 1e-12 tail bound
    const auto v = pick_counterexample_values(S2, 0.5, 0.1);
    CHECK(std::abs(v.condition_value - 1.14088737517445935) < 1e-11);
    CHECK(std::abs(v.attainability - 0.0706105563309304277) < 1e-14);

    const auto r = scalar_pick_counterexample();
    CHECK(r.check_id == "prop54_values");
    CHECK(r.status == Status::pass);
    CHECK(std::abs(value_of(r, "condition_value").real() - 1.1409) < 5e-4);
    CHECK(std::abs(value_of(r, "attainability").real() - 0.0706) < 5e-4);

    // on H2 the sum is geometric: sum_{n>=1} 4^{-n} = 1/3
    const auto h = pick_counterexample_values(H2, 0.5, 0.1);
    CHECK(h.attainability == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(h.condition_value == doctest::Approx(0.9 / 0.75).epsilon(1e-15));
    CHECK_THROWS_AS(pick_counterexample_values(H2, 1.0, 0.1), DomainError);
}

TEST_CASE("corona sampled positivity")
{
    const auto grid = default_corona_grid();
    CHECK(grid.size() == 25);
    CHECK(std::abs(grid.back()) == doctest::Approx(0.9));

    const std::vector<PowerSeries> one{PowerSeries::constant(1.0)};
    CHECK(corona_kernel_check(S12, one, 1.0).is_psd);
    CHECK_FALSE(corona_kernel_check(S12, one, 1.1).is_psd);

    // brute eigensolve on a doubled grid
    std::vector<cplx> fine;
    for (int i = 1; i <= 5; ++i)
        for (int k = 0; k < 10; ++k)
            fine.push_back(std::polar(0.18 * i, std::numbers::pi * k / 5.0 + 0.1));
    const std::vector<PowerSeries> pair{PowerSeries::monomial(1), PowerSeries({1.0, -1.0})};
    for (double delta : {0.3, 0.5, 2.0}) {
        const auto n = Eigen::Index(fine.size());
        Eigen::MatrixXcd M(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                const cplx wi = fine[std::size_t(i)], zj = fine[std::size_t(j)];
                const cplx s = std::conj(wi) * zj + std::conj(1.0 - wi) * (1.0 - zj) - delta * delta;
                M(j, i) = s * oracle_kernel(S12, wi, zj);
            }
        const double lam = oracle_min_eigenvalue(M);
        const double scale = M.diagonal().cwiseAbs().maxCoeff();
        const PsdVerdict v = corona_kernel_check(S12, pair, delta, fine);
        CHECK(v.is_psd == (lam >= -1e-10 * scale));
        CHECK(std::abs(v.min_eigenvalue - lam) < 1e-9 * scale);
        CHECK(v.is_psd == (delta < 1.0));
        CHECK(corona_kernel_check(S12, pair, delta).is_psd == (delta < 1.0));
    }
    CHECK_THROWS_AS(corona_kernel_check(S12, one, 0.5, {1.0}), DomainError);
}

TEST_CASE("pick problem json")
{
    const auto p = pick_problem_from_json(nlohmann::json::parse(
        R"({"space": "S12", "nodes": [[0, 0], [0.5, 0.1]], "targets": [[0, 0], [0.2, -0.1]]})"));
    CHECK(p.space == S12);
    CHECK(p.nodes.size() == 2);
    CHECK(p.targets[1] == cplx(0.2, -0.1));
    CHECK_THROWS_AS(pick_problem_from_json(nlohmann::json::parse(
                        R"({"space": "H2", "nodes": [[0, 0], [0.5, 0]], "targets": [[0, 0]]})")),
                    ShapeError);
    CHECK_THROWS(pick_problem_from_json(nlohmann::json::parse(R"({"space": "H2", "nodes": []})")));
}
