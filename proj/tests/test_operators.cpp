#include <doctest.h>

#include <cmath>
#include <sstream>

#include "diskops/blaschke.hpp"
#include "diskops/errors.hpp"
#include "diskops/operators.hpp"
#include "oracles.hpp"

using namespace diskops;

namespace {

const SpaceWeights H2{SpaceKind::H2};
const SpaceWeights A2{SpaceKind::A2};
const SpaceWeights D2{SpaceKind::D2};
const SpaceWeights S2{SpaceKind::S2};
const SpaceWeights S12{SpaceKind::S12};

// dense compression built from coefficient lists: column j is the image of z^j
template <typename Image>
Eigen::MatrixXcd oracle_matrix(const SpaceWeights& space, std::size_t N, Image image)
{
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N + 1, N + 1);
    for (std::size_t j = 0; j <= N; ++j) {
        const oracle::cvec col = image(j);
        for (std::size_t i = 0; i < col.size() && i <= N; ++i)
            M(i, j) = col[i] * std::sqrt(space.weight(i) / space.weight(j));
    }
    return M;
}

Eigen::MatrixXcd oracle_multiplication(const SpaceWeights& space, const oracle::cvec& f, std::size_t N)
{
    return oracle_matrix(space, N, [&](std::size_t j) {
        oracle::cvec zj(j + 1);
        zj[j] = 1.0;
        return oracle::product(f, zj);
    });
}

Eigen::MatrixXcd oracle_composition(const SpaceWeights& space, const oracle::cvec& phi, std::size_t N)
{
    return oracle_matrix(space, N, [&](std::size_t j) {
        oracle::cvec p{1.0};
        for (std::size_t k = 0; k < j; ++k)
            p = oracle::truncate(oracle::product(p, phi), N);
        return p;
    });
}

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

PowerSeries series_of(const oracle::cvec& c) { return PowerSeries(c); }

} // namespace

TEST_CASE("multiplication matrix")
{
    const auto T = multiplication_matrix(S12, PowerSeries::monomial(1), 20);
    CHECK(T.truncation() == 20);
    CHECK(T.kind == OperatorKind::multiplication);
    const Eigen::MatrixXcd M = T.dense();
    for (Eigen::Index i = 0; i <= 20; ++i)
        for (Eigen::Index j = 0; j <= 20; ++j) {
            const double expected = i == j + 1 ? std::sqrt((j + 3.0) / (j + 1.0)) : 0.0;
            CHECK(std::abs(M(i, j) - expected) < 1e-15);
        }

    CHECK(max_abs(multiplication_matrix(D2, PowerSeries::constant(1.0), 9).dense() -
                  Eigen::MatrixXcd::Identity(10, 10)) == 0.0);

    oracle::Gen gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const oracle::cvec f = gen.poly(8);
        const std::size_t N = gen.integer(4, 30);
        for (const SpaceWeights& space : {H2, A2, D2, S2, S12, SpaceWeights::higher_order(3)}) {
            const Eigen::MatrixXcd M = multiplication_matrix(space, series_of(f), N).dense();
            CHECK(max_abs(M - oracle_multiplication(space, f, N)) < 1e-13);
            // lower triangular, band width deg f
            for (Eigen::Index i = 0; i <= Eigen::Index(N); ++i)
                for (Eigen::Index j = 0; j <= Eigen::Index(N); ++j)
                    if (i < j || i - j > Eigen::Index(f.size()) - 1)
                        CHECK(M(i, j) == cplx{});
        }
    }
}

TEST_CASE("composition matrix")
{
    oracle::Gen gen(12);
    for (int trial = 0; trial < 20; ++trial) {
        oracle::cvec phi = gen.poly(5, 0.4);
        phi[0] = gen.in_disk(0.5);
        const std::size_t N = gen.integer(4, 24);
        for (const SpaceWeights& space : {H2, D2, S12}) {
            const Eigen::MatrixXcd M = composition_matrix(space, series_of(phi), N).dense();
            CHECK(max_abs(M - oracle_composition(space, phi, N)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(composition_matrix(H2, PowerSeries({1.0, 0.0}), 8), DomainError);
    CHECK_THROWS_AS(composition_matrix(H2, PowerSeries({cplx(0.6, 0.9)}), 8), DomainError);

    // C_z is the identity
    CHECK(max_abs(composition_matrix(S2, PowerSeries::monomial(1), 12).dense() - Eigen::MatrixXcd::Identity(13, 13)) <
          1e-15);
}

TEST_CASE("operator norm against dense SVD")
{
    oracle::Gen gen(13);
    for (int trial = 0; trial < 40; ++trial) {
        const oracle::cvec f = gen.poly(10);
        const std::size_t N = gen.integer(8, 60);
        const SpaceWeights& space = trial % 3 == 0 ? H2 : trial % 3 == 1 ? D2 : S12;
        const auto T = multiplication_matrix(space, series_of(f), N);
        const double expected = oracle::largest_singular_value(T.dense());
        CHECK(std::abs(operator_norm(T) - expected) <= 1e-10 * std::max(1.0, expected));
    }
    for (int trial = 0; trial < 20; ++trial) {
        oracle::cvec phi = gen.poly(4, 0.4);
        phi[0] = gen.in_disk(0.5);
        const std::size_t N = gen.integer(8, 40);
        const auto T = composition_matrix(trial % 2 ? H2 : S12, series_of(phi), N);
        const double expected = oracle::largest_singular_value(T.dense());
        CHECK(std::abs(operator_norm(T) - expected) <= 1e-10 * std::max(1.0, expected));
    }
}

TEST_CASE("operator norm monotone in N and adjoint-consistent")
{
    oracle::Gen gen(14);
    for (int trial = 0; trial < 10; ++trial) {
        const PowerSeries f = series_of(gen.poly_exact(gen.integer(1, 8)));
        double previous = 0.0;
        for (std::size_t N : {16, 32, 64, 128}) {
            const auto T = multiplication_matrix(S12, f, N);
            const double est = operator_norm(T);
            CHECK(est >= previous * (1.0 - 1e-12));
            previous = est;

            OperatorMatrix adj = T;
            adj.entries = T.entries.adjoint();
            adj.kind = OperatorKind::custom;
            CHECK(std::abs(operator_norm(adj) - est) <= 1e-10 * est);
        }
    }
}

TEST_CASE("multiplier norm examples")
{
    for (std::size_t k = 0; k <= 10; ++k) {
        const double expected = std::sqrt((k + 1.0) * (k + 2.0) / 2.0);
        CHECK(std::abs(operator_norm(multiplication_matrix(S12, PowerSeries::monomial(k), 256)) - expected) < 1e-10);
        CHECK(std::abs(monomial_symbol_norm(S12, OperatorKind::multiplication, k) - expected) < 1e-12);
    }
    // frozen from a dense SVD of the same compression
    const double m = operator_norm(multiplication_matrix(S12, PowerSeries({1.0, 1.0}), 512));
    CHECK(std::abs(m - 2.3787284431514037) < 1e-10);
    CHECK(m > std::sqrt(4.5));
}

TEST_CASE("monomial symbol norms")
{
    for (std::size_t k = 1; k <= 8; ++k) {
        CHECK(std::abs(monomial_symbol_norm(S12, OperatorKind::composition, k) - double(k)) < 1e-12);
        CHECK(std::abs(monomial_symbol_norm(S2, OperatorKind::composition, k) - double(k)) < 1e-12);
        CHECK(std::abs(monomial_symbol_norm(H2, OperatorKind::composition, k) - 1.0) < 1e-15);
        CHECK(std::abs(monomial_symbol_norm(D2, OperatorKind::composition, k) - std::sqrt(double(k))) < 1e-7);
        // the compression only sees columns n <= N/k, so it stays below k
        const double compressed = operator_norm(composition_matrix(S12, PowerSeries::monomial(k), 1024));
        const double n = double(1024 / k);
        CHECK(compressed <= k + 1e-12);
        CHECK(compressed == doctest::Approx(std::sqrt((k * n + 1) * (k * n + 2) / ((n + 1) * (n + 2)))).epsilon(1e-14));
    }
    CHECK(monomial_symbol_norm(H2, OperatorKind::multiplication, 0, 0.5) == doctest::Approx(0.5));
    CHECK(monomial_symbol_norm(H2, OperatorKind::composition, 0, 0.5) == doctest::Approx(1.0 / std::sqrt(0.75)));
    CHECK_THROWS_AS(monomial_symbol_norm(H2, OperatorKind::composition, 0, 1.0), DomainError);
    CHECK(std::isinf(monomial_symbol_norm(H2, OperatorKind::composition, 2, 1.5)));
    // |c| < 1 damps every column but the first
    CHECK(monomial_symbol_norm(H2, OperatorKind::composition, 3, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(monomial_symbol_norm(H2, OperatorKind::custom, 1), std::invalid_argument);
}

TEST_CASE("convergence profile")
{
    const NormProfile p = convergence_profile(H2, OperatorKind::multiplication, PowerSeries::monomial(2));
    CHECK(p.estimate == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.history.size() >= 2);
    CHECK(p.history.front().first == 32);
    CHECK(p.truncation == p.history.back().first);

    // 2 cos(pi / (2N + 3)) creeps up like 1/N^2: too slow for 1e-12 by N = 256
    CHECK_THROWS_AS(convergence_profile(H2, OperatorKind::multiplication, PowerSeries({1.0, 1.0}), 1e-12, 32, 256),
                    ConvergenceError);
    const NormProfile q = convergence_profile(H2, OperatorKind::multiplication, PowerSeries({1.0, 1.0}), 1e-4);
    CHECK(std::abs(q.estimate - 2.0 * std::cos(std::acos(-1.0) / (2.0 * q.truncation + 3.0))) < 1e-12);
    CHECK_THROWS_AS(convergence_profile(H2, OperatorKind::custom, PowerSeries::monomial(1)), std::invalid_argument);
}

TEST_CASE("hilbert-schmidt sums")
{
    // ||(z/2)^n||^2 / weight(n) = 4^{-n} in every space
    for (const SpaceWeights& space : {H2, D2, S12}) {
        double expected = 0.0;
        for (int n = 0; n <= 40; ++n)
            expected += std::pow(0.25, n);
        CHECK(hilbert_schmidt_norm_sq(space, PowerSeries({0.0, 0.5}), 40) == doctest::Approx(expected).epsilon(1e-14));
    }
    // agrees with the Frobenius norm of the compression
    const PowerSeries phi({cplx(0.1, 0.2), 0.3, cplx(0.0, -0.2)});
    const double frob = composition_matrix(S12, phi, 30).dense().squaredNorm();
    CHECK(hilbert_schmidt_norm_sq(S12, phi, 30) == doctest::Approx(frob).epsilon(1e-12));
    CHECK_THROWS_AS(hilbert_schmidt_norm_sq(H2, PowerSeries({1.0}), 4), DomainError);
}

TEST_CASE("isometry defects")
{
    oracle::Gen gen(15);
    const PowerSeries z = PowerSeries::monomial(1);
    const auto Mz = multiplication_matrix(S12, z, 64);
    for (int trial = 0; trial < 100; ++trial) {
        const PowerSeries h = series_of(gen.poly(12));
        const double scale = space_norm_sq(S12, h);
        CHECK(std::abs(isometry_defect(Mz, 3, h)) <= 1e-12 * std::max(1.0, scale));
    }
    CHECK(isometry_defect(Mz, 2, PowerSeries::constant(1.0)) == 1.0);
    CHECK(isometry_defect(multiplication_matrix(H2, z, 32), 1, PowerSeries({1.0, 2.0, 3.0})) == 0.0);

    // the defect of M_z on D2 is n-independent: beta_1 at z^n is 1
    CHECK(isometry_defect(multiplication_matrix(D2, z, 32), 1, PowerSeries::monomial(5)) == doctest::Approx(1.0));

    // a custom copy of the same matrix uses compression powers and agrees
    OperatorMatrix custom = Mz;
    custom.kind = OperatorKind::custom;
    custom.symbol = PowerSeries{};
    const PowerSeries h({0.5, cplx(0.0, 1.0), -0.25});
    CHECK(std::abs(isometry_defect(custom, 2, h) - isometry_defect(Mz, 2, h)) < 1e-11);

    CHECK_THROWS_AS(isometry_defect(multiplication_matrix(S12, z, 8), 3, PowerSeries::monomial(7)), TruncationError);
    CHECK_THROWS_AS(isometry_defect(Mz, 0, h), std::invalid_argument);
}

TEST_CASE("shift classification")
{
    const auto s12 = shift_weights_sq(S12, 400);
    CHECK(s12.size() == 400);
    CHECK(s12[0] == doctest::Approx(3.0));
    const auto c = shift_isometry_order(s12, 6);
    REQUIRE(c.order.has_value());
    CHECK(*c.order == 3);
    // P(n) = (n+1)(n+2)/2 = 1 + 1.5 n + 0.5 n^2
    REQUIRE(c.polynomial.size() == 3);
    CHECK(std::abs(c.polynomial[0] - 1.0) < 1e-8);
    CHECK(std::abs(c.polynomial[1] - 1.5) < 1e-8);
    CHECK(std::abs(c.polynomial[2] - 0.5) < 1e-8);

    CHECK(shift_isometry_order(shift_weights_sq(H2, 200), 6).order == 1);
    CHECK(shift_isometry_order(shift_weights_sq(D2, 200), 6).order == 2);
    CHECK_FALSE(shift_isometry_order(shift_weights_sq(S2, 400), 6).order.has_value());
    CHECK_FALSE(shift_isometry_order(shift_weights_sq(A2, 400), 6).order.has_value());
    for (int m = 1; m <= 3; ++m)
        CHECK(shift_isometry_order(shift_weights_sq(SpaceWeights::higher_order(m), 400), 6).order == m + 2);

    const std::vector<double> bad{1.0, -1.0, 1.0};
    CHECK_THROWS_AS(shift_isometry_order(bad, 3), DomainError);
}

TEST_CASE("blaschke isometry checks")
{
    const auto pair = BlaschkeProduct::automorphism(0.5) * BlaschkeProduct::automorphism(-0.5);
    const std::vector<PowerSeries> probes{PowerSeries::monomial(1), PowerSeries::constant(1.0), PowerSeries({1.0, 1.0})};
    const auto r = blaschke_isometry_check(S12, pair, probes, 1024);
    CHECK(r.status == Status::pass);
    CHECK(r.check_id == "blaschke_isometry_S12");
    CHECK(r.computed.size() == 3);

    // the masses behind the first residual, from exact rational arithmetic
    const auto psi = oracle::blaschke(1.0, {0.5, -0.5}, 1024);
    oracle::cvec p{0.0, 1.0};
    const auto w = oracle::s12_weights(1024);
    const double frozen[] = {3.0, 10.266666666666667, 22.066666666666667, 38.4};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(double(oracle::mass(w, p)) - frozen[k]) < 1e-9);
        p = oracle::truncate(oracle::product(p, psi), 1024);
    }

    const auto zphi = BlaschkeProduct::identity() * BlaschkeProduct::automorphism(0.4);
    CHECK(blaschke_isometry_check(S12, zphi, probes, 1024).status == Status::pass);
    // M_psi on S12 is not a 2-isometry
    CHECK(blaschke_isometry_check(S12, zphi, probes, 1024, 2).status == Status::fail);

    // on S2 the 3-isometry sum is -|f(0)|^2 (1 - |psi(0)|^2)^3
    const auto s2 = blaschke_isometry_check(S2, BlaschkeProduct::automorphism(0.3),
                                            std::vector<PowerSeries>{PowerSeries::constant(1.0)}, 1024);
    CHECK(s2.status == Status::fail);
    CHECK(std::abs(s2.computed[0].value - s2_three_isometry_correction(0.3, 1.0)) < 1e-9);
    CHECK(s2_three_isometry_correction(0.0, 1.0) == -1.0);
    CHECK(s2_three_isometry_correction(0.5, 2.0) == doctest::Approx(-4.0 * 0.421875));

    // zeros near the circle leave too much tail at small N
    const auto slow = BlaschkeProduct(1.0, {0.99});
    CHECK_THROWS_AS(blaschke_isometry_check(S12, slow, probes, 64), TruncationError);
}

TEST_CASE("growth formulas and linearity")
{
    const auto z = BlaschkeProduct::identity();
    const auto zphi = z * BlaschkeProduct::automorphism(0.3);
    for (const auto& psi : {z, zphi})
        for (const PowerSeries& h : {PowerSeries::constant(1.0), PowerSeries({1.0, 1.0})}) {
            CHECK(growth_formula_check(S2, psi, h, 6, 1024).status == Status::pass);
            CHECK(growth_formula_check(S12, psi, h, 6, 1024).status == Status::pass);
            CHECK(growth_formula_check(H2, psi, h, 6, 1024).status == Status::pass);
            CHECK(growth_formula_check(D2, psi, h, 6, 1024).status == Status::pass);
        }

    // ||z^n||^2 = n^2 on S2
    const auto r = growth_formula_check(S2, z, PowerSeries::constant(1.0), 6, 64);
    for (int n = 2; n <= 6; ++n) {
        const std::string label = "lhs[n=" + std::to_string(n) + "]";
        for (const auto& v : r.computed)
            if (v.label == label)
                CHECK(v.value == cplx(double(n) * n));
    }

    CHECK(growth_formula_check(SpaceWeights::higher_order(2), zphi, PowerSeries::constant(1.0), 6, 1024).status ==
          Status::pass);
    CHECK_THROWS_AS(growth_formula_check(A2, z, PowerSeries::constant(1.0), 6, 64), UnsupportedError);
    CHECK_THROWS_AS(growth_formula_check(S2, z, PowerSeries::constant(1.0), 1, 64), std::invalid_argument);

    for (const auto& psi : {z, zphi, BlaschkeProduct::automorphism(0.6)})
        CHECK(dirichlet_linearity_check(psi, PowerSeries({1.0, 0.0, 1.0}), 5, 1024).status == Status::pass);
}

TEST_CASE("composition norm bounds")
{
    const auto zero = composition_norm_bound_check(H2, PowerSeries::constant(0.0), 64);
    CHECK(zero.status == Status::consistent);
    CHECK(zero.computed[1].value.real() == doctest::Approx(1.0));

    CHECK(composition_norm_bound_check(S12, PowerSeries({0.0, 0.5}), 64).status == Status::consistent);

    // D2, constant symbol c: lower bound ln(1/(1-c^2))/c^2 <= ||C_c||^2 = K_c(c) <= (1+c)/(1-c)
    const auto d2 = composition_norm_bound_check(D2, PowerSeries::constant(0.5), 64);
    CHECK(d2.status == Status::consistent);
    const double comp_sq = d2.computed[1].value.real();
    CHECK(comp_sq == doctest::Approx(std::log(1.0 / 0.75) / 0.25).epsilon(1e-12));
    CHECK(d2.reference.size() == 2);

    CHECK_THROWS_AS(composition_norm_bound_check(A2, PowerSeries({0.0, 0.5}), 64), PreconditionError);
    CHECK_THROWS_AS(composition_norm_bound_check(H2, PowerSeries({0.6, 0.6}), 64), PreconditionError);
}

TEST_CASE("csv output")
{
    std::ostringstream out;
    write_csv(multiplication_matrix(H2, PowerSeries({1.0, cplx(0.0, -2.0)}), 1), out);
    CHECK(out.str() == "\"1,0\",\"0,0\"\n\"0,-2\",\"1,0\"\n");
}
