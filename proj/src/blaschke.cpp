#include "diskops/blaschke.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "diskops/errors.hpp"
#include "diskops/spaces.hpp"

namespace diskops {

namespace {

void require_in_disk(cplx a, const char* what)
{
    if (!(std::abs(a) < 1.0))
        throw DomainError(std::string(what) + ": point must lie in the open unit disk");
}

// (z - a) / (1 - conj(a) z) expanded to `order`
PowerSeries factor_series(cplx a, std::size_t order)
{
    std::vector<cplx> c(order + 1);
    c[0] = -a;
    const cplx ca = std::conj(a);
    const double scale = 1.0 - std::norm(a);
    cplx p = 1.0;
    for (std::size_t n = 1; n <= order; ++n) {
        c[n] = scale * p;
        p *= ca;
    }
    return PowerSeries(std::move(c));
}

cplx cpow(cplx a, int k)
{
    cplx r = 1.0;
    for (int i = 0; i < k; ++i)
        r *= a;
    return r;
}

} // namespace

MobiusMap::MobiusMap(cplx alpha) : alpha_(alpha) { require_in_disk(alpha, "MobiusMap"); }

cplx MobiusMap::operator()(cplx z) const { return (alpha_ - z) / (1.0 - std::conj(alpha_) * z); }

PowerSeries MobiusMap::series(std::size_t order) const
{
    PowerSeries s = factor_series(alpha_, order);
    return s * cplx(-1.0);
}

PowerSeries MobiusMap::derivative_series(std::size_t order) const
{
    const cplx ca = std::conj(alpha_);
    const double scale = std::norm(alpha_) - 1.0;
    std::vector<cplx> c(order + 1);
    cplx p = 1.0;
    for (std::size_t n = 0; n <= order; ++n) {
        c[n] = scale * static_cast<double>(n + 1) * p;
        p *= ca;
    }
    return PowerSeries(std::move(c));
}

BlaschkeProduct::BlaschkeProduct(cplx unimodular, std::vector<cplx> zeros)
    : unimodular_(unimodular), zeros_(std::move(zeros))
{
    if (std::abs(std::abs(unimodular_) - 1.0) > 1e-12)
        throw DomainError("BlaschkeProduct: |a| must be 1");
    for (cplx z : zeros_)
        require_in_disk(z, "BlaschkeProduct zero");
}

BlaschkeProduct BlaschkeProduct::identity() { return BlaschkeProduct(1.0, {0.0}); }

BlaschkeProduct BlaschkeProduct::automorphism(cplx alpha) { return BlaschkeProduct(-1.0, {alpha}); }

double BlaschkeProduct::max_zero_modulus() const
{
    double r = 0.0;
    for (cplx z : zeros_)
        r = std::max(r, std::abs(z));
    return r;
}

cplx BlaschkeProduct::operator()(cplx z) const
{
    cplx v = unimodular_;
    for (cplx a : zeros_)
        v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b)
{
    std::vector<cplx> zeros = a.zeros_;
    zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
    return BlaschkeProduct(a.unimodular_ * b.unimodular_, std::move(zeros));
}

PowerSeries blaschke_series(const BlaschkeProduct& psi, std::size_t order)
{
    PowerSeries s = PowerSeries::constant(psi.unimodular(), order);
    for (cplx a : psi.zeros())
        s = cauchy_product(s, factor_series(a, order), order);
    return s;
}

std::size_t blaschke_truncation_order(const BlaschkeProduct& psi, std::size_t cap)
{
    const double r = psi.max_zero_modulus();
    if (r == 0.0)
        return std::min<std::size_t>(psi.degree(), cap);
    const double n = std::ceil(std::log(1e-14) / std::log(r));
    return std::min(cap, std::max<std::size_t>(psi.degree(), static_cast<std::size_t>(n)));
}

nlohmann::json to_json(const BlaschkeProduct& psi)
{
    nlohmann::json zeros = nlohmann::json::array();
    for (cplx z : psi.zeros())
        zeros.push_back(complex_to_json(z));
    return {{"a", complex_to_json(psi.unimodular())}, {"zeros", std::move(zeros)}};
}

BlaschkeProduct blaschke_from_json(const nlohmann::json& j)
{
    const cplx a = j.contains("a") ? complex_from_json(j.at("a")) : cplx(1.0);
    std::vector<cplx> zeros;
    for (const auto& z : j.at("zeros"))
        zeros.push_back(complex_from_json(z));
    return BlaschkeProduct(a, std::move(zeros));
}

double poisson_kernel(cplx alpha, cplx zeta)
{
    require_in_disk(alpha, "poisson_kernel");
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
        throw DomainError("poisson_kernel: zeta must lie on the unit circle");
    return (1.0 - std::norm(alpha)) / std::norm(zeta - alpha);
}

cplx poisson_moment(cplx alpha, int k, std::size_t nodes)
{
    require_in_disk(alpha, "poisson_moment");
    return circle_mean([&](cplx zeta) { return poisson_kernel(alpha, zeta) * cpow(std::conj(zeta), k); },
                       nodes);
}

cplx poisson_product_moment(cplx alpha, int k, std::size_t nodes)
{
    require_in_disk(alpha, "poisson_product_moment");
    if (nodes < 256 || !std::has_single_bit(nodes))
        throw std::invalid_argument("poisson_product_moment: nodes must be a power of two >= 256");
    return circle_mean(
        [&](cplx zeta) {
            return poisson_kernel(alpha, zeta) * poisson_kernel(-alpha, zeta) * cpow(std::conj(zeta), k);
        },
        nodes);
}

cplx poisson_product_moment_closed(cplx alpha, int k)
{
    if (k % 2 != 0)
        return 0.0;
    const double a2 = std::norm(alpha);
    return (1.0 - a2) / (1.0 + a2) * cpow(std::conj(alpha), k);
}

cplx phi_prime_moment(cplx alpha, int k)
{
    require_in_disk(alpha, "phi_prime_moment");
    const double a2 = std::norm(alpha);
    return ((1.0 + a2) / (1.0 - a2) + k) * cpow(std::conj(alpha), k);
}

cplx phi_prime_moment_series(cplx alpha, int k, std::size_t order)
{
    const PowerSeries d = MobiusMap(alpha).derivative_series(order);
    // <d, z^k d> = sum_l d_{l+k} conj(d_l)
    cplx acc{};
    for (std::size_t l = 0; l + static_cast<std::size_t>(k) <= order; ++l)
        acc += d[l + static_cast<std::size_t>(k)] * std::conj(d[l]);
    return acc;
}

BlaschkeProduct adjoint_variant_symbol(AdjointVariant variant, cplx alpha)
{
    switch (variant) {
    case AdjointVariant::z_times_mobius: return BlaschkeProduct::identity() * BlaschkeProduct::automorphism(alpha);
    case AdjointVariant::mobius_pair:
        return BlaschkeProduct::automorphism(alpha) * BlaschkeProduct::automorphism(-alpha);
    }
    throw std::invalid_argument("unknown adjoint variant");
}

PowerSeries adjoint_symbol_expansion(AdjointVariant variant, cplx alpha, std::size_t k_max)
{
    require_in_disk(alpha, "adjoint_symbol_expansion");
    const double a2 = std::norm(alpha);
    const double q = (1.0 + a2) / (1.0 - a2);
    const double b = (1.0 - a2) / (1.0 + a2);
    const cplx ca = std::conj(alpha);

    std::vector<cplx> c(k_max + 1);
    if (variant == AdjointVariant::z_times_mobius) {
        c[0] = 3.0 + q;
        cplx p = 1.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            p *= ca;
            const double kk = static_cast<double>(k);
            c[k] = ((2.0 * kk + 2.0) + q) * p / (kk * kk);
        }
    }
    else {
        c[0] = a2 * a2 + 2.0 * q + 2.0 * b;
        // Both cross terms psi' = phi_a' phi_{-a} + phi_a phi_{-a}' contribute a
        // Poisson product moment, so the even coefficients carry 2 b(2l).
        cplx p = 1.0;
        for (std::size_t k = 1; k <= k_max; ++k) {
            p *= ca;
            if (k % 2 != 0)
                continue;
            const double l = static_cast<double>(k / 2);
            c[k] = (2.0 * q + 8.0 * l + 2.0 * b) * p / (4.0 * l * l);
        }
    }
    return PowerSeries(std::move(c));
}

PowerSeries adjoint_symbol_expansion_brute(AdjointVariant variant, cplx alpha, std::size_t k_max,
                                           std::size_t order)
{
    const SpaceWeights s2(SpaceKind::S2);
    const PowerSeries psi = blaschke_series(adjoint_variant_symbol(variant, alpha), order);
    std::vector<cplx> c(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        // <psi, z^k psi>_{S2} = sum_n w(n) psi_n conj(psi_{n-k})
        cplx acc{};
        for (std::size_t n = k; n <= order; ++n)
            acc += s2.weight(n) * psi[n] * std::conj(psi[n - k]);
        c[k] = acc / s2.weight(k);
    }
    return PowerSeries(std::move(c));
}

VerificationReport adjoint_distinctness_check(cplx alpha, double tol)
{
    Stopwatch clock;
    if (alpha == cplx{})
        throw DomainError("adjoint_distinctness_check: alpha must be nonzero");
    require_in_disk(alpha, "adjoint_distinctness_check");

    const double r = std::abs(alpha);
    const auto terms = static_cast<std::size_t>(std::clamp(std::ceil(40.0 / -std::log(r)), 16.0, 100000.0));
    const PowerSeries e = adjoint_symbol_expansion(AdjointVariant::z_times_mobius, alpha, terms);
    const cplx at_zero = evaluate(e, 0.0);
    const cplx at_alpha = evaluate(e, alpha);
    const double diff = std::abs(at_alpha - at_zero);

    VerificationReport rep;
    rep.check_id = "adjoint_distinctness";
    rep.tolerance = tol;
    rep.add("M*psi psi(0)", at_zero);
    rep.add("M*psi psi(alpha)", at_alpha);
    rep.add("difference", diff);
    rep.status = diff > tol ? Status::pass : Status::fail;
    rep.note = "pass iff the expansion separates 0 and alpha";
    rep.elapsed_ms = clock.elapsed_ms();
    return rep;
}

} // namespace diskops
