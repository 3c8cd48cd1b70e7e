#pragma once
//
// Disk automorphisms, finite Blaschke products, circle quadrature and the
// Poisson-kernel moments behind the adjoint-symbol expansions on S2.
//

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "diskops/report.hpp"
#include "diskops/series.hpp"

namespace diskops {

// phi_alpha(z) = (alpha - z) / (1 - conj(alpha) z), an involution swapping 0 and alpha
class MobiusMap {
public:
    explicit MobiusMap(cplx alpha);

    cplx alpha() const { return alpha_; }
    cplx operator()(cplx z) const;

    // alpha, then conj(alpha)^{n-1} (|alpha|^2 - 1) for n >= 1
    PowerSeries series(std::size_t order) const;

    // phi_alpha' = (|alpha|^2 - 1) sum (n+1) conj(alpha)^n z^n
    PowerSeries derivative_series(std::size_t order) const;

private:
    cplx alpha_;
};

// psi(z) = a * prod_i (z - zeros_i) / (1 - conj(zeros_i) z), |a| = 1.
// With this convention the factor for a zero at the origin is z itself and
// phi_alpha = -1 * (factor for alpha).
class BlaschkeProduct {
public:
    BlaschkeProduct(cplx unimodular, std::vector<cplx> zeros);

    // psi(z) = z
    static BlaschkeProduct identity();
    // psi = phi_alpha
    static BlaschkeProduct automorphism(cplx alpha);

    cplx unimodular() const { return unimodular_; }
    const std::vector<cplx>& zeros() const { return zeros_; }
    std::size_t degree() const { return zeros_.size(); }
    double max_zero_modulus() const;

    cplx operator()(cplx z) const;

    friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b);

private:
    cplx unimodular_;
    std::vector<cplx> zeros_;
};

// each factor expanded as a geometric series, then multiplied out
PowerSeries blaschke_series(const BlaschkeProduct& psi, std::size_t order);

// smallest n with r^n < 1e-14 (r = largest zero modulus), capped at `cap`
std::size_t blaschke_truncation_order(const BlaschkeProduct& psi, std::size_t cap);

// {"a": [re, im], "zeros": [[re, im], ...]}
nlohmann::json to_json(const BlaschkeProduct& psi);
BlaschkeProduct blaschke_from_json(const nlohmann::json& j);

// Trapezoidal mean of f over `nodes` equispaced points of the unit circle.
template <typename F>
auto circle_mean(F&& f, std::size_t nodes)
{
    using R = decltype(f(cplx{}));
    R acc{};
    for (std::size_t j = 0; j < nodes; ++j)
        acc += f(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes)));
    return acc / static_cast<double>(nodes);
}

// P_alpha(zeta) = (1 - |alpha|^2) / |zeta - alpha|^2, |alpha| < 1, |zeta| = 1
double poisson_kernel(cplx alpha, cplx zeta);

// quadrature of P_alpha(zeta) conj(zeta)^k; equals conj(alpha)^k
cplx poisson_moment(cplx alpha, int k, std::size_t nodes = 4096);

// b(k) = mean of P_alpha P_{-alpha} conj(zeta)^k by quadrature; nodes must be a power of two >= 256
cplx poisson_product_moment(cplx alpha, int k, std::size_t nodes = 4096);
// b(2l) = (1-|alpha|^2)/(1+|alpha|^2) conj(alpha)^{2l}, b(2l+1) = 0
cplx poisson_product_moment_closed(cplx alpha, int k);

// <phi_alpha', z^k phi_alpha'>_{H2} = ((1+|alpha|^2)/(1-|alpha|^2) + k) conj(alpha)^k
cplx phi_prime_moment(cplx alpha, int k);
// the same inner product from truncated series coefficients
cplx phi_prime_moment_series(cplx alpha, int k, std::size_t order);

enum class AdjointVariant {
    z_times_mobius, // psi = z phi_alpha
    mobius_pair,    // psi = phi_alpha phi_{-alpha}
};

BlaschkeProduct adjoint_variant_symbol(AdjointVariant variant, cplx alpha);

// Coefficients 0..k_max of M_psi^* psi on S2 from the closed forms.
PowerSeries adjoint_symbol_expansion(AdjointVariant variant, cplx alpha, std::size_t k_max);

// Coefficient k as <psi, z^k psi>_{S2} / weight_{S2}(k) from series of order `order`.
PowerSeries adjoint_symbol_expansion_brute(AdjointVariant variant, cplx alpha, std::size_t k_max,
                                           std::size_t order);

// Evaluates the z phi_alpha expansion at 0 and at alpha; passes iff they differ
// by more than `tol`. DomainError for alpha = 0.
VerificationReport adjoint_distinctness_check(cplx alpha, double tol = 1e-8);

} // namespace diskops
