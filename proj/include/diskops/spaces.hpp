#pragma once
//
// Weighted Hilbert spaces of analytic functions on the disk, each defined by
// its monomial norm sequence weight(n) = ||z^n||^2.
//

#include <cstddef>
#include <string>
#include <string_view>

#include "diskops/report.hpp"
#include "diskops/series.hpp"

namespace diskops {

enum class SpaceKind {
    H2,     // Hardy: 1
    A2,     // Bergman: 1/(n+1)
    D2,     // Dirichlet: n+1
    S2,     // |f(0)|^2 + ||f'||^2_{H2}: 1, n^2
    S12,    // (n+1)(n+2)/2
    S22,    // ||f||^2_{H2} + ||f'||^2_{H2}: 1+n^2
    S32,    // (1+n)^2
    Dalpha, // (1+n)^alpha
    Km,     // (n+1)...(n+m+1)/(m+1)!
};

class SpaceWeights {
public:
    explicit SpaceWeights(SpaceKind kind);

    // D_alpha for real alpha >= 0
    static SpaceWeights dirichlet_type(double alpha);
    // K_m^2 for integer m >= 1; K_1^2 has the S12 weights
    static SpaceWeights higher_order(int m);

    // "H2", "A2", "D2", "S2", "S12", "S22", "S32", "Dalpha:<a>", "Km:<m>"
    static SpaceWeights parse(std::string_view name);

    SpaceKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    int m() const { return m_; }
    std::string name() const;

    double weight(std::size_t n) const;
    // a_n = 1/weight(n), the Taylor coefficients of t -> K(t)
    double kernel_coefficient(std::size_t n) const { return 1.0 / weight(n); }

    bool has_closed_kernel() const;

    friend bool operator==(const SpaceWeights&, const SpaceWeights&) = default;

private:
    SpaceWeights(SpaceKind kind, double alpha, int m) : kind_(kind), alpha_(alpha), m_(m) {}

    SpaceKind kind_;
    double alpha_ = 0.0;
    int m_ = 0;
};

// sum w_n |f_n|^2 accumulated in extended precision; alternating sums of
// these masses cancel heavily, so callers combine them before rounding
long double weighted_mass(const SpaceWeights& space, const PowerSeries& f);

double space_norm_sq(const SpaceWeights& space, const PowerSeries& f);
double space_norm(const SpaceWeights& space, const PowerSeries& f);

// <f, g> = sum w_n f_n conj(g_n)
cplx inner_product(const SpaceWeights& space, const PowerSeries& f, const PowerSeries& g);

// Norm estimate for series whose weighted mass has an O(1/N) tail: Richardson
// extrapolation of the partial masses at N/2 and N. For geometrically
// decaying coefficients the correction vanishes.
double tail_extrapolated_norm(const SpaceWeights& space, const PowerSeries& f);

struct NormDecomposition {
    double hardy_sq;         // ||f||^2_{H2}
    double bergman_deriv_sq; // ||f'||^2_{A2}
    double hardy_deriv_sq;   // ||f'||^2_{H2}

    // ||f||^2_{H2} + 3/2 ||f'||^2_{A2} + 1/2 ||f'||^2_{H2}
    double s12_norm_sq() const { return hardy_sq + 1.5 * bergman_deriv_sq + 0.5 * hardy_deriv_sq; }
};

NormDecomposition norm_decomposition_s12(const PowerSeries& f);

// D(f) = ||f'||^2_{A2} = sum n |f_n|^2
double dirichlet_energy(const PowerSeries& f);

// Checks 2||f||^2_{S12} = ||f||^2_{S2} + 2||f||^2_{H2} + 3D(f) - |f(0)|^2 and
// ||f||^2_{S22} = ||f||^2_{S2} + ||f||^2_{H2} - |f(0)|^2.
VerificationReport norm_relation_check(const PowerSeries& f);

// partial sum of K_w(z) = sum a_n (conj(w) z)^n; DomainError if |conj(w) z| >= 1
cplx kernel_eval_series(const SpaceWeights& space, cplx w, cplx z, std::size_t order);

// Closed forms for H2, A2, D2 and S12 (principal logarithm); UnsupportedError
// for other spaces, DomainError if |conj(w) z| >= 1.
cplx kernel_eval_closed(const SpaceWeights& space, cplx w, cplx z);

// Smallest order at which a_{n+1} r^{n+1} / (1-r)^2 < 1e-12 (at least 16).
std::size_t kernel_series_order(const SpaceWeights& space, double r);

// Closed form where available, else a series long enough that the geometric
// tail bound drops below 1e-12.
cplx kernel_eval(const SpaceWeights& space, cplx w, cplx z);

// max |f| over `samples` equispaced boundary points (maximum modulus principle)
double sup_norm(const PowerSeries& f, std::size_t samples = 4096);

// log(1 + u) without cancellation for small |u|
cplx log1p_complex(cplx u);

} // namespace diskops
