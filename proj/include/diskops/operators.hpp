#pragma once
//
// Finite compressions of multiplication and composition operators in the
// orthonormal monomial basis e_n = z^n / sqrt(weight(n)), their norms, and the
// m-isometry machinery for weighted shifts and Blaschke multipliers.
//

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "diskops/blaschke.hpp"
#include "diskops/report.hpp"
#include "diskops/series.hpp"
#include "diskops/spaces.hpp"

namespace diskops {

enum class OperatorKind { multiplication, composition, custom };

// entries(i, j) = <T e_j, e_i> for 0 <= i, j <= N
struct OperatorMatrix {
    Eigen::SparseMatrix<cplx> entries;
    SpaceWeights space;
    OperatorKind kind = OperatorKind::custom;
    PowerSeries symbol; // empty for custom operators

    std::size_t truncation() const { return static_cast<std::size_t>(entries.cols()) - 1; }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(entries); }
};

// entry (i, j) = f_{i-j} sqrt(weight(i) / weight(j)) for i >= j
OperatorMatrix multiplication_matrix(const SpaceWeights& space, const PowerSeries& f, std::size_t N);

// column j holds phi^j in the orthonormal basis; DomainError if |phi_0| >= 1
OperatorMatrix composition_matrix(const SpaceWeights& space, const PowerSeries& phi, std::size_t N);

// Largest singular value of the compression: exact max column norm when the
// columns have disjoint supports, otherwise Lanczos on T^* T with full
// reorthogonalisation. A lower bound of the operator norm, nondecreasing in N.
double operator_norm(const OperatorMatrix& T);

struct NormProfile {
    double estimate = 0.0;
    std::size_t truncation = 0;
    std::vector<std::pair<std::size_t, double>> history; // (N, estimate) per doubling
};

// Doubles N from `start` until the relative change drops below `tol`;
// ConvergenceError once N would exceed `cap`.
NormProfile convergence_profile(const SpaceWeights& space, OperatorKind kind, const PowerSeries& symbol,
                                double tol = 1e-8, std::size_t start = 32, std::size_t cap = 8192);

// Exact norm of M or C for the monomial symbol c z^k. Both operators send
// each e_n to a multiple of a distinct basis vector, so the norm is the
// supremum of the column norms; the supremum is scanned densely up to n = 4096
// and then geometrically out to n = 2^52.
double monomial_symbol_norm(const SpaceWeights& space, OperatorKind kind, std::size_t k, cplx c = 1.0);

// sum_{n<=N} ||phi^n||^2 / weight(n), each phi^n truncated at N
double hilbert_schmidt_norm_sq(const SpaceWeights& space, const PowerSeries& phi, std::size_t N);

// <beta_m(T) h, h> = sum_k (-1)^{m-k} C(m,k) ||T^k h||^2, with T^k h formed
// as an exact series in the ambient space. TruncationError when the probe
// degree leaves no room for m applications inside the compression.
double isometry_defect(const OperatorMatrix& T, int m, const PowerSeries& probe);

struct ShiftClassification {
    std::optional<int> order;
    std::vector<double> polynomial; // P(n) = sum_k p_k n^k, P(0) = 1
    double residual = 0.0;
};

// |w_n|^2 = weight(n+1) / weight(n) for M_z, n = 0..N-1
std::vector<double> shift_weights_sq(const SpaceWeights& space, std::size_t N);

// Smallest m <= m_max admitting a degree m-1 polynomial P, positive on the
// sampled range, with |w_n|^2 P(n) = P(n+1) to `fit_tol` (max scaled residual).
ShiftClassification shift_isometry_order(std::span<const double> weights_sq, int m_max, double fit_tol = 1e-8);

// sum_k (-1)^{m-k} C(m,k) ||psi^k f||^2 for each probe; pass iff every
// residual < tol (1 + ||f||^2). TruncationError if the coefficient tail of
// psi^m f at order N is too heavy to trust.
VerificationReport blaschke_isometry_check(const SpaceWeights& space, const BlaschkeProduct& psi,
                                           std::span<const PowerSeries> probes, std::size_t N, int m = 3,
                                           double tol = 1e-8);

// -|f(0)|^2 (1 - |psi(0)|^2)^3: the 3-isometry alternating sum on S2
double s2_three_isometry_correction(cplx psi0, cplx f0);

// Growth of ||psi^n h||^2 for 2 <= n <= n_max: the boundary-corrected
// quadratic formula on S2, or the polynomial growth of an m-isometry on
// H2 (m = 1), D2 (m = 2), S12 (m = 3) and K_m (m + 2).
VerificationReport growth_formula_check(const SpaceWeights& space, const BlaschkeProduct& psi,
                                        const PowerSeries& h, int n_max, std::size_t N, double tol = 1e-8);

// D(psi^n f) = D(f) + n [D(psi f) - D(f)] for 0 <= n <= n_max
VerificationReport dirichlet_linearity_check(const BlaschkeProduct& psi, const PowerSeries& f, int n_max,
                                             std::size_t N, double tol = 1e-8);

// Compression norm of C_phi against (1 + |phi(0)|)/(1 - |phi(0)|), and on D2
// also against ln(1/(1-|phi(0)|^2))/|phi(0)|^2. Status "consistent" when no
// bound is violated. PreconditionError if the space has some a_n > 1 or the
// compression norm of M_phi exceeds 1.
VerificationReport composition_norm_bound_check(const SpaceWeights& space, const PowerSeries& phi,
                                                std::size_t N = default_order, double tol = 1e-8);

// row-major, one "re,im" cell per entry
void write_csv(const OperatorMatrix& T, std::ostream& out);

} // namespace diskops
