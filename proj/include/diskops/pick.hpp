#pragma once
//
// Pick matrices, positivity verdicts, and the coefficient tests for the
// complete Pick property.
//

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "diskops/report.hpp"
#include "diskops/series.hpp"
#include "diskops/spaces.hpp"

namespace diskops {

struct PickProblem {
    SpaceWeights space;
    std::vector<cplx> nodes;   // distinct, inside the disk
    std::vector<cplx> targets; // same length as nodes
};

PickProblem pick_problem_from_json(const nlohmann::json& j);

struct PsdVerdict {
    bool is_psd = true;
    double min_eigenvalue = 0.0;
    double matrix_scale = 0.0; // largest |diagonal entry|
};

inline constexpr double psd_tolerance = 1e-10;

// a_n^2 <= a_{n-1} a_{n+1} for 1 <= n <= n_max; fails outright when a_0 != 1
VerificationReport kaluza_check(const SpaceWeights& space, std::size_t n_max);

// Taylor coefficients c_n of 1 / sum a_n t^n; pass iff c_n <= 1e-13 for 1 <= n <= n_max
VerificationReport reciprocal_sign_check(const SpaceWeights& space, std::size_t n_max);

enum class KernelMode { automatic, series };

// entry (j, i) = (1 - conj(w_i) w_j) K_{lambda_i}(lambda_j), then averaged
// with its conjugate transpose
Eigen::MatrixXcd pick_matrix(const PickProblem& problem, KernelMode mode = KernelMode::automatic);

PsdVerdict psd_check(const Eigen::MatrixXcd& M, double tol = psd_tolerance);

struct PickCounterexample {
    double condition_value;  // (1 - |w0|^2) K_{z0}(z0)
    double attainability;    // sum_{n>=1} a_{n+1} |z0|^{2n}
};

// Two-point problem 0 -> 0, z0 -> w0. The Pick condition holds when
// condition_value >= 1, while a contractive multiplier vanishing at 0 reaches
// at most |w0|^2 <= attainability.
PickCounterexample pick_counterexample_values(const SpaceWeights& space, double z0, double w0_sq);

// S2 with z0 = 0.5, |w0|^2 = 0.1
VerificationReport scalar_pick_counterexample();

// 5 x 5 polar mesh, radii 0.18, 0.36, ..., 0.9
std::vector<cplx> default_corona_grid();

// Sampled positivity of [(sum_k conj(phi_k(w)) phi_k(z) - delta^2) K_w(z)] over
// the grid; an empty grid means default_corona_grid().
PsdVerdict corona_kernel_check(const SpaceWeights& space, const std::vector<PowerSeries>& symbols, double delta,
                               std::vector<cplx> grid = {});

} // namespace diskops
