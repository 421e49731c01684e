#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "ustokes/fem_space.hpp"
#include "ustokes/timestepping.hpp"

namespace ustokes {

/// Exact-field closures at one fixed time.
using ExactVector = std::function<std::array<double, 2>(std::array<double, 2>)>;
using ExactMatrix = std::function<std::array<std::array<double, 2>, 2>(std::array<double, 2>)>;
using ExactScalar = std::function<double(std::array<double, 2>)>;

/// Spatial L2 norm of (exact - FE function), integrated cell-by-cell with the
/// given quadrature (>= 5 points per axis for trigonometric exact fields).
double space_error_l2_velocity(const TaylorHoodSpace& space, const Eigen::VectorXd& coeffs,
                               const ExactVector& exact, const SpatialQuadrature& quad);
double space_error_l2_pressure(const TaylorHoodSpace& space, const Eigen::VectorXd& coeffs,
                               const ExactScalar& exact, const SpatialQuadrature& quad);

/// H1 seminorm of the velocity error (Frobenius norm of the gradient error).
double space_error_h1semi_velocity(const TaylorHoodSpace& space,
                                   const Eigen::VectorXd& coeffs,
                                   const ExactMatrix& exact_gradient,
                                   const SpatialQuadrature& quad);

/// Full H1 norm: sqrt(L2^2 + H1-seminorm^2), evaluated in a single sweep.
double space_error_h1_velocity(const TaylorHoodSpace& space, const Eigen::VectorXd& coeffs,
                               const ExactVector& exact, const ExactMatrix& exact_gradient,
                               const SpatialQuadrature& quad);

/// L2(I;B)-type norm in time: sqrt( sum_n sum_q w_q tau_n error(t_{n,q})^2 )
/// with a k-point Gauss rule per interval (k >= 5 recommended).
double time_l2_norm(const std::function<double(double)>& error_at_t,
                    const TimeMesh& time_mesh, int points_per_interval);

/// Time-mesh dependent norms: weighted root-sum-square of one spatial norm
/// sample per interval — at midpoints (lbar2) or right limits (l2plus).
/// Throws std::invalid_argument if the sample count is not N.
double lbar2_norm(const std::vector<double>& samples_at_midpoints,
                  const TimeMesh& time_mesh);
double l2plus_norm(const std::vector<double>& samples_at_right_limits,
                   const TimeMesh& time_mesh);

/// Experimental order of convergence between two refinement levels:
/// log2(e_coarse / e_fine).  Throws std::domain_error on nonpositive input.
double eoc(double e_coarse, double e_fine);

}  // namespace ustokes
