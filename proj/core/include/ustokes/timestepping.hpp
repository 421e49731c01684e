#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ustokes/assembly.hpp"
#include "ustokes/linsolve.hpp"

namespace ustokes {

/// Partition 0 = t_0 < t_1 < ... < t_N = T of the time interval, with
/// per-interval lengths tau_n = t_n - t_{n-1} and midpoints
/// tbar_n = (t_{n-1} + t_n)/2.  Intervals are indexed 1..N.
struct TimeMesh {
    std::vector<double> nodes;

    int num_intervals() const { return static_cast<int>(nodes.size()) - 1; }
    double tau(int n) const { return nodes[n] - nodes[n - 1]; }
    double midpoint(int n) const { return 0.5 * (nodes[n - 1] + nodes[n]); }
    double final_time() const { return nodes.back(); }

    /// Index n of the interval (t_{n-1}, t_n] containing t; t = 0 maps to 1
    /// (left-continuity convention).  Throws std::domain_error outside [0,T].
    int interval_of(double t) const;
};

/// Uniform mesh with N intervals on [0, T]; throws on N < 1 or T <= 0.
TimeMesh uniform_time_mesh(double T, int N);

/// Validating constructor for arbitrary node sequences (t_0 = 0, increasing).
TimeMesh make_time_mesh(std::vector<double> nodes);

/// 2-point Gauss-Lobatto (trapezoidal) rule on an interval of length tau:
/// (tau/2) * (g_left + g_right); exact for P1.
double quad_gauss_lobatto(double g_left, double g_right, double tau);

/// 1-point Gauss (midpoint) rule: tau * g_mid; exact for P1.
double quad_gauss_midpoint(double g_mid, double tau);

/// Velocity field of space and time, evaluated pointwise.
using TimeDependentField =
    std::function<std::array<double, 2>(std::array<double, 2>, double)>;

/// Piecewise-linear-in-time discrete solution: nodal velocities u^0..u^N,
/// interval-midpoint velocities ubar^1..ubar^N and midpoint pressures
/// pbar^1..pbar^N.  On each interval the velocity is the Lagrange
/// interpolant on the nodes {t_{n-1}, tbar_n}, which makes it globally
/// continuous with u^n = 2*ubar^n - u^{n-1}.  The left endpoint value of the
/// discrete pressure is not determined by the scheme and is not stored; the
/// postprocess module provides full pressure trajectories.
struct DiscreteTrajectory {
    TimeMesh time_mesh;
    std::vector<Eigen::VectorXd> u_nodes;      ///< size N+1
    std::vector<Eigen::VectorXd> u_midpoints;  ///< size N, index n-1 holds ubar^n
    std::vector<Eigen::VectorXd> p_midpoints;  ///< size N, index n-1 holds pbar^n
};

/// One interval solve: given u_prev at t_prev, returns (ubar, pbar) of
///
///   <ubar - u_prev, v> + (tau/2) <A ubar + B' pbar, v>
///        = (tau/4) <f(t_prev) + f(t_prev + tau), v>,   <B ubar, q> = 0,
///
/// i.e. the saddle system with K = M_u + (tau/2) A, pressure block scaled by
/// tau/2, rhs = M_u u_prev + (tau/4) (L(t_prev) + L(t_prev+tau)).  The
/// returned pbar is the physical midpoint pressure.
std::pair<Eigen::VectorXd, Eigen::VectorXd> step(const Eigen::VectorXd& u_prev,
                                                 double t_prev, double tau,
                                                 const TimeDependentField& f,
                                                 const TaylorHoodSpace& space,
                                                 const SpatialQuadrature& quad,
                                                 const StokesOperators& ops,
                                                 const SaddleSolver& solver);

/// Full time march for increasing n = 1..N starting from u0h.
DiscreteTrajectory march(const Eigen::VectorXd& u0h, const TimeMesh& time_mesh,
                         const TimeDependentField& f, const TaylorHoodSpace& space,
                         const SpatialQuadrature& quad, const StokesOperators& ops,
                         const SaddleSolver& solver);

/// The endpoint-average rule {0, 1} x {1/2, 1/2} on [0, 1]: the load rule
/// realized by step()/march() above.
LineQuadrature endpoint_load_rule();

/// step() with the load integral (1/2) int_{I_n} <f(t), v> dt evaluated by an
/// arbitrary rule on [0, 1], rhs = M_u u_prev + (tau/2) sum_q w_q L(t_prev +
/// s_q tau).  The endpoint-average rule recovers step(); a Gauss rule with
/// k >= 3 points integrates a smooth load essentially exactly, which makes
/// the scheme a true Galerkin method in time (the test space is piecewise
/// constant, so only the interval mean of the load enters).
std::pair<Eigen::VectorXd, Eigen::VectorXd> step(const Eigen::VectorXd& u_prev,
                                                 double t_prev, double tau,
                                                 const TimeDependentField& f,
                                                 const TaylorHoodSpace& space,
                                                 const SpatialQuadrature& quad,
                                                 const StokesOperators& ops,
                                                 const SaddleSolver& solver,
                                                 const LineQuadrature& load_rule);

/// march() using the given load rule on every interval.
DiscreteTrajectory march(const Eigen::VectorXd& u0h, const TimeMesh& time_mesh,
                         const TimeDependentField& f, const TaylorHoodSpace& space,
                         const SpatialQuadrature& quad, const StokesOperators& ops,
                         const SaddleSolver& solver, const LineQuadrature& load_rule);

/// Evaluates the piecewise-linear velocity trajectory at time t in [0,T].
Eigen::VectorXd eval_velocity(const DiscreteTrajectory& traj, double t);

/// Time derivative of the trajectory: the per-interval constant
/// (u^n - u^{n-1})/tau_n, with the left-continuity convention at nodes.
Eigen::VectorXd eval_velocity_dt(const DiscreteTrajectory& traj, double t);

/// Right-limit slope on interval m (1-based): 2(ubar^m - u^{m-1})/tau_m.
Eigen::VectorXd slope_on_interval(const DiscreteTrajectory& traj, int m);

/// Vector field together with its Jacobian (rows = component gradients).
struct VectorFieldWithGradient {
    VectorFunction value;
    MatrixFunction gradient;
};

/// Discrete initial acceleration: solves
///   <A a + B' s, v> = <grad(f0 + lap u0), grad v>,  <B a, q> = 0
/// for the divergence-free acceleration a0h and auxiliary pressure s_h.
std::pair<Eigen::VectorXd, Eigen::VectorXd> initial_acceleration(
    const VectorFieldWithGradient& f0_plus_lap_u0, const TaylorHoodSpace& space,
    const SpatialQuadrature& quad, const StokesOperators& ops,
    const SaddleSolver& solver);

/// Discrete initial velocity/pressure: solves the stationary problem
///   <A u + B' p, v> = <f0 - a0h, v>,  <B u, q> = 0
/// where a0h enters as the FE function with those coefficients.
std::pair<Eigen::VectorXd, Eigen::VectorXd> initial_stokes_data(
    const Eigen::VectorXd& a0h, const VectorFunction& f0, const TaylorHoodSpace& space,
    const SpatialQuadrature& quad, const StokesOperators& ops,
    const SaddleSolver& solver);

}  // namespace ustokes
