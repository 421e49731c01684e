#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ustokes/timestepping.hpp"

namespace ustokes {

/// Interval bubble used by the collocation lifting: the quadratic
///   theta(t) = -(t - t_prev)(t - t_next)/tau
/// normalized so that theta'(t_prev) = 1.  It vanishes at both interval
/// endpoints, its derivative vanishes at the midpoint, and theta'(t_next) = -1.
double theta(double t_prev, double t_next, double t);
double theta_dt(double t_prev, double t_next, double t);

/// Collocation-lifted trajectory: per interval the velocity gains a bubble
/// term c_n * theta_n(t), making it piecewise quadratic and globally C^1, and
/// the pressure becomes the piecewise-linear interpolant through the nodal
/// values ptilde^n, globally continuous.  Stored per node: accelerations
/// a^n = d/dt utilde(t_n) and pressures ptilde^n; per interval: the lifting
/// coefficients c_n.
struct CollocationTrajectory {
    const DiscreteTrajectory* traj = nullptr;
    std::vector<Eigen::VectorXd> lifting;    ///< c_1..c_N (index n-1)
    std::vector<Eigen::VectorXd> accel;      ///< a^0..a^N
    std::vector<Eigen::VectorXd> p_nodes;    ///< ptilde^0..ptilde^N
};

/// Initialization: one mass-saddle solve (K = M_u) for the initial
/// acceleration/pressure pair:
///   <a + B' ptilde, v> = <f(t_0) - A u^0, v>,   <B a, q> = 0.
std::pair<Eigen::VectorXd, Eigen::VectorXd> collocation_init(
    const DiscreteTrajectory& traj, const TimeDependentField& f,
    const TaylorHoodSpace& space, const SpatialQuadrature& quad,
    const StokesOperators& ops, const SaddleSolver& solver);

/// Pure nodal recurrences used to extend the lifting interval by interval
/// (no further linear solves):
///   c_n      = a^{n-1} - slope_n          with slope_n = 2(ubar^n - u^{n-1})/tau_n
///   a^n      = slope_n - c_n
///   ptilde^n = 2 pbar^n - ptilde^{n-1}
Eigen::VectorXd collocation_lifting_coefficient(const Eigen::VectorXd& a_prev,
                                                const Eigen::VectorXd& slope);
Eigen::VectorXd collocation_acceleration_update(const Eigen::VectorXd& slope,
                                                const Eigen::VectorXd& c_n);
Eigen::VectorXd collocation_pressure_update(const Eigen::VectorXd& p_bar,
                                            const Eigen::VectorXd& p_prev);

/// Runs collocation_init and the recurrences for n = 1..N.
CollocationTrajectory collocation_extend(const DiscreteTrajectory& traj,
                                         const TimeDependentField& f,
                                         const TaylorHoodSpace& space,
                                         const SpatialQuadrature& quad,
                                         const StokesOperators& ops,
                                         const SaddleSolver& solver);

/// Evaluation of the lifted quantities at t in [0,T] (left-continuous at
/// interval boundaries; all three are in fact globally continuous).
Eigen::VectorXd eval_u_tilde(const CollocationTrajectory& ct, double t);
Eigen::VectorXd eval_dt_u_tilde(const CollocationTrajectory& ct, double t);
Eigen::VectorXd eval_p_tilde(const CollocationTrajectory& ct, double t);

/// Collocation lifting built interval by interval from local data: for each
/// interval the acceleration/pressure pair at the left node is recomputed
/// from the momentum residual there,
///   <a^{n-1} + B' ptilde^{n-1}, v> = <f(t_{n-1}) - A u^{n-1}, v>,
///   <B a^{n-1}, q> = 0,
/// (one mass-saddle solve per interval) and c_n = a^{n-1} - slope_n.  When
/// the march uses the endpoint-average load rule, the nodal momentum
/// residual of the discrete solution vanishes and this coincides with
/// collocation_extend; under more accurate load integration the two differ,
/// and the locally lifted derivative and pressure may jump at interior
/// nodes (the lifted velocity itself stays continuous because the bubble
/// vanishes at interval endpoints).  On interval n the lifted pressure is
/// the line through (t_{n-1}, ptilde^{n-1}) and (tbar_n, pbar^n), so its
/// midpoint value is pbar^n exactly.
struct LocalCollocationTrajectory {
    const DiscreteTrajectory* traj = nullptr;
    std::vector<Eigen::VectorXd> lifting;     ///< c_1..c_N (index n-1)
    std::vector<Eigen::VectorXd> accel_left;  ///< a^{n-1} on I_n (index n-1)
    std::vector<Eigen::VectorXd> p_left;      ///< ptilde^{n-1} on I_n (index n-1)
};

/// One mass-saddle solve per interval (the factorization is shared).
LocalCollocationTrajectory collocation_local(const DiscreteTrajectory& traj,
                                             const TimeDependentField& f,
                                             const TaylorHoodSpace& space,
                                             const SpatialQuadrature& quad,
                                             const StokesOperators& ops,
                                             const SaddleSolver& solver);

/// Evaluation at t in [0,T], left-continuous at interval boundaries.  The
/// stored accel_left/p_left vectors are the right limits at the left nodes.
Eigen::VectorXd eval_u_tilde(const LocalCollocationTrajectory& lc, double t);
Eigen::VectorXd eval_dt_u_tilde(const LocalCollocationTrajectory& lc, double t);
Eigen::VectorXd eval_p_tilde(const LocalCollocationTrajectory& lc, double t);

/// Linear interpolation/extrapolation through two midpoint samples:
///   J q(t) = q_left + (t - tbar_left)/(tbar_right - tbar_left) (q_right - q_left).
Eigen::VectorXd jn_eval(const Eigen::VectorXd& q_left, const Eigen::VectorXd& q_right,
                        double tbar_left, double tbar_right, double t);

/// Interpolated pressure trajectory: the line through consecutive midpoint
/// pressures, using the segment of interval n >= 2 on I_n and extending the
/// first segment (through pbar^1, pbar^2) backward over all of [0, t_1].
/// Discontinuous at interior interval endpoints in general; the jump at t = 0
/// is zero by construction.
struct InterpolationTrajectory {
    const DiscreteTrajectory* traj = nullptr;
};

/// Requires at least two intervals.
InterpolationTrajectory make_interpolation_trajectory(const DiscreteTrajectory& traj);

Eigen::VectorXd eval_p_interp(const InterpolationTrajectory& it, double t);

/// Right limit at the left endpoint of interval m (1-based): the value the
/// segment used on I_m takes at t_{m-1}.
Eigen::VectorXd eval_p_interp_right_limit(const InterpolationTrajectory& it, int m);

/// Checks the step-size conditions tau_1 <= c1 * tau_2 and
/// tau_m <= c2 * tau_{m-1} for m = 2..N.
bool check_timestep_condition(const TimeMesh& time_mesh, double c1, double c2);

}  // namespace ustokes
