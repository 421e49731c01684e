#include "ustokes/postprocess.hpp"

#include <stdexcept>
#include <string>

namespace ustokes {

double theta(double t_prev, double t_next, double t) {
    return -(t - t_prev) * (t - t_next) / (t_next - t_prev);
}

double theta_dt(double t_prev, double t_next, double t) {
    return -(2.0 * t - t_prev - t_next) / (t_next - t_prev);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> collocation_init(
    const DiscreteTrajectory& traj, const TimeDependentField& f,
    const TaylorHoodSpace& space, const SpatialQuadrature& quad,
    const StokesOperators& ops, const SaddleSolver& solver) {
    const double t0 = traj.time_mesh.nodes.front();
    const Eigen::VectorXd rhs =
        assemble_load(space, quad,
                      [&](std::array<double, 2> x) { return f(x, t0); }) -
        ops.velocity_stiffness * traj.u_nodes.front();
    const auto result = solver.solve(1.0, 0.0, rhs);
    return {result.u, result.p};
}

Eigen::VectorXd collocation_lifting_coefficient(const Eigen::VectorXd& a_prev,
                                                const Eigen::VectorXd& slope) {
    return a_prev - slope;
}

Eigen::VectorXd collocation_acceleration_update(const Eigen::VectorXd& slope,
                                                const Eigen::VectorXd& c_n) {
    return slope - c_n;
}

Eigen::VectorXd collocation_pressure_update(const Eigen::VectorXd& p_bar,
                                            const Eigen::VectorXd& p_prev) {
    return 2.0 * p_bar - p_prev;
}

CollocationTrajectory collocation_extend(const DiscreteTrajectory& traj,
                                         const TimeDependentField& f,
                                         const TaylorHoodSpace& space,
                                         const SpatialQuadrature& quad,
                                         const StokesOperators& ops,
                                         const SaddleSolver& solver) {
    CollocationTrajectory ct;
    ct.traj = &traj;
    const int N = traj.time_mesh.num_intervals();
    ct.lifting.reserve(static_cast<std::size_t>(N));
    ct.accel.reserve(static_cast<std::size_t>(N) + 1);
    ct.p_nodes.reserve(static_cast<std::size_t>(N) + 1);

    auto [a0, p0] = collocation_init(traj, f, space, quad, ops, solver);
    ct.accel.push_back(std::move(a0));
    ct.p_nodes.push_back(std::move(p0));

    for (int n = 1; n <= N; ++n) {
        const Eigen::VectorXd slope = slope_on_interval(traj, n);
        Eigen::VectorXd c_n = collocation_lifting_coefficient(ct.accel.back(), slope);
        ct.accel.push_back(collocation_acceleration_update(slope, c_n));
        ct.p_nodes.push_back(collocation_pressure_update(
            traj.p_midpoints[static_cast<std::size_t>(n - 1)], ct.p_nodes.back()));
        ct.lifting.push_back(std::move(c_n));
    }
    return ct;
}

Eigen::VectorXd eval_u_tilde(const CollocationTrajectory& ct, double t) {
    const int n = ct.traj->time_mesh.interval_of(t);
    const double t_prev = ct.traj->time_mesh.nodes[n - 1];
    const double t_next = ct.traj->time_mesh.nodes[n];
    return eval_velocity(*ct.traj, t) +
           theta(t_prev, t_next, t) * ct.lifting[static_cast<std::size_t>(n - 1)];
}

Eigen::VectorXd eval_dt_u_tilde(const CollocationTrajectory& ct, double t) {
    const int n = ct.traj->time_mesh.interval_of(t);
    const double t_prev = ct.traj->time_mesh.nodes[n - 1];
    const double t_next = ct.traj->time_mesh.nodes[n];
    return slope_on_interval(*ct.traj, n) +
           theta_dt(t_prev, t_next, t) * ct.lifting[static_cast<std::size_t>(n - 1)];
}

Eigen::VectorXd eval_p_tilde(const CollocationTrajectory& ct, double t) {
    const int n = ct.traj->time_mesh.interval_of(t);
    const double t_prev = ct.traj->time_mesh.nodes[n - 1];
    const double tau = ct.traj->time_mesh.tau(n);
    // Same Lagrange basis on {t_{n-1}, tbar_n} as the velocity trajectory.
    const double phi1 = 2.0 * (t - t_prev) / tau;
    const double phi0 = 1.0 - phi1;
    return phi0 * ct.p_nodes[static_cast<std::size_t>(n - 1)] +
           phi1 * ct.traj->p_midpoints[static_cast<std::size_t>(n - 1)];
}

LocalCollocationTrajectory collocation_local(const DiscreteTrajectory& traj,
                                             const TimeDependentField& f,
                                             const TaylorHoodSpace& space,
                                             const SpatialQuadrature& quad,
                                             const StokesOperators& ops,
                                             const SaddleSolver& solver) {
    LocalCollocationTrajectory lc;
    lc.traj = &traj;
    const int N = traj.time_mesh.num_intervals();
    lc.lifting.reserve(static_cast<std::size_t>(N));
    lc.accel_left.reserve(static_cast<std::size_t>(N));
    lc.p_left.reserve(static_cast<std::size_t>(N));

    for (int n = 1; n <= N; ++n) {
        const double t_left = traj.time_mesh.nodes[n - 1];
        const Eigen::VectorXd rhs =
            assemble_load(space, quad,
                          [&](std::array<double, 2> x) { return f(x, t_left); }) -
            ops.velocity_stiffness * traj.u_nodes[static_cast<std::size_t>(n - 1)];
        SaddleSolver::Result result;
        try {
            result = solver.solve(1.0, 0.0, rhs);
        } catch (const SolverError& err) {
            throw SolverError("collocation_local: interval " + std::to_string(n) +
                              ": " + err.what());
        }
        lc.lifting.push_back(
            collocation_lifting_coefficient(result.u, slope_on_interval(traj, n)));
        lc.accel_left.push_back(std::move(result.u));
        lc.p_left.push_back(std::move(result.p));
    }
    return lc;
}

Eigen::VectorXd eval_u_tilde(const LocalCollocationTrajectory& lc, double t) {
    const int n = lc.traj->time_mesh.interval_of(t);
    const double t_prev = lc.traj->time_mesh.nodes[n - 1];
    const double t_next = lc.traj->time_mesh.nodes[n];
    return eval_velocity(*lc.traj, t) +
           theta(t_prev, t_next, t) * lc.lifting[static_cast<std::size_t>(n - 1)];
}

Eigen::VectorXd eval_dt_u_tilde(const LocalCollocationTrajectory& lc, double t) {
    const int n = lc.traj->time_mesh.interval_of(t);
    const double t_prev = lc.traj->time_mesh.nodes[n - 1];
    const double t_next = lc.traj->time_mesh.nodes[n];
    return slope_on_interval(*lc.traj, n) +
           theta_dt(t_prev, t_next, t) * lc.lifting[static_cast<std::size_t>(n - 1)];
}

Eigen::VectorXd eval_p_tilde(const LocalCollocationTrajectory& lc, double t) {
    const int n = lc.traj->time_mesh.interval_of(t);
    const double t_prev = lc.traj->time_mesh.nodes[n - 1];
    const double tau = lc.traj->time_mesh.tau(n);
    const double phi1 = 2.0 * (t - t_prev) / tau;
    const double phi0 = 1.0 - phi1;
    return phi0 * lc.p_left[static_cast<std::size_t>(n - 1)] +
           phi1 * lc.traj->p_midpoints[static_cast<std::size_t>(n - 1)];
}

Eigen::VectorXd jn_eval(const Eigen::VectorXd& q_left, const Eigen::VectorXd& q_right,
                        double tbar_left, double tbar_right, double t) {
    const double lambda = (t - tbar_left) / (tbar_right - tbar_left);
    return q_left + lambda * (q_right - q_left);
}

InterpolationTrajectory make_interpolation_trajectory(const DiscreteTrajectory& traj) {
    if (traj.time_mesh.num_intervals() < 2) {
        throw std::invalid_argument(
            "make_interpolation_trajectory: need at least two intervals");
    }
    return InterpolationTrajectory{&traj};
}

namespace {

// Segment index used at time t: the first segment (through the midpoints of
// intervals 1 and 2) covers all of [0, t_1]; interval m >= 2 uses segment m.
int segment_of(const TimeMesh& mesh, double t) {
    const int m = mesh.interval_of(t);
    return m < 2 ? 2 : m;
}

Eigen::VectorXd eval_segment(const DiscreteTrajectory& traj, int seg, double t) {
    return jn_eval(traj.p_midpoints[static_cast<std::size_t>(seg - 2)],
                   traj.p_midpoints[static_cast<std::size_t>(seg - 1)],
                   traj.time_mesh.midpoint(seg - 1), traj.time_mesh.midpoint(seg), t);
}

}  // namespace

Eigen::VectorXd eval_p_interp(const InterpolationTrajectory& it, double t) {
    return eval_segment(*it.traj, segment_of(it.traj->time_mesh, t), t);
}

Eigen::VectorXd eval_p_interp_right_limit(const InterpolationTrajectory& it, int m) {
    const int seg = m < 2 ? 2 : m;
    return eval_segment(*it.traj, seg, it.traj->time_mesh.nodes[m - 1]);
}

bool check_timestep_condition(const TimeMesh& time_mesh, double c1, double c2) {
    const int N = time_mesh.num_intervals();
    if (N >= 2 && !(time_mesh.tau(1) <= c1 * time_mesh.tau(2))) return false;
    for (int m = 2; m <= N; ++m) {
        if (!(time_mesh.tau(m) <= c2 * time_mesh.tau(m - 1))) return false;
    }
    return true;
}

}  // namespace ustokes
