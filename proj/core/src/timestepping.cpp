#include "ustokes/timestepping.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace ustokes {

int TimeMesh::interval_of(double t) const {
    if (t < nodes.front() || t > nodes.back()) {
        throw std::domain_error("TimeMesh: time outside [0, T]");
    }
    // Smallest n with t <= t_n; t = t_0 belongs to the first interval.
    const auto it = std::lower_bound(nodes.begin() + 1, nodes.end(), t);
    return static_cast<int>(it - nodes.begin());
}

TimeMesh uniform_time_mesh(double T, int N) {
    if (N < 1 || T <= 0.0) {
        throw std::invalid_argument("uniform_time_mesh: need N >= 1 and T > 0");
    }
    std::vector<double> nodes(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        nodes[static_cast<std::size_t>(n)] = T * static_cast<double>(n) / N;
    }
    return make_time_mesh(std::move(nodes));
}

TimeMesh make_time_mesh(std::vector<double> nodes) {
    if (nodes.size() < 2 || nodes.front() != 0.0) {
        throw std::invalid_argument("make_time_mesh: need t_0 = 0 and at least one interval");
    }
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1])) {
            throw std::invalid_argument("make_time_mesh: nodes must be strictly increasing");
        }
    }
    return TimeMesh{std::move(nodes)};
}

double quad_gauss_lobatto(double g_left, double g_right, double tau) {
    return 0.5 * tau * (g_left + g_right);
}

double quad_gauss_midpoint(double g_mid, double tau) {
    return tau * g_mid;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> step(const Eigen::VectorXd& u_prev,
                                                 double t_prev, double tau,
                                                 const TimeDependentField& f,
                                                 const TaylorHoodSpace& space,
                                                 const SpatialQuadrature& quad,
                                                 const StokesOperators& ops,
                                                 const SaddleSolver& solver) {
    const auto load_at = [&](double t) {
        return assemble_load(space, quad,
                             [&](std::array<double, 2> x) { return f(x, t); });
    };
    const Eigen::VectorXd rhs = ops.velocity_mass * u_prev +
                                0.25 * tau * (load_at(t_prev) + load_at(t_prev + tau));
    const auto result = solver.solve(1.0, 0.5 * tau, rhs, /*pressure_scale=*/0.5 * tau);
    return {result.u, result.p};
}

namespace {

using Stepper = std::function<std::pair<Eigen::VectorXd, Eigen::VectorXd>(
    const Eigen::VectorXd&, double, double)>;

DiscreteTrajectory march_with(const Eigen::VectorXd& u0h, const TimeMesh& time_mesh,
                              const Stepper& stepper) {
    DiscreteTrajectory traj;
    traj.time_mesh = time_mesh;
    const int N = time_mesh.num_intervals();
    traj.u_nodes.reserve(static_cast<std::size_t>(N) + 1);
    traj.u_midpoints.reserve(static_cast<std::size_t>(N));
    traj.p_midpoints.reserve(static_cast<std::size_t>(N));
    traj.u_nodes.push_back(u0h);

    for (int n = 1; n <= N; ++n) {
        try {
            auto [ubar, pbar] = stepper(traj.u_nodes.back(), time_mesh.nodes[n - 1],
                                        time_mesh.tau(n));
            traj.u_nodes.push_back(2.0 * ubar - traj.u_nodes.back());
            traj.u_midpoints.push_back(std::move(ubar));
            traj.p_midpoints.push_back(std::move(pbar));
        } catch (const SolverError& err) {
            throw SolverError("march: interval " + std::to_string(n) + ": " + err.what());
        }
    }
    return traj;
}

}  // namespace

DiscreteTrajectory march(const Eigen::VectorXd& u0h, const TimeMesh& time_mesh,
                         const TimeDependentField& f, const TaylorHoodSpace& space,
                         const SpatialQuadrature& quad, const StokesOperators& ops,
                         const SaddleSolver& solver) {
    return march_with(u0h, time_mesh,
                      [&](const Eigen::VectorXd& u_prev, double t_prev, double tau) {
                          return step(u_prev, t_prev, tau, f, space, quad, ops, solver);
                      });
}

LineQuadrature endpoint_load_rule() { return LineQuadrature{{0.0, 1.0}, {0.5, 0.5}}; }

std::pair<Eigen::VectorXd, Eigen::VectorXd> step(const Eigen::VectorXd& u_prev,
                                                 double t_prev, double tau,
                                                 const TimeDependentField& f,
                                                 const TaylorHoodSpace& space,
                                                 const SpatialQuadrature& quad,
                                                 const StokesOperators& ops,
                                                 const SaddleSolver& solver,
                                                 const LineQuadrature& load_rule) {
    Eigen::VectorXd rhs = ops.velocity_mass * u_prev;
    for (std::size_t q = 0; q < load_rule.points.size(); ++q) {
        const double t = t_prev + load_rule.points[q] * tau;
        rhs += 0.5 * tau * load_rule.weights[q] *
               assemble_load(space, quad,
                             [&](std::array<double, 2> x) { return f(x, t); });
    }
    const auto result = solver.solve(1.0, 0.5 * tau, rhs, /*pressure_scale=*/0.5 * tau);
    return {result.u, result.p};
}

DiscreteTrajectory march(const Eigen::VectorXd& u0h, const TimeMesh& time_mesh,
                         const TimeDependentField& f, const TaylorHoodSpace& space,
                         const SpatialQuadrature& quad, const StokesOperators& ops,
                         const SaddleSolver& solver, const LineQuadrature& load_rule) {
    return march_with(u0h, time_mesh,
                      [&](const Eigen::VectorXd& u_prev, double t_prev, double tau) {
                          return step(u_prev, t_prev, tau, f, space, quad, ops, solver,
                                      load_rule);
                      });
}

Eigen::VectorXd eval_velocity(const DiscreteTrajectory& traj, double t) {
    const int n = traj.time_mesh.interval_of(t);
    const double t_prev = traj.time_mesh.nodes[n - 1];
    const double tau = traj.time_mesh.tau(n);
    // Lagrange basis on {t_{n-1}, tbar_n}: phi_0 = 2(tbar - t)/tau, phi_1 = 2(t - t_{n-1})/tau.
    const double phi1 = 2.0 * (t - t_prev) / tau;
    const double phi0 = 1.0 - phi1;
    return phi0 * traj.u_nodes[static_cast<std::size_t>(n - 1)] +
           phi1 * traj.u_midpoints[static_cast<std::size_t>(n - 1)];
}

Eigen::VectorXd eval_velocity_dt(const DiscreteTrajectory& traj, double t) {
    return slope_on_interval(traj, traj.time_mesh.interval_of(t));
}

Eigen::VectorXd slope_on_interval(const DiscreteTrajectory& traj, int m) {
    return (2.0 / traj.time_mesh.tau(m)) *
           (traj.u_midpoints[static_cast<std::size_t>(m - 1)] -
            traj.u_nodes[static_cast<std::size_t>(m - 1)]);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> initial_acceleration(
    const VectorFieldWithGradient& f0_plus_lap_u0, const TaylorHoodSpace& space,
    const SpatialQuadrature& quad, const StokesOperators& ops,
    const SaddleSolver& solver) {
    const Eigen::VectorXd rhs =
        assemble_gradient_load(space, quad, f0_plus_lap_u0.gradient);
    const auto result = solver.solve(0.0, 1.0, rhs);
    return {result.u, result.p};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> initial_stokes_data(
    const Eigen::VectorXd& a0h, const VectorFunction& f0, const TaylorHoodSpace& space,
    const SpatialQuadrature& quad, const StokesOperators& ops,
    const SaddleSolver& solver) {
    const Eigen::VectorXd rhs =
        assemble_load(space, quad, f0) - ops.velocity_mass * a0h;
    const auto result = solver.solve(0.0, 1.0, rhs);
    return {result.u, result.p};
}

}  // namespace ustokes
