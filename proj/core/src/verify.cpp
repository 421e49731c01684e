#include "ustokes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "ustokes/manufactured.hpp"
#include "ustokes/postprocess.hpp"

namespace ustokes {

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.passed; });
}

void print_verification(const VerifyReport& report, std::ostream& out) {
    for (const auto& check : report.checks) {
        out << (check.passed ? "PASS" : "FAIL") << " " << check.name;
        if (!check.detail.empty()) out << " -- " << check.detail;
        out << "\n";
    }
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

void add(VerifyReport& report, const std::string& name, bool passed,
         const std::string& detail) {
    report.checks.push_back({name, passed, detail});
}

/// Quadrature rules must integrate (at least) P1 exactly; the tensor Gauss
/// rules are additionally exact through degree 2k-1 per axis.
void check_quadrature(VerifyReport& report) {
    double worst = 0.0;
    // Linear g(t) = 2 - 3t on an interval of length tau starting at a.
    const auto g = [](double t) { return 2.0 - 3.0 * t; };
    const double a = 0.3, tau = 0.7;
    const double exact = 2.0 * tau - 1.5 * ((a + tau) * (a + tau) - a * a);
    worst = std::max(worst, std::abs(quad_gauss_lobatto(g(a), g(a + tau), tau) - exact));
    worst = std::max(worst, std::abs(quad_gauss_midpoint(g(a + 0.5 * tau), tau) - exact));
    for (int k = 1; k <= 6; ++k) {
        const SpatialQuadrature q2d = gauss_rule_2d(k);
        const LineQuadrature q1d = gauss_rule_1d(k);
        double wsum2 = 0.0, lin2 = 0.0, wsum1 = 0.0, lin1 = 0.0, hi2 = 0.0, hi1 = 0.0;
        const int d = 2 * k - 1;  // highest exactly integrated degree
        for (int q = 0; q < q2d.size(); ++q) {
            const double w = q2d.weights[static_cast<std::size_t>(q)];
            const auto& p = q2d.points[static_cast<std::size_t>(q)];
            wsum2 += w;
            lin2 += w * (1.0 + 2.0 * p[0] - 3.0 * p[1]);
            hi2 += w * std::pow(p[0], d) * std::pow(p[1], d);
        }
        for (std::size_t q = 0; q < q1d.points.size(); ++q) {
            wsum1 += q1d.weights[q];
            lin1 += q1d.weights[q] * (1.0 + 2.0 * q1d.points[q]);
            hi1 += q1d.weights[q] * std::pow(q1d.points[q], d);
        }
        worst = std::max({worst, std::abs(wsum2 - 1.0), std::abs(lin2 - 0.5),
                          std::abs(hi2 - 1.0 / ((d + 1.0) * (d + 1.0))),
                          std::abs(wsum1 - 1.0), std::abs(lin1 - 2.0),
                          std::abs(hi1 - 1.0 / (d + 1.0))});
    }
    add(report, "quadrature-exactness", worst <= 1e-13,
        "max deviation " + fmt(worst) + " (tol 1e-13)");
}

/// Manufactured forcing against second-order centered differences of u and p.
void check_forcing_fd(VerifyReport& report, unsigned int seed) {
    const ManufacturedSolution ms;
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> xdist(0.05, 0.95);
    std::uniform_real_distribution<double> tdist(0.05, 1.95);
    const double d = 1e-4;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const std::array<double, 2> x = {xdist(gen), xdist(gen)};
        const double t = tdist(gen);
        const auto up = ms.velocity(x, t + d);
        const auto um = ms.velocity(x, t - d);
        const auto uxp = ms.velocity({x[0] + d, x[1]}, t);
        const auto uxm = ms.velocity({x[0] - d, x[1]}, t);
        const auto uyp = ms.velocity({x[0], x[1] + d}, t);
        const auto uym = ms.velocity({x[0], x[1] - d}, t);
        const auto u0 = ms.velocity(x, t);
        const double pxp = ms.pressure({x[0] + d, x[1]}, t);
        const double pxm = ms.pressure({x[0] - d, x[1]}, t);
        const double pyp = ms.pressure({x[0], x[1] + d}, t);
        const double pym = ms.pressure({x[0], x[1] - d}, t);
        const auto f = ms.forcing(x, t);
        for (int c = 0; c < 2; ++c) {
            const double dt = (up[c] - um[c]) / (2.0 * d);
            const double lap =
                (uxp[c] + uxm[c] + uyp[c] + uym[c] - 4.0 * u0[c]) / (d * d);
            const double gp = c == 0 ? (pxp - pxm) / (2.0 * d) : (pyp - pym) / (2.0 * d);
            worst = std::max(worst, std::abs(f[c] - (dt - lap + gp)));
        }
    }
    add(report, "forcing-finite-difference", worst <= 1e-6,
        "max |f - FD| " + fmt(worst) + " at 20 points (tol 1e-6)");
}

Eigen::MatrixXd dense_augmented(const StokesOperators& ops, double alpha, double beta,
                                double gamma) {
    const int nu = ops.n_u;
    const int np = ops.n_p;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nu + np + 1, nu + np + 1);
    m.topLeftCorner(nu, nu) = alpha * Eigen::MatrixXd(ops.velocity_mass) +
                              beta * Eigen::MatrixXd(ops.velocity_stiffness);
    const Eigen::MatrixXd b = Eigen::MatrixXd(ops.divergence);
    m.block(nu, 0, np, nu) = gamma * b;
    m.block(0, nu, nu, np) = gamma * b.transpose();
    m.block(nu, nu + np, np, 1) = ops.pressure_mean;
    m.block(nu + np, nu, 1, np) = ops.pressure_mean.transpose();
    return m;
}

/// Relative mismatch between a production solve and a dense full-pivot solve
/// of the same augmented system.
double oracle_mismatch(const StokesOperators& ops, double alpha, double beta,
                       double gamma, const Eigen::VectorXd& g, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& p) {
    const Eigen::MatrixXd m = dense_augmented(ops, alpha, beta, gamma);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m.rows());
    rhs.head(ops.n_u) = g;
    const Eigen::VectorXd ref = m.fullPivLu().solve(rhs);
    const double scale = std::max(1e-30, ref.head(ops.n_u + ops.n_p).norm());
    Eigen::VectorXd got(ops.n_u + ops.n_p);
    got << u, p;
    return (got - ref.head(ops.n_u + ops.n_p)).norm() / scale;
}

void check_dense_oracle(VerifyReport& report, double tolerance) {
    const ManufacturedSolution ms;
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const SpatialQuadrature quad = gauss_rule_2d(5);
    const StokesOperators ops = assemble_operators(space, quad);
    const SaddleSolver solver(ops, tolerance);
    const TimeDependentField f = ms.forcing_field();
    const double tau = 1.0;
    double worst = 0.0;

    // Interval solve from u^0 = 0 over (0, tau].
    const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(ops.n_u);
    {
        const auto [ubar, pbar] = step(u0, 0.0, tau, f, space, quad, ops, solver);
        const Eigen::VectorXd g =
            0.25 * tau *
            (assemble_load(space, quad, [&](std::array<double, 2> x) { return f(x, 0.0); }) +
             assemble_load(space, quad, [&](std::array<double, 2> x) { return f(x, tau); }));
        worst = std::max(worst, oracle_mismatch(ops, 1.0, 0.5 * tau, 0.5 * tau, g, ubar, pbar));
    }
    // Collocation initialization (mass saddle).
    {
        TimeMesh tm = uniform_time_mesh(2.0, 2);
        DiscreteTrajectory traj;
        traj.time_mesh = tm;
        traj.u_nodes.push_back(u0);
        const auto [a0, p0] = collocation_init(traj, f, space, quad, ops, solver);
        const Eigen::VectorXd g =
            assemble_load(space, quad, [&](std::array<double, 2> x) { return f(x, 0.0); });
        worst = std::max(worst, oracle_mismatch(ops, 1.0, 0.0, 1.0, g, a0, p0));
    }
    // Stationary initial-data problems (stiffness saddle).
    {
        const auto [a0h, s0] =
            initial_acceleration(ms.initial_data_field(), space, quad, ops, solver);
        const Eigen::VectorXd ga =
            assemble_gradient_load(space, quad, ms.initial_data_field().gradient);
        worst = std::max(worst, oracle_mismatch(ops, 0.0, 1.0, 1.0, ga, a0h, s0));

        const VectorFunction f0 = [&](std::array<double, 2> x) { return f(x, 0.0); };
        const auto [uh, ph] = initial_stokes_data(a0h, f0, space, quad, ops, solver);
        const Eigen::VectorXd gu =
            assemble_load(space, quad, f0) - ops.velocity_mass * a0h;
        worst = std::max(worst, oracle_mismatch(ops, 0.0, 1.0, 1.0, gu, uh, ph));
    }
    add(report, "dense-saddle-oracle", worst <= 1e-10,
        "max relative mismatch " + fmt(worst) + " on 2x2 mesh (tol 1e-10)");
}

/// The time-march checks share one solved trajectory on a 4x4 mesh with
/// N = 4 intervals; the fault hook corrupts the divergence operator used by
/// the solves, which only the independently assembled operator can expose.
void check_march(VerifyReport& report, const VerifyOptions& opts) {
    const ManufacturedSolution ms;
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(4));
    const SpatialQuadrature quad = gauss_rule_2d(5);
    StokesOperators ops = assemble_operators(space, quad);
    const CsrMatrix divergence_reference = ops.divergence;
    if (opts.inject_fault) {
        // Flip the largest-magnitude entry of a mid-domain constraint row
        // (small stored entries may be numerical zeros).
        CsrMatrix::InnerIterator pick(ops.divergence, ops.n_p / 2);
        for (CsrMatrix::InnerIterator it = pick; it; ++it) {
            if (std::abs(it.value()) > std::abs(pick.value())) pick = it;
        }
        if (pick) pick.valueRef() = -pick.value();
    }
    const SaddleSolver solver(ops, opts.solver_tolerance);
    const TimeDependentField f = ms.forcing_field();
    const TimeMesh tm = uniform_time_mesh(ManufacturedSolution::T, 4);
    const Eigen::VectorXd u0h = Eigen::VectorXd::Zero(ops.n_u);
    const DiscreteTrajectory traj = march(u0h, tm, f, space, quad, ops, solver);
    const CollocationTrajectory ct = collocation_extend(traj, f, space, quad, ops, solver);
    const int N = tm.num_intervals();

    // Discrete divergence-freeness of every midpoint velocity.
    double div_worst = 0.0;
    for (int n = 1; n <= N; ++n) {
        const Eigen::VectorXd bu =
            divergence_reference * traj.u_midpoints[static_cast<std::size_t>(n - 1)];
        div_worst = std::max(div_worst, bu.lpNorm<Eigen::Infinity>());
    }
    add(report, "divergence-free-midpoints", div_worst <= 1e-9,
        "max |B ubar|_inf " + fmt(div_worst) + " over " + std::to_string(N) +
            " steps (tol 1e-9)");

    // C1 continuity of the lifted velocity and C0 continuity of the nodal
    // pressure at interior time nodes: left limits via the evaluators,
    // right limits from the stored interval data.
    double c1_worst = 0.0;
    double c0_worst = 0.0;
    for (int n = 1; n < N; ++n) {
        const double tn = tm.nodes[static_cast<std::size_t>(n)];
        const std::size_t k = static_cast<std::size_t>(n);
        const Eigen::VectorXd u_left = eval_u_tilde(ct, tn);
        const Eigen::VectorXd u_right =
            traj.u_nodes[k] + theta(tn, tm.nodes[k + 1], tn) * ct.lifting[k];
        const Eigen::VectorXd du_left = eval_dt_u_tilde(ct, tn);
        const Eigen::VectorXd du_right =
            slope_on_interval(traj, n + 1) +
            theta_dt(tn, tm.nodes[k + 1], tn) * ct.lifting[k];
        c1_worst = std::max({c1_worst, (u_left - u_right).lpNorm<Eigen::Infinity>(),
                             (du_left - du_right).lpNorm<Eigen::Infinity>()});
        const Eigen::VectorXd p_left = eval_p_tilde(ct, tn);
        c0_worst = std::max(c0_worst,
                            (p_left - ct.p_nodes[k]).lpNorm<Eigen::Infinity>());
    }
    add(report, "lifted-velocity-c1-continuity", c1_worst <= 1e-10,
        "max interior-node jump " + fmt(c1_worst) + " (tol 1e-10)");
    add(report, "nodal-pressure-c0-continuity", c0_worst <= 1e-10,
        "max interior-node jump " + fmt(c0_worst) + " (tol 1e-10)");

    // Collocation residual M a^n + A u^n + B^T ptilde^n - L(t_n) at every
    // node, scaled by the largest load magnitude.
    double load_scale = 0.0;
    double res_worst = 0.0;
    for (int n = 0; n <= N; ++n) {
        const double tn = tm.nodes[static_cast<std::size_t>(n)];
        const Eigen::VectorXd load = assemble_load(
            space, quad, [&](std::array<double, 2> x) { return f(x, tn); });
        load_scale = std::max(load_scale, load.lpNorm<Eigen::Infinity>());
        const std::size_t k = static_cast<std::size_t>(n);
        const Eigen::VectorXd residual =
            ops.velocity_mass * ct.accel[k] + ops.velocity_stiffness * traj.u_nodes[k] +
            ops.divergence.transpose() * ct.p_nodes[k] - load;
        res_worst = std::max(res_worst, residual.lpNorm<Eigen::Infinity>());
    }
    add(report, "collocation-node-residual", res_worst <= 1e-8 * load_scale,
        "max |residual|_inf " + fmt(res_worst) + " vs load scale " + fmt(load_scale) +
            " (tol 1e-8 relative)");

    // Zero forcing and zero initial data must stay exactly zero.
    const TimeDependentField zero = [](std::array<double, 2>, double) {
        return std::array<double, 2>{0.0, 0.0};
    };
    const DiscreteTrajectory ztraj = march(u0h, tm, zero, space, quad, ops, solver);
    const CollocationTrajectory zct =
        collocation_extend(ztraj, zero, space, quad, ops, solver);
    bool all_zero = true;
    for (const auto& v : ztraj.u_nodes) all_zero = all_zero && (v.array() == 0.0).all();
    for (const auto& v : ztraj.u_midpoints) all_zero = all_zero && (v.array() == 0.0).all();
    for (const auto& v : ztraj.p_midpoints) all_zero = all_zero && (v.array() == 0.0).all();
    for (const auto& v : zct.accel) all_zero = all_zero && (v.array() == 0.0).all();
    for (const auto& v : zct.p_nodes) all_zero = all_zero && (v.array() == 0.0).all();
    add(report, "zero-data-zero-solution", all_zero,
        all_zero ? "all trajectory vectors exactly zero" : "nonzero entry found");
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;
    check_quadrature(report);
    check_forcing_fd(report, options.seed);
    check_dense_oracle(report, options.solver_tolerance);
    check_march(report, options);
    return report;
}

}  // namespace ustokes
