#include "ustokes/convergence.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace ustokes {

std::string to_string(Variant variant) {
    switch (variant) {
        case Variant::collocation: return "collocation";
        case Variant::interpolation: return "interpolation";
    }
    throw std::invalid_argument("to_string: bad variant");
}

std::string to_string(NormFamily family) {
    switch (family) {
        case NormFamily::L2: return "L2";
        case NormFamily::lbar2: return "lbar2";
        case NormFamily::l2plus: return "l2plus";
    }
    throw std::invalid_argument("to_string: bad norm family");
}

namespace {

/// Uniform evaluation interface over the two trajectory views: coefficient
/// vectors at arbitrary t (left-continuous) and right limits at the left
/// endpoint of interval m.
struct TrajectoryView {
    std::function<Eigen::VectorXd(double)> u_at;
    std::function<Eigen::VectorXd(double)> dtu_at;
    std::function<Eigen::VectorXd(double)> p_at;
    std::function<Eigen::VectorXd(int)> u_plus;
    std::function<Eigen::VectorXd(int)> dtu_plus;
    std::function<Eigen::VectorXd(int)> p_plus;
};

TrajectoryView make_view(Variant variant, const DiscreteTrajectory& traj,
                         const LocalCollocationTrajectory& lc,
                         const InterpolationTrajectory& it) {
    TrajectoryView view;
    if (variant == Variant::collocation) {
        view.u_at = [&lc](double t) { return eval_u_tilde(lc, t); };
        view.dtu_at = [&lc](double t) { return eval_dt_u_tilde(lc, t); };
        view.p_at = [&lc](double t) { return eval_p_tilde(lc, t); };
        // The bubble theta vanishes at interval endpoints, so the lifted
        // velocity right limit is the shared nodal value u^{m-1}.
        view.u_plus = [&traj](int m) { return traj.u_nodes[static_cast<std::size_t>(m - 1)]; };
        view.dtu_plus = [&lc](int m) { return lc.accel_left[static_cast<std::size_t>(m - 1)]; };
        view.p_plus = [&lc](int m) { return lc.p_left[static_cast<std::size_t>(m - 1)]; };
    } else {
        view.u_at = [&traj](double t) { return eval_velocity(traj, t); };
        view.dtu_at = [&traj](double t) { return eval_velocity_dt(traj, t); };
        view.p_at = [&it](double t) { return eval_p_interp(it, t); };
        view.u_plus = [&traj](int m) { return traj.u_nodes[static_cast<std::size_t>(m - 1)]; };
        view.dtu_plus = [&traj](int m) { return slope_on_interval(traj, m); };
        view.p_plus = [&it](int m) { return eval_p_interp_right_limit(it, m); };
    }
    return view;
}

LevelErrors::Triple spatial_norms_at(const TaylorHoodSpace& space,
                                     const ManufacturedSolution& ms,
                                     const SpatialQuadrature& quad, double t,
                                     const Eigen::VectorXd& u, const Eigen::VectorXd& dtu,
                                     const Eigen::VectorXd& p) {
    LevelErrors::Triple out;
    out.u_h1 = space_error_h1_velocity(
        space, u, [&ms, t](std::array<double, 2> x) { return ms.velocity(x, t); },
        [&ms, t](std::array<double, 2> x) { return ms.velocity_gradient(x, t); }, quad);
    out.dtu_l2 = space_error_l2_velocity(
        space, dtu, [&ms, t](std::array<double, 2> x) { return ms.velocity_dt(x, t); },
        quad);
    out.p_l2 = space_error_l2_pressure(
        space, p, [&ms, t](std::array<double, 2> x) { return ms.pressure(x, t); }, quad);
    return out;
}

LevelErrors errors_for_view(const TaylorHoodSpace& space, const ManufacturedSolution& ms,
                            const TimeMesh& tm, const TrajectoryView& view,
                            const StudyConfig& cfg, double h) {
    LevelErrors out;
    out.h = h;
    out.tau = tm.tau(1);
    const SpatialQuadrature equad = gauss_rule_2d(cfg.error_quad_points);
    const int N = tm.num_intervals();

    // Continuous-in-time L2(I;B) norms via per-interval Gauss quadrature.
    auto& l2 = out.by_family[0];
    l2.u_h1 = time_l2_norm(
        [&](double t) {
            const Eigen::VectorXd u = view.u_at(t);
            return space_error_h1_velocity(
                space, u, [&ms, t](std::array<double, 2> x) { return ms.velocity(x, t); },
                [&ms, t](std::array<double, 2> x) { return ms.velocity_gradient(x, t); },
                equad);
        },
        tm, cfg.time_quad_points);
    l2.dtu_l2 = time_l2_norm(
        [&](double t) {
            const Eigen::VectorXd dtu = view.dtu_at(t);
            return space_error_l2_velocity(
                space, dtu,
                [&ms, t](std::array<double, 2> x) { return ms.velocity_dt(x, t); }, equad);
        },
        tm, cfg.time_quad_points);
    l2.p_l2 = time_l2_norm(
        [&](double t) {
            const Eigen::VectorXd p = view.p_at(t);
            return space_error_l2_pressure(
                space, p, [&ms, t](std::array<double, 2> x) { return ms.pressure(x, t); },
                equad);
        },
        tm, cfg.time_quad_points);

    // Midpoint (lbar2) and right-limit (l2plus) norms: one spatial norm
    // sample per interval.
    std::vector<double> mid_u(static_cast<std::size_t>(N));
    std::vector<double> mid_dtu(static_cast<std::size_t>(N));
    std::vector<double> mid_p(static_cast<std::size_t>(N));
    std::vector<double> plus_u(static_cast<std::size_t>(N));
    std::vector<double> plus_dtu(static_cast<std::size_t>(N));
    std::vector<double> plus_p(static_cast<std::size_t>(N));
    for (int m = 1; m <= N; ++m) {
        const std::size_t k = static_cast<std::size_t>(m - 1);
        const double tbar = tm.midpoint(m);
        const auto mid =
            spatial_norms_at(space, ms, equad, tbar, view.u_at(tbar), view.dtu_at(tbar),
                             view.p_at(tbar));
        mid_u[k] = mid.u_h1;
        mid_dtu[k] = mid.dtu_l2;
        mid_p[k] = mid.p_l2;
        const double t_left = tm.nodes[k];
        const auto plus = spatial_norms_at(space, ms, equad, t_left, view.u_plus(m),
                                           view.dtu_plus(m), view.p_plus(m));
        plus_u[k] = plus.u_h1;
        plus_dtu[k] = plus.dtu_l2;
        plus_p[k] = plus.p_l2;
    }
    out.by_family[1] = {lbar2_norm(mid_u, tm), lbar2_norm(mid_dtu, tm),
                        lbar2_norm(mid_p, tm)};
    out.by_family[2] = {l2plus_norm(plus_u, tm), l2plus_norm(plus_dtu, tm),
                        l2plus_norm(plus_p, tm)};
    return out;
}

/// Solves one level and evaluates the requested variants' norms from the
/// shared march.
void solve_level(int level, const StudyConfig& cfg, LevelErrors* out_collocation,
                 LevelErrors* out_interpolation) {
    if (level < 0) throw std::invalid_argument("convergence: level must be >= 0");
    const int n = 4 * (1 << level);
    const int num_steps = 2 * (1 << level);

    const ManufacturedSolution ms;
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(n));
    const SpatialQuadrature quad = gauss_rule_2d(cfg.error_quad_points);
    const StokesOperators ops = assemble_operators(space, quad);
    const SaddleSolver solver(ops, cfg.solver_tolerance);
    const TimeMesh tm = uniform_time_mesh(ManufacturedSolution::T, num_steps);
    const TimeDependentField f =
        cfg.forcing_override ? *cfg.forcing_override : ms.forcing_field();
    const Eigen::VectorXd u0h = Eigen::VectorXd::Zero(ops.n_u);

    DiscreteTrajectory traj;
    try {
        traj = march(u0h, tm, f, space, quad, ops, solver,
                     gauss_rule_1d(cfg.load_quad_points));
    } catch (const SolverError& err) {
        throw SolverError("level " + std::to_string(level) + ": " + err.what());
    }
    const double h = space.mesh.h;

    if (out_collocation != nullptr) {
        LocalCollocationTrajectory lc;
        try {
            lc = collocation_local(traj, f, space, quad, ops, solver);
        } catch (const SolverError& err) {
            throw SolverError("level " + std::to_string(level) + ": " + err.what());
        }
        InterpolationTrajectory unused;
        *out_collocation = errors_for_view(
            space, ms, tm, make_view(Variant::collocation, traj, lc, unused), cfg, h);
    }
    if (out_interpolation != nullptr) {
        const InterpolationTrajectory it = make_interpolation_trajectory(traj);
        LocalCollocationTrajectory unused;
        *out_interpolation = errors_for_view(
            space, ms, tm, make_view(Variant::interpolation, traj, unused, it), cfg, h);
    }
}

ConvergenceReport report_from_levels(int level_min, Variant variant,
                                     const std::vector<LevelErrors>& levels) {
    ConvergenceReport report;
    report.variant = variant;
    const std::array<NormFamily, 3> order = {NormFamily::L2, NormFamily::lbar2,
                                             NormFamily::l2plus};
    for (std::size_t fi = 0; fi < 3; ++fi) {
        FamilyTable& table = report.families[fi];
        table.family = order[fi];
        for (std::size_t li = 0; li < levels.size(); ++li) {
            const auto& tri = levels[li].by_family[fi];
            ConvergenceRow row;
            row.level = level_min + static_cast<int>(li);
            row.tau = levels[li].tau;
            row.h = levels[li].h;
            row.err_u_h1 = tri.u_h1;
            row.err_dtu_l2 = tri.dtu_l2;
            row.err_p_l2 = tri.p_l2;
            if (li > 0) {
                const auto& prev = levels[li - 1].by_family[fi];
                row.eoc_u_h1 = eoc(prev.u_h1, tri.u_h1);
                row.eoc_dtu_l2 = eoc(prev.dtu_l2, tri.dtu_l2);
                row.eoc_p_l2 = eoc(prev.p_l2, tri.p_l2);
            }
            table.rows.push_back(row);
        }
    }
    return report;
}

void check_level_range(int level_min, int level_max) {
    if (level_min < 0 || level_max < level_min) {
        throw std::invalid_argument("convergence: need 0 <= level_min <= level_max");
    }
}

}  // namespace

LevelErrors compute_level_errors(int level, Variant variant, const StudyConfig& config) {
    LevelErrors out;
    if (variant == Variant::collocation) {
        solve_level(level, config, &out, nullptr);
    } else {
        solve_level(level, config, nullptr, &out);
    }
    return out;
}

ConvergenceReport run_convergence_study(int level_min, int level_max, Variant variant,
                                        const StudyConfig& config) {
    check_level_range(level_min, level_max);
    std::vector<LevelErrors> levels;
    levels.reserve(static_cast<std::size_t>(level_max - level_min + 1));
    for (int level = level_min; level <= level_max; ++level) {
        levels.push_back(compute_level_errors(level, variant, config));
    }
    return report_from_levels(level_min, variant, levels);
}

std::array<ConvergenceReport, 2> run_convergence_study_both(int level_min, int level_max,
                                                            const StudyConfig& config) {
    check_level_range(level_min, level_max);
    std::vector<LevelErrors> colloc;
    std::vector<LevelErrors> interp;
    for (int level = level_min; level <= level_max; ++level) {
        LevelErrors c, i;
        solve_level(level, config, &c, &i);
        colloc.push_back(std::move(c));
        interp.push_back(std::move(i));
    }
    return {report_from_levels(level_min, Variant::collocation, colloc),
            report_from_levels(level_min, Variant::interpolation, interp)};
}

}  // namespace ustokes
