#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include <gtest/gtest.h>

#include "ustokes/convergence.hpp"
#include "ustokes/report_io.hpp"
#include "ustokes/verify.hpp"
#include "oracles.hpp"

namespace {

using namespace ustokes;
using ustokes::testing::dense_mismatch;
using ustokes::testing::SmallProblem;

/// The full desk-scale study (levels 0..3, both variants), computed once and
/// shared by the table-value criteria below.
const std::array<ConvergenceReport, 2>& study() {
    static const std::array<ConvergenceReport, 2> reports =
        run_convergence_study_both(0, 3);
    return reports;
}

const ConvergenceReport& collocation_report() { return study()[0]; }
const ConvergenceReport& interpolation_report() { return study()[1]; }

const ConvergenceRow& row(const ConvergenceReport& report, NormFamily family,
                          int level) {
    const std::size_t fi = family == NormFamily::L2 ? 0 : family == NormFamily::lbar2 ? 1 : 2;
    return report.families[fi].rows[static_cast<std::size_t>(level)];
}

void expect_close(double value, double target, double rel_band, const char* what) {
    EXPECT_LE(std::abs(value - target), rel_band * target)
        << what << ": got " << value << ", expected " << target << " within "
        << rel_band * 100.0 << "%";
}

void expect_eoc(const std::optional<double>& value, double lo, double hi,
                const char* what) {
    EXPECT_TRUE(value.has_value()) << what << ": missing EOC";
    if (value.has_value()) {
        EXPECT_GE(*value, lo) << what << ": EOC " << *value;
        EXPECT_LE(*value, hi) << what << ": EOC " << *value;
    }
}

void report_criterion(int number, const char* description) {
    std::printf("[criterion %d] %s -- %s\n", number,
                ::testing::Test::HasFailure() ? "FAIL" : "PASS", description);
    std::fflush(stdout);
}

TEST(Acceptance, Criterion1InterpolationPressureL2) {
    const ConvergenceRow& r = row(interpolation_report(), NormFamily::L2, 3);
    expect_close(r.err_p_l2, 4.1881864102e-04, 0.02, "p error, interpolation, L2-in-time");
    expect_eoc(r.eoc_p_l2, 1.90, 2.10, "p EOC, interpolation, L2-in-time");
    report_criterion(1,
                     "interpolated pressure: L2-in-time error at the finest level "
                     "matches the reference table within 2% at second order");
}

TEST(Acceptance, Criterion2CollocationPressureL2) {
    const ConvergenceRow& r = row(collocation_report(), NormFamily::L2, 3);
    expect_close(r.err_p_l2, 4.5193083007e-04, 0.02, "p error, collocation, L2-in-time");
    expect_eoc(r.eoc_p_l2, 1.90, 2.10, "p EOC, collocation, L2-in-time");
    report_criterion(2,
                     "collocation-lifted pressure: L2-in-time error at the finest "
                     "level matches the reference table within 2% at second order");
}

TEST(Acceptance, Criterion3VelocityH1L2) {
    const ConvergenceRow& ri = row(interpolation_report(), NormFamily::L2, 3);
    expect_close(ri.err_u_h1, 3.7608570388e-03, 0.02, "u error, raw trajectory");
    expect_eoc(ri.eoc_u_h1, 1.95, 2.05, "u EOC, raw trajectory");
    const ConvergenceRow& rc = row(collocation_report(), NormFamily::L2, 3);
    expect_close(rc.err_u_h1, 5.4564310437e-03, 0.05, "u error, lifted trajectory");
    report_criterion(3,
                     "velocity H1 error in L2-in-time: raw trajectory within 2% of the "
                     "reference value at second order, lifted trajectory within 5%");
}

TEST(Acceptance, Criterion4InterpolationDerivativeNorms) {
    const ConvergenceRow& mid = row(interpolation_report(), NormFamily::lbar2, 3);
    expect_close(mid.err_dtu_l2, 1.7864127424e-04, 0.02, "dtu error at midpoints");
    expect_eoc(mid.eoc_dtu_l2, 1.89, 2.09, "dtu EOC at midpoints");
    const ConvergenceRow& plus = row(interpolation_report(), NormFamily::l2plus, 3);
    expect_close(plus.err_dtu_l2, 2.0558599482e-02, 0.02, "dtu error at right limits");
    expect_eoc(plus.eoc_dtu_l2, 0.88, 1.08, "dtu EOC at right limits");
    report_criterion(4,
                     "velocity-derivative errors of the raw trajectory: superconvergent "
                     "(order 2) at interval midpoints, first order in the right-limit "
                     "norm, both within 2% of the reference values");
}

TEST(Acceptance, Criterion5MidpointPressureNormsCoincide) {
    for (int level = 0; level <= 3; ++level) {
        const double c = row(collocation_report(), NormFamily::lbar2, level).err_p_l2;
        const double i = row(interpolation_report(), NormFamily::lbar2, level).err_p_l2;
        EXPECT_LE(std::abs(c - i), 1e-12 * i) << "level " << level;
    }
    report_criterion(5,
                     "both post-processed pressures interpolate the midpoint values, so "
                     "their interval-midpoint error norms coincide on every level");
}

TEST(Acceptance, Criterion6CollocationDerivativeL2) {
    const ConvergenceRow& r = row(collocation_report(), NormFamily::L2, 3);
    expect_close(r.err_dtu_l2, 1.3176859187e-02, 0.02, "dtu error, lifted trajectory");
    expect_eoc(r.eoc_dtu_l2, 1.86, 2.06, "dtu EOC, lifted trajectory");
    report_criterion(6,
                     "lifted velocity derivative: L2-in-time error at the finest level "
                     "matches the reference table within 2% at second order");
}

TEST(Acceptance, Criterion7SaddleSolvesMatchDenseOracle) {
    const SmallProblem p(2);
    const ManufacturedSolution ms;
    const TimeDependentField f = ms.forcing_field();
    const double tau = 1.0;
    const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(p.ops.n_u);

    auto load_at = [&](double t) {
        return assemble_load(p.space, p.quad,
                             [&](std::array<double, 2> x) { return f(x, t); });
    };

    // Interval solve, endpoint-average loads, two consecutive intervals.
    Eigen::VectorXd u_prev = u0;
    double t_prev = 0.0;
    for (int n = 1; n <= 2; ++n) {
        const auto [ubar, pbar] =
            step(u_prev, t_prev, tau, f, p.space, p.quad, p.ops, p.solver);
        const Eigen::VectorXd g =
            p.ops.velocity_mass * u_prev + 0.25 * tau * (load_at(t_prev) + load_at(t_prev + tau));
        EXPECT_LE(dense_mismatch(p.ops, 1.0, 0.5 * tau, 0.5 * tau, g, ubar, pbar), 1e-10)
            << "interval solve " << n;
        u_prev = 2.0 * ubar - u_prev;
        t_prev += tau;
    }

    // Interval solve with Gauss-integrated loads.
    const LineQuadrature rule = gauss_rule_1d(5);
    const auto [ubar_g, pbar_g] =
        step(u0, 0.0, tau, f, p.space, p.quad, p.ops, p.solver, rule);
    Eigen::VectorXd g_gauss = p.ops.velocity_mass * u0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
        g_gauss += 0.5 * tau * rule.weights[q] * load_at(rule.points[q] * tau);
    }
    EXPECT_LE(dense_mismatch(p.ops, 1.0, 0.5 * tau, 0.5 * tau, g_gauss, ubar_g, pbar_g),
              1e-10)
        << "interval solve, Gauss loads";

    // Lifting initialization and the interval-local lift solves.
    const TimeMesh tm = uniform_time_mesh(2.0, 2);
    const DiscreteTrajectory traj = march(u0, tm, f, p.space, p.quad, p.ops, p.solver);
    const auto [a0, q0] = collocation_init(traj, f, p.space, p.quad, p.ops, p.solver);
    const Eigen::VectorXd g_init = load_at(0.0) - p.ops.velocity_stiffness * u0;
    EXPECT_LE(dense_mismatch(p.ops, 1.0, 0.0, 1.0, g_init, a0, q0), 1e-10)
        << "lifting initialization";

    const LocalCollocationTrajectory lc =
        collocation_local(traj, f, p.space, p.quad, p.ops, p.solver);
    for (int n = 1; n <= 2; ++n) {
        const std::size_t k = static_cast<std::size_t>(n - 1);
        const Eigen::VectorXd g_local =
            load_at(tm.nodes[k]) - p.ops.velocity_stiffness * traj.u_nodes[k];
        EXPECT_LE(dense_mismatch(p.ops, 1.0, 0.0, 1.0, g_local, lc.accel_left[k],
                                 lc.p_left[k]),
                  1e-10)
            << "local lift solve " << n;
    }

    // Discrete initial data.
    const auto [a0h, s0] =
        initial_acceleration(ms.initial_data_field(), p.space, p.quad, p.ops, p.solver);
    const Eigen::VectorXd g_accel =
        assemble_gradient_load(p.space, p.quad, ms.initial_data_field().gradient);
    EXPECT_LE(dense_mismatch(p.ops, 0.0, 1.0, 1.0, g_accel, a0h, s0), 1e-10)
        << "initial acceleration";
    const auto [u0h, p0h] = initial_stokes_data(
        a0h, [&](std::array<double, 2> x) { return f(x, 0.0); }, p.space, p.quad, p.ops,
        p.solver);
    const Eigen::VectorXd g_data = load_at(0.0) - p.ops.velocity_mass * a0h;
    EXPECT_LE(dense_mismatch(p.ops, 0.0, 1.0, 1.0, g_data, u0h, p0h), 1e-10)
        << "initial velocity/pressure";

    report_criterion(7,
                     "every production saddle solve (interval step under both load "
                     "rules, lifting initialization, interval-local lifts, discrete "
                     "initial data) matches a dense full-pivot oracle to 1e-10");
}

TEST(Acceptance, Criterion8InvariantSuitePasses) {
    const VerifyReport report = run_verification();
    EXPECT_TRUE(report.all_passed());
    for (const auto& check : report.checks) {
        EXPECT_TRUE(check.passed) << check.name << ": " << check.detail;
    }
    EXPECT_EQ(report.checks.size(), 8u);
    report_criterion(8, "the cross-module invariant suite passes all checks");
}

TEST(Acceptance, Criterion9RunsAreReproducible) {
    const ConvergenceReport first = run_convergence_study(0, 1, Variant::interpolation);
    const ConvergenceReport second = run_convergence_study(0, 1, Variant::interpolation);
    for (std::size_t fi = 0; fi < 3; ++fi) {
        EXPECT_EQ(render_csv(first.families[fi]), render_csv(second.families[fi]))
            << "family " << fi;
    }
    report_criterion(9, "repeated studies reproduce byte-identical reports");
}

}  // namespace
