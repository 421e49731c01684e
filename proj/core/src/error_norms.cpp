#include "ustokes/error_norms.hpp"

#include <cmath>
#include <stdexcept>

namespace ustokes {

namespace {

struct VelocityErrorParts {
    double l2_sq = 0.0;
    double h1semi_sq = 0.0;
};

// One sweep over all cells accumulating the squared L2 error and (optionally)
// the squared H1-seminorm error of a velocity FE function against exact
// closures.  Shape values are pre-evaluated at the reference quadrature points.
VelocityErrorParts velocity_error_parts(const TaylorHoodSpace& space,
                                        const Eigen::VectorXd& coeffs,
                                        const ExactVector* exact,
                                        const ExactMatrix* exact_gradient,
                                        const SpatialQuadrature& quad) {
    std::vector<ShapeValues> shapes;
    shapes.reserve(quad.points.size());
    for (const auto& p : quad.points) shapes.push_back(eval_shape(ElementKind::Q2, p[0], p[1]));

    const double s = space.mesh.cell_side();
    const double detj = s * s;
    const double jinv = 1.0 / s;

    VelocityErrorParts parts;
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto origin = space.mesh.cell_origin(cell);
        const auto& nodes = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
        double c0[9], c1[9];
        for (int a = 0; a < 9; ++a) {
            c0[a] = coeffs[space.velocity_dof(0, nodes[a])];
            c1[a] = coeffs[space.velocity_dof(1, nodes[a])];
        }
        for (int q = 0; q < quad.size(); ++q) {
            const auto& sv = shapes[static_cast<std::size_t>(q)];
            const std::array<double, 2> x = {origin[0] + s * quad.points[q][0],
                                             origin[1] + s * quad.points[q][1]};
            const double wq = quad.weights[static_cast<std::size_t>(q)] * detj;
            if (exact != nullptr) {
                double v0 = 0.0, v1 = 0.0;
                for (int a = 0; a < 9; ++a) {
                    v0 += c0[a] * sv.values[a];
                    v1 += c1[a] * sv.values[a];
                }
                const auto e = (*exact)(x);
                const double d0 = e[0] - v0;
                const double d1 = e[1] - v1;
                parts.l2_sq += wq * (d0 * d0 + d1 * d1);
            }
            if (exact_gradient != nullptr) {
                double g00 = 0.0, g01 = 0.0, g10 = 0.0, g11 = 0.0;
                for (int a = 0; a < 9; ++a) {
                    const double gx = sv.gradients[a][0] * jinv;
                    const double gy = sv.gradients[a][1] * jinv;
                    g00 += c0[a] * gx;
                    g01 += c0[a] * gy;
                    g10 += c1[a] * gx;
                    g11 += c1[a] * gy;
                }
                const auto eg = (*exact_gradient)(x);
                const double d00 = eg[0][0] - g00;
                const double d01 = eg[0][1] - g01;
                const double d10 = eg[1][0] - g10;
                const double d11 = eg[1][1] - g11;
                parts.h1semi_sq += wq * (d00 * d00 + d01 * d01 + d10 * d10 + d11 * d11);
            }
        }
    }
    return parts;
}

}  // namespace

double space_error_l2_velocity(const TaylorHoodSpace& space, const Eigen::VectorXd& coeffs,
                               const ExactVector& exact, const SpatialQuadrature& quad) {
    return std::sqrt(velocity_error_parts(space, coeffs, &exact, nullptr, quad).l2_sq);
}

double space_error_h1semi_velocity(const TaylorHoodSpace& space,
                                   const Eigen::VectorXd& coeffs,
                                   const ExactMatrix& exact_gradient,
                                   const SpatialQuadrature& quad) {
    return std::sqrt(
        velocity_error_parts(space, coeffs, nullptr, &exact_gradient, quad).h1semi_sq);
}

double space_error_h1_velocity(const TaylorHoodSpace& space, const Eigen::VectorXd& coeffs,
                               const ExactVector& exact, const ExactMatrix& exact_gradient,
                               const SpatialQuadrature& quad) {
    const auto parts = velocity_error_parts(space, coeffs, &exact, &exact_gradient, quad);
    return std::sqrt(parts.l2_sq + parts.h1semi_sq);
}

double space_error_l2_pressure(const TaylorHoodSpace& space, const Eigen::VectorXd& coeffs,
                               const ExactScalar& exact, const SpatialQuadrature& quad) {
    std::vector<ShapeValues> shapes;
    shapes.reserve(quad.points.size());
    for (const auto& p : quad.points) shapes.push_back(eval_shape(ElementKind::Q1, p[0], p[1]));

    const double s = space.mesh.cell_side();
    const double detj = s * s;

    double err_sq = 0.0;
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto origin = space.mesh.cell_origin(cell);
        const auto& nodes = space.cell_q1_nodes[static_cast<std::size_t>(cell)];
        for (int q = 0; q < quad.size(); ++q) {
            const auto& sv = shapes[static_cast<std::size_t>(q)];
            double v = 0.0;
            for (int a = 0; a < 4; ++a) v += coeffs[nodes[a]] * sv.values[a];
            const std::array<double, 2> x = {origin[0] + s * quad.points[q][0],
                                             origin[1] + s * quad.points[q][1]};
            const double d = exact(x) - v;
            err_sq += quad.weights[static_cast<std::size_t>(q)] * detj * d * d;
        }
    }
    return std::sqrt(err_sq);
}

double time_l2_norm(const std::function<double(double)>& error_at_t,
                    const TimeMesh& time_mesh, int points_per_interval) {
    const LineQuadrature rule = gauss_rule_1d(points_per_interval);
    double sum = 0.0;
    for (int n = 1; n <= time_mesh.num_intervals(); ++n) {
        const double t_prev = time_mesh.nodes[n - 1];
        const double tau = time_mesh.tau(n);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double e = error_at_t(t_prev + tau * rule.points[q]);
            sum += tau * rule.weights[q] * e * e;
        }
    }
    return std::sqrt(sum);
}

namespace {

double weighted_rss(const std::vector<double>& samples, const TimeMesh& time_mesh,
                    const char* what) {
    if (static_cast<int>(samples.size()) != time_mesh.num_intervals()) {
        throw std::invalid_argument(std::string(what) + ": need one sample per interval");
    }
    double sum = 0.0;
    for (int n = 1; n <= time_mesh.num_intervals(); ++n) {
        const double s = samples[static_cast<std::size_t>(n - 1)];
        sum += time_mesh.tau(n) * s * s;
    }
    return std::sqrt(sum);
}

}  // namespace

double lbar2_norm(const std::vector<double>& samples_at_midpoints,
                  const TimeMesh& time_mesh) {
    return weighted_rss(samples_at_midpoints, time_mesh, "lbar2_norm");
}

double l2plus_norm(const std::vector<double>& samples_at_right_limits,
                   const TimeMesh& time_mesh) {
    return weighted_rss(samples_at_right_limits, time_mesh, "l2plus_norm");
}

double eoc(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw std::domain_error("eoc: errors must be positive");
    }
    return std::log2(e_coarse / e_fine);
}

}  // namespace ustokes
