#include "ustokes/fem_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ustokes {

namespace {

// 1D Lagrange bases on [0,1].
// Q1 nodes {0,1}; Q2 nodes {0, 1/2, 1}.
inline void line_q1(double x, double val[2], double der[2]) {
    val[0] = 1.0 - x;
    val[1] = x;
    der[0] = -1.0;
    der[1] = 1.0;
}

inline void line_q2(double x, double val[3], double der[3]) {
    val[0] = (2.0 * x - 1.0) * (x - 1.0);  // node 0
    val[1] = 4.0 * x * (1.0 - x);          // node 1/2
    val[2] = x * (2.0 * x - 1.0);          // node 1
    der[0] = 4.0 * x - 3.0;
    der[1] = 4.0 - 8.0 * x;
    der[2] = 4.0 * x - 1.0;
}

// Gauss-Legendre abscissas/weights on [-1,1]; closed forms for k <= 5,
// standard tabulated values for k = 6, Newton iteration on the Legendre
// recurrence for larger k.
void gauss_1d(int k, std::vector<double>& x, std::vector<double>& w) {
    if (k < 1) throw std::invalid_argument("gauss rule: need at least one point");
    switch (k) {
        case 1:
            x = {0.0};
            w = {2.0};
            break;
        case 2: {
            const double a = 1.0 / std::sqrt(3.0);
            x = {-a, a};
            w = {1.0, 1.0};
            break;
        }
        case 3: {
            const double a = std::sqrt(3.0 / 5.0);
            x = {-a, 0.0, a};
            w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
            break;
        }
        case 4: {
            const double c = 2.0 / 7.0 * std::sqrt(6.0 / 5.0);
            const double a = std::sqrt(3.0 / 7.0 - c);
            const double b = std::sqrt(3.0 / 7.0 + c);
            const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
            const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
            x = {-b, -a, a, b};
            w = {wb, wa, wa, wb};
            break;
        }
        case 5: {
            const double c = 2.0 * std::sqrt(10.0 / 7.0);
            const double a = std::sqrt(5.0 - c) / 3.0;
            const double b = std::sqrt(5.0 + c) / 3.0;
            const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
            const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
            x = {-b, -a, 0.0, a, b};
            w = {wb, wa, 128.0 / 225.0, wa, wb};
            break;
        }
        case 6: {
            const double a = 0.2386191860831969086305017;
            const double b = 0.6612093864662645136613996;
            const double c = 0.9324695142031520278123016;
            const double wa = 0.4679139345726910473898703;
            const double wb = 0.3607615730481386075698335;
            const double wc = 0.1713244923791703450402961;
            x = {-c, -b, -a, a, b, c};
            w = {wc, wb, wa, wa, wb, wc};
            break;
        }
        default: {
            x.assign(static_cast<std::size_t>(k), 0.0);
            w.assign(static_cast<std::size_t>(k), 0.0);
            const double pi = std::numbers::pi;
            for (int i = 0; i < (k + 1) / 2; ++i) {
                double z = std::cos(pi * (i + 0.75) / (k + 0.5));
                double dp = 0.0;
                for (int iter = 0; iter < 100; ++iter) {
                    double p1 = 1.0, p2 = 0.0;
                    for (int j = 0; j < k; ++j) {
                        const double p3 = p2;
                        p2 = p1;
                        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
                    }
                    dp = k * (z * p1 - p2) / (z * z - 1.0);
                    const double z_prev = z;
                    z -= p1 / dp;
                    if (std::abs(z - z_prev) <= 1e-15) break;
                }
                x[static_cast<std::size_t>(i)] = -z;
                x[static_cast<std::size_t>(k - 1 - i)] = z;
                w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
                w[static_cast<std::size_t>(k - 1 - i)] = w[static_cast<std::size_t>(i)];
            }
            break;
        }
    }
}

constexpr std::array<std::array<double, 2>, 4> kQ1Nodes = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

// Tensor (ix, iy) indices for the Q1 CCW local order.
constexpr std::array<std::array<int, 2>, 4> kQ1Tensor = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};

}  // namespace

ShapeValues eval_shape(ElementKind kind, double xi, double eta) {
    ShapeValues out;
    if (kind == ElementKind::Q1) {
        double vx[2], dx[2], vy[2], dy[2];
        line_q1(xi, vx, dx);
        line_q1(eta, vy, dy);
        out.count = 4;
        for (int a = 0; a < 4; ++a) {
            const int ix = kQ1Tensor[a][0];
            const int iy = kQ1Tensor[a][1];
            out.values[a] = vx[ix] * vy[iy];
            out.gradients[a] = {dx[ix] * vy[iy], vx[ix] * dy[iy]};
        }
    } else {
        double vx[3], dx[3], vy[3], dy[3];
        line_q2(xi, vx, dx);
        line_q2(eta, vy, dy);
        out.count = 9;
        for (int iy = 0; iy < 3; ++iy) {
            for (int ix = 0; ix < 3; ++ix) {
                const int a = iy * 3 + ix;
                out.values[a] = vx[ix] * vy[iy];
                out.gradients[a] = {dx[ix] * vy[iy], vx[ix] * dy[iy]};
            }
        }
    }
    return out;
}

std::array<double, 2> reference_node(ElementKind kind, int local_node) {
    if (kind == ElementKind::Q1) {
        return kQ1Nodes[static_cast<std::size_t>(local_node)];
    }
    const int ix = local_node % 3;
    const int iy = local_node / 3;
    return {0.5 * ix, 0.5 * iy};
}

LineQuadrature gauss_rule_1d(int num_points) {
    std::vector<double> x1, w1;
    gauss_1d(num_points, x1, w1);
    LineQuadrature quad;
    quad.points.reserve(x1.size());
    quad.weights.reserve(w1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
        quad.points.push_back(0.5 * (x1[i] + 1.0));
        quad.weights.push_back(0.5 * w1[i]);
    }
    return quad;
}

SpatialQuadrature gauss_rule_2d(int points_per_axis) {
    if (points_per_axis < 1 || points_per_axis > 6) {
        throw std::invalid_argument("gauss_rule_2d: points_per_axis must be in [1,6]");
    }
    std::vector<double> x1, w1;
    gauss_1d(points_per_axis, x1, w1);
    // Map from [-1,1] to [0,1]: x -> (x+1)/2, weight scale 1/2 per axis.
    SpatialQuadrature quad;
    quad.points.reserve(static_cast<std::size_t>(points_per_axis) * points_per_axis);
    quad.weights.reserve(quad.points.capacity());
    for (int j = 0; j < points_per_axis; ++j) {
        for (int i = 0; i < points_per_axis; ++i) {
            quad.points.push_back({0.5 * (x1[i] + 1.0), 0.5 * (x1[j] + 1.0)});
            quad.weights.push_back(0.25 * w1[i] * w1[j]);
        }
    }
    return quad;
}

TaylorHoodSpace make_taylor_hood_space(const StructuredQuadMesh& mesh) {
    TaylorHoodSpace space;
    space.mesh = mesh;

    const int n = mesh.n_cells_per_side;
    const int nq2 = 2 * n + 1;  // Q2 nodes per side
    space.n_q2_nodes = nq2 * nq2;
    space.n_q1_nodes = (n + 1) * (n + 1);
    space.n_u = 2 * space.n_q2_nodes;
    space.n_p = space.n_q1_nodes;

    space.q2_nodes.reserve(static_cast<std::size_t>(space.n_q2_nodes));
    space.q2_node_on_boundary.reserve(static_cast<std::size_t>(space.n_q2_nodes));
    for (int j = 0; j < nq2; ++j) {
        for (int i = 0; i < nq2; ++i) {
            space.q2_nodes.push_back({0.5 * i / n, 0.5 * j / n});
            space.q2_node_on_boundary.push_back(i == 0 || i == 2 * n || j == 0 || j == 2 * n);
        }
    }

    space.cell_q2_nodes.reserve(mesh.cells.size());
    space.cell_q1_nodes.reserve(mesh.cells.size());
    for (int cell = 0; cell < mesh.num_cells(); ++cell) {
        const int cx = cell % n;
        const int cy = cell / n;
        std::array<int, 9> q2{};
        for (int iy = 0; iy < 3; ++iy) {
            for (int ix = 0; ix < 3; ++ix) {
                q2[iy * 3 + ix] = (2 * cy + iy) * nq2 + (2 * cx + ix);
            }
        }
        space.cell_q2_nodes.push_back(q2);
        space.cell_q1_nodes.push_back(mesh.cells[static_cast<std::size_t>(cell)]);
    }

    space.velocity_dof_on_boundary.assign(static_cast<std::size_t>(space.n_u), false);
    for (int node = 0; node < space.n_q2_nodes; ++node) {
        if (!space.q2_node_on_boundary[static_cast<std::size_t>(node)]) continue;
        for (int c = 0; c < 2; ++c) {
            const int dof = space.velocity_dof(c, node);
            space.velocity_dof_on_boundary[static_cast<std::size_t>(dof)] = true;
            space.boundary_velocity_dofs.push_back(dof);
        }
    }
    std::sort(space.boundary_velocity_dofs.begin(), space.boundary_velocity_dofs.end());
    return space;
}

Eigen::VectorXd interpolate_velocity(const TaylorHoodSpace& space, const VectorFunction& f) {
    Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.n_u);
    for (int node = 0; node < space.n_q2_nodes; ++node) {
        if (space.q2_node_on_boundary[static_cast<std::size_t>(node)]) continue;
        const auto value = f(space.q2_nodes[static_cast<std::size_t>(node)]);
        coeffs[space.velocity_dof(0, node)] = value[0];
        coeffs[space.velocity_dof(1, node)] = value[1];
    }
    return coeffs;
}

Eigen::VectorXd interpolate_pressure(const TaylorHoodSpace& space, const ScalarFunction& f) {
    Eigen::VectorXd coeffs(space.n_p);
    for (int node = 0; node < space.n_q1_nodes; ++node) {
        coeffs[node] = f(space.mesh.vertices[static_cast<std::size_t>(node)]);
    }
    return coeffs;
}

namespace {

// Locates the cell containing x and returns (cell index, local coordinates).
std::pair<int, std::array<double, 2>> locate(const StructuredQuadMesh& mesh,
                                             std::array<double, 2> x) {
    if (x[0] < 0.0 || x[0] > 1.0 || x[1] < 0.0 || x[1] > 1.0) {
        throw std::domain_error("eval: point outside the unit square");
    }
    const int n = mesh.n_cells_per_side;
    const int cx = std::min(static_cast<int>(x[0] * n), n - 1);
    const int cy = std::min(static_cast<int>(x[1] * n), n - 1);
    const double s = 1.0 / n;
    return {cy * n + cx, {(x[0] - cx * s) * n, (x[1] - cy * s) * n}};
}

}  // namespace

std::array<double, 2> eval_velocity_at(const TaylorHoodSpace& space,
                                       const Eigen::VectorXd& coeffs,
                                       std::array<double, 2> x) {
    const auto [cell, local] = locate(space.mesh, x);
    const auto shapes = eval_shape(ElementKind::Q2, local[0], local[1]);
    const auto& nodes = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
    std::array<double, 2> value{0.0, 0.0};
    for (int a = 0; a < 9; ++a) {
        value[0] += coeffs[space.velocity_dof(0, nodes[a])] * shapes.values[a];
        value[1] += coeffs[space.velocity_dof(1, nodes[a])] * shapes.values[a];
    }
    return value;
}

double eval_pressure_at(const TaylorHoodSpace& space,
                        const Eigen::VectorXd& coeffs,
                        std::array<double, 2> x) {
    const auto [cell, local] = locate(space.mesh, x);
    const auto shapes = eval_shape(ElementKind::Q1, local[0], local[1]);
    const auto& nodes = space.cell_q1_nodes[static_cast<std::size_t>(cell)];
    double value = 0.0;
    for (int a = 0; a < 4; ++a) {
        value += coeffs[nodes[a]] * shapes.values[a];
    }
    return value;
}

std::array<std::array<double, 2>, 2> eval_velocity_gradient_at(const TaylorHoodSpace& space,
                                                               const Eigen::VectorXd& coeffs,
                                                               std::array<double, 2> x) {
    const auto [cell, local] = locate(space.mesh, x);
    const auto shapes = eval_shape(ElementKind::Q2, local[0], local[1]);
    const auto& nodes = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
    // Reference gradients transform by the constant inverse Jacobian n*I.
    const double jinv = static_cast<double>(space.mesh.n_cells_per_side);
    std::array<std::array<double, 2>, 2> grad{{{0.0, 0.0}, {0.0, 0.0}}};
    for (int a = 0; a < 9; ++a) {
        const double gx = shapes.gradients[a][0] * jinv;
        const double gy = shapes.gradients[a][1] * jinv;
        const double c0 = coeffs[space.velocity_dof(0, nodes[a])];
        const double c1 = coeffs[space.velocity_dof(1, nodes[a])];
        grad[0][0] += c0 * gx;
        grad[0][1] += c0 * gy;
        grad[1][0] += c1 * gx;
        grad[1][1] += c1 * gy;
    }
    return grad;
}

std::array<double, 2> eval_pressure_gradient_at(const TaylorHoodSpace& space,
                                                const Eigen::VectorXd& coeffs,
                                                std::array<double, 2> x) {
    const auto [cell, local] = locate(space.mesh, x);
    const auto shapes = eval_shape(ElementKind::Q1, local[0], local[1]);
    const auto& nodes = space.cell_q1_nodes[static_cast<std::size_t>(cell)];
    const double jinv = static_cast<double>(space.mesh.n_cells_per_side);
    std::array<double, 2> grad{0.0, 0.0};
    for (int a = 0; a < 4; ++a) {
        grad[0] += coeffs[nodes[a]] * shapes.gradients[a][0] * jinv;
        grad[1] += coeffs[nodes[a]] * shapes.gradients[a][1] * jinv;
    }
    return grad;
}

}  // namespace ustokes
