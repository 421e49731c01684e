#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "ustokes/mesh.hpp"

namespace ustokes {

/// Element kinds of the Taylor-Hood pair: biquadratic velocity, bilinear pressure.
enum class ElementKind { Q1, Q2 };

/// Field selector for DOF-level operations on the mixed space.
enum class FieldComponent { velocity, pressure };

constexpr int num_element_nodes(ElementKind kind) {
    return kind == ElementKind::Q1 ? 4 : 9;
}

/// Shape function values and reference gradients at one reference point.
///
/// Reference cell is [0,1]^2.  Local node order:
///  - Q1: (0,0), (1,0), (1,1), (0,1) — counterclockwise, matching mesh cells.
///  - Q2: tensor lexicographic (x fastest) over {0, 1/2, 1}^2.
struct ShapeValues {
    std::array<double, 9> values{};
    std::array<std::array<double, 2>, 9> gradients{};
    int count = 0;
};

ShapeValues eval_shape(ElementKind kind, double xi, double eta);

/// Reference node coordinates in the local orders documented above.
std::array<double, 2> reference_node(ElementKind kind, int local_node);

/// Tensor-product Gauss quadrature on the reference cell [0,1]^2.
/// Weights sum to 1 (the reference cell area).
struct SpatialQuadrature {
    std::vector<std::array<double, 2>> points;
    std::vector<double> weights;

    int size() const { return static_cast<int>(points.size()); }
};

/// k-by-k Gauss rule, 1 <= k <= 6; exact for tensor polynomials of
/// per-axis degree <= 2k-1.  Throws std::invalid_argument otherwise.
SpatialQuadrature gauss_rule_2d(int points_per_axis);

/// k-point Gauss rule on [0,1] (weights sum to 1), any k >= 1; exact for
/// polynomials of degree <= 2k-1.  Used for time integration of errors.
struct LineQuadrature {
    std::vector<double> points;
    std::vector<double> weights;
};
LineQuadrature gauss_rule_1d(int num_points);

/// Taylor-Hood mixed space on a structured quad mesh: vector-valued Q2
/// velocity with homogeneous Dirichlet boundary values and Q1 pressure
/// with a zero-mean side constraint (enforced in the linear solver, not
/// eliminated here).
///
/// Velocity DOF layout is component-major: dof = component * n_q2_nodes + node,
/// with Q2 nodes numbered lexicographically (x fastest) on the (2n+1)^2 grid.
/// Pressure DOFs coincide with mesh vertices (lexicographic).
struct TaylorHoodSpace {
    StructuredQuadMesh mesh;

    int n_q2_nodes = 0;  ///< (2n+1)^2
    int n_q1_nodes = 0;  ///< (n+1)^2
    int n_u = 0;         ///< 2 * n_q2_nodes
    int n_p = 0;         ///< n_q1_nodes

    std::vector<std::array<double, 2>> q2_nodes;
    std::vector<std::array<int, 9>> cell_q2_nodes;  ///< per cell, Q2 local order
    std::vector<std::array<int, 4>> cell_q1_nodes;  ///< per cell, Q1 local order
    std::vector<bool> q2_node_on_boundary;
    std::vector<bool> velocity_dof_on_boundary;     ///< size n_u
    std::vector<int> boundary_velocity_dofs;        ///< sorted list

    int velocity_dof(int component, int q2_node) const {
        return component * n_q2_nodes + q2_node;
    }
};

TaylorHoodSpace make_taylor_hood_space(const StructuredQuadMesh& mesh);

using ScalarFunction = std::function<double(std::array<double, 2>)>;
using VectorFunction = std::function<std::array<double, 2>(std::array<double, 2>)>;

/// Nodal interpolation into the velocity space; boundary DOFs forced to 0.
Eigen::VectorXd interpolate_velocity(const TaylorHoodSpace& space, const VectorFunction& f);

/// Nodal interpolation into the pressure space (no mean correction here).
Eigen::VectorXd interpolate_pressure(const TaylorHoodSpace& space, const ScalarFunction& f);

/// Point evaluation of an FE function; throws std::domain_error outside [0,1]^2.
std::array<double, 2> eval_velocity_at(const TaylorHoodSpace& space,
                                       const Eigen::VectorXd& coeffs,
                                       std::array<double, 2> x);
double eval_pressure_at(const TaylorHoodSpace& space,
                        const Eigen::VectorXd& coeffs,
                        std::array<double, 2> x);

/// Gradient evaluation (rows = components for velocity): returns
/// [[du1/dx, du1/dy], [du2/dx, du2/dy]] resp. [dp/dx, dp/dy].
std::array<std::array<double, 2>, 2> eval_velocity_gradient_at(const TaylorHoodSpace& space,
                                                               const Eigen::VectorXd& coeffs,
                                                               std::array<double, 2> x);
std::array<double, 2> eval_pressure_gradient_at(const TaylorHoodSpace& space,
                                                const Eigen::VectorXd& coeffs,
                                                std::array<double, 2> x);

}  // namespace ustokes
