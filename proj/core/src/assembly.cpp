#include "ustokes/assembly.hpp"

#include <vector>

namespace ustokes {

namespace {

using Triplet = Eigen::Triplet<double>;

// Shape values/gradients pre-evaluated at every quadrature point.
struct ShapeTable {
    std::vector<ShapeValues> at_point;
    int nodes = 0;

    ShapeTable(ElementKind kind, const SpatialQuadrature& quad) {
        nodes = num_element_nodes(kind);
        at_point.reserve(quad.points.size());
        for (const auto& p : quad.points) {
            at_point.push_back(eval_shape(kind, p[0], p[1]));
        }
    }
};

// Cell-local scalar mass/stiffness on a square cell of side s.
// detJ = s^2; physical gradients are reference gradients scaled by 1/s.
void local_mass(const ShapeTable& table, const SpatialQuadrature& quad, double s,
                double* loc, int n) {
    const double detj = s * s;
    std::fill(loc, loc + n * n, 0.0);
    for (int q = 0; q < quad.size(); ++q) {
        const auto& sv = table.at_point[static_cast<std::size_t>(q)];
        const double wq = quad.weights[static_cast<std::size_t>(q)] * detj;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                loc[a * n + b] += wq * sv.values[a] * sv.values[b];
            }
        }
    }
}

void local_stiffness(const ShapeTable& table, const SpatialQuadrature& quad, double s,
                     double* loc, int n) {
    // detJ * (1/s)^2 = 1 on square cells, so reference gradients are used as-is.
    (void)s;
    std::fill(loc, loc + n * n, 0.0);
    for (int q = 0; q < quad.size(); ++q) {
        const auto& sv = table.at_point[static_cast<std::size_t>(q)];
        const double wq = quad.weights[static_cast<std::size_t>(q)];
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                loc[a * n + b] += wq * (sv.gradients[a][0] * sv.gradients[b][0] +
                                        sv.gradients[a][1] * sv.gradients[b][1]);
            }
        }
    }
}

CsrMatrix scalar_matrix(const TaylorHoodSpace& space, ElementKind kind,
                        const SpatialQuadrature& quad, bool stiffness) {
    const ShapeTable table(kind, quad);
    const int n = table.nodes;
    const int dim = kind == ElementKind::Q1 ? space.n_q1_nodes : space.n_q2_nodes;
    const double s = space.mesh.cell_side();

    std::vector<double> loc(static_cast<std::size_t>(n) * n);
    if (stiffness) {
        local_stiffness(table, quad, s, loc.data(), n);
    } else {
        local_mass(table, quad, s, loc.data(), n);
    }

    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(space.mesh.num_cells()) * n * n);
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        for (int a = 0; a < n; ++a) {
            const int ga = kind == ElementKind::Q1
                               ? space.cell_q1_nodes[static_cast<std::size_t>(cell)][a]
                               : space.cell_q2_nodes[static_cast<std::size_t>(cell)][a];
            for (int b = 0; b < n; ++b) {
                const int gb = kind == ElementKind::Q1
                                   ? space.cell_q1_nodes[static_cast<std::size_t>(cell)][b]
                                   : space.cell_q2_nodes[static_cast<std::size_t>(cell)][b];
                triplets.emplace_back(ga, gb, loc[static_cast<std::size_t>(a) * n + b]);
            }
        }
    }
    CsrMatrix m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

// Expands a scalar Q2 matrix into the two-component velocity matrix with
// optional Dirichlet elimination (identity rows, zero coupling).
CsrMatrix expand_velocity(const TaylorHoodSpace& space, const CsrMatrix& scalar,
                          DirichletPolicy policy) {
    std::vector<Triplet> triplets;
    triplets.reserve(2 * static_cast<std::size_t>(scalar.nonZeros()) +
                     space.boundary_velocity_dofs.size());
    const bool eliminate = policy == DirichletPolicy::Eliminate;
    for (int c = 0; c < 2; ++c) {
        for (int row = 0; row < scalar.outerSize(); ++row) {
            const int grow = space.velocity_dof(c, row);
            const bool row_bdry = space.velocity_dof_on_boundary[static_cast<std::size_t>(grow)];
            for (CsrMatrix::InnerIterator it(scalar, row); it; ++it) {
                const int gcol = space.velocity_dof(c, static_cast<int>(it.col()));
                const bool col_bdry =
                    space.velocity_dof_on_boundary[static_cast<std::size_t>(gcol)];
                if (eliminate && (row_bdry || col_bdry)) continue;
                triplets.emplace_back(grow, gcol, it.value());
            }
        }
    }
    if (eliminate) {
        for (int dof : space.boundary_velocity_dofs) {
            triplets.emplace_back(dof, dof, 1.0);
        }
    }
    CsrMatrix m(space.n_u, space.n_u);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

}  // namespace

CsrMatrix assemble_scalar_mass(const TaylorHoodSpace& space, ElementKind kind,
                               const SpatialQuadrature& quad) {
    return scalar_matrix(space, kind, quad, /*stiffness=*/false);
}

CsrMatrix assemble_scalar_stiffness(const TaylorHoodSpace& space, ElementKind kind,
                                    const SpatialQuadrature& quad) {
    return scalar_matrix(space, kind, quad, /*stiffness=*/true);
}

StokesOperators assemble_operators(const TaylorHoodSpace& space,
                                   const SpatialQuadrature& quad,
                                   DirichletPolicy policy) {
    StokesOperators ops;
    ops.n_u = space.n_u;
    ops.n_p = space.n_p;
    ops.policy = policy;
    ops.velocity_dof_on_boundary = space.velocity_dof_on_boundary;

    ops.velocity_mass =
        expand_velocity(space, assemble_scalar_mass(space, ElementKind::Q2, quad), policy);
    ops.velocity_stiffness =
        expand_velocity(space, assemble_scalar_stiffness(space, ElementKind::Q2, quad), policy);
    ops.pressure_mass = assemble_scalar_mass(space, ElementKind::Q1, quad);

    // Divergence B[j, (c,k)] = -integral of psi_j * d(phi_k)/dx_c.
    // On a square cell of side s: detJ * (1/s) = s.
    const ShapeTable q1_table(ElementKind::Q1, quad);
    const ShapeTable q2_table(ElementKind::Q2, quad);
    const double s = space.mesh.cell_side();
    const bool eliminate = policy == DirichletPolicy::Eliminate;

    std::vector<Triplet> btrip;
    btrip.reserve(static_cast<std::size_t>(space.mesh.num_cells()) * 4 * 9 * 2);
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto& q1n = space.cell_q1_nodes[static_cast<std::size_t>(cell)];
        const auto& q2n = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
        double loc[4][9][2] = {};
        for (int q = 0; q < quad.size(); ++q) {
            const auto& sv1 = q1_table.at_point[static_cast<std::size_t>(q)];
            const auto& sv2 = q2_table.at_point[static_cast<std::size_t>(q)];
            const double wq = quad.weights[static_cast<std::size_t>(q)] * s;
            for (int a = 0; a < 4; ++a) {
                const double wpsi = wq * sv1.values[a];
                for (int b = 0; b < 9; ++b) {
                    loc[a][b][0] -= wpsi * sv2.gradients[b][0];
                    loc[a][b][1] -= wpsi * sv2.gradients[b][1];
                }
            }
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 9; ++b) {
                for (int c = 0; c < 2; ++c) {
                    const int dof = space.velocity_dof(c, q2n[b]);
                    if (eliminate &&
                        space.velocity_dof_on_boundary[static_cast<std::size_t>(dof)]) {
                        continue;
                    }
                    btrip.emplace_back(q1n[a], dof, loc[a][b][c]);
                }
            }
        }
    }
    ops.divergence = CsrMatrix(space.n_p, space.n_u);
    ops.divergence.setFromTriplets(btrip.begin(), btrip.end());
    ops.divergence.makeCompressed();

    // Pressure-mean vector: integral of each Q1 basis function.
    ops.pressure_mean = Eigen::VectorXd::Zero(space.n_p);
    const double detj = s * s;
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto& q1n = space.cell_q1_nodes[static_cast<std::size_t>(cell)];
        for (int q = 0; q < quad.size(); ++q) {
            const auto& sv1 = q1_table.at_point[static_cast<std::size_t>(q)];
            const double wq = quad.weights[static_cast<std::size_t>(q)] * detj;
            for (int a = 0; a < 4; ++a) {
                ops.pressure_mean[q1n[a]] += wq * sv1.values[a];
            }
        }
    }
    return ops;
}

Eigen::VectorXd assemble_load(const TaylorHoodSpace& space,
                              const SpatialQuadrature& quad,
                              const VectorFunction& f,
                              DirichletPolicy policy) {
    const ShapeTable q2_table(ElementKind::Q2, quad);
    const double s = space.mesh.cell_side();
    const double detj = s * s;

    Eigen::VectorXd load = Eigen::VectorXd::Zero(space.n_u);
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto origin = space.mesh.cell_origin(cell);
        const auto& q2n = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
        for (int q = 0; q < quad.size(); ++q) {
            const auto& p = quad.points[static_cast<std::size_t>(q)];
            const auto value = f({origin[0] + s * p[0], origin[1] + s * p[1]});
            const auto& sv = q2_table.at_point[static_cast<std::size_t>(q)];
            const double wq = quad.weights[static_cast<std::size_t>(q)] * detj;
            for (int b = 0; b < 9; ++b) {
                const double wphi = wq * sv.values[b];
                load[space.velocity_dof(0, q2n[b])] += wphi * value[0];
                load[space.velocity_dof(1, q2n[b])] += wphi * value[1];
            }
        }
    }
    if (policy == DirichletPolicy::Eliminate) {
        for (int dof : space.boundary_velocity_dofs) load[dof] = 0.0;
    }
    return load;
}

Eigen::VectorXd assemble_gradient_load(const TaylorHoodSpace& space,
                                       const SpatialQuadrature& quad,
                                       const MatrixFunction& g_gradient,
                                       DirichletPolicy policy) {
    const ShapeTable q2_table(ElementKind::Q2, quad);
    const double s = space.mesh.cell_side();
    // detJ * (1/s) = s for one physical gradient factor on the test function.
    Eigen::VectorXd load = Eigen::VectorXd::Zero(space.n_u);
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto origin = space.mesh.cell_origin(cell);
        const auto& q2n = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
        for (int q = 0; q < quad.size(); ++q) {
            const auto& p = quad.points[static_cast<std::size_t>(q)];
            const auto grad = g_gradient({origin[0] + s * p[0], origin[1] + s * p[1]});
            const auto& sv = q2_table.at_point[static_cast<std::size_t>(q)];
            const double wq = quad.weights[static_cast<std::size_t>(q)] * s;
            for (int b = 0; b < 9; ++b) {
                const double gx = sv.gradients[b][0];
                const double gy = sv.gradients[b][1];
                load[space.velocity_dof(0, q2n[b])] += wq * (grad[0][0] * gx + grad[0][1] * gy);
                load[space.velocity_dof(1, q2n[b])] += wq * (grad[1][0] * gx + grad[1][1] * gy);
            }
        }
    }
    if (policy == DirichletPolicy::Eliminate) {
        for (int dof : space.boundary_velocity_dofs) load[dof] = 0.0;
    }
    return load;
}

}  // namespace ustokes
