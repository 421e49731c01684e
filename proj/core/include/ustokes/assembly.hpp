#pragma once

#include <functional>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ustokes/fem_space.hpp"

namespace ustokes {

/// Compressed-row sparse matrix: outer index = row offsets, inner indices
/// sorted (strictly increasing) within each row.
using CsrMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Whether assembled operators incorporate the homogeneous Dirichlet
/// elimination on boundary velocity DOFs (identity row, zero coupling).
/// `None` yields the raw Galerkin matrices (used by consistency checks).
enum class DirichletPolicy { Eliminate, None };

/// Discrete Stokes operators on a Taylor-Hood space:
///   velocity mass M_u, velocity stiffness A (from a(u,v) = <grad u, grad v>),
///   divergence B (from b(v,q) = -<div v, q>, pressure-by-velocity),
///   pressure mass M_p, and the pressure-mean vector with entries
///   integral of psi_j over the domain.
struct StokesOperators {
    CsrMatrix velocity_mass;       ///< n_u x n_u
    CsrMatrix velocity_stiffness;  ///< n_u x n_u
    CsrMatrix divergence;          ///< n_p x n_u
    CsrMatrix pressure_mass;       ///< n_p x n_p
    Eigen::VectorXd pressure_mean; ///< length n_p

    int n_u = 0;
    int n_p = 0;
    DirichletPolicy policy = DirichletPolicy::Eliminate;
    std::vector<bool> velocity_dof_on_boundary;
};

/// Assembles all Stokes operators.  Requires >= 3 quadrature points per
/// axis so every integrand (Q2 x Q2 products on affine cells) is exact.
StokesOperators assemble_operators(const TaylorHoodSpace& space,
                                   const SpatialQuadrature& quad,
                                   DirichletPolicy policy = DirichletPolicy::Eliminate);

/// Load vector with entries integral of f . phi_i; boundary velocity DOF
/// entries are zeroed under DirichletPolicy::Eliminate.
Eigen::VectorXd assemble_load(const TaylorHoodSpace& space,
                              const SpatialQuadrature& quad,
                              const VectorFunction& f,
                              DirichletPolicy policy = DirichletPolicy::Eliminate);

/// Gradient-form load with entries integral of grad(g_c) . grad(phi_k) for
/// velocity DOF (c, k); g_gradient(x) returns rows grad(g_1), grad(g_2).
/// Boundary entries zeroed under Eliminate.
using MatrixFunction = std::function<std::array<std::array<double, 2>, 2>(std::array<double, 2>)>;
Eigen::VectorXd assemble_gradient_load(const TaylorHoodSpace& space,
                                       const SpatialQuadrature& quad,
                                       const MatrixFunction& g_gradient,
                                       DirichletPolicy policy = DirichletPolicy::Eliminate);

/// Scalar single-field mass/stiffness matrices (no boundary treatment);
/// used by element-level verification and available for diagnostics.
CsrMatrix assemble_scalar_mass(const TaylorHoodSpace& space, ElementKind kind,
                               const SpatialQuadrature& quad);
CsrMatrix assemble_scalar_stiffness(const TaylorHoodSpace& space, ElementKind kind,
                                    const SpatialQuadrature& quad);

}  // namespace ustokes
