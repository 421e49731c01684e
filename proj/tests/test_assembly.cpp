#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "ustokes/assembly.hpp"
#include "ustokes/manufactured.hpp"
#include "ustokes/mesh.hpp"
#include "oracles.hpp"

namespace {

using namespace ustokes;
using ustokes::testing::random_interior_vector;

TEST(ScalarAssembly, Q1UnitCellMassEntries) {
    // Single unit cell: vertex 0 = (0,0), 1 = (1,0), 2 = (0,1), 3 = (1,1).
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(1));
    const CsrMatrix mass = assemble_scalar_mass(space, ElementKind::Q1, gauss_rule_2d(3));
    EXPECT_NEAR(mass.coeff(0, 0), 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(mass.coeff(0, 1), 1.0 / 18.0, 1e-15);  // edge neighbor
    EXPECT_NEAR(mass.coeff(0, 2), 1.0 / 18.0, 1e-15);  // edge neighbor
    EXPECT_NEAR(mass.coeff(0, 3), 1.0 / 36.0, 1e-15);  // opposite corner
}

TEST(ScalarAssembly, Q1UnitCellStiffnessEntries) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(1));
    const CsrMatrix k = assemble_scalar_stiffness(space, ElementKind::Q1, gauss_rule_2d(3));
    EXPECT_NEAR(k.coeff(0, 0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(k.coeff(0, 1), -1.0 / 6.0, 1e-15);   // edge neighbor
    EXPECT_NEAR(k.coeff(0, 2), -1.0 / 6.0, 1e-15);   // edge neighbor
    EXPECT_NEAR(k.coeff(0, 3), -1.0 / 3.0, 1e-15);   // opposite corner
}

TEST(ScalarAssembly, Q2MassTotalIsArea) {
    // Sum over all entries equals the squared integral of the partition of
    // unity, i.e. the domain area.
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const CsrMatrix mass = assemble_scalar_mass(space, ElementKind::Q2, gauss_rule_2d(3));
    EXPECT_NEAR(Eigen::MatrixXd(mass).sum(), 1.0, 1e-13);
}

TEST(Operators, SymmetryMeanVectorAndTotals) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const SpatialQuadrature quad = gauss_rule_2d(3);

    const StokesOperators raw = assemble_operators(space, quad, DirichletPolicy::None);
    EXPECT_NEAR(Eigen::MatrixXd(raw.velocity_mass).sum(), 2.0, 1e-13);

    const StokesOperators ops = assemble_operators(space, quad);
    for (const CsrMatrix* m :
         {&ops.velocity_mass, &ops.velocity_stiffness, &ops.pressure_mass}) {
        const Eigen::MatrixXd d = Eigen::MatrixXd(*m);
        EXPECT_LE((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-13 * d.cwiseAbs().maxCoeff());
    }

    // The mean vector integrates the constant pressure to the domain area.
    EXPECT_NEAR(ops.pressure_mean.sum(), 1.0, 1e-13);

    // The constant pressure is annihilated by the eliminated divergence.
    const Eigen::RowVectorXd ones = Eigen::RowVectorXd::Ones(ops.n_p);
    EXPECT_LE((ones * Eigen::MatrixXd(ops.divergence)).cwiseAbs().maxCoeff(), 1e-12);

    // Boundary rows of the eliminated mass/stiffness are identity rows.
    const int bdof = space.boundary_velocity_dofs.front();
    EXPECT_DOUBLE_EQ(ops.velocity_stiffness.coeff(bdof, bdof), 1.0);
    EXPECT_DOUBLE_EQ(Eigen::MatrixXd(ops.velocity_stiffness).row(bdof).sum(), 1.0);
}

TEST(Operators, StiffnessPositiveDefinite) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const StokesOperators ops = assemble_operators(space, gauss_rule_2d(3));
    const Eigen::MatrixXd a = Eigen::MatrixXd(ops.velocity_stiffness);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (a + a.transpose()));
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

// Independent cell-by-cell evaluation of the bilinear forms on random FE
// functions, using only the point evaluators.
TEST(Operators, BilinearFormConsistency) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const SpatialQuadrature quad = gauss_rule_2d(4);
    const StokesOperators ops = assemble_operators(space, quad);

    std::mt19937 gen(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd v = random_interior_vector(ops, 21);
    Eigen::VectorXd w = random_interior_vector(ops, 22);
    Eigen::VectorXd q(ops.n_p);
    for (int i = 0; i < ops.n_p; ++i) q(i) = dist(gen);

    const double cell_area = space.mesh.cell_side() * space.mesh.cell_side();
    double a_vw = 0.0;
    double b_vq = 0.0;
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto origin = space.mesh.cell_origin(cell);
        for (int k = 0; k < quad.size(); ++k) {
            const auto& ref = quad.points[static_cast<std::size_t>(k)];
            const std::array<double, 2> x = {
                origin[0] + space.mesh.cell_side() * ref[0],
                origin[1] + space.mesh.cell_side() * ref[1]};
            const double wq = quad.weights[static_cast<std::size_t>(k)] * cell_area;
            const auto gv = eval_velocity_gradient_at(space, v, x);
            const auto gw = eval_velocity_gradient_at(space, w, x);
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) a_vw += wq * gv[r][c] * gw[r][c];
            }
            const double div_v = gv[0][0] + gv[1][1];
            b_vq += wq * (-div_v) * eval_pressure_at(space, q, x);
        }
    }

    const double a_mat = v.dot(ops.velocity_stiffness * w);
    EXPECT_NEAR(a_mat, a_vw, 1e-12 * std::abs(a_vw));
    const double b_mat = q.dot(ops.divergence * v);
    EXPECT_NEAR(b_mat, b_vq, 1e-12 * std::max(1.0, std::abs(b_vq)));
}

TEST(Loads, ZeroAndConstantFields) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const SpatialQuadrature quad = gauss_rule_2d(5);

    const Eigen::VectorXd zero = assemble_load(
        space, quad, [](std::array<double, 2>) { return std::array<double, 2>{0.0, 0.0}; });
    EXPECT_TRUE((zero.array() == 0.0).all());

    // Without boundary elimination, the x-component entries of the load for
    // f = (1, 0) sum to the domain area by partition of unity.
    const Eigen::VectorXd unit = assemble_load(
        space, quad, [](std::array<double, 2>) { return std::array<double, 2>{1.0, 0.0}; },
        DirichletPolicy::None);
    EXPECT_NEAR(unit.head(space.n_q2_nodes).sum(), 1.0, 1e-13);
    EXPECT_TRUE((unit.tail(space.n_q2_nodes).array() == 0.0).all());

    // With elimination, boundary entries are zeroed.
    const Eigen::VectorXd elim = assemble_load(
        space, quad, [](std::array<double, 2>) { return std::array<double, 2>{1.0, 0.0}; });
    for (int dof : space.boundary_velocity_dofs) EXPECT_EQ(elim(dof), 0.0);
}

// Independent dense re-assembly of the manufactured load with direct shape
// evaluation (no sparsity machinery), on the same quadrature points.
TEST(Loads, ManufacturedLoadMatchesDirectAssembly) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const SpatialQuadrature quad = gauss_rule_2d(5);
    const ManufacturedSolution ms;
    const auto f = [&](std::array<double, 2> x) { return ms.forcing(x, 0.7); };

    const Eigen::VectorXd load = assemble_load(space, quad, f, DirichletPolicy::None);

    Eigen::VectorXd direct = Eigen::VectorXd::Zero(space.n_u);
    const double cell_area = space.mesh.cell_side() * space.mesh.cell_side();
    for (int cell = 0; cell < space.mesh.num_cells(); ++cell) {
        const auto origin = space.mesh.cell_origin(cell);
        const auto& nodes = space.cell_q2_nodes[static_cast<std::size_t>(cell)];
        for (int k = 0; k < quad.size(); ++k) {
            const auto& ref = quad.points[static_cast<std::size_t>(k)];
            const std::array<double, 2> x = {
                origin[0] + space.mesh.cell_side() * ref[0],
                origin[1] + space.mesh.cell_side() * ref[1]};
            const double wq = quad.weights[static_cast<std::size_t>(k)] * cell_area;
            const ShapeValues shapes = eval_shape(ElementKind::Q2, ref[0], ref[1]);
            const auto fx = f(x);
            for (int local = 0; local < shapes.count; ++local) {
                for (int c = 0; c < 2; ++c) {
                    direct(space.velocity_dof(c, nodes[static_cast<std::size_t>(local)])) +=
                        wq * fx[static_cast<std::size_t>(c)] *
                        shapes.values[static_cast<std::size_t>(local)];
                }
            }
        }
    }

    const double scale = load.lpNorm<Eigen::Infinity>();
    EXPECT_GT(scale, 0.0);
    EXPECT_LE((load - direct).lpNorm<Eigen::Infinity>(), 1e-12 * scale);
}

TEST(Loads, GradientLoadZeroForConstantField) {
    const TaylorHoodSpace space = make_taylor_hood_space(build_unit_square(2));
    const Eigen::VectorXd g = assemble_gradient_load(
        space, gauss_rule_2d(5), [](std::array<double, 2>) {
            return std::array<std::array<double, 2>, 2>{{{0.0, 0.0}, {0.0, 0.0}}};
        });
    EXPECT_TRUE((g.array() == 0.0).all());
}

}  // namespace
