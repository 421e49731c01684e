#include "ustokes/linsolve.hpp"

#include <vector>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace ustokes {

struct SaddleSolver::Factorization {
    Eigen::SparseMatrix<double> matrix;  // augmented system, column-major for LU
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

SaddleSolver::SaddleSolver(const StokesOperators& ops, double tolerance)
    : ops_(&ops), tolerance_(tolerance) {
    if (ops.policy != DirichletPolicy::Eliminate) {
        throw std::invalid_argument(
            "SaddleSolver: operators must be assembled with DirichletPolicy::Eliminate");
    }
    if (tolerance <= 0.0) {
        throw std::invalid_argument("SaddleSolver: tolerance must be positive");
    }
}

const SaddleSolver::Factorization& SaddleSolver::factorize(double alpha, double beta,
                                                           double pressure_scale) const {
    const auto key = std::make_tuple(alpha, beta, pressure_scale);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;

    const int n_u = ops_->n_u;
    const int n_p = ops_->n_p;
    const int dim = n_u + n_p + 1;

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(ops_->velocity_mass.nonZeros()) +
                     static_cast<std::size_t>(ops_->velocity_stiffness.nonZeros()) +
                     2 * static_cast<std::size_t>(ops_->divergence.nonZeros()) + 2 * n_p);

    const CsrMatrix k_block =
        alpha * ops_->velocity_mass + beta * ops_->velocity_stiffness;
    for (int row = 0; row < k_block.outerSize(); ++row) {
        for (CsrMatrix::InnerIterator it2(k_block, row); it2; ++it2) {
            triplets.emplace_back(row, static_cast<int>(it2.col()), it2.value());
        }
    }
    for (int row = 0; row < ops_->divergence.outerSize(); ++row) {
        for (CsrMatrix::InnerIterator it2(ops_->divergence, row); it2; ++it2) {
            const double v = pressure_scale * it2.value();
            triplets.emplace_back(n_u + row, static_cast<int>(it2.col()), v);
            triplets.emplace_back(static_cast<int>(it2.col()), n_u + row, v);
        }
    }
    for (int j = 0; j < n_p; ++j) {
        triplets.emplace_back(n_u + n_p, n_u + j, ops_->pressure_mean[j]);
        triplets.emplace_back(n_u + j, n_u + n_p, ops_->pressure_mean[j]);
    }

    auto fact = std::make_shared<Factorization>();
    fact->matrix.resize(dim, dim);
    fact->matrix.setFromTriplets(triplets.begin(), triplets.end());
    fact->matrix.makeCompressed();
    fact->lu.compute(fact->matrix);
    if (fact->lu.info() != Eigen::Success) {
        throw SolverError("SaddleSolver: singular factorization (inf-sup failure or malformed operators)");
    }
    auto [pos, inserted] = cache_.emplace(key, std::move(fact));
    (void)inserted;
    return *pos->second;
}

SaddleSolver::Result SaddleSolver::solve(double alpha, double beta,
                                         const Eigen::VectorXd& g,
                                         double pressure_scale) const {
    if (alpha < 0.0 || beta < 0.0 || (alpha == 0.0 && beta == 0.0)) {
        throw std::invalid_argument("SaddleSolver::solve: need alpha, beta >= 0 and not both zero");
    }
    if (pressure_scale <= 0.0) {
        throw std::invalid_argument("SaddleSolver::solve: pressure_scale must be positive");
    }
    if (g.size() != ops_->n_u) {
        throw std::invalid_argument("SaddleSolver::solve: right-hand side has wrong length");
    }

    const int n_u = ops_->n_u;
    const int n_p = ops_->n_p;

    Result result;
    const double g_norm = g.norm();
    if (g_norm == 0.0) {
        result.u = Eigen::VectorXd::Zero(n_u);
        result.p = Eigen::VectorXd::Zero(n_p);
        return result;
    }

    const Factorization& fact = factorize(alpha, beta, pressure_scale);

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_u + n_p + 1);
    rhs.head(n_u) = g;
    const Eigen::VectorXd x = fact.lu.solve(rhs);
    if (fact.lu.info() != Eigen::Success) {
        throw SolverError("SaddleSolver: back substitution failed");
    }

    result.rel_residual = (fact.matrix * x - rhs).norm() / g_norm;
    if (!(result.rel_residual <= tolerance_)) {
        throw SolverError("SaddleSolver: relative residual " +
                          std::to_string(result.rel_residual) + " above tolerance");
    }

    result.u = x.head(n_u);
    result.p = x.segment(n_u, n_p);
    result.lambda = x[n_u + n_p];
    return result;
}

std::size_t SaddleSolver::cached_factorizations() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return cache_.size();
}

}  // namespace ustokes
