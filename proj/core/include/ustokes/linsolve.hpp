#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <Eigen/Core>

#include "ustokes/assembly.hpp"

namespace ustokes {

/// Thrown on singular factorizations and on residuals above tolerance.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Direct solver for the saddle-point systems every algorithm here reduces to:
///
///   [ K      s*B^T   0 ] [u]   [g]
///   [ s*B    0       m ] [p] = [0]
///   [ 0^T    m^T     0 ] [l]   [0]
///
/// with K = alpha*M_u + beta*A, s an optional pressure-block scale, and m the
/// pressure-mean vector whose scalar multiplier l pins the pressure to zero
/// discrete mean (the constant-pressure nullspace of B^T).
///
/// Sparse LU factorizations are cached per (alpha, beta, s): a uniform time
/// loop reuses one factorization for all steps, and the collocation
/// initialization reuses the mass-saddle factorization.
class SaddleSolver {
public:
    /// `ops` must be assembled with DirichletPolicy::Eliminate and must
    /// outlive the solver.  Tolerance bounds the relative residual of the
    /// full augmented system.
    explicit SaddleSolver(const StokesOperators& ops, double tolerance = 1e-10);

    struct Result {
        Eigen::VectorXd u;
        Eigen::VectorXd p;
        double lambda = 0.0;
        double rel_residual = 0.0;
    };

    /// Solves with K = alpha*M_u + beta*A.  Preconditions: alpha, beta >= 0,
    /// (alpha, beta) != (0, 0), pressure_scale > 0, g of length n_u with zero
    /// boundary entries.  Throws SolverError on singular factorization or if
    /// the relative residual exceeds the tolerance.
    Result solve(double alpha, double beta, const Eigen::VectorXd& g,
                 double pressure_scale = 1.0) const;

    double tolerance() const { return tolerance_; }
    std::size_t cached_factorizations() const;

private:
    struct Factorization;

    const Factorization& factorize(double alpha, double beta, double pressure_scale) const;

    const StokesOperators* ops_;
    double tolerance_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::tuple<double, double, double>, std::shared_ptr<Factorization>> cache_;
};

}  // namespace ustokes
