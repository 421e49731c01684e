#pragma once

#include <array>

#include "ustokes/timestepping.hpp"

namespace ustokes {

/// Closed-form divergence-free reference solution on (0,1)^2 x (0,2]:
///
///   u(x,t) = ( cos(pi x2) sin^2(pi x1) sin(pi x2) sin(t),
///             -cos(pi x1) sin^2(pi x2) sin(pi x1) sin(t) )
///   p(x,t) =   cos(pi x2) sin(pi x1) cos(pi x1) sin(pi x2) sin(t)
///
/// with forcing f = dt(u) - lap(u) + grad(p).  Both u and p vanish at t = 0,
/// u has zero boundary trace, div(u) = 0, and p has zero mean for all t.
struct ManufacturedSolution {
    static constexpr double T = 2.0;

    std::array<double, 2> velocity(std::array<double, 2> x, double t) const;
    std::array<double, 2> velocity_dt(std::array<double, 2> x, double t) const;
    std::array<std::array<double, 2>, 2> velocity_gradient(std::array<double, 2> x,
                                                           double t) const;
    std::array<std::array<double, 2>, 2> velocity_dt_gradient(std::array<double, 2> x,
                                                              double t) const;
    double pressure(std::array<double, 2> x, double t) const;
    std::array<double, 2> pressure_gradient(std::array<double, 2> x, double t) const;
    std::array<double, 2> forcing(std::array<double, 2> x, double t) const;

    /// Forcing as a time-dependent field closure for the time march.
    TimeDependentField forcing_field() const;

    /// The stationary-data bundle f(.,0) + lap u(.,0) = dt(u)(.,0) with its
    /// gradient (grad p vanishes at t = 0), as needed by the discrete
    /// initial-acceleration problem.
    VectorFieldWithGradient initial_data_field() const;
};

}  // namespace ustokes
