#include "ustokes/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace ustokes {

namespace {

constexpr double kPi = std::numbers::pi;

// Time-independent spatial profiles: u = U(x) sin(t), p = P(x) sin(t).
std::array<double, 2> profile_u(std::array<double, 2> x) {
    const double s1 = std::sin(kPi * x[0]);
    const double c1 = std::cos(kPi * x[0]);
    const double s2 = std::sin(kPi * x[1]);
    const double c2 = std::cos(kPi * x[1]);
    return {c2 * s1 * s1 * s2, -c1 * s2 * s2 * s1};
}

std::array<std::array<double, 2>, 2> profile_grad_u(std::array<double, 2> x) {
    const double s1 = std::sin(kPi * x[0]);
    const double s2 = std::sin(kPi * x[1]);
    const double s2x = std::sin(2.0 * kPi * x[0]);
    const double c2x = std::cos(2.0 * kPi * x[0]);
    const double s2y = std::sin(2.0 * kPi * x[1]);
    const double c2y = std::cos(2.0 * kPi * x[1]);
    // U1 = sin^2(pi x) * (1/2) sin(2 pi y), U2 = -sin^2(pi y) * (1/2) sin(2 pi x)
    return {{{0.5 * kPi * s2x * s2y, kPi * s1 * s1 * c2y},
             {-kPi * s2 * s2 * c2x, -0.5 * kPi * s2y * s2x}}};
}

std::array<double, 2> profile_lap_u(std::array<double, 2> x) {
    const double s2x = std::sin(2.0 * kPi * x[0]);
    const double c2x = std::cos(2.0 * kPi * x[0]);
    const double s2y = std::sin(2.0 * kPi * x[1]);
    const double c2y = std::cos(2.0 * kPi * x[1]);
    return {kPi * kPi * s2y * (2.0 * c2x - 1.0), -kPi * kPi * s2x * (2.0 * c2y - 1.0)};
}

double profile_p(std::array<double, 2> x) {
    return std::cos(kPi * x[1]) * std::sin(kPi * x[0]) * std::cos(kPi * x[0]) *
           std::sin(kPi * x[1]);
}

std::array<double, 2> profile_grad_p(std::array<double, 2> x) {
    // P = (1/4) sin(2 pi x) sin(2 pi y)
    const double s2x = std::sin(2.0 * kPi * x[0]);
    const double c2x = std::cos(2.0 * kPi * x[0]);
    const double s2y = std::sin(2.0 * kPi * x[1]);
    const double c2y = std::cos(2.0 * kPi * x[1]);
    return {0.5 * kPi * c2x * s2y, 0.5 * kPi * s2x * c2y};
}

}  // namespace

std::array<double, 2> ManufacturedSolution::velocity(std::array<double, 2> x,
                                                     double t) const {
    const auto u = profile_u(x);
    const double st = std::sin(t);
    return {u[0] * st, u[1] * st};
}

std::array<double, 2> ManufacturedSolution::velocity_dt(std::array<double, 2> x,
                                                        double t) const {
    const auto u = profile_u(x);
    const double ct = std::cos(t);
    return {u[0] * ct, u[1] * ct};
}

std::array<std::array<double, 2>, 2> ManufacturedSolution::velocity_gradient(
    std::array<double, 2> x, double t) const {
    auto g = profile_grad_u(x);
    const double st = std::sin(t);
    for (auto& row : g) {
        row[0] *= st;
        row[1] *= st;
    }
    return g;
}

std::array<std::array<double, 2>, 2> ManufacturedSolution::velocity_dt_gradient(
    std::array<double, 2> x, double t) const {
    auto g = profile_grad_u(x);
    const double ct = std::cos(t);
    for (auto& row : g) {
        row[0] *= ct;
        row[1] *= ct;
    }
    return g;
}

double ManufacturedSolution::pressure(std::array<double, 2> x, double t) const {
    return profile_p(x) * std::sin(t);
}

std::array<double, 2> ManufacturedSolution::pressure_gradient(std::array<double, 2> x,
                                                              double t) const {
    const auto g = profile_grad_p(x);
    const double st = std::sin(t);
    return {g[0] * st, g[1] * st};
}

std::array<double, 2> ManufacturedSolution::forcing(std::array<double, 2> x,
                                                    double t) const {
    const auto u = profile_u(x);
    const auto lap = profile_lap_u(x);
    const auto gp = profile_grad_p(x);
    const double st = std::sin(t);
    const double ct = std::cos(t);
    return {u[0] * ct - lap[0] * st + gp[0] * st, u[1] * ct - lap[1] * st + gp[1] * st};
}

TimeDependentField ManufacturedSolution::forcing_field() const {
    return [ms = *this](std::array<double, 2> x, double t) { return ms.forcing(x, t); };
}

VectorFieldWithGradient ManufacturedSolution::initial_data_field() const {
    return VectorFieldWithGradient{
        [](std::array<double, 2> x) { return profile_u(x); },
        [](std::array<double, 2> x) { return profile_grad_u(x); }};
}

}  // namespace ustokes
