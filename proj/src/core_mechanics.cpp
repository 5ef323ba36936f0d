#include "rkp/core_mechanics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rkp::mech {

namespace {
constexpr double kCollisionRadius = 1e-13;
constexpr double kCriticalJacobi = 1.5;
}  // namespace

CartesianState::CartesianState(const Vec2& q_, const Vec2& p_) : q(q_), p(p_) {
    if (!(q.norm() >= kCollisionRadius))
        throw std::invalid_argument("CartesianState: collision state (|q| ~ 0) rejected");
}

PolarState::PolarState(double x_, double y_, double r_, double t_)
    : x(x_), y(y_), r(r_), t(t_) {
    if (!(x > 0.0)) throw std::invalid_argument("PolarState: radius x must be positive");
}

EnergyTriple EnergyTriple::of(const CartesianState& s) {
    return EnergyTriple(rkp::mech::kepler_energy(s), rkp::mech::angular_momentum(s));
}

double kepler_energy(const CartesianState& s) {
    return 0.5 * s.p.dot(s.p) - 1.0 / s.q.norm();
}

double angular_momentum(const CartesianState& s) {
    return s.q.x * s.p.y - s.q.y * s.p.x;
}

double eccentricity(double E, double L) {
    const double rad = 2.0 * E * L * L + 1.0;
    if (rad < -1e-12)
        throw std::invalid_argument("eccentricity: 2EL^2+1 < -1e-12, inconsistent (E, L)");
    return std::sqrt(std::max(0.0, rad));
}

double kepler_period(double E) {
    if (!(E < 0.0)) throw std::invalid_argument("kepler_period: requires E < 0");
    return 2.0 * std::numbers::pi / std::pow(-2.0 * E, 1.5);
}

double rotating_hamiltonian(const CartesianState& s) {
    return kepler_energy(s) + angular_momentum(s);
}

double rotating_hamiltonian_mechanical(const CartesianState& s) {
    const double a = s.p.x - s.q.y;
    const double b = s.p.y + s.q.x;
    return 0.5 * (a * a + b * b) + effective_potential(s.q.norm());
}

double effective_potential(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("effective_potential: radius must be > 0");
    return -1.0 / radius - 0.5 * radius * radius;
}

namespace {

// Bracketed bisection for U(rho) = -c on [lo, hi]; assumes a sign change.
double bisect_potential(double c, double lo, double hi) {
    auto f = [c](double rho) { return effective_potential(rho) + c; };
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> hill_region_radii(double c) {
    if (!(c > kCriticalJacobi))
        throw std::invalid_argument("hill_region_radii: requires c > 3/2");
    // U has its unique maximum -3/2 at rho = 1, so for c > 3/2 there is one
    // root on each side of 1.
    double lo = 1.0 / (c + 1.0);
    while (effective_potential(lo) > -c) lo *= 0.5;
    const double inner = bisect_potential(c, lo, 1.0);
    double hi = std::sqrt(2.0 * c) + 2.0;
    while (effective_potential(hi) > -c) hi *= 2.0;
    const double outer = bisect_potential(c, 1.0, hi);
    return {inner, outer};
}

HillRegion hill_region_classify(double c, double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("hill_region_classify: radius must be > 0");
    if (c <= kCriticalJacobi) return HillRegion::AllowedEverywhere;
    const auto [inner, outer] = hill_region_radii(c);
    if (radius <= inner) return HillRegion::Bounded;
    if (radius >= outer) return HillRegion::Unbounded;
    return HillRegion::Forbidden;
}

double moser_energy(const CartesianState& s, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("moser_energy: requires k > 0");
    return 0.5 * (s.p.dot(s.p) + 2.0 * k) * s.q.norm();
}

PolarState to_polar(const CartesianState& s) {
    const double x = s.q.norm();
    const double y = std::atan2(s.q.y, s.q.x);
    const double r = s.p.dot(s.q) / x;
    const double t = angular_momentum(s);
    return PolarState(x, y, r, t);
}

CartesianState from_polar(const PolarState& s) {
    const double cy = std::cos(s.y), sy = std::sin(s.y);
    const Vec2 q{s.x * cy, s.x * sy};
    const Vec2 p{s.r * cy - (s.t / s.x) * sy, s.r * sy + (s.t / s.x) * cy};
    return CartesianState(q, p);
}

double rotating_hamiltonian_polar(const PolarState& s, double a) {
    return kepler_energy_polar(s) + a * s.t;
}

double kepler_energy_polar(const PolarState& s) {
    return 0.5 * (s.r * s.r + s.t * s.t / (s.x * s.x)) - 1.0 / s.x;
}

Vec4 hamiltonian_vector_field_polar(const PolarState& s, double a) {
    const double x3 = s.x * s.x * s.x;
    return {{(s.t * s.t - s.x) / x3, 0.0, s.r, s.t / (s.x * s.x) + a}};
}

PolarState integrate_polar(const PolarState& s0, double a, double duration, int steps) {
    Vec4 y{{s0.r, s0.t, s0.x, s0.y}};
    auto field = [a](const Vec4& v) -> Vec4 {
        const double r = v[0], t = v[1], x = v[2];
        const double x3 = x * x * x;
        return {{(t * t - x) / x3, 0.0, r, t / (x * x) + a}};
    };
    y = rk4_integrate(y, duration, steps, field);
    return PolarState(y[2], y[3], y[0], y[1]);
}

}  // namespace rkp::mech
