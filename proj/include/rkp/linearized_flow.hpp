// Linearization of the rotating Kepler flow around circular orbits and its
// expression in the contact-plane trivialization, as closed form and as a
// numerically integrated oracle.
#pragma once

#include <stdexcept>

#include "rkp/core_mechanics.hpp"
#include "rkp/linalg.hpp"
#include "rkp/maslov.hpp"

namespace rkp::linflow {

/// Raised where the frame denominator t*x + 1 vanishes (the direct orbit
/// locked to the frame at the critical radius).
struct FrameSingularError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when the requested step control would need steps below
/// 1e-9 * duration.
struct StepUnderflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OrbitSign { Retrograde, Direct };

inline double sign_value(OrbitSign s) { return s == OrbitSign::Retrograde ? +1.0 : -1.0; }

/// A circular orbit of the rotating problem: radius x0, angular momentum
/// t0 = sign * sqrt(x0) (retrograde positive), frame rate a.
struct CircularOrbitSeed {
    double x0;
    OrbitSign sign;
    double t0;
    double a;

    static CircularOrbitSeed from_radius(double x0, OrbitSign sign, double a = 1.0);
    /// Seed at Kepler energy E < 0 (x0 = 1/(-2E)).
    static CircularOrbitSeed from_energy(double E, OrbitSign sign, double a = 1.0);

    double kepler_energy() const { return -1.0 / (2.0 * t0 * t0); }
    /// Angular speed in the rotating frame, 1/t0^3 + a.
    double angular_speed() const { return 1.0 / (t0 * t0 * t0) + a; }
    /// Positive synodical period 2*pi/|angular_speed| (infinite at lock).
    double synodical_period() const;
    /// The orbit point at parameter time s.
    mech::PolarState state(double s = 0.0) const;
};

/// Contact-plane frame (X1, X2) plus the Hamiltonian vector field XH at a
/// point of the energy hypersurface, in (r, t, x, y) components.
struct TrivializationFrame {
    Vec4 X1, X2, XH;
};

/// Constant matrix of the linearized flow at the circular orbit, rows and
/// columns ordered (dr, dt, dx, dy).
Mat4 linearized_matrix(const CircularOrbitSeed& seed);

/// Frame fields
///   X1 = (t/x) dr - rx/(tx+1) dt + rx^3/(tx+1) dx + dy
///   X2 = -(x-t^2)/(x(tx+1)) dt + (x^2+t)/(tx+1) dx
/// both in ker(lambda) with lambda = -x dr + t dy, and in ker(dH) for a=1.
TrivializationFrame trivialization_frame(const mech::PolarState& state, double a);

/// The linearized generator expressed in the basis (X1, X2, XH) restricted
/// to the energy hypersurface; returns the top-left 2x2 (contact) block.
/// Computed numerically and validated against the closed form
/// [[0, -1/t0^4], [1/t0^2, 0]]; disagreement is a hard error.
Mat2 reduced_generator(const CircularOrbitSeed& seed);

/// Closed-form contact-plane path: rotation-like with angle s/t0^3,
/// crossings exactly at s in t0^3 * 2*pi * Z.
maslov::SymplecticPath closed_form_path(const CircularOrbitSeed& seed, double duration);

/// Brute-force oracle: integrates the 4x4 linearized system with fixed-step
/// RK4 (local error budgeted at step_control per unit time) and projects
/// onto (X1, X2) along XH at each sample.
maslov::SymplecticPath numeric_monodromy_path(const CircularOrbitSeed& seed, double duration,
                                              double step_control = 1e-10);

}  // namespace rkp::linflow
