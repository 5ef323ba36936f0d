// Hamiltonians, conserved quantities and coordinate transforms of the
// (rotating) Kepler problem in dimensionless units (gravitational parameter,
// frame rotation rate and primary mass all 1).
#pragma once

#include <utility>

#include "rkp/linalg.hpp"

namespace rkp::mech {

/// Phase-space point of the planar Kepler problem in Cartesian coordinates.
/// The origin (collision) is excluded at construction.
struct CartesianState {
    Vec2 q;  // position, |q| > 0
    Vec2 p;  // conjugate momentum

    CartesianState(const Vec2& q_, const Vec2& p_);
};

/// Phase-space point in polar position coordinates (x, y) with conjugate
/// momenta (r, t); t is the angular momentum. The angle y is kept on the
/// real line (unreduced) so windings stay visible; reduce only for display.
struct PolarState {
    double x;  // radius > 0
    double y;  // angle, radians, unreduced
    double r;  // radial momentum
    double t;  // angular momentum

    PolarState(double x_, double y_, double r_, double t_);
};

/// (E, L, c) bundle with c = -E - L enforced by construction.
struct EnergyTriple {
    double kepler_energy;
    double angular_momentum;
    double jacobi_param;

    EnergyTriple(double E, double L)
        : kepler_energy(E), angular_momentum(L), jacobi_param(-E - L) {}
    static EnergyTriple of(const CartesianState& s);
};

/// E(q,p) = |p|^2/2 - 1/|q|.
double kepler_energy(const CartesianState& s);

/// L = q1 p2 - q2 p1.
double angular_momentum(const CartesianState& s);

/// Eccentricity from eps^2 = 2 E L^2 + 1. Tiny negative radicands
/// (>= -1e-12) are clamped to zero; anything below is an inconsistent
/// (E, L) pair and is rejected.
double eccentricity(double E, double L);

/// Kepler's third law, T = 2*pi / (-2E)^(3/2); requires E < 0.
double kepler_period(double E);

/// Rotating-frame Hamiltonian H = E + L.
double rotating_hamiltonian(const CartesianState& s);

/// The same Hamiltonian in magnetic/mechanical form,
/// H = |p1-q2|^2/2 + |p2+q1|^2/2 + U(q). Agrees with rotating_hamiltonian
/// to rounding; kept as an independent route for the consistency tests.
double rotating_hamiltonian_mechanical(const CartesianState& s);

/// Effective potential U(rho) = -1/rho - rho^2/2; unique maximum -3/2 at rho=1.
double effective_potential(double radius);

enum class HillRegion { Bounded, Forbidden, Unbounded, AllowedEverywhere };

/// The two radii where U(rho) = -c, for c > 3/2 (inner < 1 < outer).
std::pair<double, double> hill_region_radii(double c);

/// Classify a radius against Hill's region of {H = -c}. For c <= 3/2 the
/// region is the whole punctured plane.
HillRegion hill_region_classify(double c, double radius);

/// Moser regularization energy K_k(q,p) = |q|(E+k) + 1 = (|p|^2 + 2k)|q|/2.
double moser_energy(const CartesianState& s, double k);

PolarState to_polar(const CartesianState& s);
CartesianState from_polar(const PolarState& s);

/// Rotating Hamiltonian in polar coordinates, H_a = (r^2 + t^2/x^2)/2 - 1/x + a t.
double rotating_hamiltonian_polar(const PolarState& s, double a);

/// Inertial energy in polar coordinates, E = (r^2 + t^2/x^2)/2 - 1/x.
double kepler_energy_polar(const PolarState& s);

/// Hamiltonian vector field of H_a in (r, t, x, y) component order:
/// ((t^2-x)/x^3, 0, r, t/x^2 + a). The t-component is identically zero.
Vec4 hamiltonian_vector_field_polar(const PolarState& s, double a);

/// Fixed-step RK4 flow of X_{H_a} from a polar state (t is the integration
/// time here, not the momentum). Steps are per unit time.
PolarState integrate_polar(const PolarState& s0, double a, double duration, int steps);

}  // namespace rkp::mech
