// Levi-Civita transformed Hamiltonian K_c on C^2 (as R^4), its gradient and
// Hessian, the exact non-convexity witness at the critical energy, and a
// sampling-based tangential-Hessian convexity scanner.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rkp/linalg.hpp"

namespace rkp::lc {

/// A point (u, v) of C^2 written as two real pairs.
struct LCPoint {
    Vec2 u;
    Vec2 v;
};

/// K_c(u,v) = |u|^2/2 + c|v|^2 + 2|v|^2 <u, iv> - 1/2
/// (real inner product, i the counterclockwise quarter turn).
double lc_energy(const LCPoint& p, double c);

/// Coefficient vector of DK_c(u,v) in coordinates (u1, u2, v1, v2).
Vec4 lc_gradient(const LCPoint& p, double c);

/// Symmetric 4x4 matrix of D^2 K_c(u,v).
Mat4 lc_hessian(const LCPoint& p, double c);

/// The explicit non-convexity witness at c = 3/2: point (-ia, 1/2) with
/// a = (1+sqrt5)/4, tangent direction (i*u2hat, 1) with
/// u2hat = 9*sqrt5/10 - 3/2, and Hessian value (3/2)(11/5 - sqrt5) < 0.
/// All three are evaluated through lc_energy/lc_gradient/lc_hessian and the
/// identities of the construction are asserted; any failure is a
/// convention bug and throws std::logic_error.
struct Witness {
    LCPoint point;
    Vec4 direction;
    double hessian_value;
};
Witness convexity_witness();

struct SampleResult {
    std::vector<LCPoint> points;
    int ray_misses = 0;  // redrawn directions whose ray never met the component
};

/// n points of {K_c = 0} on the compact component: directions uniform on
/// S^3 (deterministic in seed), scaled along the ray from the origin to the
/// first crossing by bracketed bisection to 1e-12. Requires c >= 1.4.
SampleResult sample_hypersurface(double c, int n, std::uint64_t seed);

struct ConvexityReport {
    double c = 0.0;
    int samples = 0;
    double min_eigenvalue = 0.0;
    LCPoint argmin_point;
    Vec4 argmin_direction;
    int ray_misses = 0;
    int gradient_resamples = 0;
    bool witness_injected = false;
};

/// For each sample, restrict the Hessian to the tangent space ker DK_c
/// (orthonormal 3-frame), take the smallest eigenvalue of the 3x3
/// restriction, and report the minimum over samples with its witness.
/// At c = 3/2 the analytic witness is injected as an extra sample.
/// A negative minimum certifies non-convexity; a nonnegative one is only
/// "no counterexample found at n samples".
ConvexityReport convexity_scan(double c, int n, std::uint64_t seed);
ConvexityReport convexity_scan(double c, int n, std::uint64_t seed, bool inject_witness);

}  // namespace rkp::lc
