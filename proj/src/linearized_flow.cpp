#include "rkp/linearized_flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace rkp::linflow {

namespace {
constexpr double kFrameSingularTol = 1e-10;
constexpr double kReducedBlockTol = 1e-9;
}  // namespace

CircularOrbitSeed CircularOrbitSeed::from_radius(double x0, OrbitSign sign, double a) {
    if (!(x0 > 0.0)) throw std::invalid_argument("CircularOrbitSeed: radius must be > 0");
    return {x0, sign, sign_value(sign) * std::sqrt(x0), a};
}

CircularOrbitSeed CircularOrbitSeed::from_energy(double E, OrbitSign sign, double a) {
    if (!(E < 0.0)) throw std::invalid_argument("CircularOrbitSeed: requires E < 0");
    return from_radius(1.0 / (-2.0 * E), sign, a);
}

double CircularOrbitSeed::synodical_period() const {
    const double w = angular_speed();
    if (std::abs(w) < 1e-15) return std::numeric_limits<double>::infinity();
    return 2.0 * std::numbers::pi / std::abs(w);
}

mech::PolarState CircularOrbitSeed::state(double s) const {
    return mech::PolarState(x0, angular_speed() * s, 0.0, t0);
}

Mat4 linearized_matrix(const CircularOrbitSeed& seed) {
    const double x0 = seed.x0, t0 = seed.t0;
    const double x3 = x0 * x0 * x0;
    Mat4 m;
    m.m[0][1] = 2.0 * t0 / x3;
    m.m[0][2] = -1.0 / x3;
    m.m[2][0] = 1.0;
    m.m[3][1] = 1.0 / (x0 * x0);
    m.m[3][2] = -2.0 * t0 / x3;
    return m;
}

TrivializationFrame trivialization_frame(const mech::PolarState& s, double a) {
    const double denom = s.t * s.x + 1.0;
    if (std::abs(denom) < kFrameSingularTol)
        throw FrameSingularError("trivialization_frame: t*x + 1 ~ 0");
    const double x = s.x, r = s.r, t = s.t;
    TrivializationFrame f;
    f.X1 = {{t / x, -r * x / denom, r * x * x * x / denom, 1.0}};
    f.X2 = {{0.0, -(x - t * t) / (x * denom), (x * x + t) / denom, 0.0}};
    f.XH = mech::hamiltonian_vector_field_polar(s, a);
    return f;
}

namespace {

// Coefficients of v in the basis (X1, X2, XH): least squares via the 3x3
// normal equations (the system is consistent for v tangent to {H = -c}).
Vec3 frame_coefficients(const TrivializationFrame& f, const Vec4& v) {
    const Vec4* basis[3] = {&f.X1, &f.X2, &f.XH};
    std::array<std::array<double, 3>, 3> gram{};
    Vec3 rhs;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) gram[i][j] = basis[i]->dot(*basis[j]);
        rhs[i] = basis[i]->dot(v);
    }
    return solve3(gram, rhs);
}

Mat2 reduced_generator_closed_form(double t0) {
    const double t2 = t0 * t0;
    return Mat2::of(0.0, -1.0 / (t2 * t2), 1.0 / t2, 0.0);
}

}  // namespace

Mat2 reduced_generator(const CircularOrbitSeed& seed) {
    if (seed.a != 1.0)
        throw std::invalid_argument("reduced_generator: defined for frame rate a = 1");
    const TrivializationFrame f = trivialization_frame(seed.state(), seed.a);
    const Mat4 lin = linearized_matrix(seed);
    Mat2 block;
    const Vec4* contact[2] = {&f.X1, &f.X2};
    for (int j = 0; j < 2; ++j) {
        const Vec3 coeff = frame_coefficients(f, lin * (*contact[j]));
        block.m[0][j] = coeff[0];
        block.m[1][j] = coeff[1];
        // coeff[2] (the XH component) is discarded: projection along XH.
    }
    const Mat2 expected = reduced_generator_closed_form(seed.t0);
    if (max_abs_diff(block, expected) > kReducedBlockTol * std::max(1.0, expected.max_abs()))
        throw std::logic_error(
            "reduced_generator: numeric change of basis disagrees with the closed form");
    return block;
}

maslov::SymplecticPath closed_form_path(const CircularOrbitSeed& seed, double duration) {
    return maslov::SymplecticPath::closed_form(reduced_generator_closed_form(seed.t0), duration);
}

maslov::SymplecticPath numeric_monodromy_path(const CircularOrbitSeed& seed, double duration,
                                              double step_control) {
    if (!(duration > 0.0))
        throw std::invalid_argument("numeric_monodromy_path: duration must be > 0");
    if (!(step_control > 0.0))
        throw std::invalid_argument("numeric_monodromy_path: step_control must be > 0");

    const Mat4 lin = linearized_matrix(seed);
    // RK4 local error per step ~ (|L| h)^5 / 120; budget step_control per
    // unit time so the accumulated error stays at step_control * duration.
    const double nrm = std::max(lin.norm_inf(), 1e-6);
    const double h_target =
        std::pow(120.0 * step_control / (duration * std::pow(nrm, 5)), 0.25);
    if (h_target < 1e-9 * duration)
        throw StepUnderflowError("numeric_monodromy_path: required step below 1e-9 * duration");
    const int steps = std::max(32, static_cast<int>(std::ceil(duration / h_target)));
    const double h = duration / steps;

    const TrivializationFrame f = trivialization_frame(seed.state(), seed.a);
    auto project = [&](const Mat4& m) {
        Mat2 block;
        const Vec4* contact[2] = {&f.X1, &f.X2};
        for (int j = 0; j < 2; ++j) {
            const Vec3 coeff = frame_coefficients(f, m * (*contact[j]));
            block.m[0][j] = coeff[0];
            block.m[1][j] = coeff[1];
        }
        return block;
    };

    std::vector<Mat2> samples;
    samples.reserve(static_cast<std::size_t>(steps) + 1);
    Mat4 psi = Mat4::identity();
    samples.push_back(project(psi));
    for (int i = 0; i < steps; ++i) {
        const Mat4 k1 = lin * psi;
        const Mat4 k2 = lin * (psi + k1 * (h / 2));
        const Mat4 k3 = lin * (psi + k2 * (h / 2));
        const Mat4 k4 = lin * (psi + k3 * h);
        psi = psi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        samples.push_back(project(psi));
    }
    return maslov::SymplecticPath::sampled(std::move(samples), duration);
}

}  // namespace rkp::linflow
