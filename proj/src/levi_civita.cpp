#include "rkp/levi_civita.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace rkp::lc {

namespace {
constexpr double kMinJacobi = 1.4;  // compact component exists near/above 3/2
constexpr double kBracketMax = 10.0;
constexpr double kGradientFloor = 1e-10;
}  // namespace

double lc_energy(const LCPoint& p, double c) {
    const double vv = p.v.dot(p.v);
    return 0.5 * p.u.dot(p.u) + c * vv + 2.0 * vv * p.u.dot(quarter_turn(p.v)) - 0.5;
}

Vec4 lc_gradient(const LCPoint& p, double c) {
    const double vv = p.v.dot(p.v);
    const double uiv = p.u.dot(quarter_turn(p.v));
    const Vec2 gu = p.u + 2.0 * vv * quarter_turn(p.v);
    // <u, i vhat> = <-i u, vhat> with -i u = (u2, -u1)
    const Vec2 miu{p.u.y, -p.u.x};
    const Vec2 gv = (2.0 * c + 4.0 * uiv) * p.v + 2.0 * vv * miu;
    return {{gu.x, gu.y, gv.x, gv.y}};
}

Mat4 lc_hessian(const LCPoint& p, double c) {
    const double vv = p.v.dot(p.v);
    const double uiv = p.u.dot(quarter_turn(p.v));
    const Vec2 iv = quarter_turn(p.v);
    const Vec2 miu{p.u.y, -p.u.x};
    Mat4 h;
    // uu block
    h.m[0][0] = h.m[1][1] = 1.0;
    // vv block: (2c + 4<u,iv>) I + 4 (v (-iu)^T + (-iu) v^T)
    const double vvd = 2.0 * c + 4.0 * uiv;
    const double varr[2] = {p.v.x, p.v.y};
    const double marr[2] = {miu.x, miu.y};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            h.m[2 + i][2 + j] = vvd * (i == j) + 4.0 * (varr[i] * marr[j] + marr[i] * varr[j]);
    // uv block: 4 (iv) v^T + 2|v|^2 R, R the quarter turn
    const double ivarr[2] = {iv.x, iv.y};
    const double rot[2][2] = {{0.0, -1.0}, {1.0, 0.0}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double val = 4.0 * ivarr[i] * varr[j] + 2.0 * vv * rot[i][j];
            h.m[i][2 + j] = val;
            h.m[2 + j][i] = val;
        }
    return h;
}

Witness convexity_witness() {
    const double sqrt5 = std::sqrt(5.0);
    const double a = (1.0 + sqrt5) / 4.0;
    const double u2hat = 9.0 * sqrt5 / 10.0 - 1.5;
    Witness w;
    w.point = {{0.0, -a}, {0.5, 0.0}};
    w.direction = {{0.0, u2hat, 1.0, 0.0}};

    // arithmetic identities pinning the witness construction
    if (std::abs((4.0 * a - 1.0) - sqrt5) > 1e-14)
        throw std::logic_error("convexity_witness: 4a - 1 != sqrt(5)");
    if (std::abs(u2hat * u2hat + 3.0 * u2hat - 1.8) > 1e-14)
        throw std::logic_error("convexity_witness: u2^2 + 3 u2 != 9/5");
    if (std::abs(lc_energy(w.point, 1.5)) > 1e-14)
        throw std::logic_error("convexity_witness: point is off {K = 0}");
    if (std::abs(lc_gradient(w.point, 1.5).dot(w.direction)) > 1e-14)
        throw std::logic_error("convexity_witness: direction is not tangent");

    w.hessian_value = lc_hessian(w.point, 1.5).quad(w.direction);
    if (!(w.hessian_value < 0.0))
        throw std::logic_error("convexity_witness: Hessian value is not negative");
    return w;
}

namespace {

// Deterministic standard normals: Box-Muller over mt19937_64 bits.
// (std::normal_distribution is implementation-defined; this keeps outputs
// byte-identical across standard libraries.)
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

  private:
    double uniform01() {  // [0, 1) with 53 random bits
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct Ray {
    Vec4 dir;  // unit
};

// K_c along dir scaled by rho: B rho^4 + A rho^2 - 1/2.
struct RayPoly {
    double A, B;
    double eval(double rho) const {
        const double r2 = rho * rho;
        return (B * r2 + A) * r2 - 0.5;
    }
};

RayPoly ray_poly(const Vec4& d, double c) {
    const Vec2 du{d[0], d[1]}, dv{d[2], d[3]};
    return {0.5 * du.dot(du) + c * dv.dot(dv), 2.0 * dv.dot(dv) * du.dot(quarter_turn(dv))};
}

// First crossing of the ray with {K_c = 0}; false if the ray misses.
bool first_crossing(const RayPoly& poly, double& rho_out) {
    // march out from the origin (K(0) = -1/2 < 0) to bracket the first root
    const int kMarchSteps = 256;
    double lo = 0.0, hi = -1.0;
    for (int i = 1; i <= kMarchSteps; ++i) {
        const double rho = kBracketMax * i / kMarchSteps;
        if (poly.eval(rho) > 0.0) {
            hi = rho;
            break;
        }
        lo = rho;
    }
    if (hi < 0.0) return false;
    double flo = poly.eval(lo);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = poly.eval(mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    rho_out = 0.5 * (lo + hi);
    return true;
}

}  // namespace

SampleResult sample_hypersurface(double c, int n, std::uint64_t seed) {
    if (!(c >= kMinJacobi))
        throw std::invalid_argument("sample_hypersurface: requires c >= 1.4");
    if (n < 1) throw std::invalid_argument("sample_hypersurface: requires n >= 1");
    GaussianStream g(seed);
    SampleResult out;
    out.points.reserve(static_cast<std::size_t>(n));
    const long attempt_cap = 1000L * n;
    long attempts = 0;
    while (static_cast<int>(out.points.size()) < n) {
        if (++attempts > attempt_cap)
            throw std::runtime_error("sample_hypersurface: too many ray misses");
        Vec4 d{{g.next(), g.next(), g.next(), g.next()}};
        const double nd = d.norm();
        if (nd < 1e-12) continue;
        d = d * (1.0 / nd);
        double rho;
        if (!first_crossing(ray_poly(d, c), rho)) {
            out.ray_misses += 1;
            continue;
        }
        out.points.push_back({{rho * d[0], rho * d[1]}, {rho * d[2], rho * d[3]}});
    }
    return out;
}

namespace {

// Orthonormal basis of the hyperplane orthogonal to g (unit) via the
// Householder reflector mapping e_k to -sign*g: the remaining columns span
// the complement.
void tangent_basis(const Vec4& g_unit, Vec4 basis[3]) {
    int k = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(g_unit[i]) > std::abs(g_unit[k])) k = i;
    Vec4 w = g_unit;
    w[k] += g_unit[k] >= 0.0 ? 1.0 : -1.0;
    const double wn2 = w.dot(w);
    int out = 0;
    for (int col = 0; col < 4; ++col) {
        if (col == k) continue;
        Vec4 e{};
        e[col] = 1.0;
        basis[out++] = e - w * (2.0 * w[col] / wn2);
    }
}

struct RestrictedMin {
    double eigenvalue;
    Vec4 direction;  // unit tangent realizing it
};

RestrictedMin restricted_min_eigen(const Mat4& hess, const Vec4 basis[3]) {
    std::array<std::array<double, 3>, 3> r{};
    Vec4 hb[3];
    for (int j = 0; j < 3; ++j) hb[j] = hess * basis[j];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = basis[i].dot(hb[j]);
    const SymEigen3 eig = sym3_eigen(r);
    RestrictedMin out;
    out.eigenvalue = eig.values[0];
    const Vec3& y = eig.vectors[0];
    out.direction = basis[0] * y[0] + basis[1] * y[1] + basis[2] * y[2];
    return out;
}

}  // namespace

ConvexityReport convexity_scan(double c, int n, std::uint64_t seed) {
    return convexity_scan(c, n, seed, std::abs(c - 1.5) <= 1e-12);
}

ConvexityReport convexity_scan(double c, int n, std::uint64_t seed, bool inject_witness) {
    if (!(c >= kMinJacobi))
        throw std::invalid_argument("convexity_scan: requires c >= 1.4");
    if (n < 1) throw std::invalid_argument("convexity_scan: requires n >= 1");
    if (inject_witness && std::abs(c - 1.5) > 1e-12)
        throw std::invalid_argument("convexity_scan: the analytic witness lives on {K_{3/2}=0}");

    GaussianStream g(seed);
    ConvexityReport rep;
    rep.c = c;
    rep.witness_injected = inject_witness;
    bool have_min = false;

    auto consider = [&](const LCPoint& pt) -> bool {
        const Vec4 grad = lc_gradient(pt, c);
        const double gn = grad.norm();
        if (gn < kGradientFloor) return false;  // critical point hit: re-sample
        Vec4 basis[3];
        tangent_basis(grad * (1.0 / gn), basis);
        const RestrictedMin rm = restricted_min_eigen(lc_hessian(pt, c), basis);
        if (!have_min || rm.eigenvalue < rep.min_eigenvalue) {
            have_min = true;
            rep.min_eigenvalue = rm.eigenvalue;
            rep.argmin_point = pt;
            rep.argmin_direction = rm.direction;
        }
        return true;
    };

    const long attempt_cap = 1000L * n;
    long attempts = 0;
    while (rep.samples < n) {
        if (++attempts > attempt_cap)
            throw std::runtime_error("convexity_scan: too many rejected samples");
        Vec4 d{{g.next(), g.next(), g.next(), g.next()}};
        const double nd = d.norm();
        if (nd < 1e-12) continue;
        d = d * (1.0 / nd);
        double rho;
        if (!first_crossing(ray_poly(d, c), rho)) {
            rep.ray_misses += 1;
            continue;
        }
        const LCPoint pt{{rho * d[0], rho * d[1]}, {rho * d[2], rho * d[3]}};
        if (!consider(pt)) {
            rep.gradient_resamples += 1;
            continue;
        }
        rep.samples += 1;
    }

    if (inject_witness) {
        const Witness w = convexity_witness();
        consider(w.point);
        rep.samples += 1;
    }
    return rep;
}

}  // namespace rkp::lc
