#include "rkp/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rkp::maslov {

namespace {

constexpr double kKernelResidualTol = 1e-8;   // |(psi-1)v| / |v| acceptance
constexpr double kEigenZeroRel = 1e-10;       // eigenvalue ~ 0 threshold, relative
constexpr double kPerturbEps = 1e-8;

Mat2 quarter_turn_matrix() { return Mat2::of(0.0, -1.0, 1.0, 0.0); }

}  // namespace

SymplecticPath SymplecticPath::closed_form(const Mat2& generator, double duration) {
    return closed_form_from(generator, Mat2::identity(), duration);
}

SymplecticPath SymplecticPath::closed_form_from(const Mat2& generator, const Mat2& start,
                                                double duration) {
    if (!(duration > 0.0))
        throw std::invalid_argument("SymplecticPath: duration must be positive");
    SymplecticPath p;
    p.sampled_mode_ = false;
    p.generator_ = generator;
    p.start_ = start;
    p.duration_ = duration;
    return p;
}

SymplecticPath SymplecticPath::sampled(std::vector<Mat2> values, double duration) {
    if (values.size() < 2)
        throw std::invalid_argument("SymplecticPath: need at least two samples");
    if (!(duration > 0.0))
        throw std::invalid_argument("SymplecticPath: duration must be positive");
    SymplecticPath p;
    p.sampled_mode_ = true;
    p.duration_ = duration;
    p.values_ = std::move(values);
    const std::size_t n = p.values_.size();
    const double h = duration / static_cast<double>(n - 1);
    p.derivs_.resize(n);
    p.derivs_[0] = (p.values_[1] - p.values_[0]) * (1.0 / h);
    p.derivs_[n - 1] = (p.values_[n - 1] - p.values_[n - 2]) * (1.0 / h);
    for (std::size_t i = 1; i + 1 < n; ++i)
        p.derivs_[i] = (p.values_[i + 1] - p.values_[i - 1]) * (0.5 / h);
    return p;
}

double SymplecticPath::sample_time(std::size_t i) const {
    return duration_ * static_cast<double>(i) / static_cast<double>(values_.size() - 1);
}

Mat2 SymplecticPath::base_value(double s) const {
    if (!sampled_mode_) return mat2_exp(generator_ * s) * start_;
    const std::size_t n = values_.size();
    const double h = duration_ / static_cast<double>(n - 1);
    auto i = static_cast<std::ptrdiff_t>(std::llround(s / h));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1);
    return values_[static_cast<std::size_t>(i)];
}

Mat2 SymplecticPath::base_derivative(double s) const {
    if (!sampled_mode_) return generator_ * base_value(s);
    const std::size_t n = values_.size();
    const double h = duration_ / static_cast<double>(n - 1);
    auto i = static_cast<std::ptrdiff_t>(std::llround(s / h));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1);
    return derivs_[static_cast<std::size_t>(i)];
}

Mat2 SymplecticPath::value(double s) const {
    if (perturb_eps_ == 0.0) return base_value(s);
    const double b = std::sin(std::numbers::pi * s / duration_);
    return mat2_rotation(perturb_eps_ * b * b) * base_value(s);
}

Mat2 SymplecticPath::derivative(double s) const {
    if (perturb_eps_ == 0.0) return base_derivative(s);
    const double pi = std::numbers::pi;
    const double b = std::sin(pi * s / duration_);
    const double theta = perturb_eps_ * b * b;
    const double dtheta = perturb_eps_ * (pi / duration_) * std::sin(2.0 * pi * s / duration_);
    const Mat2 rot = mat2_rotation(theta);
    return quarter_turn_matrix() * rot * base_value(s) * dtheta + rot * base_derivative(s);
}

SymplecticPath SymplecticPath::subpath(double s0, double s1) const {
    if (sampled_mode_ || perturb_eps_ != 0.0)
        throw std::logic_error("subpath: only plain closed-form paths can be restricted");
    if (!(0.0 <= s0 && s0 < s1 && s1 <= duration_ + 1e-12))
        throw std::invalid_argument("subpath: need 0 <= s0 < s1 <= T");
    return closed_form_from(generator_, mat2_exp(generator_ * s0) * start_, s1 - s0);
}

SymplecticPath SymplecticPath::perturbed(double eps) const {
    SymplecticPath p = *this;
    p.perturb_eps_ += eps;
    return p;
}

namespace {

double det_minus_identity(const SymplecticPath& path, double s) {
    Mat2 m = path.value(s);
    m.m[0][0] -= 1.0;
    m.m[1][1] -= 1.0;
    return m.det();
}

// d/ds det(psi(s) - 1) = tr(adj(psi - 1) * psi').
double det_minus_identity_slope(const SymplecticPath& path, double s) {
    Mat2 m = path.value(s);
    m.m[0][0] -= 1.0;
    m.m[1][1] -= 1.0;
    const Mat2 d = path.derivative(s);
    return m.m[1][1] * d.m[0][0] - m.m[0][1] * d.m[1][0] - m.m[1][0] * d.m[0][1] +
           m.m[0][0] * d.m[1][1];
}

double bisect_on(const SymplecticPath& path, double lo, double hi, double flo,
                 auto&& f, double width_tol) {
    for (int i = 0; i < 200 && hi - lo > width_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(path, mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ScanResult {
    std::vector<double> roots;
    bool clustered = false;  // two roots inside one grid cell
};

ScanResult scan_grid(const SymplecticPath& path, int points, const FindOptions& opts) {
    const double T = path.duration();
    const int n = std::max(points, 16);
    const double cell = T / static_cast<double>(n - 1);

    std::vector<double> g(static_cast<std::size_t>(n));
    double scale = 0.0;
    for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = det_minus_identity(path, cell * i);
        scale = std::max(scale, std::abs(g[static_cast<std::size_t>(i)]));
    }
    scale = std::max(scale, 1.0);
    const double accept = opts.det_rel_tol * scale;
    const double touch_filter = 1e-2 * scale;

    std::vector<double> roots;
    // endpoints first
    if (std::abs(g.front()) <= accept) roots.push_back(0.0);
    if (std::abs(g.back()) <= accept) roots.push_back(T);

    for (int i = 0; i + 1 < n; ++i) {
        const double gi = g[static_cast<std::size_t>(i)], gj = g[static_cast<std::size_t>(i + 1)];
        if (gi == 0.0 || gj == 0.0) continue;  // node roots handled below
        if ((gi < 0.0) != (gj < 0.0)) {
            roots.push_back(bisect_on(path, cell * i, cell * (i + 1), gi, det_minus_identity,
                                      opts.time_tol));
        }
    }

    // Tangential touches and node-exact roots. A touch is a local extremum
    // of g dipping to ~0 (no sign change at the nodes); refine it by
    // bisecting the slope of g. A root sitting exactly on a node shows up
    // as |g_i| <= accept with a sign change across the neighbours.
    for (int i = 1; i + 1 < n; ++i) {
        const double gm = g[static_cast<std::size_t>(i - 1)];
        const double gi = g[static_cast<std::size_t>(i)];
        const double gp = g[static_cast<std::size_t>(i + 1)];
        const bool extremum = (gi <= gm && gi <= gp) || (gi >= gm && gi >= gp);
        const bool node_root = std::abs(gi) <= accept;
        if (!node_root && (std::abs(gi) > touch_filter || !extremum)) continue;
        const double lo = cell * (i - 1), hi = cell * (i + 1);
        double s_star = cell * i;
        if (extremum) {
            const double slo = det_minus_identity_slope(path, lo);
            const double shi = det_minus_identity_slope(path, hi);
            if ((slo < 0.0) != (shi < 0.0))
                s_star = bisect_on(path, lo, hi, slo, det_minus_identity_slope, opts.time_tol);
        } else if ((gm < 0.0) != (gp < 0.0)) {
            s_star = bisect_on(path, lo, hi, gm, det_minus_identity, opts.time_tol);
        }
        if (std::abs(det_minus_identity(path, s_star)) <= accept) roots.push_back(s_star);
    }

    std::sort(roots.begin(), roots.end());
    // merge duplicates found from adjacent cells / endpoint double-detection
    const double merge_tol = std::max(10.0 * opts.time_tol, 1e-9);
    std::vector<double> merged;
    for (double r : roots) {
        r = std::clamp(r, 0.0, T);
        if (merged.empty() || r - merged.back() > merge_tol)
            merged.push_back(r);
    }

    ScanResult out;
    out.roots = std::move(merged);
    for (std::size_t i = 0; i + 1 < out.roots.size(); ++i)
        if (out.roots[i + 1] - out.roots[i] < cell) out.clustered = true;
    return out;
}

}  // namespace

std::vector<double> find_crossing_times(const SymplecticPath& path, const FindOptions& opts) {
    int points = opts.grid_points;
    if (path.is_closed_form() == false)
        points = std::max<int>(points, static_cast<int>(path.sample_count()));
    // A refinement must not lose crossings a coarser pass already saw: a
    // shrinking count means the cluster degenerated below the resolution.
    std::size_t max_count = 0;
    for (int attempt = 0; attempt < 3; ++attempt) {
        const ScanResult res = scan_grid(path, points, opts);
        max_count = std::max(max_count, res.roots.size());
        if (!res.clustered && res.roots.size() >= max_count) return res.roots;
        points *= 8;  // grid refinement round
    }
    throw UnresolvedCrossingsError(
        "find_crossing_times: crossings not separable after two grid refinements");
}

namespace {

struct Kernel {
    int dim = 0;
    Vec2 basis[2];
};

Kernel kernel_at(const SymplecticPath& path, double s) {
    Mat2 m = path.value(s);
    m.m[0][0] -= 1.0;
    m.m[1][1] -= 1.0;
    const double identity_tol = 1e-7 * std::max(1.0, path.value(s).max_abs());
    Kernel k;
    if (m.max_abs() <= identity_tol) {
        k.dim = 2;
        k.basis[0] = {1.0, 0.0};
        k.basis[1] = {0.0, 1.0};
        return k;
    }
    // 1-dimensional kernel: a vector orthogonal to the larger row.
    const Vec2 cand1{-m.m[0][1], m.m[0][0]};
    const Vec2 cand2{-m.m[1][1], m.m[1][0]};
    Vec2 v = cand1.norm() >= cand2.norm() ? cand1 : cand2;
    const double nv = v.norm();
    if (nv < 1e-14)
        throw std::domain_error("crossing kernel: psi(s) - 1 vanishes unexpectedly");
    k.dim = 1;
    k.basis[0] = v * (1.0 / nv);
    return k;
}

}  // namespace

double crossing_form(const SymplecticPath& path, double s, const Vec2& v) {
    Mat2 m = path.value(s);
    m.m[0][0] -= 1.0;
    m.m[1][1] -= 1.0;
    const double residual = (m * v).norm();
    if (residual > kKernelResidualTol * v.norm())
        throw std::invalid_argument("crossing_form: vector is not in ker(psi(s) - 1)");
    return omega0(v, path.derivative(s) * v);
}

SignatureResult crossing_signature(const SymplecticPath& path, double s) {
    const Kernel k = kernel_at(path, s);
    const Mat2 d = path.derivative(s);
    SignatureResult out;
    out.kernel_dim = k.dim;
    const double q_scale = std::max(d.max_abs(), 1e-300);
    if (k.dim == 1) {
        const double q = omega0(k.basis[0], d * k.basis[0]);
        if (std::abs(q) <= kEigenZeroRel * q_scale) {
            out.degenerate = true;
        } else {
            out.signature = q > 0.0 ? 1 : -1;
        }
        return out;
    }
    // Q on the full plane: Q(v) = omega0(v, D v); symmetric representative
    //   Q11 = D21, Q22 = -D12, Q12 = (D22 - D11)/2.
    const double q11 = d.m[1][0];
    const double q22 = -d.m[0][1];
    const double q12 = 0.5 * (d.m[1][1] - d.m[0][0]);
    const auto eigs = sym2_eigenvalues(q11, q12, q22);
    const double zero_tol = kEigenZeroRel * std::max({std::abs(eigs[0]), std::abs(eigs[1]), 1e-300});
    for (double lambda : eigs) {
        if (std::abs(lambda) <= zero_tol)
            out.degenerate = true;
        else
            out.signature += lambda > 0.0 ? 1 : -1;
    }
    return out;
}

std::vector<Crossing> find_crossings(const SymplecticPath& path, const FindOptions& opts) {
    const double T = path.duration();
    const double end_tol = 1e-9 * std::max(1.0, T);
    std::vector<Crossing> out;
    for (double s : find_crossing_times(path, opts)) {
        Crossing c;
        c.time = s;
        c.is_endpoint = s <= end_tol || s >= T - end_tol;
        const SignatureResult sig = crossing_signature(path, s);
        c.kernel_dim = sig.kernel_dim;
        c.signature = sig.signature;
        c.degenerate = sig.degenerate;
        out.push_back(c);
    }
    return out;
}

HalfInteger maslov_index(const SymplecticPath& path, const FindOptions& opts) {
    for (int attempt = 0; attempt < 3; ++attempt) {
        const double eps = attempt * kPerturbEps;
        const SymplecticPath p = attempt == 0 ? path : path.perturbed(eps);
        bool retry = false;
        int halves = 0;
        for (const Crossing& c : find_crossings(p, opts)) {
            if (c.degenerate) {
                if (c.is_endpoint)
                    throw DegenerateCrossingError(
                        "maslov_index: degenerate endpoint crossing (endpoints are fixed)");
                retry = true;
                break;
            }
            halves += c.is_endpoint ? c.signature : 2 * c.signature;
        }
        if (!retry) return HalfInteger::from_halves(halves);
    }
    throw DegenerateCrossingError(
        "maslov_index: interior crossing stayed degenerate after two perturbations");
}

}  // namespace rkp::maslov
