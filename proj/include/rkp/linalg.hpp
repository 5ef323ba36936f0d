// Small fixed-size linear algebra for the rotating-Kepler computations.
// Everything here is 2-, 3- or 4-dimensional, so closed forms beat a
// matrix library.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace rkp {

struct Vec2 {
    double x = 0.0, y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Counterclockwise quarter turn: i*(x,y) = (-y, x).
inline Vec2 quarter_turn(const Vec2& v) { return {-v.y, v.x}; }

/// Standard symplectic/area form dx ^ dy on the plane.
inline double omega0(const Vec2& u, const Vec2& w) { return u.x * w.y - u.y * w.x; }

struct Vec3 {
    std::array<double, 3> v{};
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    double dot(const Vec3& o) const { return v[0] * o[0] + v[1] * o[1] + v[2] * o[2]; }
    double norm() const { return std::sqrt(dot(*this)); }
};

struct Vec4 {
    std::array<double, 4> v{};
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }
    Vec4 operator+(const Vec4& o) const {
        return {{v[0] + o[0], v[1] + o[1], v[2] + o[2], v[3] + o[3]}};
    }
    Vec4 operator-(const Vec4& o) const {
        return {{v[0] - o[0], v[1] - o[1], v[2] - o[2], v[3] - o[3]}};
    }
    Vec4 operator*(double s) const { return {{v[0] * s, v[1] * s, v[2] * s, v[3] * s}}; }
    double dot(const Vec4& o) const {
        return v[0] * o[0] + v[1] * o[1] + v[2] * o[2] + v[3] * o[3];
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec4 operator*(double s, const Vec4& v) { return v * s; }

struct Mat2 {
    // row-major: m[r][c]
    std::array<std::array<double, 2>, 2> m{};

    static Mat2 of(double a00, double a01, double a10, double a11) {
        Mat2 r;
        r.m[0][0] = a00;
        r.m[0][1] = a01;
        r.m[1][0] = a10;
        r.m[1][1] = a11;
        return r;
    }
    static Mat2 identity() { return of(1.0, 0.0, 0.0, 1.0); }
    static Mat2 zero() { return {}; }

    double trace() const { return m[0][0] + m[1][1]; }
    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat2 operator*(double s) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] * s;
        return r;
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    Vec2 operator*(const Vec2& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }

    double max_abs() const {
        double r = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(m[i][j]));
        return r;
    }
};

inline double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).max_abs(); }

/// exp(A) for a real 2x2 matrix, exact via Cayley-Hamilton.
/// With mu = tr(A)/2 and D = A - mu*I (so D^2 = delta*I, delta = mu^2 - det A):
///   exp(A) = e^mu (cosw*I + sinw/w * D)  with w = sqrt(-delta)      (delta < 0)
///   exp(A) = e^mu (coshw*I + sinhw/w * D) with w = sqrt(delta)      (delta > 0)
///   exp(A) = e^mu (I + D)                                           (delta = 0)
inline Mat2 mat2_exp(const Mat2& a) {
    const double mu = 0.5 * a.trace();
    Mat2 d = a;
    d.m[0][0] -= mu;
    d.m[1][1] -= mu;
    const double delta = mu * mu - a.det();
    const double emu = std::exp(mu);
    double c, s_over_w;
    const double scale = a.max_abs();
    if (std::abs(delta) <= 1e-300 * std::max(1.0, scale * scale)) {
        c = 1.0;
        s_over_w = 1.0;
    } else if (delta < 0.0) {
        const double w = std::sqrt(-delta);
        c = std::cos(w);
        s_over_w = std::sin(w) / w;
    } else {
        const double w = std::sqrt(delta);
        c = std::cosh(w);
        s_over_w = std::sinh(w) / w;
    }
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = emu * (c * (i == j) + s_over_w * d.m[i][j]);
    return r;
}

/// Rotation by angle theta (exp(theta*J), J the quarter turn).
inline Mat2 mat2_rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return Mat2::of(c, -s, s, c);
}

struct Mat4 {
    std::array<std::array<double, 4>, 4> m{};

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
        return r;
    }

    Mat4 operator+(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat4 operator*(double s) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] * s;
        return r;
    }
    Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double acc = 0.0;
                for (int k = 0; k < 4; ++k) acc += m[i][k] * o.m[k][j];
                r.m[i][j] = acc;
            }
        return r;
    }
    Vec4 operator*(const Vec4& v) const {
        Vec4 r;
        for (int i = 0; i < 4; ++i)
            r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
        return r;
    }

    double norm_inf() const {  // max row sum
        double r = 0.0;
        for (int i = 0; i < 4; ++i) {
            double s = 0.0;
            for (int j = 0; j < 4; ++j) s += std::abs(m[i][j]);
            r = std::max(r, s);
        }
        return r;
    }
    double max_abs() const {
        double r = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(m[i][j]));
        return r;
    }

    /// Quadratic form v^T M v.
    double quad(const Vec4& v) const { return v.dot((*this) * v); }
};

/// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
inline Vec3 solve3(std::array<std::array<double, 3>, 3> a, Vec3 b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) throw std::domain_error("solve3: singular system");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec3 x;
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
inline std::array<double, 2> sym2_eigenvalues(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), b);
    return {mean - rad, mean + rad};
}

struct SymEigen3 {
    std::array<double, 3> values{};        // ascending
    std::array<Vec3, 3> vectors{};         // matching order, orthonormal
};

/// Eigen-decomposition of a symmetric 3x3 matrix: closed-form trigonometric
/// characteristic solution, polished by cyclic Jacobi rotations (which also
/// produce the eigenvectors).
inline SymEigen3 sym3_eigen(std::array<std::array<double, 3>, 3> a) {
    // closed-form eigenvalues
    const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    double eig[3];
    if (p1 == 0.0) {
        eig[0] = a[0][0];
        eig[1] = a[1][1];
        eig[2] = a[2][2];
    } else {
        const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) +
                          (a[2][2] - q) * (a[2][2] - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        std::array<std::array<double, 3>, 3> b = a;
        for (int i = 0; i < 3; ++i) b[i][i] -= q;
        const double detb =
            (b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
             b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
             b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0])) /
            (p * p * p);
        const double r = std::clamp(detb / 2.0, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        eig[2] = q + 2.0 * p * std::cos(phi);
        eig[0] = q + 2.0 * p * std::cos(phi + 2.0 * std::acos(-1.0) / 3.0);
        eig[1] = 3.0 * q - eig[0] - eig[2];
    }

    // Jacobi rotations: polish the values and accumulate the eigenvectors.
    std::array<std::array<double, 3>, 3> v{{{{1, 0, 0}}, {{0, 1, 0}}, {{0, 0, 1}}}};
    for (int sweep = 0; sweep < 16; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off == 0.0) break;
        for (int p_ = 0; p_ < 2; ++p_) {
            for (int q_ = p_ + 1; q_ < 3; ++q_) {
                if (a[p_][q_] == 0.0) continue;
                const double theta = (a[q_][q_] - a[p_][p_]) / (2.0 * a[p_][q_]);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int i = 0; i < 3; ++i) {
                    const double aip = a[i][p_], aiq = a[i][q_];
                    a[i][p_] = c * aip - s * aiq;
                    a[i][q_] = s * aip + c * aiq;
                }
                for (int i = 0; i < 3; ++i) {
                    const double api = a[p_][i], aqi = a[q_][i];
                    a[p_][i] = c * api - s * aqi;
                    a[q_][i] = s * api + c * aqi;
                }
                for (int i = 0; i < 3; ++i) {
                    const double vip = v[i][p_], viq = v[i][q_];
                    v[i][p_] = c * vip - s * viq;
                    v[i][q_] = s * vip + c * viq;
                }
            }
        }
    }

    // Converged Jacobi diagonal replaces the closed-form values (they agree
    // to rounding); the closed form remains the fallback if the rotation
    // budget ran out.
    const double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
    const double scale = std::max({std::abs(a[0][0]), std::abs(a[1][1]), std::abs(a[2][2]), 1e-300});
    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int i, int j) { return a[i][i] < a[j][j]; });
    std::sort(eig, eig + 3);
    SymEigen3 out;
    for (int k = 0; k < 3; ++k) {
        const int col = order[k];
        out.values[k] = off <= 1e-12 * scale ? a[col][col] : eig[k];
        for (int i = 0; i < 3; ++i) out.vectors[k][i] = v[i][col];
    }
    return out;
}

/// Classical RK4 with a fixed number of steps. F: state -> derivative.
template <typename State, typename F>
State rk4_integrate(const State& y0, double t_total, int steps, F&& f) {
    State y = y0;
    const double h = t_total / steps;
    for (int i = 0; i < steps; ++i) {
        const State k1 = f(y);
        const State k2 = f(y + k1 * (h / 2));
        const State k3 = f(y + k2 * (h / 2));
        const State k4 = f(y + k3 * h);
        y = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    return y;
}

}  // namespace rkp
