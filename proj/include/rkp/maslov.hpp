// Robbin-Salamon Maslov index of a path of 2x2 symplectic matrices via
// crossing forms, with endpoint half-weights and perturbation of degenerate
// interior crossings.
#pragma once

#include <stdexcept>
#include <vector>

#include "rkp/half_integer.hpp"
#include "rkp/linalg.hpp"

namespace rkp::maslov {

/// Raised when two crossings cannot be separated after grid refinement.
struct UnresolvedCrossingsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a crossing form stays degenerate (endpoint crossings cannot
/// be perturbed; interior ones get two perturbation attempts).
struct DegenerateCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A path psi : [0, T] -> Sp(2). Either closed form (psi(s) = exp(sA) * M0,
/// evaluable anywhere) or sampled on a uniform time grid (evaluation snaps
/// to the nearest node; derivatives are finite differences). A smooth
/// rotation factor exp(eps * b(s) * J) can be composed on the left to
/// perturb interior crossings while fixing endpoints (b = sin^2(pi s / T)).
class SymplecticPath {
  public:
    static SymplecticPath closed_form(const Mat2& generator, double duration);
    static SymplecticPath closed_form_from(const Mat2& generator, const Mat2& start,
                                           double duration);
    /// Uniformly sampled path; values[i] at time i * duration / (n-1).
    static SymplecticPath sampled(std::vector<Mat2> values, double duration);

    Mat2 value(double s) const;
    Mat2 derivative(double s) const;
    double duration() const { return duration_; }
    bool is_closed_form() const { return !sampled_mode_; }

    /// Restriction to [s0, s1] (closed-form paths only).
    SymplecticPath subpath(double s0, double s1) const;

    /// Left-composition with exp(eps * sin^2(pi s/T) * J); endpoints fixed.
    SymplecticPath perturbed(double eps) const;

    std::size_t sample_count() const { return values_.size(); }
    double sample_time(std::size_t i) const;
    const Mat2& sample_value(std::size_t i) const { return values_[i]; }

  private:
    SymplecticPath() = default;

    Mat2 base_value(double s) const;
    Mat2 base_derivative(double s) const;

    bool sampled_mode_ = false;
    double duration_ = 0.0;
    // closed form
    Mat2 generator_{};
    Mat2 start_ = Mat2::identity();
    // sampled
    std::vector<Mat2> values_;
    std::vector<Mat2> derivs_;
    // perturbation
    double perturb_eps_ = 0.0;
};

/// A time where det(psi(s) - 1) = 0, i.e. 1 is an eigenvalue of psi(s).
struct Crossing {
    double time = 0.0;
    int kernel_dim = 0;        // 1 or 2
    int signature = 0;         // of the crossing form, zeros not counted
    bool is_endpoint = false;
    bool degenerate = false;   // crossing form has a (near-)zero eigenvalue
};

struct FindOptions {
    int grid_points = 10'000;     // scan resolution (points on [0, T])
    double time_tol = 1e-12;      // bisection target width for crossing times
    double det_rel_tol = 1e-11;   // |det(psi-1)| acceptance, relative to scan scale
};

/// All crossing times on [0, T]: sign changes by bisection, tangential
/// touches by locating the extremum of det(psi(s)-1), endpoints checked
/// explicitly. Throws UnresolvedCrossingsError when two crossings stay
/// inside one grid cell after two refinements.
std::vector<double> find_crossing_times(const SymplecticPath& path,
                                        const FindOptions& opts = {});

/// Crossing form value Q(v, v) = omega0(v, psi'(s) v) for v in
/// ker(psi(s) - 1); rejects vectors outside the kernel
/// (|(psi(s)-1)v| > 1e-8 |v|).
double crossing_form(const SymplecticPath& path, double s, const Vec2& v);

struct SignatureResult {
    int kernel_dim = 0;
    int signature = 0;    // #positive - #negative eigenvalues of Q
    bool degenerate = false;
};

/// Diagonalize the crossing form on ker(psi(s)-1); eigenvalues below
/// 1e-10 * max|eig| count as zero and mark the crossing degenerate.
SignatureResult crossing_signature(const SymplecticPath& path, double s);

/// Crossings with their signatures filled.
std::vector<Crossing> find_crossings(const SymplecticPath& path,
                                     const FindOptions& opts = {});

/// Robbin-Salamon index
///   mu = sgn(Q_0)/2 + sum over interior crossings of sgn(Q_t) + sgn(Q_T)/2.
/// Degenerate interior crossings trigger the perturbation fallback
/// (eps = 1e-8, then 2e-8); degenerate endpoint crossings raise
/// DegenerateCrossingError.
HalfInteger maslov_index(const SymplecticPath& path, const FindOptions& opts = {});

}  // namespace rkp::maslov
