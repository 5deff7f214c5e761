#pragma once

#include <random>

#include "hyproc/lorentz.hpp"

namespace hyproc {

/// Entrywise tolerance on R^T H R - H for membership in the H-unitary group.
inline constexpr double kHUnitaryTol = 1e-8;

/// True iff R is square, R^T H R = H entrywise within tol, and R(0,0) > 0
/// (the transformation keeps the upper sheet).
bool is_hunitary(const Mat& r, double tol = kHUnitaryTol);

/// A sheet-preserving isometry of the hyperboloid model, represented by its
/// (d+1) x (d+1) matrix. Validated on construction.
class HUnitary {
public:
    explicit HUnitary(Mat m, double tol = kHUnitaryTol);

    static HUnitary identity(int d);

    const Mat& matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()) - 1; }

private:
    Mat mat_;
};

/// Hyperbolic translation by b in R^d:
///
///   [ sqrt(1+|b|^2)   b^T              ]
///   [ b               (I + b b^T)^1/2  ]
///
/// The square root block is the closed-form rank-1 update
/// I + ((sqrt(1+|b|^2) - 1)/|b|^2) b b^T, exactly I when b = 0.
HUnitary translation_matrix(const Vec& b);

/// Hyperbolic rotation/reflection blkdiag(1, U) for U in O(d).
HUnitary rotation_matrix(const Mat& u);

/// Matrix-vector product followed by sheet renormalization of coordinate 0.
LoidPoint apply(const HUnitary& r, const LoidPoint& x);
PointSet apply(const HUnitary& r, const PointSet& x);

/// Matrix product a * b. Throws NumericError if the product has drifted off
/// the H-unitary group beyond tolerance.
HUnitary compose(const HUnitary& a, const HUnitary& b);

/// Group inverse via the H-adjoint H R^T H; no matrix inversion involved.
HUnitary inverse(const HUnitary& r);

struct IsometryFactors {
    Vec translation;  ///< b with R = R_b * R_U
    Mat rotation;     ///< U in O(d)
};

/// Splits R into translation-then-rotation factors, R = R_b * R_U. The
/// translation parameter is read off the first column of R; the rotation
/// block is re-orthogonalized when it is within tolerance of O(d) and
/// rejected (NumericError) otherwise.
IsometryFactors factor(const HUnitary& r);

/// Orthogonal factor of the polar decomposition of m: the maximizer of
/// tr(V m^T) over V in O(d).
Mat polar_orthogonal(const Mat& m);

/// Haar-distributed element of O(d): sign-corrected QR factor of a square
/// standard-normal matrix.
Mat random_orthogonal(int d, std::mt19937_64& rng);

/// R_b * R_U with b standard normal and U Haar on O(d).
HUnitary random_hunitary(int d, std::mt19937_64& rng);

} // namespace hyproc
