#pragma once

#include <utility>
#include <vector>

#include "hyproc/types.hpp"

namespace hyproc {

/// Tolerance on |[x,x] + 1| for a vector to count as a hyperboloid point.
inline constexpr double kOnSheetTol = 1e-9;

/// Indefinite inner product [u,v] = -u[0]*v[0] + sum_{i>=1} u[i]*v[i].
double lorentzian_inner(const Vec& u, const Vec& v);

/// The matrix of the form above: diag(-1, I_d), size (d+1)x(d+1).
Mat lorentz_form(int d);

/// A point on the upper sheet {x in R^{d+1} : [x,x] = -1, x[0] > 0} of the
/// unit hyperboloid. Immutable after construction.
class LoidPoint {
public:
    /// Validates [x,x] = -1 within kOnSheetTol, x[0] > 0, d >= 1, finiteness.
    explicit LoidPoint(Vec coords);

    static LoidPoint origin(int d);

    const Vec& coords() const { return coords_; }
    int dim() const { return static_cast<int>(coords_.size()) - 1; }

    /// Copy with coordinate 0 recomputed as sqrt(1 + |tail|^2). Repairs the
    /// small off-sheet drift that matrix products accumulate.
    LoidPoint renormalized() const;

private:
    Vec coords_;
};

/// z in R^d -> (sqrt(1 + |z|^2), z). Inverse of project().
LoidPoint lift(const Vec& z);

/// Drops coordinate 0. project(lift(z)) == z exactly.
Vec project(const LoidPoint& x);

/// Geodesic distance acosh(-[x,y]), with the argument clamped below at 1
/// so round-off near coincident points cannot produce NaN.
double distance(const LoidPoint& x, const LoidPoint& y);

/// An ordered, nonempty set of hyperboloid points with a common dimension,
/// stored as the columns of a (d+1) x N matrix.
class PointSet {
public:
    explicit PointSet(const std::vector<LoidPoint>& points);
    /// Columns are validated like LoidPoint coordinates.
    explicit PointSet(Mat coords);
    /// Lifts the columns of a d x N parameter matrix.
    static PointSet from_params(const Mat& z);

    int dim() const { return static_cast<int>(coords_.rows()) - 1; }
    int size() const { return static_cast<int>(coords_.cols()); }

    LoidPoint point(int i) const;
    const Mat& coords() const { return coords_; }
    /// d x N matrix of projected points (coordinate-0 row dropped).
    Mat params() const { return coords_.bottomRows(coords_.rows() - 1); }

private:
    Mat coords_;
};

} // namespace hyproc
