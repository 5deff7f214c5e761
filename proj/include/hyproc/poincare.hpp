#pragma once

#include "hyproc/lorentz.hpp"

namespace hyproc {

/// A point strictly inside the unit ball (Poincaré model coordinates).
class PoincarePoint {
public:
    explicit PoincarePoint(Vec y);

    const Vec& coords() const { return y_; }
    int dim() const { return static_cast<int>(y_.size()); }

private:
    Vec y_;
};

/// Stereographic projection hyperboloid -> ball: y = tail(x) / (1 + x[0]).
PoincarePoint to_poincare(const LoidPoint& x);

/// Inverse projection ball -> hyperboloid:
/// x = ((1 + |y|^2), 2y) / (1 - |y|^2). Rejects points within 1e-12 of the
/// boundary, where the lift overflows.
LoidPoint from_poincare(const PoincarePoint& y);

/// Möbius addition
/// u + v = ((1 + 2<u,v> + |v|^2) u + (1 - |u|^2) v) / (1 + 2<u,v> + |u|^2 |v|^2).
/// Noncommutative; the deviation is measured by gyration().
PoincarePoint mobius_add(const PoincarePoint& u, const PoincarePoint& v);

/// gyr[u,v] w = (-(u + v)) + (u + (v + w)). A norm-preserving linear map in
/// w; reduces to the identity when u or v is the origin.
PoincarePoint gyration(const PoincarePoint& u, const PoincarePoint& v,
                       const PoincarePoint& w);

/// Geodesic distance in the ball: 2 atanh(|(-y) + y'|). Agrees with the
/// hyperboloid distance of the lifted points.
double poincare_distance(const PoincarePoint& y, const PoincarePoint& yp);

/// Ball-side counterpart of a hyperboloid translation: left Möbius addition
/// by b'. Conjugating a hyperboloid translation by the stereographic
/// projection gives exactly this map.
PoincarePoint poincare_translate(const PoincarePoint& b, const PoincarePoint& y);

/// Ball-side counterpart of a hyperboloid rotation: y -> U y for orthogonal U.
PoincarePoint poincare_rotate(const Mat& u, const PoincarePoint& y);

} // namespace hyproc
