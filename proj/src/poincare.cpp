#include "hyproc/poincare.hpp"

#include <cmath>
#include <string>

#include "hyproc/isometry.hpp"

namespace hyproc {

PoincarePoint::PoincarePoint(Vec y) : y_(std::move(y)) {
    if (y_.size() < 1) {
        throw ValidationError("PoincarePoint: empty coordinate vector");
    }
    if (!y_.allFinite()) {
        throw ValidationError("PoincarePoint: non-finite coordinates");
    }
    if (y_.norm() >= 1.0) {
        throw ValidationError("PoincarePoint: norm " + std::to_string(y_.norm()) +
                              " is not strictly inside the unit ball");
    }
}

PoincarePoint to_poincare(const LoidPoint& x) {
    const Vec& c = x.coords();
    return PoincarePoint(c.tail(x.dim()) / (1.0 + c[0]));
}

LoidPoint from_poincare(const PoincarePoint& y) {
    const double nsq = y.coords().squaredNorm();
    if (nsq >= (1.0 - 1e-12) * (1.0 - 1e-12)) {
        throw ValidationError("from_poincare: point too close to the ball boundary");
    }
    Vec x(y.dim() + 1);
    x[0] = (1.0 + nsq) / (1.0 - nsq);
    x.tail(y.dim()) = 2.0 * y.coords() / (1.0 - nsq);
    return LoidPoint(std::move(x));
}

PoincarePoint mobius_add(const PoincarePoint& u, const PoincarePoint& v) {
    if (u.dim() != v.dim()) {
        throw ValidationError("mobius_add: dimension mismatch");
    }
    // Near the boundary the denominator approaches (1 - |u||v|)^2 and
    // round-off gets amplified by its reciprocal, so the scalar work is done
    // in extended precision; composed operations (gyration, the ball
    // distance) would otherwise lose several digits.
    using LVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const LVec ul = u.coords().cast<long double>();
    const LVec vl = v.coords().cast<long double>();
    const long double uv = ul.dot(vl);
    const long double unsq = ul.squaredNorm();
    const long double vnsq = vl.squaredNorm();
    const long double denom = 1.0L + 2.0L * uv + unsq * vnsq;
    // By Cauchy-Schwarz denom >= (1 - |u||v|)^2 > 0 inside the ball; the
    // guard only fires on inputs that already violate the invariant.
    if (denom <= 1e-300L) {
        throw NumericError("mobius_add: vanishing denominator");
    }
    const LVec num = (1.0L + 2.0L * uv + vnsq) * ul + (1.0L - unsq) * vl;
    return PoincarePoint((num / denom).cast<double>());
}

PoincarePoint gyration(const PoincarePoint& u, const PoincarePoint& v,
                       const PoincarePoint& w) {
    const PoincarePoint sum = mobius_add(u, v);
    const PoincarePoint inner = mobius_add(u, mobius_add(v, w));
    return mobius_add(PoincarePoint(-sum.coords()), inner);
}

double poincare_distance(const PoincarePoint& y, const PoincarePoint& yp) {
    const PoincarePoint diff = mobius_add(PoincarePoint(-y.coords()), yp);
    return 2.0 * std::atanh(diff.coords().norm());
}

PoincarePoint poincare_translate(const PoincarePoint& b, const PoincarePoint& y) {
    return mobius_add(b, y);
}

PoincarePoint poincare_rotate(const Mat& u, const PoincarePoint& y) {
    if (u.rows() != u.cols() || u.rows() != y.dim()) {
        throw ValidationError("poincare_rotate: matrix/point size mismatch");
    }
    const Mat gram = u.transpose() * u;
    if (!u.allFinite() ||
        (gram - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > kHUnitaryTol) {
        throw ValidationError("poincare_rotate: matrix is not orthogonal");
    }
    return PoincarePoint(u * y.coords());
}

} // namespace hyproc
