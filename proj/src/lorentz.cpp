#include "hyproc/lorentz.hpp"

#include <cmath>
#include <string>

namespace hyproc {

double lorentzian_inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw ValidationError("lorentzian_inner: length mismatch (" +
                              std::to_string(u.size()) + " vs " +
                              std::to_string(v.size()) + ")");
    }
    if (u.size() < 2) {
        throw ValidationError("lorentzian_inner: vectors must have length >= 2");
    }
    const Eigen::Index d = u.size() - 1;
    return -u[0] * v[0] + u.tail(d).dot(v.tail(d));
}

Mat lorentz_form(int d) {
    if (d < 1) throw ValidationError("lorentz_form: d must be >= 1");
    Mat h = Mat::Identity(d + 1, d + 1);
    h(0, 0) = -1.0;
    return h;
}

namespace {

void check_on_sheet(const Vec& x, const char* who) {
    if (x.size() < 2) {
        throw ValidationError(std::string(who) + ": need at least 2 coordinates");
    }
    if (!x.allFinite()) {
        throw ValidationError(std::string(who) + ": non-finite coordinates");
    }
    if (x[0] <= 0.0) {
        throw ValidationError(std::string(who) + ": coordinate 0 must be positive (lower sheet?)");
    }
    const double self = lorentzian_inner(x, x);
    if (std::abs(self + 1.0) > kOnSheetTol) {
        throw ValidationError(std::string(who) + ": off the hyperboloid, [x,x] = " +
                              std::to_string(self));
    }
}

} // namespace

LoidPoint::LoidPoint(Vec coords) : coords_(std::move(coords)) {
    check_on_sheet(coords_, "LoidPoint");
}

LoidPoint LoidPoint::origin(int d) {
    if (d < 1) throw ValidationError("LoidPoint::origin: d must be >= 1");
    Vec x = Vec::Zero(d + 1);
    x[0] = 1.0;
    return LoidPoint(std::move(x));
}

LoidPoint LoidPoint::renormalized() const {
    Vec x = coords_;
    x[0] = std::sqrt(1.0 + x.tail(x.size() - 1).squaredNorm());
    return LoidPoint(std::move(x));
}

LoidPoint lift(const Vec& z) {
    if (z.size() < 1) throw ValidationError("lift: empty parameter vector");
    if (!z.allFinite()) throw ValidationError("lift: non-finite parameter vector");
    Vec x(z.size() + 1);
    x[0] = std::sqrt(1.0 + z.squaredNorm());
    x.tail(z.size()) = z;
    return LoidPoint(std::move(x));
}

Vec project(const LoidPoint& x) {
    return x.coords().tail(x.dim());
}

double distance(const LoidPoint& x, const LoidPoint& y) {
    if (x.dim() != y.dim()) {
        throw ValidationError("distance: dimension mismatch");
    }
    // acosh(max(1, -[x,y])) evaluated through the Lorentzian norm of the
    // difference: with q = [x-y, x-y] = 2(-[x,y] - 1) >= 0 on the sheet,
    // acosh(-[x,y]) = 2 asinh(sqrt(q)/2). The direct form cancels
    // catastrophically for nearby points far from the origin; this one
    // stays accurate there and is identical in exact arithmetic.
    const Vec diff = x.coords() - y.coords();
    const double q =
        std::max(0.0, diff.tail(x.dim()).squaredNorm() - diff[0] * diff[0]);
    return 2.0 * std::asinh(0.5 * std::sqrt(q));
}

PointSet::PointSet(const std::vector<LoidPoint>& points) {
    if (points.empty()) throw ValidationError("PointSet: empty point list");
    const int d = points.front().dim();
    coords_.resize(d + 1, static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].dim() != d) {
            throw ValidationError("PointSet: inhomogeneous dimensions");
        }
        coords_.col(static_cast<Eigen::Index>(i)) = points[i].coords();
    }
}

PointSet::PointSet(Mat coords) : coords_(std::move(coords)) {
    if (coords_.cols() < 1 || coords_.rows() < 2) {
        throw ValidationError("PointSet: need a (d+1) x N matrix with d >= 1, N >= 1");
    }
    for (Eigen::Index j = 0; j < coords_.cols(); ++j) {
        check_on_sheet(coords_.col(j), "PointSet");
    }
}

PointSet PointSet::from_params(const Mat& z) {
    if (z.cols() < 1 || z.rows() < 1) {
        throw ValidationError("PointSet::from_params: need a d x N matrix");
    }
    if (!z.allFinite()) {
        throw ValidationError("PointSet::from_params: non-finite parameters");
    }
    Mat coords(z.rows() + 1, z.cols());
    coords.bottomRows(z.rows()) = z;
    coords.row(0) = (z.colwise().squaredNorm().array() + 1.0).sqrt();
    return PointSet(std::move(coords));
}

LoidPoint PointSet::point(int i) const {
    if (i < 0 || i >= size()) throw ValidationError("PointSet::point: index out of range");
    return LoidPoint(coords_.col(i));
}

} // namespace hyproc
