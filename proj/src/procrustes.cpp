#include "hyproc/procrustes.hpp"

#include <cmath>
#include <string>

namespace hyproc {

namespace {

// Weights resolved to a concrete vector: uniform when empty, validated otherwise.
Vec resolve_weights(const std::vector<double>& weights, Eigen::Index n, const char* who) {
    if (weights.empty()) return Vec::Ones(n);
    if (static_cast<Eigen::Index>(weights.size()) != n) {
        throw ValidationError(std::string(who) + ": weight count " +
                              std::to_string(weights.size()) + " does not match point count " +
                              std::to_string(n));
    }
    Vec w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double wi = weights[static_cast<std::size_t>(i)];
        if (!std::isfinite(wi) || wi <= 0.0) {
            throw ValidationError(std::string(who) + ": weights must be finite and positive");
        }
        w[i] = wi;
    }
    return w;
}

void require_centered(const PointSet& s, const char* who) {
    const Vec mean = s.params().rowwise().mean();
    if (mean.norm() > 1e-6) {
        throw ValidationError(std::string(who) + ": set is not centered (projected mean norm " +
                              std::to_string(mean.norm()) + ")");
    }
}

void require_matched(const PointSet& x, const PointSet& y, const char* who) {
    if (x.dim() != y.dim()) {
        throw ValidationError(std::string(who) + ": dimension mismatch (" +
                              std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
    }
    if (x.size() != y.size()) {
        throw ValidationError(std::string(who) + ": point count mismatch (" +
                              std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
    }
}

} // namespace

Vec centroid(const PointSet& x) {
    const Vec xbar = x.coords().rowwise().mean();
    // xbar is a convex combination of points on the upper sheet, so it lies
    // inside the light cone and -[xbar,xbar] >= 1; the clamp only absorbs
    // rounding when all points coincide.
    const double s = std::max(1.0, -lorentzian_inner(xbar, xbar));
    return xbar.tail(x.dim()) / std::sqrt(s);
}

std::pair<PointSet, Vec> center(const PointSet& x) {
    Vec m = centroid(x);
    const HUnitary shift = translation_matrix(-m);
    return {apply(shift, x), std::move(m)};
}

Mat estimate_rotation(const PointSet& xc, const PointSet& yc,
                      const std::vector<double>& weights) {
    require_matched(xc, yc, "estimate_rotation");
    require_centered(xc, "estimate_rotation (first set)");
    require_centered(yc, "estimate_rotation (second set)");
    const Vec w = resolve_weights(weights, xc.size(), "estimate_rotation");

    // Weighted cross matrix of the projections; its orthogonal polar factor
    // maximizes the weighted trace and thereby minimizes the cosh cost.
    const Mat m = xc.params() * w.asDiagonal() * yc.params().transpose();
    return polar_orthogonal(m);
}

double alignment_cost(const PointSet& xc, const PointSet& yc, const Mat& u,
                      const std::vector<double>& weights) {
    require_matched(xc, yc, "alignment_cost");
    const Vec w = resolve_weights(weights, xc.size(), "alignment_cost");
    const PointSet rotated = apply(rotation_matrix(u), yc);
    double cost = 0.0;
    for (int i = 0; i < xc.size(); ++i) {
        cost += w[i] * std::cosh(distance(xc.point(i), rotated.point(i)));
    }
    return cost;
}

AlignmentResult align(const PointSet& target, const PointSet& source,
                      const std::vector<double>& weights) {
    require_matched(target, source, "align");

    auto [target_centered, m_target] = center(target);
    auto [source_centered, m_source] = center(source);
    Mat u = estimate_rotation(target_centered, source_centered, weights);

    HUnitary estimate = compose(translation_matrix(m_target),
                                compose(rotation_matrix(u), translation_matrix(-m_source)));
    const double residual = normalized_discrepancy(target, apply(estimate, source));

    return AlignmentResult{std::move(estimate), std::move(m_target), std::move(m_source),
                           std::move(u), residual};
}

double normalized_discrepancy(const PointSet& x, const PointSet& y) {
    require_matched(x, y, "normalized_discrepancy");
    return normalized_discrepancy(x.coords(), y.coords());
}

double normalized_discrepancy(const Mat& x, const Mat& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() < 2 || x.cols() < 1) {
        throw ValidationError("normalized_discrepancy: shape mismatch");
    }
    const Eigen::Index d = x.rows() - 1;
    const Eigen::Index n = x.cols();
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        // Same cancellation-free evaluation of acosh(-[x,y]) as distance().
        const Vec diff = x.col(j) - y.col(j);
        const double q = std::max(0.0, diff.tail(d).squaredNorm() - diff[0] * diff[0]);
        total += 2.0 * std::asinh(0.5 * std::sqrt(q));
    }
    return total / (static_cast<double>(n) * static_cast<double>(d));
}

} // namespace hyproc
