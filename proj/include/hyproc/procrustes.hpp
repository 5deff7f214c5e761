#pragma once

#include <utility>
#include <vector>

#include "hyproc/isometry.hpp"

namespace hyproc {

/// Result of an alignment: the isometry mapping the source set onto the
/// target set, its building blocks, and the achieved discrepancy.
///
/// Invariant: estimate == T_{target_center} * R_rotation * T_{-source_center}.
struct AlignmentResult {
    HUnitary estimate;
    Vec target_center;
    Vec source_center;
    Mat rotation;
    double residual = 0.0;
    int iterations = 0;               ///< gradient-descent runs only
    int gradient_terms_skipped = 0;   ///< near-coincident pairs dropped from gradients
    std::vector<double> history;      ///< per-iteration discrepancy, when recorded
};

/// Hyperbolic centroid: the translation parameter m with
/// m = mean(project(x_n)) / sqrt(-[xbar, xbar]), xbar the coordinate-wise
/// mean. Translating by -m makes the projected set average to zero.
Vec centroid(const PointSet& x);

/// Applies T_{-centroid} to every point; returns the centered set and the
/// centroid that was removed.
std::pair<PointSet, Vec> center(const PointSet& x);

/// Optimal rotation/reflection between two centered sets: the orthogonal
/// polar factor of sum_n w_n project(xc_n) project(yc_n)^T. Minimizes the
/// weighted cosh-of-distance cost over O(d); reflections are admissible.
/// Empty weights mean uniform. Both sets must be centered within 1e-6.
///
/// When the cross matrix has repeated or zero singular values the minimizer
/// is not unique and the returned matrix is whichever optimum the SVD
/// backend picks.
Mat estimate_rotation(const PointSet& xc, const PointSet& yc,
                      const std::vector<double>& weights = {});

/// Weighted cost sum_n w_n cosh(d(xc_n, R_u yc_n)) of a candidate rotation.
double alignment_cost(const PointSet& xc, const PointSet& yc, const Mat& u,
                      const std::vector<double>& weights = {});

/// Closed-form Procrustes alignment: center both sets, estimate the
/// rotation between them, and recompose
/// T_{m_target} o T_U o T_{-m_source}. Exact (residual ~ 0) whenever the
/// sets are related by an isometry.
AlignmentResult align(const PointSet& target, const PointSet& source,
                      const std::vector<double>& weights = {});

/// Mean geodesic distance scaled by 1/d:  (1/(N d)) sum_n d(x_n, y_n).
double normalized_discrepancy(const PointSet& x, const PointSet& y);

/// Same, on raw coordinate matrices whose columns are hyperboloid points.
double normalized_discrepancy(const Mat& x, const Mat& y);

} // namespace hyproc
