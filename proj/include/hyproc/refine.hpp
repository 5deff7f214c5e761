#pragma once

#include <vector>

#include "hyproc/procrustes.hpp"

namespace hyproc {

/// Settings for gradient-descent refinement.
///
/// A step is accepted only if the discrepancy decreases, so the recorded
/// discrepancy sequence is always nonincreasing. With backtracking enabled
/// (default) the step size is halved up to 20 times per iteration to find an
/// improving step. With backtracking disabled the fixed step is tried once
/// and the run stops at the first iteration that fails to improve, which
/// reproduces the plain method's stalls far from the optimum.
struct GdConfig {
    double alpha = 0.05;
    int max_iters = 500;
    double stop_tol = 1e-12;
    bool backtracking = true;
    bool record_history = false;
};

/// Gradient of the normalized discrepancy with respect to the translation
/// parameter, at zero translation applied to y. Pairs closer than the
/// derivative's singularity threshold contribute nothing and are counted.
struct GradientResult {
    Vec gradient;
    int skipped = 0;
};

GradientResult discrepancy_gradient(const PointSet& x, const PointSet& y);

/// Iterative alignment from scratch: alternates a translation step along the
/// negative gradient with the optimal rotation for the shifted set, starting
/// from the identity. Not guaranteed to converge without backtracking.
AlignmentResult gd_align(const PointSet& target, const PointSet& source,
                         const GdConfig& cfg = {});

/// Fine-tunes an existing estimate: runs gd_align on (target, initial *
/// source) and composes the correction with the initial isometry. Because
/// only improving steps are accepted, the result is never worse than the
/// initial estimate.
AlignmentResult refine(const PointSet& target, const PointSet& source,
                       const HUnitary& initial, const GdConfig& cfg = {});

} // namespace hyproc
