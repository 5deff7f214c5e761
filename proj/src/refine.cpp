#include "hyproc/refine.hpp"

#include <cmath>
#include <string>

namespace hyproc {

namespace {

void check_config(const GdConfig& cfg) {
    if (!(cfg.alpha > 0.0) || !std::isfinite(cfg.alpha)) {
        throw ValidationError("GdConfig: alpha must be a positive finite number");
    }
    if (cfg.max_iters < 1) {
        throw ValidationError("GdConfig: max_iters must be at least 1");
    }
    if (!(cfg.stop_tol > 0.0)) {
        throw ValidationError("GdConfig: stop_tol must be positive");
    }
}

struct Step {
    HUnitary estimate;
    double discrepancy;
};

// One update from the current estimate: translate along -step_size * g, then
// take the best rotation for the shifted set (uncentered trace maximization).
Step take_step(const PointSet& target, const PointSet& source, const HUnitary& current,
               const PointSet& moved, const Vec& grad, double step_size) {
    const HUnitary shift = translation_matrix(-step_size * grad);
    const PointSet shifted = apply(shift, moved);
    const Mat u = polar_orthogonal(target.params() * shifted.params().transpose());
    HUnitary next = compose(rotation_matrix(u), compose(shift, current));
    const double e = normalized_discrepancy(target.coords(), apply(next, source).coords());
    return {std::move(next), e};
}

AlignmentResult finish(HUnitary estimate, double residual, int iterations, int skipped,
                       std::vector<double> history) {
    IsometryFactors parts = factor(estimate);
    const Vec no_source_shift = Vec::Zero(parts.translation.size());
    return AlignmentResult{std::move(estimate),    std::move(parts.translation),
                           no_source_shift,        std::move(parts.rotation),
                           residual,               iterations,
                           skipped,                std::move(history)};
}

} // namespace

GradientResult discrepancy_gradient(const PointSet& x, const PointSet& y) {
    if (x.dim() != y.dim() || x.size() != y.size()) {
        throw ValidationError("discrepancy_gradient: mismatched point sets");
    }
    const int d = x.dim();
    const int n = x.size();
    const Mat& xc = x.coords();
    const Mat& yc = y.coords();

    Vec g = Vec::Zero(d);
    int skipped = 0;
    for (int j = 0; j < n; ++j) {
        // s = -[x,y] - 1, from the cancellation-free difference form.
        const Vec diff = xc.col(j) - yc.col(j);
        const double s =
            0.5 * std::max(0.0, diff.tail(d).squaredNorm() - diff[0] * diff[0]);
        // acosh'(u) = 1/sqrt(u^2-1) blows up as the pair coincides; drop
        // those terms rather than emit garbage.
        if (s < 1e-12) {
            ++skipped;
            continue;
        }
        const double scale = 1.0 / std::sqrt(s * (s + 2.0));
        g += scale * (xc(0, j) * yc.col(j).tail(d) - yc(0, j) * xc.col(j).tail(d));
    }
    g /= static_cast<double>(n) * static_cast<double>(d);
    return {std::move(g), skipped};
}

AlignmentResult gd_align(const PointSet& target, const PointSet& source, const GdConfig& cfg) {
    check_config(cfg);
    if (target.dim() != source.dim() || target.size() != source.size()) {
        throw ValidationError("gd_align: mismatched point sets");
    }

    HUnitary current = HUnitary::identity(target.dim());
    double e = normalized_discrepancy(target.coords(), source.coords());
    int skipped = 0;
    std::vector<double> history;
    if (cfg.record_history) history.push_back(e);

    int it = 0;
    while (it < cfg.max_iters) {
        ++it;
        const PointSet moved = apply(current, source);
        GradientResult grad = discrepancy_gradient(target, moved);
        skipped += grad.skipped;

        // Only improving steps are ever accepted, in both modes; a rejected
        // step ends the run with the current estimate intact.
        Step step{current, e};
        bool accepted = false;
        if (cfg.backtracking) {
            double trial = cfg.alpha;
            for (int attempt = 0; attempt <= 20; ++attempt, trial *= 0.5) {
                // A step so large it breaks down numerically is treated like a
                // non-improving one: halve and retry.
                try {
                    Step candidate =
                        take_step(target, source, current, moved, grad.gradient, trial);
                    if (candidate.discrepancy < e) {
                        step = std::move(candidate);
                        accepted = true;
                        break;
                    }
                } catch (const ValidationError&) {
                } catch (const NumericError&) {
                }
            }
        } else {
            try {
                Step candidate =
                    take_step(target, source, current, moved, grad.gradient, cfg.alpha);
                if (candidate.discrepancy < e) {
                    step = std::move(candidate);
                    accepted = true;
                }
            } catch (const ValidationError& err) {
                // Inputs were validated up front, so a validation failure here
                // means the fixed-step iteration left the representable range.
                throw NumericError(std::string("gd_align: iteration diverged: ") + err.what());
            }
        }
        if (!accepted) break;

        const double previous = e;
        current = std::move(step.estimate);
        e = step.discrepancy;
        if (!std::isfinite(e)) {
            throw NumericError("gd_align: discrepancy diverged to a non-finite value");
        }
        if (cfg.record_history) history.push_back(e);
        if (previous - e < cfg.stop_tol) break;
    }

    return finish(std::move(current), e, it, skipped, std::move(history));
}

AlignmentResult refine(const PointSet& target, const PointSet& source, const HUnitary& initial,
                       const GdConfig& cfg) {
    if (initial.dim() != source.dim()) {
        throw ValidationError("refine: initial isometry dimension does not match the points");
    }
    AlignmentResult correction = gd_align(target, apply(initial, source), cfg);
    HUnitary total = compose(correction.estimate, initial);
    const double residual = normalized_discrepancy(target.coords(), apply(total, source).coords());
    return finish(std::move(total), residual, correction.iterations,
                  correction.gradient_terms_skipped, std::move(correction.history));
}

} // namespace hyproc
