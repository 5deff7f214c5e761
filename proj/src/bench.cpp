#include "hyproc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "hyproc/rng.hpp"

namespace hyproc {

namespace {

void check_config(const BenchmarkConfig& cfg) {
    if (cfg.dims.empty() || cfg.sizes.empty()) {
        throw ValidationError("BenchmarkConfig: dims and sizes must be nonempty");
    }
    for (int d : cfg.dims) {
        if (d < 1) throw ValidationError("BenchmarkConfig: dimensions must be >= 1");
    }
    for (int n : cfg.sizes) {
        if (n < 1) throw ValidationError("BenchmarkConfig: set sizes must be >= 1");
    }
    if (cfg.trials < 1) throw ValidationError("BenchmarkConfig: trials must be >= 1");
    if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) {
        throw ValidationError("BenchmarkConfig: noise_sigma must be finite and >= 0");
    }
    if (!(cfg.outlier_k > 0.0)) {
        throw ValidationError("BenchmarkConfig: outlier_k must be positive");
    }
}

double sanitized(double e) { return std::isnan(e) ? INFINITY : e; }

// Failed estimator runs become infinite discrepancies rather than aborting
// the experiment; they surface in the outlier statistics.
TrialRecord run_trial(const BenchmarkConfig& cfg, int d, int n, int trial) {
    std::mt19937_64 rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(d),
                                       static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(trial)));
    const SynthPair instance = synth_pair(n, d, cfg.noise_sigma, rng);

    TrialRecord rec;
    rec.d = d;
    rec.n = n;
    rec.trial = trial;
    rec.e_baseline = sanitized(normalized_discrepancy(
        instance.target.coords(), apply(instance.relating, instance.source).coords()));

    rec.e_procrustes = INFINITY;
    rec.e_gd_refined = INFINITY;
    try {
        AlignmentResult closed = align(instance.target, instance.source);
        rec.e_procrustes = sanitized(closed.residual);
        try {
            rec.e_gd_refined =
                sanitized(refine(instance.target, instance.source, closed.estimate, cfg.gd)
                              .residual);
        } catch (const NumericError&) {
        }
    } catch (const NumericError&) {
    }

    rec.e_gd = INFINITY;
    try {
        AlignmentResult gd = gd_align(instance.target, instance.source, cfg.gd);
        rec.e_gd = sanitized(gd.residual);
        rec.gd_iterations = gd.iterations;
    } catch (const NumericError&) {
    }
    return rec;
}

MethodStats method_stats(const std::vector<double>& values, double k, int trials) {
    MethodStats s;
    s.q = quartiles(values);
    s.outlier_count = count_outliers(values, k);
    s.outlier_prob = static_cast<double>(s.outlier_count) / static_cast<double>(trials);
    return s;
}

template <typename Jobs>
BenchmarkRun run_with(const BenchmarkConfig& cfg, Jobs&& for_each_job) {
    check_config(cfg);
    const std::size_t total =
        cfg.dims.size() * cfg.sizes.size() * static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRecord> records(total);
    for_each_job(static_cast<std::ptrdiff_t>(total), [&](std::ptrdiff_t job) {
        const std::ptrdiff_t per_dim =
            static_cast<std::ptrdiff_t>(cfg.sizes.size()) * cfg.trials;
        const int d = cfg.dims[static_cast<std::size_t>(job / per_dim)];
        const int n = cfg.sizes[static_cast<std::size_t>((job % per_dim) / cfg.trials)];
        const int trial = static_cast<int>(job % cfg.trials);
        records[static_cast<std::size_t>(job)] = run_trial(cfg, d, n, trial);
    });
    BenchmarkSummary summary = summarize(records, cfg);
    return BenchmarkRun{std::move(records), std::move(summary)};
}

} // namespace

SynthPair synth_pair(int n, int d, double sigma, std::mt19937_64& rng) {
    if (n < 1 || d < 1) throw ValidationError("synth_pair: need n >= 1 and d >= 1");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("synth_pair: sigma must be finite and >= 0");
    }

    HUnitary relating = random_hunitary(d, rng);
    Mat source(d + 1, n);
    Mat target(d + 1, n);
    for (int j = 0; j < n; ++j) {
        const LoidPoint point = lift(normal_vector(d, rng));
        const Vec eps = sigma * normal_vector(d, rng);
        source.col(j) = point.coords();
        target.col(j) = apply(relating, apply(translation_matrix(eps), point)).coords();
    }
    return SynthPair{PointSet(std::move(target)), PointSet(std::move(source)),
                     std::move(relating)};
}

Quartiles quartiles(const std::vector<double>& values) {
    if (values.empty()) throw ValidationError("quartiles: empty list");
    std::vector<double> v(values);
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();

    auto median_of = [&](std::size_t lo, std::size_t hi) {  // half-open, nonempty
        const std::size_t len = hi - lo;
        const std::size_t mid = lo + len / 2;
        return (len % 2 == 1) ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    };

    Quartiles q;
    q.q2 = median_of(0, n);
    if (n == 1) {
        q.q1 = q.q3 = q.q2;
    } else {
        q.q1 = median_of(0, n / 2);          // strictly below the median position
        q.q3 = median_of(n - n / 2, n);      // strictly above it
    }
    return q;
}

int count_outliers(const std::vector<double>& values, double k) {
    if (values.empty()) throw ValidationError("count_outliers: empty list");
    if (!(k > 0.0)) throw ValidationError("count_outliers: k must be positive");
    const Quartiles q = quartiles(values);
    const double spread = q.q3 - q.q1;
    int count = 0;
    for (double v : values) {
        if (std::isinf(v)) {
            ++count;  // failed run
        } else if (spread == 0.0 ? v != q.q2 : std::abs(v - q.q2) > k * 0.5 * spread) {
            ++count;
        }
    }
    return count;
}

BenchmarkSummary summarize(const std::vector<TrialRecord>& records, const BenchmarkConfig& cfg) {
    check_config(cfg);
    const std::size_t expected =
        cfg.dims.size() * cfg.sizes.size() * static_cast<std::size_t>(cfg.trials);
    if (records.size() != expected) {
        throw ValidationError("summarize: record count does not match the config");
    }

    BenchmarkSummary summary;
    std::size_t at = 0;
    for (int d : cfg.dims) {
        for (int n : cfg.sizes) {
            std::vector<double> baseline, procrustes, gd, gd_refined;
            baseline.reserve(cfg.trials);
            procrustes.reserve(cfg.trials);
            gd.reserve(cfg.trials);
            gd_refined.reserve(cfg.trials);
            for (int t = 0; t < cfg.trials; ++t, ++at) {
                const TrialRecord& r = records[at];
                if (r.d != d || r.n != n || r.trial != t) {
                    throw ValidationError("summarize: records are not ordered by (d, n, trial)");
                }
                baseline.push_back(r.e_baseline);
                procrustes.push_back(r.e_procrustes);
                gd.push_back(r.e_gd);
                gd_refined.push_back(r.e_gd_refined);
            }
            CellSummary cell;
            cell.d = d;
            cell.n = n;
            cell.trials = cfg.trials;
            cell.baseline = method_stats(baseline, cfg.outlier_k, cfg.trials);
            cell.procrustes = method_stats(procrustes, cfg.outlier_k, cfg.trials);
            cell.gd = method_stats(gd, cfg.outlier_k, cfg.trials);
            cell.gd_refined = method_stats(gd_refined, cfg.outlier_k, cfg.trials);
            summary.cells.push_back(std::move(cell));
        }
    }

    const double total = static_cast<double>(records.size());
    auto pool = [&](auto pick) {
        PooledOutliers p;
        for (const CellSummary& cell : summary.cells) p.outlier_count += pick(cell).outlier_count;
        p.outlier_prob = static_cast<double>(p.outlier_count) / total;
        return p;
    };
    summary.baseline = pool([](const CellSummary& c) -> const MethodStats& { return c.baseline; });
    summary.procrustes =
        pool([](const CellSummary& c) -> const MethodStats& { return c.procrustes; });
    summary.gd = pool([](const CellSummary& c) -> const MethodStats& { return c.gd; });
    summary.gd_refined =
        pool([](const CellSummary& c) -> const MethodStats& { return c.gd_refined; });
    return summary;
}

BenchmarkRun run_benchmark(const BenchmarkConfig& cfg) {
    return run_with(cfg, [](std::ptrdiff_t total, auto&& job) {
        std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < total; ++i) {
            try {
                job(i);
            } catch (...) {
#pragma omp critical(hyproc_bench_failure)
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
    });
}

BenchmarkRun run_benchmark_serial(const BenchmarkConfig& cfg) {
    return run_with(cfg, [](std::ptrdiff_t total, auto&& job) {
        for (std::ptrdiff_t i = 0; i < total; ++i) job(i);
    });
}

} // namespace hyproc
