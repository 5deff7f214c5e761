#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hyproc/refine.hpp"

namespace hyproc {

/// Gradient descent exactly as published: fixed step, every iterate accepted.
/// The benchmark defaults to this so its failure statistics are comparable.
inline GdConfig plain_gd_config() {
    GdConfig cfg;
    cfg.backtracking = false;
    return cfg;
}

/// Monte-Carlo experiment definition: for every (dimension, set size) cell,
/// `trials` noisy registration instances are synthesized and solved by each
/// estimator.
struct BenchmarkConfig {
    std::vector<int> dims{2, 4};
    std::vector<int> sizes{5, 6, 7, 8, 9, 10};
    int trials = 1000;
    double noise_sigma = 1e-2;
    double outlier_k = 5.0;
    std::uint64_t seed = 0;
    GdConfig gd = plain_gd_config();
};

/// One synthesized instance and the outcome of every estimator on it. A
/// failed estimator run is recorded as an infinite discrepancy.
struct TrialRecord {
    int d = 0;
    int n = 0;
    int trial = 0;
    double e_baseline = 0.0;    ///< noise floor: target vs true-isometry image
    double e_procrustes = 0.0;  ///< closed-form estimate
    double e_gd = 0.0;          ///< gradient descent from identity
    double e_gd_refined = 0.0;  ///< gradient descent seeded with the closed form
    int gd_iterations = 0;
};

struct Quartiles {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
};

/// Median-exclusive quartiles: Q2 is the median, Q1/Q3 are medians of the
/// strict lower/upper halves; a single value is its own three quartiles.
Quartiles quartiles(const std::vector<double>& values);

/// Entries with |v - Q2| > k * (Q3 - Q1) / 2. When the quartile range
/// collapses to zero the limit reading applies: anything off the median
/// counts. Infinite values always count (failed runs are outliers).
int count_outliers(const std::vector<double>& values, double k);

struct MethodStats {
    Quartiles q;
    int outlier_count = 0;
    double outlier_prob = 0.0;
};

struct CellSummary {
    int d = 0;
    int n = 0;
    int trials = 0;
    MethodStats baseline;
    MethodStats procrustes;
    MethodStats gd;
    MethodStats gd_refined;
};

struct PooledOutliers {
    long long outlier_count = 0;
    double outlier_prob = 0.0;
};

struct BenchmarkSummary {
    std::vector<CellSummary> cells;
    PooledOutliers baseline;
    PooledOutliers procrustes;
    PooledOutliers gd;
    PooledOutliers gd_refined;
};

struct BenchmarkRun {
    std::vector<TrialRecord> records;  ///< ordered by (d, n, trial)
    BenchmarkSummary summary;
};

struct SynthPair {
    PointSet target;
    PointSet source;
    HUnitary relating;  ///< ground truth: target = relating * (per-point noise) * source
};

/// Draws a random instance: a random isometry R*, source points lifted from
/// standard normal parameters, and targets R* * R_eps_n * source_n with
/// per-point noise translations eps_n ~ sigma * N(0, I).
SynthPair synth_pair(int n, int d, double sigma, std::mt19937_64& rng);

/// Aggregates records into per-cell quartile/outlier statistics plus pooled
/// per-method outlier totals. Deterministic given the record order.
BenchmarkSummary summarize(const std::vector<TrialRecord>& records, const BenchmarkConfig& cfg);

/// Runs every (d, n, trial) job. Trials use independent RNG substreams keyed
/// by (seed, d, n, trial), so results do not depend on execution order; the
/// parallel and serial versions produce identical records.
BenchmarkRun run_benchmark(const BenchmarkConfig& cfg);

/// Reference implementation: same jobs, plain sequential loop.
BenchmarkRun run_benchmark_serial(const BenchmarkConfig& cfg);

} // namespace hyproc
