#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyproc/bench.hpp"

namespace hyproc {

/// Coordinate convention of a point file. Hyperboloid rows carry d+1
/// numbers; ball and parameter rows carry d and are lifted on read.
enum class Model { loid, poincare, euclidean };

Model parse_model(const std::string& name);
std::string model_name(Model m);

/// Shortest text form that parses back to exactly the same double
/// (17 significant digits).
std::string format_double(double x);

/// Point-set text formats. CSV: a `model,d,n` header pair followed by one
/// point per row. JSON: {"model", "d", "n", "points"}. `as` controls the
/// coordinate convention written out.
std::string pointset_to_csv(const PointSet& set, Model as);
std::string pointset_to_json(const PointSet& set, Model as);

/// Parses either format (sniffed by the leading character). The optional
/// override reinterprets the rows under a different convention than the file
/// declares, e.g. to lift raw parameter rows onto the hyperboloid.
PointSet parse_pointset(const std::string& text, std::optional<Model> reinterpret_as = {});

PointSet read_pointset(const std::string& path, std::optional<Model> reinterpret_as = {});
void write_pointset(const std::string& path, const PointSet& set, Model as);

/// Whitespace/comma separated reals, one weight per point. Positivity is
/// enforced where the weights are consumed.
std::vector<double> parse_weights(const std::string& text);
std::vector<double> read_weights(const std::string& path);

std::string hunitary_to_json(const HUnitary& r);
HUnitary hunitary_from_json(const std::string& text);

/// One row per trial: d,n,trial,e_baseline,e_procrustes,e_gd,e_gd_refined,
/// gd_iterations. Failed runs appear as inf.
std::string trials_to_csv(const std::vector<TrialRecord>& records);

/// Per-cell quartile/outlier statistics plus pooled per-method outlier
/// totals, with the generating config echoed.
std::string summary_to_json(const BenchmarkSummary& summary, const BenchmarkConfig& cfg);

/// Estimate report: full matrix, its translation/rotation factors, residual,
/// and iteration diagnostics.
std::string alignment_to_json(const AlignmentResult& result);

/// Config file: JSON object; every key optional, unknown keys rejected.
/// Keys: dims, sizes, trials, noise_sigma, outlier_k, seed,
/// gd{alpha, max_iters, stop_tol, backtracking, record_history}.
BenchmarkConfig benchmark_config_from_json(const std::string& text);
BenchmarkConfig read_benchmark_config(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace hyproc
