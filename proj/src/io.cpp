#include "hyproc/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "hyproc/poincare.hpp"

namespace hyproc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trimmed(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trimmed(field));
    return fields;
}

double parse_double(const std::string& token, const char* context) {
    const std::string t = trimmed(token);
    char* end = nullptr;
    const double value = t.empty() ? 0.0 : std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ValidationError(std::string(context) + ": bad number '" + t + "'");
    }
    return value;
}

long long parse_int(const std::string& token, const char* context) {
    const std::string t = trimmed(token);
    char* end = nullptr;
    const long long value = t.empty() ? 0 : std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size()) {
        throw ValidationError(std::string(context) + ": bad integer '" + t + "'");
    }
    return value;
}

int expected_width(Model m, int d) { return m == Model::loid ? d + 1 : d; }

// Rebuilds a point set from raw rows read under `declared`, optionally
// reinterpreting the same numbers under another convention.
PointSet from_rows(const std::vector<Vec>& rows, Model declared,
                   std::optional<Model> reinterpret_as) {
    const Model effective = reinterpret_as.value_or(declared);
    const int width = static_cast<int>(rows.front().size());
    const int d = effective == Model::loid ? width - 1 : width;
    if (d < 1) {
        throw ValidationError("pointset: rows of width " + std::to_string(width) +
                              " cannot hold " + model_name(effective) + " points");
    }
    switch (effective) {
        case Model::loid: {
            Mat coords(width, static_cast<Eigen::Index>(rows.size()));
            for (std::size_t j = 0; j < rows.size(); ++j) {
                coords.col(static_cast<Eigen::Index>(j)) = rows[j];
            }
            return PointSet(std::move(coords));
        }
        case Model::euclidean: {
            Mat params(width, static_cast<Eigen::Index>(rows.size()));
            for (std::size_t j = 0; j < rows.size(); ++j) {
                params.col(static_cast<Eigen::Index>(j)) = rows[j];
            }
            return PointSet::from_params(params);
        }
        case Model::poincare: {
            std::vector<LoidPoint> lifted;
            lifted.reserve(rows.size());
            for (const Vec& row : rows) lifted.push_back(from_poincare(PoincarePoint(row)));
            return PointSet(lifted);
        }
    }
    throw ValidationError("pointset: unknown model");
}

Vec row_coordinates(const PointSet& set, Model as, int j) {
    switch (as) {
        case Model::loid: return set.coords().col(j);
        case Model::euclidean: return set.params().col(j);
        case Model::poincare: return to_poincare(set.point(j)).coords();
    }
    throw ValidationError("pointset: unknown model");
}

PointSet pointset_from_csv(const std::string& text, std::optional<Model> reinterpret_as) {
    std::stringstream ss(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(ss, line)) {
        const std::string t = trimmed(line);
        if (!t.empty()) lines.push_back(t);
    }
    if (lines.size() < 2 || split_fields(lines[0]) != std::vector<std::string>{"model", "d", "n"}) {
        throw ValidationError("pointset csv: expected a 'model,d,n' header");
    }
    const std::vector<std::string> head = split_fields(lines[1]);
    if (head.size() != 3) {
        throw ValidationError("pointset csv: header needs exactly model, d and n values");
    }
    const Model declared = parse_model(head[0]);
    const int d = static_cast<int>(parse_int(head[1], "pointset csv d"));
    const long long n = parse_int(head[2], "pointset csv n");
    if (d < 1 || n < 1) throw ValidationError("pointset csv: d and n must be >= 1");
    if (static_cast<long long>(lines.size()) - 2 != n) {
        throw ValidationError("pointset csv: header announces " + std::to_string(n) +
                              " points but file has " + std::to_string(lines.size() - 2) +
                              " rows");
    }

    const int width = expected_width(declared, d);
    std::vector<Vec> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split_fields(lines[i]);
        if (static_cast<int>(fields.size()) != width) {
            throw ValidationError("pointset csv: row " + std::to_string(i - 1) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(width));
        }
        Vec row(width);
        for (int c = 0; c < width; ++c) row[c] = parse_double(fields[c], "pointset csv");
        rows.push_back(std::move(row));
    }
    return from_rows(rows, declared, reinterpret_as);
}

ordered_json parse_json(const std::string& text, const char* context) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& err) {
        throw ValidationError(std::string(context) + ": " + err.what());
    }
}

PointSet pointset_from_json(const std::string& text, std::optional<Model> reinterpret_as) {
    const ordered_json j = parse_json(text, "pointset json");
    try {
        const Model declared = parse_model(j.at("model").get<std::string>());
        const int d = j.at("d").get<int>();
        const long long n = j.at("n").get<long long>();
        if (d < 1 || n < 1) throw ValidationError("pointset json: d and n must be >= 1");
        const auto& points = j.at("points");
        if (!points.is_array() || static_cast<long long>(points.size()) != n) {
            throw ValidationError("pointset json: 'points' must hold exactly n rows");
        }
        const int width = expected_width(declared, d);
        std::vector<Vec> rows;
        rows.reserve(points.size());
        for (const auto& p : points) {
            if (!p.is_array() || static_cast<int>(p.size()) != width) {
                throw ValidationError("pointset json: every row needs " +
                                      std::to_string(width) + " coordinates");
            }
            Vec row(width);
            for (int c = 0; c < width; ++c) row[c] = p.at(c).get<double>();
            rows.push_back(std::move(row));
        }
        return from_rows(rows, declared, reinterpret_as);
    } catch (const ordered_json::exception& err) {
        throw ValidationError(std::string("pointset json: ") + err.what());
    }
}

ordered_json matrix_rows(const Mat& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json vector_entries(const Vec& v) {
    ordered_json entries = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) entries.push_back(v[i]);
    return entries;
}

Mat matrix_from_rows(const ordered_json& rows, const char* context) {
    if (!rows.is_array() || rows.empty()) {
        throw ValidationError(std::string(context) + ": expected a nonempty array of rows");
    }
    const Eigen::Index nrows = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index ncols = static_cast<Eigen::Index>(rows.at(0).size());
    Mat m(nrows, ncols);
    for (Eigen::Index i = 0; i < nrows; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != ncols) {
            throw ValidationError(std::string(context) + ": ragged matrix rows");
        }
        for (Eigen::Index j = 0; j < ncols; ++j) {
            m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
        }
    }
    return m;
}

// JSON has no infinity; failed-run markers fall back to strings.
ordered_json json_number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

ordered_json stats_json(const MethodStats& s) {
    ordered_json j;
    j["q1"] = json_number(s.q.q1);
    j["q2"] = json_number(s.q.q2);
    j["q3"] = json_number(s.q.q3);
    j["outlier_count"] = s.outlier_count;
    j["outlier_prob"] = s.outlier_prob;
    return j;
}

ordered_json pooled_json(const PooledOutliers& p) {
    ordered_json j;
    j["outlier_count"] = p.outlier_count;
    j["outlier_prob"] = p.outlier_prob;
    return j;
}

ordered_json gd_json(const GdConfig& cfg) {
    ordered_json j;
    j["alpha"] = cfg.alpha;
    j["max_iters"] = cfg.max_iters;
    j["stop_tol"] = cfg.stop_tol;
    j["backtracking"] = cfg.backtracking;
    j["record_history"] = cfg.record_history;
    return j;
}

void apply_gd_key(GdConfig& gd, const std::string& key, const ordered_json& value) {
    if (key == "alpha") {
        gd.alpha = value.get<double>();
    } else if (key == "max_iters") {
        gd.max_iters = value.get<int>();
    } else if (key == "stop_tol") {
        gd.stop_tol = value.get<double>();
    } else if (key == "backtracking") {
        gd.backtracking = value.get<bool>();
    } else if (key == "record_history") {
        gd.record_history = value.get<bool>();
    } else {
        throw ValidationError("benchmark config: unknown gd key '" + key + "'");
    }
}

} // namespace

Model parse_model(const std::string& name) {
    const std::string t = trimmed(name);
    if (t == "loid") return Model::loid;
    if (t == "poincare") return Model::poincare;
    if (t == "euclidean") return Model::euclidean;
    throw ValidationError("unknown model '" + t + "' (expected loid, poincare or euclidean)");
}

std::string model_name(Model m) {
    switch (m) {
        case Model::loid: return "loid";
        case Model::poincare: return "poincare";
        case Model::euclidean: return "euclidean";
    }
    throw ValidationError("unknown model");
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string pointset_to_csv(const PointSet& set, Model as) {
    std::string out = "model,d,n\n";
    out += model_name(as) + "," + std::to_string(set.dim()) + "," + std::to_string(set.size()) +
           "\n";
    for (int j = 0; j < set.size(); ++j) {
        const Vec row = row_coordinates(set, as, j);
        for (Eigen::Index c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string pointset_to_json(const PointSet& set, Model as) {
    ordered_json j;
    j["model"] = model_name(as);
    j["d"] = set.dim();
    j["n"] = set.size();
    ordered_json points = ordered_json::array();
    for (int i = 0; i < set.size(); ++i) {
        points.push_back(vector_entries(row_coordinates(set, as, i)));
    }
    j["points"] = std::move(points);
    return j.dump(2) + "\n";
}

PointSet parse_pointset(const std::string& text, std::optional<Model> reinterpret_as) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ValidationError("pointset: empty input");
    return text[first] == '{' ? pointset_from_json(text, reinterpret_as)
                              : pointset_from_csv(text, reinterpret_as);
}

PointSet read_pointset(const std::string& path, std::optional<Model> reinterpret_as) {
    return parse_pointset(read_text_file(path), reinterpret_as);
}

void write_pointset(const std::string& path, const PointSet& set, Model as) {
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    write_text_file(path, json ? pointset_to_json(set, as) : pointset_to_csv(set, as));
}

std::vector<double> parse_weights(const std::string& text) {
    std::string normalized = text;
    for (char& c : normalized) {
        if (c == ',') c = ' ';
    }
    std::stringstream ss(normalized);
    std::vector<double> weights;
    std::string token;
    while (ss >> token) weights.push_back(parse_double(token, "weights"));
    if (weights.empty()) throw ValidationError("weights: no values found");
    return weights;
}

std::vector<double> read_weights(const std::string& path) {
    return parse_weights(read_text_file(path));
}

std::string hunitary_to_json(const HUnitary& r) {
    ordered_json j;
    j["d"] = r.dim();
    j["matrix"] = matrix_rows(r.matrix());
    return j.dump(2) + "\n";
}

HUnitary hunitary_from_json(const std::string& text) {
    const ordered_json j = parse_json(text, "isometry json");
    try {
        const Mat m = matrix_from_rows(j.at("matrix"), "isometry json");
        if (j.contains("d") && j.at("d").get<int>() != static_cast<int>(m.rows()) - 1) {
            throw ValidationError("isometry json: d does not match the matrix size");
        }
        return HUnitary(m);
    } catch (const ordered_json::exception& err) {
        throw ValidationError(std::string("isometry json: ") + err.what());
    }
}

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
    std::string out = "d,n,trial,e_baseline,e_procrustes,e_gd,e_gd_refined,gd_iterations\n";
    for (const TrialRecord& r : records) {
        out += std::to_string(r.d) + ',' + std::to_string(r.n) + ',' + std::to_string(r.trial) +
               ',' + format_double(r.e_baseline) + ',' + format_double(r.e_procrustes) + ',' +
               format_double(r.e_gd) + ',' + format_double(r.e_gd_refined) + ',' +
               std::to_string(r.gd_iterations) + '\n';
    }
    return out;
}

std::string summary_to_json(const BenchmarkSummary& summary, const BenchmarkConfig& cfg) {
    ordered_json j;
    ordered_json config;
    config["dims"] = cfg.dims;
    config["sizes"] = cfg.sizes;
    config["trials"] = cfg.trials;
    config["noise_sigma"] = cfg.noise_sigma;
    config["outlier_k"] = cfg.outlier_k;
    config["seed"] = cfg.seed;
    config["gd"] = gd_json(cfg.gd);
    j["config"] = std::move(config);

    ordered_json cells = ordered_json::array();
    for (const CellSummary& cell : summary.cells) {
        ordered_json c;
        c["d"] = cell.d;
        c["n"] = cell.n;
        c["trials"] = cell.trials;
        c["baseline"] = stats_json(cell.baseline);
        c["procrustes"] = stats_json(cell.procrustes);
        c["gd"] = stats_json(cell.gd);
        c["gd_refined"] = stats_json(cell.gd_refined);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);

    ordered_json pooled;
    pooled["baseline"] = pooled_json(summary.baseline);
    pooled["procrustes"] = pooled_json(summary.procrustes);
    pooled["gd"] = pooled_json(summary.gd);
    pooled["gd_refined"] = pooled_json(summary.gd_refined);
    j["pooled"] = std::move(pooled);
    return j.dump(2) + "\n";
}

std::string alignment_to_json(const AlignmentResult& result) {
    const IsometryFactors parts = factor(result.estimate);
    ordered_json j;
    j["d"] = result.estimate.dim();
    j["residual"] = result.residual;
    j["matrix"] = matrix_rows(result.estimate.matrix());
    j["translation"] = vector_entries(parts.translation);
    j["rotation"] = matrix_rows(parts.rotation);
    j["iterations"] = result.iterations;
    j["gradient_terms_skipped"] = result.gradient_terms_skipped;
    return j.dump(2) + "\n";
}

BenchmarkConfig benchmark_config_from_json(const std::string& text) {
    const ordered_json j = parse_json(text, "benchmark config");
    if (!j.is_object()) throw ValidationError("benchmark config: expected a JSON object");
    BenchmarkConfig cfg;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "dims") {
                cfg.dims = value.get<std::vector<int>>();
            } else if (key == "sizes") {
                cfg.sizes = value.get<std::vector<int>>();
            } else if (key == "trials") {
                cfg.trials = value.get<int>();
            } else if (key == "noise_sigma") {
                cfg.noise_sigma = value.get<double>();
            } else if (key == "outlier_k") {
                cfg.outlier_k = value.get<double>();
            } else if (key == "seed") {
                if (value.is_number_integer() && value.get<long long>() < 0) {
                    throw ValidationError("benchmark config: seed must be nonnegative");
                }
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "gd") {
                if (!value.is_object()) {
                    throw ValidationError("benchmark config: gd must be an object");
                }
                for (const auto& [gd_key, gd_value] : value.items()) {
                    apply_gd_key(cfg.gd, gd_key, gd_value);
                }
            } else {
                throw ValidationError("benchmark config: unknown key '" + key + "'");
            }
        }
    } catch (const ordered_json::exception& err) {
        throw ValidationError(std::string("benchmark config: ") + err.what());
    }
    return cfg;
}

BenchmarkConfig read_benchmark_config(const std::string& path) {
    return benchmark_config_from_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw ValidationError("failed to read file: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed to write file: " + path);
}

} // namespace hyproc
