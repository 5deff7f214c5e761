#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyproc/io.hpp"
#include "hyproc/rng.hpp"

namespace {

using namespace hyproc;

const std::vector<std::string> kModelNames{"loid", "poincare", "euclidean"};

struct AlignArgs {
    std::string target;
    std::string source;
    std::string weights;
    std::string model;
    std::string out;
    bool run_refine = false;
};

struct BenchmarkArgs {
    std::string config;
    std::string out_dir;
    bool serial = false;
};

struct ConvertArgs {
    std::string in;
    std::string from;
    std::string to;
    std::string out;
};

struct SynthArgs {
    int d = 2;
    int n = 10;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string out_prefix;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
    }
}

int run_align(const AlignArgs& args) {
    std::optional<Model> as;
    if (!args.model.empty()) as = parse_model(args.model);
    const PointSet target = read_pointset(args.target, as);
    const PointSet source = read_pointset(args.source, as);
    std::vector<double> weights;
    if (!args.weights.empty()) weights = read_weights(args.weights);

    AlignmentResult result = align(target, source, weights);
    if (args.run_refine) {
        result = refine(target, source, result.estimate, GdConfig{});
    }
    emit(alignment_to_json(result), args.out);
    return 0;
}

int run_benchmark_cmd(const BenchmarkArgs& args) {
    const BenchmarkConfig cfg = read_benchmark_config(args.config);
    const BenchmarkRun run = args.serial ? run_benchmark_serial(cfg) : run_benchmark(cfg);
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    write_text_file((dir / "trials.csv").string(), trials_to_csv(run.records));
    write_text_file((dir / "summary.json").string(), summary_to_json(run.summary, cfg));
    std::cout << "wrote " << (dir / "trials.csv").string() << " and "
              << (dir / "summary.json").string() << "\n";
    return 0;
}

int run_convert(const ConvertArgs& args) {
    const Model from = parse_model(args.from);
    const Model to = parse_model(args.to);
    if (to == Model::euclidean) {
        throw ValidationError("convert: writing raw parameter rows loses the model; "
                              "target must be loid or poincare");
    }
    const PointSet set = read_pointset(args.in, from);
    write_pointset(args.out, set, to);
    return 0;
}

int run_synth(const SynthArgs& args) {
    std::mt19937_64 rng(substream_seed(args.seed, static_cast<std::uint64_t>(args.d),
                                       static_cast<std::uint64_t>(args.n), 0));
    const SynthPair instance = synth_pair(args.n, args.d, args.sigma, rng);
    write_pointset(args.out_prefix + "_target.csv", instance.target, Model::loid);
    write_pointset(args.out_prefix + "_source.csv", instance.source, Model::loid);
    write_text_file(args.out_prefix + "_R_true.json", hunitary_to_json(instance.relating));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point-set registration on the hyperboloid model of hyperbolic space"};
    app.require_subcommand(1);

    AlignArgs align_args;
    CLI::App* align_cmd =
        app.add_subcommand("align", "Estimate the isometry mapping a source set onto a target");
    align_cmd->add_option("--target", align_args.target, "Target point file")->required();
    align_cmd->add_option("--source", align_args.source, "Source point file")->required();
    align_cmd->add_option("--weights", align_args.weights, "Per-pair weight file");
    align_cmd->add_option("--model", align_args.model, "Reinterpret input rows under this model")
        ->check(CLI::IsMember(kModelNames));
    align_cmd->add_flag("--refine", align_args.run_refine,
                        "Polish the closed-form estimate with gradient descent");
    align_cmd->add_option("--out", align_args.out, "Write the JSON report here (default stdout)");

    BenchmarkArgs bench_args;
    CLI::App* bench_cmd =
        app.add_subcommand("benchmark", "Run the Monte-Carlo noise experiment");
    bench_cmd->add_option("--config", bench_args.config, "JSON config file")->required();
    bench_cmd->add_option("--out", bench_args.out_dir, "Output directory")->required();
    bench_cmd->add_flag("--serial", bench_args.serial,
                        "Use the sequential reference implementation");

    ConvertArgs convert_args;
    CLI::App* convert_cmd =
        app.add_subcommand("convert", "Rewrite a point file in another model's coordinates");
    convert_cmd->add_option("--in", convert_args.in, "Input point file")->required();
    convert_cmd->add_option("--from", convert_args.from, "Convention of the input rows")
        ->required()
        ->check(CLI::IsMember(kModelNames));
    convert_cmd->add_option("--to", convert_args.to, "Convention to write")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>{"loid", "poincare"}));
    convert_cmd->add_option("--out", convert_args.out, "Output point file")->required();

    SynthArgs synth_args;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "Generate a random noisy registration instance");
    synth_cmd->add_option("--d", synth_args.d, "Hyperbolic dimension")->required();
    synth_cmd->add_option("--n", synth_args.n, "Number of points")->required();
    synth_cmd->add_option("--sigma", synth_args.sigma, "Noise scale")->required();
    synth_cmd->add_option("--seed", synth_args.seed, "RNG seed")->required();
    synth_cmd->add_option("--out-prefix", synth_args.out_prefix,
                          "Writes <prefix>_target.csv, <prefix>_source.csv, <prefix>_R_true.json")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*align_cmd) return run_align(align_args);
        if (*bench_cmd) return run_benchmark_cmd(bench_args);
        if (*convert_cmd) return run_convert(convert_args);
        return run_synth(synth_args);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
