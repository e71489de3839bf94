// treepara: command-line front end for tree building, Haar transforms,
// paraproduct decompositions and regularity verification.

#include "treepara/error.hpp"
#include "treepara/pipeline.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitInputError = 2;

void init_logging() {
    auto logger = spdlog::stderr_color_mt("treepara");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("TREEPARA_LOG");
    spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

struct Flags {
    std::string config;
    std::string signal, matrix, points, points_y, tree, tree_y, measure, nonlinearity, out;
    std::string linkage, family, amplitude;
    double alpha = 0.0;
    std::size_t quad_order = 0, threads = 0, n = 0, m = 0, dims = 0, branching_cap = 0;
    std::size_t min_fit_scale = 0;
    std::uint64_t seed = 0;
    bool include_coarse = false;
};

/// Flags given on the command line override the config file.
treepara::PipelineConfig merge(const CLI::App& app, const Flags& f) {
    using namespace treepara;
    PipelineConfig c = f.config.empty() ? PipelineConfig{} : load_config_file(f.config);
    const auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--signal")) c.signal = f.signal;
    if (given("--matrix")) c.matrix = f.matrix;
    if (given("--points")) c.points = f.points;
    if (given("--points-y")) c.points_y = f.points_y;
    if (given("--tree")) c.tree = f.tree;
    if (given("--tree-y")) c.tree_y = f.tree_y;
    if (given("--measure")) c.measure = parse_measure_mode(f.measure);
    if (given("--alpha")) c.alpha = f.alpha;
    if (given("--nonlinearity")) c.nonlinearity = f.nonlinearity;
    if (given("--include-coarse")) c.include_coarse = f.include_coarse;
    if (given("--quad-order")) c.quad_order = f.quad_order;
    if (given("--seed")) c.seed = f.seed;
    if (given("--threads")) c.threads = f.threads;
    if (given("--out")) c.out = f.out;
    if (given("--n")) c.n = f.n;
    if (given("--m")) c.m = f.m;
    if (given("--dims")) c.dims = f.dims;
    if (given("--linkage")) c.linkage = parse_linkage(f.linkage);
    if (given("--branching-cap")) c.branching_cap = f.branching_cap;
    if (given("--family")) c.family = parse_family(f.family);
    if (given("--amplitude")) c.amplitude = parse_amplitude(f.amplitude);
    if (given("--min-fit-scale")) c.decay.min_fit_scale = f.min_fit_scale;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    init_logging();

    CLI::App app{"Haar analysis and paraproduct decompositions on partition trees", "treepara"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "JSON config file; explicit flags win")->check(CLI::ExistingFile);
    app.add_option("--signal", f.signal, "1D signal CSV (id,value)");
    app.add_option("--matrix", f.matrix, "2D signal CSV (id,0,1,...)");
    app.add_option("--points", f.points, "point CSV (id,x0,...) for the X tree");
    app.add_option("--points-y", f.points_y, "point CSV for the Y tree");
    app.add_option("--tree", f.tree, "dyadic | cluster | spec:PATH");
    app.add_option("--tree-y", f.tree_y, "tree source for the Y axis (default: --tree)");
    app.add_option("--measure", f.measure, "normalized | counting");
    app.add_option("--alpha", f.alpha, "Hoelder exponent in (0, 1/2)");
    app.add_option("--nonlinearity", f.nonlinearity, "identity, square, cube, sin, exp_clamped, tanh, softplus, abs_pow_1_5");
    app.add_flag("--include-coarse", f.include_coarse, "move the coarse term into the approximation");
    app.add_option("--quad-order", f.quad_order, "Gauss-Legendre order for residual terms");
    app.add_option("--seed", f.seed, "synthesis seed");
    app.add_option("--threads", f.threads, "worker threads (0: hardware)");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--n", f.n, "number of points (X axis)");
    app.add_option("--m", f.m, "number of points (Y axis)");
    app.add_option("--dims", f.dims, "1 or 2, for synth and input-free verify");
    app.add_option("--linkage", f.linkage, "single | complete | average");
    app.add_option("--branching-cap", f.branching_cap, "max children per cluster node");
    app.add_option("--family", f.family, "coefficient family for transform: s, d, omega, beta, gamma, alpha");
    app.add_option("--amplitude", f.amplitude, "uniform | rademacher");
    app.add_option("--min-fit-scale", f.min_fit_scale, "smallest scale used in decay fits");

    app.add_subcommand("tree", "build and validate a partition tree");
    app.add_subcommand("transform", "Haar coefficients and their decay");
    app.add_subcommand("para", "paraproduct decomposition of A(f)");
    app.add_subcommand("verify", "check the regularity gain of the residual");
    app.add_subcommand("synth", "synthesize a signal of prescribed regularity");
    app.add_subcommand("report", "pairwise and wavelet Hoelder norms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const auto config = merge(app, f);
        spdlog::debug("running {} with output in {}", command, config.out.string());
        const auto result = treepara::run_command(command, config);
        for (const auto& path : result.files) spdlog::info("wrote {}", path.string());
        for (const auto& msg : result.messages) std::cout << msg << '\n';
        return result.exit_code == 0 ? 0 : kExitVerifyFail;
    } catch (const treepara::Error& e) {
        std::cerr << "treepara " << command << ": " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "treepara " << command << ": " << e.what() << '\n';
        return kExitInputError;
    }
}
