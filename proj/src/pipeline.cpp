#include "treepara/pipeline.hpp"

#include "treepara/csv.hpp"
#include "treepara/error.hpp"
#include "treepara/haar_basis.hpp"
#include "treepara/nonlinearity.hpp"
#include "treepara/parallel.hpp"
#include "treepara/point_set.hpp"
#include "treepara/tree_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

namespace treepara {

namespace fs = std::filesystem;

namespace {

fs::path resolve(const fs::path& base, const std::string& text) {
    const fs::path p(text);
    return p.is_relative() && !base.empty() ? base / p : p;
}

template <class T>
T get_as(const nlohmann::json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::SchemaError, "config key \"" + key + "\" has the wrong type");
    }
}

std::size_t get_count(const nlohmann::json& value, const std::string& key) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw Error(ErrorCode::SchemaError, "config key \"" + key + "\" must be a non-negative integer");
    }
    return value.get<std::size_t>();
}

void apply_thresholds(GainThresholds& t, const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "\"thresholds\" must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "gain_factor") {
            t.gain_factor = get_as<double>(value, key);
        } else if (key == "slope_margin") {
            t.slope_margin = get_as<double>(value, key);
        } else if (key == "term_margin") {
            t.term_margin = get_as<double>(value, key);
        } else if (key == "exponent_tolerance") {
            t.exponent_tolerance = get_as<double>(value, key);
        } else {
            throw Error(ErrorCode::SchemaError, "unknown threshold \"" + key + "\"");
        }
    }
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    return in;
}

struct TreeSource {
    enum class Kind { dyadic, cluster, spec } kind = Kind::dyadic;
    fs::path path;
};

TreeSource parse_tree_source(const std::string& text) {
    if (text == "dyadic") return {TreeSource::Kind::dyadic, {}};
    if (text == "cluster") return {TreeSource::Kind::cluster, {}};
    if (text.rfind("spec:", 0) == 0 && text.size() > 5) {
        return {TreeSource::Kind::spec, fs::path(text.substr(5))};
    }
    throw Error(ErrorCode::InvalidArgument,
                "tree source must be dyadic, cluster or spec:PATH, got '" + text + "'");
}

nlohmann::json read_json(const fs::path& path) {
    auto in = open_input(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, path.string() + ": " + e.what());
    }
}

std::string describe(const ValidationReport& report) {
    std::ostringstream out;
    for (const auto& v : report.violations) {
        out << "\n  " << v.axiom << " at level " << v.level << ", node " << v.node << ": " << v.detail;
    }
    return out.str();
}

/// Builds one axis tree. `n` is the data length when known.
PartitionTree build_tree(const std::string& source_text, std::optional<std::size_t> n,
                         const std::optional<fs::path>& points_path, const PipelineConfig& config) {
    const auto source = parse_tree_source(source_text);
    const MeasureMode mode = config.measure.value_or(MeasureMode::normalized);
    std::optional<PointSet> points;
    if (points_path) {
        auto in = open_input(*points_path);
        points = read_point_csv(in, points_path->filename().string());
    }
    const auto check_size = [&](std::size_t have) {
        if (n && *n != have) {
            throw Error(ErrorCode::SizeMismatch, "tree has " + std::to_string(have) +
                                                     " elements but the data has " +
                                                     std::to_string(*n));
        }
    };

    switch (source.kind) {
    case TreeSource::Kind::dyadic: {
        if (points) {
            check_size(points->size());
            return build_balanced_dyadic_tree(*points, mode);
        }
        if (!n) throw Error(ErrorCode::InvalidArgument, "dyadic trees need --n or an input signal");
        return build_balanced_dyadic_tree(PointSet::indexed(*n), mode);
    }
    case TreeSource::Kind::cluster: {
        if (!points) {
            throw Error(ErrorCode::MissingCoordinates, "cluster trees need a --points file with coordinates");
        }
        check_size(points->size());
        ClusterOptions opts;
        opts.linkage = config.linkage;
        opts.branching_cap = config.branching_cap;
        opts.measure = mode;
        return build_tree_from_clustering(*points, opts);
    }
    case TreeSource::Kind::spec: {
        auto tree = parse_tree_spec(read_json(source.path));
        const auto report = validate_partition_tree(tree);
        if (!report.ok()) {
            throw Error(ErrorCode::PartitionViolation,
                        source.path.string() + " violates the partition axioms:" + describe(report));
        }
        check_size(tree.size());
        return config.measure ? tree.with_measure(*config.measure) : tree;
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unreachable tree source");
}

PartitionTree build_y_tree(std::optional<std::size_t> m, const PipelineConfig& config) {
    return build_tree(config.tree_y.value_or(config.tree), m, config.points_y, config);
}

class OutputDir {
public:
    OutputDir(const fs::path& dir, CommandResult& result) : dir_(dir), result_(result) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir_.string() + ": " + ec.message());
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
        body(out);
        if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
        result_.files.push_back(path);
    }

    void write_json(const std::string& name, const nlohmann::json& doc) {
        write(name, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    }

private:
    fs::path dir_;
    CommandResult& result_;
};

Signal1D load_signal(const fs::path& path) {
    auto in = open_input(path);
    return read_signal_csv(in);
}

Signal2D load_matrix(const fs::path& path) {
    auto in = open_input(path);
    return read_matrix_csv(in);
}

nlohmann::json range_summary(std::span<const double> values) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const bool constant = *hi - *lo <= 1e-12 * (1.0 + std::abs(*hi));
    return {{"min", *lo}, {"max", *hi}, {"constant", constant}};
}

CommandResult cmd_tree(const PipelineConfig& config) {
    CommandResult result;
    std::optional<std::size_t> n = config.n;
    if (!n && config.signal) n = load_signal(*config.signal).size();
    if (!n && config.matrix) n = load_matrix(*config.matrix).rows();

    const auto source = parse_tree_source(config.tree);
    OutputDir out(config.out, result);
    // a rejected spec still leaves its violation list behind
    auto tree = source.kind == TreeSource::Kind::spec ? parse_tree_spec(read_json(source.path))
                                                      : build_tree(config.tree, n, config.points, config);
    const auto report = validate_partition_tree(tree);
    out.write_json("validation.json", validation_to_json(report));
    if (!report.ok()) {
        throw Error(ErrorCode::PartitionViolation,
                    config.tree + " violates the partition axioms:" + describe(report));
    }
    if (source.kind == TreeSource::Kind::spec && config.measure) tree = tree.with_measure(*config.measure);
    out.write_json("tree.json", tree_to_spec(tree));
    result.messages.push_back("tree: N=" + std::to_string(tree.size()) + ", " +
                              std::to_string(tree.level_count()) + " levels");
    return result;
}

CommandResult cmd_transform(const PipelineConfig& config) {
    CommandResult result;
    const double exponent = config.alpha + 0.5;
    CoefficientTable table;
    if (config.matrix) {
        const auto f = load_matrix(*config.matrix);
        const TreeBasis bx(build_tree(config.tree, f.rows(), config.points, config));
        const TreeBasis by(build_y_tree(f.cols(), config));
        table = expansion_coefficients(config.family.value_or(Family::alpha), f, bx, by);
    } else if (config.signal) {
        const auto f = load_signal(*config.signal);
        const TreeBasis b(build_tree(config.tree, f.size(), config.points, config));
        table = expansion_coefficients(config.family.value_or(Family::d), f, b);
    } else {
        throw Error(ErrorCode::InvalidArgument, "transform needs --signal or --matrix");
    }
    const auto decay = decay_table(table, exponent, config.decay);
    OutputDir out(config.out, result);
    out.write("coefficients.csv", [&](std::ostream& os) { write_coefficient_table_csv(os, table); });
    out.write("decay.csv", [&](std::ostream& os) { write_decay_csv(os, decay); });
    result.messages.push_back("transform: " + std::to_string(table.size()) + " " +
                              to_string(table.family) + " coefficients");
    return result;
}

ParaOptions para_options(const PipelineConfig& config) {
    ParaOptions opt;
    opt.include_coarse = config.include_coarse;
    opt.keep_terms = false;
    return opt;
}

CommandResult cmd_para(const PipelineConfig& config) {
    CommandResult result;
    const auto a = make_nonlinearity(config.nonlinearity);
    nlohmann::json manifest = {{"command", "para"},
                               {"nonlinearity", a.id},
                               {"include_coarse", config.include_coarse}};
    if (config.matrix) {
        const auto f = load_matrix(*config.matrix);
        const TensorStack stacks(ScaleStack(build_tree(config.tree, f.rows(), config.points, config)),
                                 ScaleStack(build_y_tree(f.cols(), config)));
        const auto d = approx_2d(stacks, f, a, para_options(config));
        OutputDir out(config.out, result);
        const std::vector<std::pair<std::string, const Signal2D*>> files = {
            {"value.csv", &d.value},
            {"approx.csv", &d.approx},
            {"residual.csv", &d.residual},
            {"boundary.csv", &d.boundary}};
        for (const auto& [name, data] : files) {
            out.write(name, [&](std::ostream& os) { write_matrix_csv(os, *data); });
        }
        manifest["dims"] = 2;
        manifest["shape"] = {f.rows(), f.cols()};
        manifest["scales"] = {d.scales_x, d.scales_y};
        manifest["residual"] = range_summary(d.residual.data());
        manifest["files"] = {"value.csv", "approx.csv", "residual.csv", "boundary.csv"};
        out.write_json("manifest.json", manifest);
    } else if (config.signal) {
        const auto f = load_signal(*config.signal);
        const ScaleStack stack(build_tree(config.tree, f.size(), config.points, config));
        const auto d = approx_1d(stack, f, a, para_options(config));
        OutputDir out(config.out, result);
        const std::vector<std::pair<std::string, const Signal1D*>> files = {
            {"value.csv", &d.value},
            {"approx.csv", &d.approx},
            {"residual.csv", &d.residual},
            {"coarse.csv", &d.coarse}};
        for (const auto& [name, data] : files) {
            out.write(name, [&](std::ostream& os) { write_signal_csv(os, *data); });
        }
        manifest["dims"] = 1;
        manifest["n"] = f.size();
        manifest["scales"] = d.scales;
        manifest["residual"] = range_summary(d.residual);
        manifest["files"] = {"value.csv", "approx.csv", "residual.csv", "coarse.csv"};
        out.write_json("manifest.json", manifest);
    } else {
        throw Error(ErrorCode::InvalidArgument, "para needs --signal or --matrix");
    }
    result.messages.push_back("para: residual constant = " +
                              std::string(manifest["residual"]["constant"].get<bool>() ? "true" : "false"));
    return result;
}

std::size_t default_size(const PipelineConfig& config) {
    return config.n.value_or(config.dims == 1 ? 1024 : 32);
}

CommandResult cmd_verify(const PipelineConfig& config) {
    CommandResult result;
    const auto a = make_nonlinearity(config.nonlinearity);
    GainReport report;
    const bool two_d = config.matrix || (!config.signal && config.dims == 2);
    if (two_d) {
        Signal2D f;
        std::shared_ptr<TreeBasis> bx, by;
        if (config.matrix) {
            f = load_matrix(*config.matrix);
            bx = std::make_shared<TreeBasis>(build_tree(config.tree, f.rows(), config.points, config));
            by = std::make_shared<TreeBasis>(build_y_tree(f.cols(), config));
        } else {
            const auto n = default_size(config);
            bx = std::make_shared<TreeBasis>(build_tree(config.tree, n, config.points, config));
            by = std::make_shared<TreeBasis>(build_y_tree(config.m.value_or(n), config));
            f = synthesize_holder_signal_2d(*bx, *by, config.alpha, config.seed, config.amplitude);
        }
        const TensorStack stacks(ScaleStack(bx->tree()), ScaleStack(by->tree()));
        const auto d = approx_2d(stacks, f, a, para_options(config));
        const bool dyadic = bx->tree().is_balanced_dyadic() && by->tree().is_balanced_dyadic();
        report = verify_residual_gain_2d(d, *bx, *by, config.alpha, dyadic ? &stacks : nullptr, &a,
                                         config.quad_order, config.thresholds, config.decay);
    } else {
        Signal1D f;
        std::unique_ptr<TreeBasis> b;
        if (config.signal) {
            f = load_signal(*config.signal);
            b = std::make_unique<TreeBasis>(build_tree(config.tree, f.size(), config.points, config));
        } else {
            b = std::make_unique<TreeBasis>(build_tree(config.tree, default_size(config), config.points, config));
            f = synthesize_holder_signal(*b, config.alpha, config.seed, config.amplitude);
        }
        const auto d = approx_1d(ScaleStack(b->tree()), f, a, para_options(config));
        report = verify_residual_gain(d, *b, config.alpha, config.thresholds, config.decay);
    }
    auto doc = to_json(report);
    doc["nonlinearity"] = a.id;
    doc["seed"] = config.seed;
    OutputDir out(config.out, result);
    out.write_json("gain_report.json", doc);
    result.exit_code = report.pass ? 0 : 1;
    result.messages.push_back(std::string("verify: ") + (report.pass ? "pass" : "fail"));
    return result;
}

CommandResult cmd_synth(const PipelineConfig& config) {
    CommandResult result;
    const auto n = default_size(config);
    if (config.dims == 2) {
        const TreeBasis bx(build_tree(config.tree, n, config.points, config));
        const TreeBasis by(build_y_tree(config.m.value_or(n), config));
        const auto f = synthesize_holder_signal_2d(bx, by, config.alpha, config.seed, config.amplitude);
        OutputDir out(config.out, result);
        out.write("matrix.csv", [&](std::ostream& os) { write_matrix_csv(os, f); });
    } else {
        const TreeBasis b(build_tree(config.tree, n, config.points, config));
        const auto f = synthesize_holder_signal(b, config.alpha, config.seed, config.amplitude);
        OutputDir out(config.out, result);
        out.write("signal.csv", [&](std::ostream& os) { write_signal_csv(os, f); });
    }
    result.messages.push_back("synth: wrote " + result.files.back().filename().string());
    return result;
}

CommandResult cmd_report(const PipelineConfig& config) {
    CommandResult result;
    HolderReport report;
    if (config.matrix) {
        const auto f = load_matrix(*config.matrix);
        const TreeBasis bx(build_tree(config.tree, f.rows(), config.points, config));
        const TreeBasis by(build_y_tree(f.cols(), config));
        report = holder_report_2d(f, bx, by, config.alpha, config.decay);
    } else if (config.signal) {
        const auto f = load_signal(*config.signal);
        const TreeBasis b(build_tree(config.tree, f.size(), config.points, config));
        report = holder_report(f, b, config.alpha, config.decay);
    } else {
        throw Error(ErrorCode::InvalidArgument, "report needs --signal or --matrix");
    }
    OutputDir out(config.out, result);
    out.write_json("holder_report.json", to_json(report));
    out.write("decay.csv", [&](std::ostream& os) { write_decay_csv(os, report.decay); });
    result.messages.push_back("report: wavelet norm " + format_real(report.wavelet.value));
    return result;
}

void check_ids(const std::vector<std::size_t>& ids, const std::string& what) {
    std::vector<bool> seen(ids.size(), false);
    for (auto id : ids) {
        if (id >= ids.size() || seen[id]) {
            throw Error(ErrorCode::SchemaError, what + " ids must be 0.." +
                                                    std::to_string(ids.size() - 1) + " without repeats");
        }
        seen[id] = true;
    }
}

}  // namespace

void apply_config_json(PipelineConfig& config, const nlohmann::json& document,
                       const fs::path& base_dir) {
    if (!document.is_object()) throw Error(ErrorCode::SchemaError, "config must be a JSON object");
    const auto path_of = [&](const nlohmann::json& v, const std::string& key) {
        return resolve(base_dir, get_as<std::string>(v, key));
    };
    for (const auto& [key, value] : document.items()) {
        if (key == "signal") {
            config.signal = path_of(value, key);
        } else if (key == "matrix") {
            config.matrix = path_of(value, key);
        } else if (key == "points") {
            config.points = path_of(value, key);
        } else if (key == "points_y") {
            config.points_y = path_of(value, key);
        } else if (key == "tree" || key == "tree_y") {
            auto text = get_as<std::string>(value, key);
            if (text.rfind("spec:", 0) == 0) text = "spec:" + resolve(base_dir, text.substr(5)).string();
            (key == "tree" ? config.tree : config.tree_y.emplace()) = text;
        } else if (key == "measure") {
            config.measure = parse_measure_mode(get_as<std::string>(value, key));
        } else if (key == "alpha") {
            config.alpha = get_as<double>(value, key);
        } else if (key == "nonlinearity") {
            config.nonlinearity = get_as<std::string>(value, key);
        } else if (key == "include_coarse") {
            config.include_coarse = get_as<bool>(value, key);
        } else if (key == "quad_order") {
            config.quad_order = get_count(value, key);
        } else if (key == "seed") {
            config.seed = get_as<std::uint64_t>(value, key);
        } else if (key == "threads") {
            config.threads = get_count(value, key);
        } else if (key == "out") {
            config.out = path_of(value, key);
        } else if (key == "n") {
            config.n = get_count(value, key);
        } else if (key == "m") {
            config.m = get_count(value, key);
        } else if (key == "dims") {
            config.dims = get_count(value, key);
        } else if (key == "linkage") {
            config.linkage = parse_linkage(get_as<std::string>(value, key));
        } else if (key == "branching_cap") {
            config.branching_cap = get_count(value, key);
        } else if (key == "family") {
            config.family = parse_family(get_as<std::string>(value, key));
        } else if (key == "amplitude") {
            config.amplitude = parse_amplitude(get_as<std::string>(value, key));
        } else if (key == "min_fit_scale") {
            config.decay.min_fit_scale = get_count(value, key);
        } else if (key == "thresholds") {
            apply_thresholds(config.thresholds, value);
        } else {
            throw Error(ErrorCode::SchemaError, "unknown config key \"" + key + "\"");
        }
    }
}

PipelineConfig load_config_file(const fs::path& path) {
    PipelineConfig config;
    apply_config_json(config, read_json(path), path.parent_path());
    return config;
}

void validate_config(const PipelineConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 0.5)) {
        throw Error(ErrorCode::InvalidArgument,
                    "alpha must lie in (0, 1/2), got " + format_real(config.alpha));
    }
    if (config.signal && config.matrix) {
        throw Error(ErrorCode::InvalidArgument, "give either a signal or a matrix, not both");
    }
    if (config.dims != 1 && config.dims != 2) {
        throw Error(ErrorCode::InvalidArgument, "dims must be 1 or 2");
    }
    if (config.quad_order < 2) throw Error(ErrorCode::InvalidArgument, "quadrature order must be >= 2");
    if (config.branching_cap < 2) throw Error(ErrorCode::InvalidArgument, "branching cap must be >= 2");
    if (config.family) {
        const bool tensor_input = config.matrix.has_value();
        if (is_tensor_family(*config.family) != tensor_input) {
            throw Error(ErrorCode::InvalidArgument, "family " + to_string(*config.family) +
                                                        (tensor_input ? " needs a 1D signal"
                                                                      : " needs a 2D matrix"));
        }
    }
    std::vector<fs::path> inputs;
    for (const auto& p : {config.signal, config.matrix, config.points, config.points_y}) {
        if (p) inputs.push_back(*p);
    }
    for (const auto& text : {std::optional<std::string>(config.tree), config.tree_y}) {
        if (!text) continue;
        const auto source = parse_tree_source(*text);
        if (source.kind == TreeSource::Kind::spec) inputs.push_back(source.path);
    }
    for (const auto& p : inputs) {
        if (!fs::exists(p)) throw Error(ErrorCode::IoError, "input file " + p.string() + " does not exist");
    }
}

Signal1D read_signal_csv(std::istream& in) {
    const auto table = read_csv(in);
    const auto column = [&](const std::string& name) {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end()) {
            throw Error(ErrorCode::SchemaError, "signal CSV has no '" + name + "' column");
        }
        return static_cast<std::size_t>(it - table.header.begin());
    };
    const auto id_col = column("id");
    const auto value_col = column("value");
    if (table.rows.empty()) throw Error(ErrorCode::SchemaError, "signal CSV has no rows");
    std::vector<std::size_t> ids;
    std::vector<double> values;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.header.size()) {
            throw Error(ErrorCode::SchemaError, "signal CSV row " + std::to_string(r + 1) +
                                                    " has " + std::to_string(row.size()) + " fields");
        }
        ids.push_back(parse_index(row[id_col], "id"));
        values.push_back(parse_real(row[value_col], "value"));
    }
    check_ids(ids, "signal");
    Signal1D f(ids.size());
    for (std::size_t r = 0; r < ids.size(); ++r) f[ids[r]] = values[r];
    return f;
}

void write_signal_csv(std::ostream& out, std::span<const double> f) {
    out << "id,value\n";
    for (std::size_t i = 0; i < f.size(); ++i) out << i << ',' << format_real(f[i]) << '\n';
}

Signal2D read_matrix_csv(std::istream& in) {
    const auto table = read_csv(in);
    if (table.header.size() < 2 || table.header.front() != "id") {
        throw Error(ErrorCode::SchemaError, "matrix CSV header must be id followed by column ids");
    }
    const std::size_t cols = table.header.size() - 1;
    for (std::size_t c = 0; c < cols; ++c) {
        if (parse_index(table.header[c + 1], "column id") != c) {
            throw Error(ErrorCode::SchemaError, "matrix CSV column ids must be 0.." + std::to_string(cols - 1) +
                                                    " in order");
        }
    }
    if (table.rows.empty()) throw Error(ErrorCode::SchemaError, "matrix CSV has no rows");
    std::vector<std::size_t> ids;
    for (const auto& row : table.rows) {
        if (row.size() != cols + 1) {
            throw Error(ErrorCode::SchemaError, "matrix CSV rows must have " + std::to_string(cols + 1) +
                                                    " fields");
        }
        ids.push_back(parse_index(row[0], "row id"));
    }
    check_ids(ids, "matrix row");
    Signal2D f(ids.size(), cols);
    for (std::size_t r = 0; r < ids.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) f(ids[r], c) = parse_real(table.rows[r][c + 1], "value");
    }
    return f;
}

void write_matrix_csv(std::ostream& out, const Signal2D& f) {
    out << "id";
    for (std::size_t c = 0; c < f.cols(); ++c) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < f.rows(); ++i) {
        out << i;
        for (std::size_t c = 0; c < f.cols(); ++c) out << ',' << format_real(f(i, c));
        out << '\n';
    }
}

std::vector<std::string> command_names() {
    return {"tree", "transform", "para", "verify", "synth", "report"};
}

CommandResult run_command(const std::string& command, const PipelineConfig& config) {
    validate_config(config);
    set_thread_count(config.threads);
    static const std::map<std::string, CommandResult (*)(const PipelineConfig&)> table = {
        {"tree", cmd_tree},   {"transform", cmd_transform}, {"para", cmd_para},
        {"verify", cmd_verify}, {"synth", cmd_synth},       {"report", cmd_report}};
    const auto it = table.find(command);
    if (it == table.end()) throw Error(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
    return it->second(config);
}

}  // namespace treepara
