#pragma once

#include "treepara/clustering.hpp"
#include "treepara/holder.hpp"
#include "treepara/multiscale.hpp"
#include "treepara/paraproduct.hpp"
#include "treepara/partition_tree.hpp"
#include "treepara/signal.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace treepara {

/// Everything a command needs. Populated from a JSON config file and then
/// overridden by command-line flags.
struct PipelineConfig {
    std::optional<std::filesystem::path> signal;    // 1D input, CSV id,value
    std::optional<std::filesystem::path> matrix;    // 2D input, dense CSV
    std::optional<std::filesystem::path> points;    // coordinates for the X tree
    std::optional<std::filesystem::path> points_y;  // coordinates for the Y tree
    std::string tree = "dyadic";                    // dyadic | cluster | spec:PATH
    std::optional<std::string> tree_y;              // defaults to `tree`
    std::optional<MeasureMode> measure;             // spec files keep their own when unset
    double alpha = 0.3;
    std::string nonlinearity = "tanh";
    bool include_coarse = false;
    std::size_t quad_order = 8;
    std::uint64_t seed = 1;
    std::size_t threads = 0;  // 0: hardware concurrency
    std::filesystem::path out = "treepara_out";
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::size_t dims = 1;  // for synth and input-free verify
    Linkage linkage = Linkage::average;
    std::size_t branching_cap = 4;
    std::optional<Family> family;
    Amplitude amplitude = Amplitude::uniform;
    GainThresholds thresholds;
    DecayOptions decay;
};

/// Reads config keys into `config`. Relative paths resolve against
/// `base_dir`. Unknown keys throw SchemaError.
void apply_config_json(PipelineConfig& config, const nlohmann::json& document,
                       const std::filesystem::path& base_dir = {});
PipelineConfig load_config_file(const std::filesystem::path& path);

/// Range and consistency checks: alpha in (0, 1/2), input paths exist, at
/// most one of signal/matrix, a parseable tree source.
void validate_config(const PipelineConfig& config);

/// CSV with columns id and value (any order, other columns ignored).
Signal1D read_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, std::span<const double> f);

/// Header `id,0,1,...,M-1`; each row starts with its row id.
Signal2D read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const Signal2D& f);

struct CommandResult {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;
    std::vector<std::string> messages;
};

/// tree, transform, para, verify, synth, report. Input errors surface as
/// treepara::Error; verification failure is exit code 1.
CommandResult run_command(const std::string& command, const PipelineConfig& config);
std::vector<std::string> command_names();

}  // namespace treepara
