#pragma once

#include "treepara/haar_basis.hpp"
#include "treepara/multiscale.hpp"
#include "treepara/partition_tree.hpp"
#include "treepara/signal.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace treepara {

/// Smallest C with |f(i) - f(j)| <= C rho(i, j)^alpha over all pairs.
/// Throws TooSmall when N < 2.
double pairwise_holder_seminorm(std::span<const double> f, const PartitionTree& tree,
                                double alpha);

/// The three product-set conditions: the mixed second difference, the
/// increment along X with y fixed (row) and along Y with x fixed (column).
struct PairwiseSeminorms2D {
    double mixed = 0.0;
    double row = 0.0;
    double column = 0.0;
};

struct Pairwise2DOptions {
    std::size_t max_cells = 4096;  // N_X * N_Y guard for the quadruple scan
    bool allow_large = false;
    ProductDistance rule = ProductDistance::matched_levels;
};

/// Exhaustive scan. The mixed bound uses rho_R of the two one-axis steps
/// from the anchor (x_i, y_p). Throws TooLarge past the guard unless
/// allow_large is set, TooSmall when either axis has fewer than 2 points.
PairwiseSeminorms2D pairwise_holder_seminorm_2d(const Signal2D& f, const PartitionTree& tree_x,
                                                const PartitionTree& tree_y, double alpha,
                                                const Pairwise2DOptions& options = {});

enum class ScaleForm {
    dyadic,     // sizes 2^{-l}: balanced dyadic trees
    node_size,  // sizes |X^l_k| under the tree's measure
};

std::string to_string(ScaleForm form);

struct WaveletNorm {
    double value = 0.0;
    ScaleForm form = ScaleForm::dyadic;
    double exponent = 0.0;
};

/// sup |c| / size^e over the table, e given.
double coefficient_sup_norm(const CoefficientTable& table, double exponent);

/// sup over wavelets of |<f, psi>| / size^{alpha + 1/2}, or with exponent
/// 2 alpha + 1/2 when doubled.
WaveletNorm wavelet_holder_norm(std::span<const double> f, const TreeBasis& basis, double alpha,
                                bool doubled = false);
/// Same over the psi x psi coefficients, size = size_x * size_y.
WaveletNorm wavelet_holder_norm_2d(const Signal2D& f, const TreeBasis& bx, const TreeBasis& by,
                                   double alpha, bool doubled = false);

struct DecayRow {
    std::size_t scale = 0;  // l, or l + s
    std::size_t l = 0;
    std::optional<std::size_t> s;
    double max_abs = 0.0;
    double bound = 0.0;  // largest size^exponent at this scale
    double ratio = 0.0;  // max over entries of |c| / size^exponent
    std::size_t count = 0;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // sum of squared residuals
    std::size_t used = 0;
    bool sufficient = false;  // at least 3 points
    bool degenerate = true;   // fewer than 2 points
};

struct DecayOptions {
    /// Scales below this are tabulated but left out of the fit.
    std::size_t min_fit_scale = 3;
    double zero_floor = 1e-14;
};

struct DecayTable {
    double exponent = 0.0;
    std::vector<DecayRow> rows;
    SlopeFit fit;

    /// Decay exponent read off the fit, i.e. -slope.
    double decay_exponent() const noexcept { return -fit.slope; }
};

/// Ordinary least squares of ys against xs.
SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// Per-scale maxima, ratios, and the log2 slope of the maxima versus scale
/// (l for one-dimensional families, l + s for tensor families).
DecayTable decay_table(const CoefficientTable& coeffs, double exponent,
                       const DecayOptions& options = {});

enum class Amplitude { uniform, rademacher };

std::string to_string(Amplitude amplitude);
Amplitude parse_amplitude(const std::string& text);

/// Signal whose wavelet coefficients are u * size^exponent with u drawn
/// from the amplitude law (seeded mt19937_64); the scaling coefficient is 0.
Signal1D synthesize_with_exponent(const TreeBasis& basis, double exponent, std::uint64_t seed,
                                  Amplitude amplitude = Amplitude::uniform);

/// exponent = alpha + 1/2; alpha must lie in (0, 1/2).
Signal1D synthesize_holder_signal(const TreeBasis& basis, double alpha, std::uint64_t seed,
                                  Amplitude amplitude = Amplitude::uniform);

/// Fills psi x psi with u (sx sy)^{alpha+1/2} and the marginal families
/// psi x phi_root, phi_root x psi with u s^{alpha+1/2}.
Signal2D synthesize_holder_signal_2d(const TreeBasis& bx, const TreeBasis& by, double alpha,
                                     std::uint64_t seed, Amplitude amplitude = Amplitude::uniform);

struct HolderReport {
    double alpha = 0.0;
    std::optional<double> pairwise;
    std::optional<PairwiseSeminorms2D> pairwise_2d;
    WaveletNorm wavelet;
    WaveletNorm wavelet_doubled;
    DecayTable decay;
};

HolderReport holder_report(std::span<const double> f, const TreeBasis& basis, double alpha,
                           const DecayOptions& options = {});
/// The pairwise triple is filled only when the guard allows it.
HolderReport holder_report_2d(const Signal2D& f, const TreeBasis& bx, const TreeBasis& by,
                              double alpha, const DecayOptions& options = {});

nlohmann::json to_json(const DecayTable& table);
nlohmann::json to_json(const HolderReport& report);
/// Header scale,l,s,max_abs,bound,ratio,count.
void write_decay_csv(std::ostream& out, const DecayTable& table);

}  // namespace treepara
