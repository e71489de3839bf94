#pragma once

#include "treepara/haar_basis.hpp"
#include "treepara/holder.hpp"
#include "treepara/multiscale.hpp"
#include "treepara/nonlinearity.hpp"
#include "treepara/signal.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace treepara {

struct ParaOptions {
    /// Use scales l < levels only (default: all L scales).
    std::optional<std::size_t> levels;
    /// Move the coarse contribution A(E_0 f) (1D) or the boundary term
    /// A(E^Y_0 f) + A(E^X_0 f) - A(E^X_0 E^Y_0 f) (2D) from the residual
    /// into the approximation.
    bool include_coarse = false;
    /// Keep the per-scale term signals.
    bool keep_terms = true;
};

/// A(f) = approx + residual, approx = sum_l A'(P^l f) Q^l f (+ coarse).
struct Decomposition1D {
    std::string nonlinearity;
    bool include_coarse = false;
    std::size_t scales = 0;
    Signal1D f;
    Signal1D value;     // A(f)
    Signal1D approx;    // Ã
    Signal1D residual;  // Δ
    Signal1D coarse;    // A(E_0 f)
    std::vector<Signal1D> terms;
};

/// Throws MissingDerivative when A' is absent.
Decomposition1D approx_1d(const ScaleStack& stack, std::span<const double> f,
                          const Nonlinearity& a, const ParaOptions& options = {});

/// Per-(l, s) pieces of the tensor approximation.
struct ScaleTerm2D {
    std::size_t l = 0;
    std::size_t s = 0;
    Signal2D first;   // A'(P^l P^s f) Q^l Q^s f
    Signal2D second;  // A''(P^l P^s f) Q^l P^s f P^l Q^s f
};

struct Decomposition2D {
    std::string nonlinearity;
    bool include_coarse = false;
    std::size_t scales_x = 0;
    std::size_t scales_y = 0;
    Signal2D f;
    Signal2D value;
    Signal2D approx;
    Signal2D residual;
    Signal2D boundary;
    std::vector<ScaleTerm2D> terms;  // ordered by l, then s
};

/// Throws NotC2 for C1-only A and MissingDerivative when A' or A'' is absent.
Decomposition2D approx_2d(const TensorStack& stacks, const Signal2D& f, const Nonlinearity& a,
                          const ParaOptions& options = {});

/// The four coarse views interpolated by h. `base` is the anchor, `x_step`
/// moves one X scale (the omega direction), `y_step` one Y scale (the mu
/// direction), `diag` both.
struct CornerContext {
    int l = 0;
    int s = 0;
    Signal2D base;
    Signal2D x_step;
    Signal2D y_step;
    Signal2D diag;
};

/// Corners P^lP^s, P^{l+1}P^s, P^lP^{s+1}, P^{l+1}P^{s+1}; needs l+1 and
/// s+1 to be valid scales, else LevelOutOfRange.
CornerContext forward_corners(const TensorStack& stacks, int l, int s, const Signal2D& f);
/// Corners P^lP^s, P^{l-1}P^s, P^lP^{s-1}, P^{l-1}P^{s-1}: the rectangle
/// whose mixed difference of A the (l, s) paraproduct term linearizes.
CornerContext backward_corners(const TensorStack& stacks, int l, int s, const Signal2D& f);

/// h = w (x - b) + m ((y + w (d - y)) - (b + w (x - b))), with m = mu, w = omega.
Signal2D interpolation_h(const CornerContext& ctx, double mu, double omega);

struct ResidualTerms {
    Signal2D v1;       // d - y - x + b
    Signal2D qp;       // x - b
    Signal2D pq;       // y - b
    Signal2D v2;       // (pq + omega v1)(qp + mu v1)
    Signal2D v2_tilde; // qp * pq
};

ResidualTerms residual_terms(const CornerContext& ctx, double mu, double omega);

/// Integral form of the 2D residual, tensor Gauss-Legendre of the given
/// order per (l, s):
///   sum_{l,s} int int A'(b+h) v1 - A'(b) v1 + A''(b+h) v2 - A''(b) v2~
/// which equals A(f) - boundary - Ã, i.e. the residual with include_coarse.
Signal2D residual_integral_2d(const TensorStack& stacks, const Signal2D& f, const Nonlinearity& a,
                              std::size_t order = 8);

struct TermBoundRow {
    std::size_t l = 0;
    std::size_t s = 0;
    double first_shifted = 0.0;   // sup |A'(b+h) v1|
    double first_base = 0.0;      // sup |A'(b) v1|
    double second_shifted = 0.0;  // sup |A''(b+h) v2|
    double second_base = 0.0;     // sup |A''(b) v2~|
    double total = 0.0;           // max-abs of the integrated (l, s) contribution
};

struct TermBounds {
    std::vector<TermBoundRow> rows;
    SlopeFit fit;  // log2(total) against l + s
};

/// Throws NotC2, MissingDerivative, and NotDyadic unless both trees are
/// balanced dyadic.
TermBounds residual_term_bounds(const TensorStack& stacks, const Signal2D& f,
                                const Nonlinearity& a, std::size_t order = 8,
                                const DecayOptions& options = {});

struct GainThresholds {
    double gain_factor = 0.8;       // gain >= factor * alpha
    double slope_margin = 0.2;      // residual slope <= -(2 alpha + 1/2) + margin
    double term_margin = 0.25;      // 2D term slope <= -(2 alpha + 1) + margin
    double exponent_tolerance = 0.15;
};

struct GainReport {
    std::size_t dims = 1;
    double alpha = 0.0;
    DecayTable f_decay;
    DecayTable residual_decay;
    double f_exponent = 0.0;
    double residual_exponent = 0.0;
    double gain = 0.0;
    bool residual_degenerate = false;
    double norm_f = 0.0;                // Λ_alpha wavelet norm of f
    double norm_residual_doubled = 0.0; // Λ_{2 alpha} wavelet norm of Δ
    double norm_residual = 0.0;         // Λ_alpha wavelet norm of Δ
    double ratio = 0.0;                 // norm_residual_doubled / norm_f
    bool f_exponent_ok = false;
    bool gain_pass = false;
    bool slope_pass = false;
    std::optional<double> term_slope;
    std::optional<bool> term_pass;
    bool pass = false;
};

GainReport verify_residual_gain(const Decomposition1D& decomposition, const TreeBasis& basis,
                                double alpha, const GainThresholds& thresholds = {},
                                const DecayOptions& options = {});

/// When `term_stacks` is given (balanced dyadic trees), the per-(l, s)
/// residual term slope is checked as well.
GainReport verify_residual_gain_2d(const Decomposition2D& decomposition, const TreeBasis& bx,
                                   const TreeBasis& by, double alpha,
                                   const TensorStack* term_stacks = nullptr,
                                   const Nonlinearity* a = nullptr, std::size_t order = 8,
                                   const GainThresholds& thresholds = {},
                                   const DecayOptions& options = {});

nlohmann::json to_json(const GainReport& report);
nlohmann::json to_json(const TermBounds& bounds);

}  // namespace treepara
