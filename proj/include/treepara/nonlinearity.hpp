#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace treepara {

enum class Smoothness { C1, C2 };

/// The composition function A with its derivatives.
struct Nonlinearity {
    std::string id;
    std::function<double(double)> value;
    std::function<double(double)> first;   // A'; empty when unavailable
    std::function<double(double)> second;  // A''; empty for C1-only functions
    Smoothness smoothness = Smoothness::C2;

    bool has_first() const noexcept { return static_cast<bool>(first); }
    bool has_second() const noexcept { return static_cast<bool>(second); }
};

/// Builtins: identity, square, cube, sin, exp_clamped (argument clamped to
/// [-50, 50]), tanh, softplus, abs_pow_1_5 (|t|^1.5, C1 only).
Nonlinearity make_nonlinearity(const std::string& id);
std::vector<std::string> builtin_nonlinearities();

struct DerivativeCheck {
    bool ok = true;
    double worst_first = 0.0;   // max scaled central-difference error of A'
    double worst_second = 0.0;  // same for A''
};

/// Central differences with step h against A' (and A'' when present) on the
/// probe grid; an error counts against tol * (1 + |exact|).
DerivativeCheck check_derivatives(const Nonlinearity& a, const std::vector<double>& probes,
                                  double h = 1e-5, double tol = 1e-6);

}  // namespace treepara
