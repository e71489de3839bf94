#include "treepara/nonlinearity.hpp"

#include "treepara/error.hpp"

#include <algorithm>
#include <cmath>

namespace treepara {

namespace {

constexpr double kExpClamp = 50.0;

double softplus(double t) {
    // log(1 + e^t) without overflow
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

}  // namespace

std::vector<std::string> builtin_nonlinearities() {
    return {"identity", "square", "cube", "sin", "exp_clamped", "tanh", "softplus", "abs_pow_1_5"};
}

Nonlinearity make_nonlinearity(const std::string& id) {
    Nonlinearity a;
    a.id = id;
    if (id == "identity") {
        a.value = [](double t) { return t; };
        a.first = [](double) { return 1.0; };
        a.second = [](double) { return 0.0; };
    } else if (id == "square") {
        a.value = [](double t) { return t * t; };
        a.first = [](double t) { return 2.0 * t; };
        a.second = [](double) { return 2.0; };
    } else if (id == "cube") {
        a.value = [](double t) { return t * t * t; };
        a.first = [](double t) { return 3.0 * t * t; };
        a.second = [](double t) { return 6.0 * t; };
    } else if (id == "sin") {
        a.value = [](double t) { return std::sin(t); };
        a.first = [](double t) { return std::cos(t); };
        a.second = [](double t) { return -std::sin(t); };
    } else if (id == "exp_clamped") {
        // Constant beyond the clamp, so derivatives vanish there.
        a.value = [](double t) { return std::exp(std::clamp(t, -kExpClamp, kExpClamp)); };
        a.first = [](double t) { return std::abs(t) <= kExpClamp ? std::exp(t) : 0.0; };
        a.second = [](double t) { return std::abs(t) <= kExpClamp ? std::exp(t) : 0.0; };
    } else if (id == "tanh") {
        a.value = [](double t) { return std::tanh(t); };
        a.first = [](double t) {
            const double th = std::tanh(t);
            return 1.0 - th * th;
        };
        a.second = [](double t) {
            const double th = std::tanh(t);
            return -2.0 * th * (1.0 - th * th);
        };
    } else if (id == "softplus") {
        a.value = softplus;
        a.first = logistic;
        a.second = [](double t) {
            const double s = logistic(t);
            return s * (1.0 - s);
        };
    } else if (id == "abs_pow_1_5") {
        a.value = [](double t) { return std::pow(std::abs(t), 1.5); };
        a.first = [](double t) { return 1.5 * std::copysign(std::sqrt(std::abs(t)), t); };
        a.smoothness = Smoothness::C1;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown nonlinearity '" + id + "'");
    }
    return a;
}

DerivativeCheck check_derivatives(const Nonlinearity& a, const std::vector<double>& probes,
                                  double h, double tol) {
    DerivativeCheck report;
    if (!a.has_first()) {
        report.ok = false;
        return report;
    }
    for (double t : probes) {
        const double fd1 = (a.value(t + h) - a.value(t - h)) / (2.0 * h);
        const double e1 = std::abs(fd1 - a.first(t)) / (1.0 + std::abs(a.first(t)));
        report.worst_first = std::max(report.worst_first, e1);
        if (a.has_second()) {
            const double fd2 = (a.first(t + h) - a.first(t - h)) / (2.0 * h);
            const double e2 = std::abs(fd2 - a.second(t)) / (1.0 + std::abs(a.second(t)));
            report.worst_second = std::max(report.worst_second, e2);
        }
    }
    report.ok = report.worst_first <= tol && report.worst_second <= tol;
    return report;
}

}  // namespace treepara
