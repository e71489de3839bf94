#include "treepara/holder.hpp"

#include "treepara/csv.hpp"
#include "treepara/error.hpp"
#include "treepara/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

namespace treepara {

double pairwise_holder_seminorm(std::span<const double> f, const PartitionTree& tree,
                                double alpha) {
    const std::size_t n = tree.size();
    if (n < 2) throw Error(ErrorCode::TooSmall, "pairwise seminorm needs at least 2 points");
    if (f.size() != n) {
        throw Error(ErrorCode::SizeMismatch, "signal has " + std::to_string(f.size()) +
                                                 " values, tree has " + std::to_string(n));
    }
    std::vector<double> best(n, 0.0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double m = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                const double rho = dyadic_distance(tree, i, j);
                m = std::max(m, std::abs(f[i] - f[j]) / std::pow(rho, alpha));
            }
            best[i] = m;
        }
    });
    return *std::max_element(best.begin(), best.end());
}

PairwiseSeminorms2D pairwise_holder_seminorm_2d(const Signal2D& f, const PartitionTree& tree_x,
                                                const PartitionTree& tree_y, double alpha,
                                                const Pairwise2DOptions& options) {
    const std::size_t n = tree_x.size();
    const std::size_t m = tree_y.size();
    if (f.rows() != n || f.cols() != m) {
        throw Error(ErrorCode::SizeMismatch, "2D signal shape does not match the trees");
    }
    if (n < 2 || m < 2) {
        throw Error(ErrorCode::TooSmall, "pairwise seminorms need at least 2 points per axis");
    }
    if (n * m > options.max_cells && !options.allow_large) {
        throw Error(ErrorCode::TooLarge, std::to_string(n) + "x" + std::to_string(m) +
                                             " exceeds the exhaustive-scan guard of " +
                                             std::to_string(options.max_cells) + " cells");
    }

    // xstep[(i*n + j)*m + p] = rho_R((x_i,y_p), (x_j,y_p))^alpha
    // ystep[(p*m + q)*n + i] = rho_R((x_i,y_p), (x_i,y_q))^alpha
    std::vector<double> xstep(n * n * m, 1.0);
    std::vector<double> ystep(m * m * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            for (std::size_t p = 0; p < m; ++p) {
                const double rho =
                    tensor_dyadic_distance(tree_x, tree_y, {i, p}, {j, p}, options.rule);
                xstep[(i * n + j) * m + p] = std::pow(rho, alpha);
            }
        }
    }
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            if (p == q) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const double rho =
                    tensor_dyadic_distance(tree_x, tree_y, {i, p}, {i, q}, options.rule);
                ystep[(p * m + q) * n + i] = std::pow(rho, alpha);
            }
        }
    }

    std::vector<PairwiseSeminorms2D> partial(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            PairwiseSeminorms2D acc;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (std::size_t p = 0; p < m; ++p) {
                    const double dx = xstep[(i * n + j) * m + p];
                    acc.row = std::max(acc.row, std::abs(f(i, p) - f(j, p)) / dx);
                    for (std::size_t q = 0; q < m; ++q) {
                        if (q == p) continue;
                        const double mixed = f(i, p) - f(i, q) - f(j, p) + f(j, q);
                        const double dy = ystep[(p * m + q) * n + i];
                        acc.mixed = std::max(acc.mixed, std::abs(mixed) / (dx * dy));
                    }
                }
            }
            for (std::size_t p = 0; p < m; ++p) {
                for (std::size_t q = 0; q < m; ++q) {
                    if (q == p) continue;
                    acc.column = std::max(acc.column,
                                          std::abs(f(i, p) - f(i, q)) / ystep[(p * m + q) * n + i]);
                }
            }
            partial[i] = acc;
        }
    });
    PairwiseSeminorms2D out;
    for (const auto& acc : partial) {
        out.mixed = std::max(out.mixed, acc.mixed);
        out.row = std::max(out.row, acc.row);
        out.column = std::max(out.column, acc.column);
    }
    return out;
}

std::string to_string(ScaleForm form) {
    return form == ScaleForm::dyadic ? "dyadic" : "node_size";
}

double coefficient_sup_norm(const CoefficientTable& table, double exponent) {
    double best = 0.0;
    for (const auto& [key, entry] : table.entries) {
        best = std::max(best, std::abs(entry.value) / std::pow(entry.size, exponent));
    }
    return best;
}

WaveletNorm wavelet_holder_norm(std::span<const double> f, const TreeBasis& basis, double alpha,
                                bool doubled) {
    WaveletNorm norm;
    norm.exponent = (doubled ? 2.0 * alpha : alpha) + 0.5;
    norm.form = basis.tree().is_balanced_dyadic() ? ScaleForm::dyadic : ScaleForm::node_size;
    norm.value = coefficient_sup_norm(expansion_coefficients(Family::d, f, basis), norm.exponent);
    return norm;
}

WaveletNorm wavelet_holder_norm_2d(const Signal2D& f, const TreeBasis& bx, const TreeBasis& by,
                                   double alpha, bool doubled) {
    WaveletNorm norm;
    norm.exponent = (doubled ? 2.0 * alpha : alpha) + 0.5;
    norm.form = bx.tree().is_balanced_dyadic() && by.tree().is_balanced_dyadic()
                    ? ScaleForm::dyadic
                    : ScaleForm::node_size;
    norm.value =
        coefficient_sup_norm(expansion_coefficients(Family::alpha, f, bx, by), norm.exponent);
    return norm;
}

SlopeFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    SlopeFit fit;
    fit.used = xs.size();
    fit.sufficient = fit.used >= 3;
    fit.degenerate = fit.used < 2;
    if (fit.degenerate) return fit;
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        // all points at one abscissa
        fit.degenerate = true;
        fit.sufficient = false;
        return fit;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        fit.residual += r * r;
    }
    return fit;
}

DecayTable decay_table(const CoefficientTable& coeffs, double exponent,
                       const DecayOptions& options) {
    DecayTable table;
    table.exponent = exponent;
    std::map<std::pair<std::size_t, std::size_t>, DecayRow> rows;
    const bool tensor = is_tensor_family(coeffs.family);
    for (const auto& [key, entry] : coeffs.entries) {
        const std::size_t s = key.s.value_or(0);
        auto& row = rows[{key.l, s}];
        if (row.count == 0) {
            row.l = key.l;
            if (tensor) row.s = s;
            row.scale = key.l + (tensor ? s : 0);
        }
        ++row.count;
        const double bound = std::pow(entry.size, exponent);
        row.max_abs = std::max(row.max_abs, std::abs(entry.value));
        row.bound = std::max(row.bound, bound);
        row.ratio = std::max(row.ratio, std::abs(entry.value) / bound);
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (auto& [key, row] : rows) {
        if (row.scale >= options.min_fit_scale && row.max_abs >= options.zero_floor) {
            xs.push_back(static_cast<double>(row.scale));
            ys.push_back(std::log2(row.max_abs));
        }
        table.rows.push_back(row);
    }
    table.fit = fit_line(xs, ys);
    return table;
}

std::string to_string(Amplitude amplitude) {
    return amplitude == Amplitude::uniform ? "uniform" : "rademacher";
}

Amplitude parse_amplitude(const std::string& text) {
    if (text == "uniform") return Amplitude::uniform;
    if (text == "rademacher") return Amplitude::rademacher;
    throw Error(ErrorCode::InvalidArgument, "unknown amplitude law '" + text + "'");
}

namespace {

class AmplitudeSource {
public:
    AmplitudeSource(std::uint64_t seed, Amplitude law) : rng_(seed), law_(law) {}
    double next() {
        if (law_ == Amplitude::rademacher) return coin_(rng_) ? 1.0 : -1.0;
        return uniform_(rng_);
    }

private:
    std::mt19937_64 rng_;
    Amplitude law_;
    std::uniform_real_distribution<double> uniform_{-1.0, 1.0};
    std::bernoulli_distribution coin_{0.5};
};

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1/2)");
    }
}

}  // namespace

Signal1D synthesize_with_exponent(const TreeBasis& basis, double exponent, std::uint64_t seed,
                                  Amplitude amplitude) {
    AmplitudeSource source(seed, amplitude);
    std::vector<double> coef(basis.size(), 0.0);
    const auto& tree = basis.tree();
    for (std::size_t idx = 1; idx < basis.size(); ++idx) {
        const auto& fn = basis.function(idx);
        coef[idx] = source.next() * std::pow(tree.scale_size(fn.level, fn.node), exponent);
    }
    return basis.synthesize(coef);
}

Signal1D synthesize_holder_signal(const TreeBasis& basis, double alpha, std::uint64_t seed,
                                  Amplitude amplitude) {
    check_alpha(alpha);
    return synthesize_with_exponent(basis, alpha + 0.5, seed, amplitude);
}

Signal2D synthesize_holder_signal_2d(const TreeBasis& bx, const TreeBasis& by, double alpha,
                                     std::uint64_t seed, Amplitude amplitude) {
    check_alpha(alpha);
    const double e = alpha + 0.5;
    AmplitudeSource source(seed, amplitude);
    Signal2D coef(bx.size(), by.size());
    const auto size_of = [](const TreeBasis& b, std::size_t idx) {
        const auto& fn = b.function(idx);
        return b.tree().scale_size(fn.level, fn.node);
    };
    for (std::size_t a = 0; a < bx.size(); ++a) {
        for (std::size_t b = 0; b < by.size(); ++b) {
            if (a == 0 && b == 0) continue;
            double size = 1.0;
            if (a != 0) size *= size_of(bx, a);
            if (b != 0) size *= size_of(by, b);
            coef(a, b) = source.next() * std::pow(size, e);
        }
    }
    return TensorBasis(std::make_shared<const TreeBasis>(bx), std::make_shared<const TreeBasis>(by))
        .synthesize(coef);
}

HolderReport holder_report(std::span<const double> f, const TreeBasis& basis, double alpha,
                           const DecayOptions& options) {
    HolderReport report;
    report.alpha = alpha;
    if (basis.tree().size() >= 2) report.pairwise = pairwise_holder_seminorm(f, basis.tree(), alpha);
    report.wavelet = wavelet_holder_norm(f, basis, alpha, false);
    report.wavelet_doubled = wavelet_holder_norm(f, basis, alpha, true);
    report.decay =
        decay_table(expansion_coefficients(Family::d, f, basis), report.wavelet.exponent, options);
    return report;
}

HolderReport holder_report_2d(const Signal2D& f, const TreeBasis& bx, const TreeBasis& by,
                              double alpha, const DecayOptions& options) {
    HolderReport report;
    report.alpha = alpha;
    const Pairwise2DOptions guard;
    const std::size_t n = bx.tree().size();
    const std::size_t m = by.tree().size();
    if (n >= 2 && m >= 2 && n * m <= guard.max_cells) {
        report.pairwise_2d = pairwise_holder_seminorm_2d(f, bx.tree(), by.tree(), alpha, guard);
    }
    report.wavelet = wavelet_holder_norm_2d(f, bx, by, alpha, false);
    report.wavelet_doubled = wavelet_holder_norm_2d(f, bx, by, alpha, true);
    report.decay = decay_table(expansion_coefficients(Family::alpha, f, bx, by),
                               report.wavelet.exponent, options);
    return report;
}

nlohmann::json to_json(const DecayTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = {{"scale", row.scale},   {"l", row.l},         {"max_abs", row.max_abs},
                            {"bound", row.bound},   {"ratio", row.ratio}, {"count", row.count}};
        if (row.s) r["s"] = *row.s;
        rows.push_back(std::move(r));
    }
    return {{"exponent", table.exponent},
            {"rows", rows},
            {"fit",
             {{"slope", table.fit.slope},
              {"intercept", table.fit.intercept},
              {"residual", table.fit.residual},
              {"used", table.fit.used},
              {"sufficient", table.fit.sufficient},
              {"degenerate", table.fit.degenerate}}}};
}

nlohmann::json to_json(const HolderReport& report) {
    nlohmann::json out = {
        {"alpha", report.alpha},
        {"wavelet_norm",
         {{"value", report.wavelet.value},
          {"exponent", report.wavelet.exponent},
          {"form", to_string(report.wavelet.form)}}},
        {"wavelet_norm_doubled",
         {{"value", report.wavelet_doubled.value},
          {"exponent", report.wavelet_doubled.exponent},
          {"form", to_string(report.wavelet_doubled.form)}}},
        {"decay", to_json(report.decay)},
    };
    if (report.pairwise) out["pairwise_seminorm"] = *report.pairwise;
    if (report.pairwise_2d) {
        out["pairwise_seminorm"] = {{"mixed", report.pairwise_2d->mixed},
                                    {"row", report.pairwise_2d->row},
                                    {"column", report.pairwise_2d->column}};
    }
    return out;
}

void write_decay_csv(std::ostream& out, const DecayTable& table) {
    out << "scale,l,s,max_abs,bound,ratio,count\n";
    for (const auto& row : table.rows) {
        out << row.scale << ',' << row.l << ',' << (row.s ? std::to_string(*row.s) : "") << ','
            << format_real(row.max_abs) << ',' << format_real(row.bound) << ','
            << format_real(row.ratio) << ',' << row.count << '\n';
    }
}

}  // namespace treepara
