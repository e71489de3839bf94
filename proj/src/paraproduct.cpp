#include "treepara/paraproduct.hpp"

#include "treepara/error.hpp"
#include "treepara/parallel.hpp"
#include "treepara/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace treepara {

namespace {

void require_first(const Nonlinearity& a) {
    if (!a.has_first()) {
        throw Error(ErrorCode::MissingDerivative, "nonlinearity '" + a.id + "' has no A'");
    }
}

void require_c2(const Nonlinearity& a) {
    if (a.smoothness != Smoothness::C2) {
        throw Error(ErrorCode::NotC2, "nonlinearity '" + a.id + "' is only C1");
    }
    require_first(a);
    if (!a.has_second()) {
        throw Error(ErrorCode::MissingDerivative, "nonlinearity '" + a.id + "' has no A''");
    }
}

Signal1D map(std::span<const double> x, const std::function<double(double)>& fn) {
    Signal1D out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = fn(x[i]);
    return out;
}

Signal2D map(const Signal2D& x, const std::function<double(double)>& fn) {
    Signal2D out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) out.data()[i] = fn(x.data()[i]);
    return out;
}

/// grid[mx][my] = E^X_mx E^Y_my f for mx = 0..L_X, my = 0..L_Y.
std::vector<std::vector<Signal2D>> average_grid(const TensorStack& stacks, const Signal2D& f) {
    const std::size_t lx = stacks.x().tree().depth();
    const std::size_t ly = stacks.y().tree().depth();
    std::vector<std::vector<Signal2D>> grid(lx + 1, std::vector<Signal2D>(ly + 1));
    for (std::size_t mx = 0; mx <= lx; ++mx) {
        const auto xs = stacks.average_x(mx, f);
        for (std::size_t my = 0; my <= ly; ++my) grid[mx][my] = stacks.average_y(my, xs);
    }
    return grid;
}

struct CellStats {
    double first_shifted = 0.0;
    double first_base = 0.0;
    double second_shifted = 0.0;
    double second_base = 0.0;
};

/// Integrates the (l, s) residual integrand over [0,1]^2 for each element.
void integrate_cell(const Signal2D& b, const Signal2D& x, const Signal2D& y, const Signal2D& d,
                    const Nonlinearity& a, const QuadratureRule& rule, Signal2D& out,
                    CellStats* stats) {
    const auto n = rule.nodes.size();
    for (std::size_t e = 0; e < b.size(); ++e) {
        const double base = b.data()[e];
        const double qp = x.data()[e] - base;
        const double pq = y.data()[e] - base;
        const double v1 = d.data()[e] - y.data()[e] - x.data()[e] + base;
        const double a1 = a.first(base);
        const double a2 = a.second(base);
        const double v2t = qp * pq;
        double acc = 0.0;
        for (std::size_t im = 0; im < n; ++im) {
            const double mu = rule.nodes[im];
            for (std::size_t iw = 0; iw < n; ++iw) {
                const double om = rule.nodes[iw];
                const double h = om * qp + mu * (pq + om * v1);
                const double v2 = (pq + om * v1) * (qp + mu * v1);
                const double t1 = a.first(base + h) * v1;
                const double t2 = a1 * v1;
                const double t3 = a.second(base + h) * v2;
                const double t4 = a2 * v2t;
                acc += rule.weights[im] * rule.weights[iw] * (t1 - t2 + t3 - t4);
                if (stats) {
                    stats->first_shifted = std::max(stats->first_shifted, std::abs(t1));
                    stats->first_base = std::max(stats->first_base, std::abs(t2));
                    stats->second_shifted = std::max(stats->second_shifted, std::abs(t3));
                    stats->second_base = std::max(stats->second_base, std::abs(t4));
                }
            }
        }
        out.data()[e] = acc;
    }
}

}  // namespace

Decomposition1D approx_1d(const ScaleStack& stack, std::span<const double> f,
                          const Nonlinearity& a, const ParaOptions& options) {
    require_first(a);
    const std::size_t depth = stack.scales();
    const std::size_t used = std::min(options.levels.value_or(depth), depth);

    std::vector<Signal1D> avg(depth + 1);
    for (std::size_t m = 0; m <= depth; ++m) avg[m] = stack.average(m, f);

    Decomposition1D out;
    out.nonlinearity = a.id;
    out.include_coarse = options.include_coarse;
    out.scales = used;
    out.f.assign(f.begin(), f.end());
    out.value = map(f, a.value);
    out.coarse = map(avg[0], a.value);
    out.approx.assign(f.size(), 0.0);
    for (std::size_t l = 0; l < used; ++l) {
        const auto& fine = avg[l + 1];
        const auto& coarse = avg[l];
        Signal1D term(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) term[i] = a.first(fine[i]) * (fine[i] - coarse[i]);
        for (std::size_t i = 0; i < f.size(); ++i) out.approx[i] += term[i];
        if (options.keep_terms) out.terms.push_back(std::move(term));
    }
    if (options.include_coarse) {
        for (std::size_t i = 0; i < f.size(); ++i) out.approx[i] += out.coarse[i];
    }
    out.residual.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.residual[i] = out.value[i] - out.approx[i];
    return out;
}

Decomposition2D approx_2d(const TensorStack& stacks, const Signal2D& f, const Nonlinearity& a,
                          const ParaOptions& options) {
    require_c2(a);
    const std::size_t lx = stacks.x().tree().depth();
    const std::size_t ly = stacks.y().tree().depth();
    const std::size_t ux = std::min(options.levels.value_or(lx), lx);
    const std::size_t uy = std::min(options.levels.value_or(ly), ly);
    const auto grid = average_grid(stacks, f);

    std::vector<ScaleTerm2D> terms(ux * uy);
    parallel_for(terms.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t l = idx / uy;
            const std::size_t s = idx % uy;
            const auto& pp = grid[l + 1][s + 1];
            const auto& cx = grid[l][s + 1];
            const auto& cy = grid[l + 1][s];
            const auto& cc = grid[l][s];
            ScaleTerm2D term{l, s, Signal2D(f.rows(), f.cols()), Signal2D(f.rows(), f.cols())};
            for (std::size_t e = 0; e < f.size(); ++e) {
                const double p = pp.data()[e];
                const double qq = p - cx.data()[e] - cy.data()[e] + cc.data()[e];
                const double qp = p - cx.data()[e];
                const double pq = p - cy.data()[e];
                term.first.data()[e] = a.first(p) * qq;
                term.second.data()[e] = a.second(p) * qp * pq;
            }
            terms[idx] = std::move(term);
        }
    });

    Decomposition2D out;
    out.nonlinearity = a.id;
    out.include_coarse = options.include_coarse;
    out.scales_x = ux;
    out.scales_y = uy;
    out.f = f;
    out.value = map(f, a.value);
    out.boundary = map(grid[lx][0], a.value) + map(grid[0][ly], a.value) - map(grid[0][0], a.value);
    out.approx = Signal2D(f.rows(), f.cols());
    for (const auto& term : terms) {
        for (std::size_t e = 0; e < f.size(); ++e) {
            out.approx.data()[e] += term.first.data()[e] + term.second.data()[e];
        }
    }
    if (options.include_coarse) out.approx += out.boundary;
    out.residual = out.value - out.approx;
    if (options.keep_terms) out.terms = std::move(terms);
    return out;
}

CornerContext forward_corners(const TensorStack& stacks, int l, int s, const Signal2D& f) {
    CornerContext ctx;
    ctx.l = l;
    ctx.s = s;
    ctx.base = stacks.tensor_PP(l, s, f);
    ctx.x_step = stacks.tensor_PP(l + 1, s, f);
    ctx.y_step = stacks.tensor_PP(l, s + 1, f);
    ctx.diag = stacks.tensor_PP(l + 1, s + 1, f);
    return ctx;
}

CornerContext backward_corners(const TensorStack& stacks, int l, int s, const Signal2D& f) {
    if (l < 0 || s < 0) {
        throw Error(ErrorCode::LevelOutOfRange, "residual corners need non-negative scales");
    }
    CornerContext ctx;
    ctx.l = l;
    ctx.s = s;
    ctx.base = stacks.tensor_PP(l, s, f);
    ctx.x_step = stacks.tensor_PP(l - 1, s, f);
    ctx.y_step = stacks.tensor_PP(l, s - 1, f);
    ctx.diag = stacks.tensor_PP(l - 1, s - 1, f);
    return ctx;
}

Signal2D interpolation_h(const CornerContext& ctx, double mu, double omega) {
    if (mu < 0.0 || mu > 1.0 || omega < 0.0 || omega > 1.0) {
        throw Error(ErrorCode::InvalidArgument, "mu and omega must lie in [0, 1]");
    }
    Signal2D h(ctx.base.rows(), ctx.base.cols());
    for (std::size_t e = 0; e < h.size(); ++e) {
        const double b = ctx.base.data()[e];
        const double x = ctx.x_step.data()[e];
        const double y = ctx.y_step.data()[e];
        const double d = ctx.diag.data()[e];
        h.data()[e] = omega * (x - b) + mu * ((y + omega * (d - y)) - (b + omega * (x - b)));
    }
    return h;
}

ResidualTerms residual_terms(const CornerContext& ctx, double mu, double omega) {
    ResidualTerms t;
    t.v1 = ctx.diag - ctx.y_step - ctx.x_step + ctx.base;
    t.qp = ctx.x_step - ctx.base;
    t.pq = ctx.y_step - ctx.base;
    t.v2 = Signal2D(t.v1.rows(), t.v1.cols());
    t.v2_tilde = Signal2D(t.v1.rows(), t.v1.cols());
    for (std::size_t e = 0; e < t.v1.size(); ++e) {
        const double v1 = t.v1.data()[e];
        const double qp = t.qp.data()[e];
        const double pq = t.pq.data()[e];
        t.v2.data()[e] = (pq + omega * v1) * (qp + mu * v1);
        t.v2_tilde.data()[e] = qp * pq;
    }
    return t;
}

namespace {

struct CellResult {
    Signal2D contribution;
    CellStats stats;
};

std::vector<CellResult> integrate_all(const TensorStack& stacks, const Signal2D& f,
                                      const Nonlinearity& a, std::size_t order, bool with_stats) {
    if (order < 2) throw Error(ErrorCode::InvalidArgument, "quadrature order must be at least 2");
    const std::size_t lx = stacks.x().tree().depth();
    const std::size_t ly = stacks.y().tree().depth();
    const auto grid = average_grid(stacks, f);
    const auto rule = gauss_legendre_unit(order);
    std::vector<CellResult> cells(lx * ly);
    parallel_for(cells.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t l = idx / ly;
            const std::size_t s = idx % ly;
            auto& cell = cells[idx];
            cell.contribution = Signal2D(f.rows(), f.cols());
            integrate_cell(grid[l + 1][s + 1], grid[l][s + 1], grid[l + 1][s], grid[l][s], a, rule,
                           cell.contribution, with_stats ? &cell.stats : nullptr);
        }
    });
    return cells;
}

}  // namespace

Signal2D residual_integral_2d(const TensorStack& stacks, const Signal2D& f, const Nonlinearity& a,
                              std::size_t order) {
    require_c2(a);
    const auto cells = integrate_all(stacks, f, a, order, false);
    Signal2D total(f.rows(), f.cols());
    for (const auto& cell : cells) total += cell.contribution;
    return total;
}

TermBounds residual_term_bounds(const TensorStack& stacks, const Signal2D& f,
                                const Nonlinearity& a, std::size_t order,
                                const DecayOptions& options) {
    require_c2(a);
    if (!stacks.x().tree().is_balanced_dyadic() || !stacks.y().tree().is_balanced_dyadic()) {
        throw Error(ErrorCode::NotDyadic, "term bounds need balanced dyadic trees");
    }
    const std::size_t ly = stacks.y().tree().depth();
    const auto cells = integrate_all(stacks, f, a, order, true);
    TermBounds bounds;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        const auto& cell = cells[idx];
        TermBoundRow row;
        row.l = idx / ly;
        row.s = idx % ly;
        row.first_shifted = cell.stats.first_shifted;
        row.first_base = cell.stats.first_base;
        row.second_shifted = cell.stats.second_shifted;
        row.second_base = cell.stats.second_base;
        row.total = max_abs(cell.contribution);
        const std::size_t scale = row.l + row.s;
        if (scale >= options.min_fit_scale && row.total >= options.zero_floor) {
            xs.push_back(static_cast<double>(scale));
            ys.push_back(std::log2(row.total));
        }
        bounds.rows.push_back(row);
    }
    bounds.fit = fit_line(xs, ys);
    return bounds;
}

namespace {

void finish_report(GainReport& r, double alpha, const GainThresholds& t) {
    r.alpha = alpha;
    r.residual_degenerate = r.residual_decay.fit.degenerate;
    r.f_exponent = r.f_decay.decay_exponent();
    r.residual_exponent = r.residual_decay.decay_exponent();
    r.gain = r.residual_exponent - r.f_exponent;
    r.ratio = r.norm_f > 0.0 ? r.norm_residual_doubled / r.norm_f : 0.0;
    r.f_exponent_ok = !r.f_decay.fit.degenerate &&
                      std::abs(r.f_exponent - (alpha + 0.5)) <= t.exponent_tolerance;
    if (r.residual_degenerate) {
        r.gain_pass = true;
        r.slope_pass = true;
    } else {
        r.gain_pass = !r.f_decay.fit.degenerate && r.gain >= t.gain_factor * alpha;
        r.slope_pass = r.residual_decay.fit.slope <= -(2.0 * alpha + 0.5) + t.slope_margin;
    }
    r.pass = r.gain_pass && r.slope_pass && r.term_pass.value_or(true);
}

}  // namespace

GainReport verify_residual_gain(const Decomposition1D& decomposition, const TreeBasis& basis,
                                double alpha, const GainThresholds& thresholds,
                                const DecayOptions& options) {
    GainReport r;
    r.dims = 1;
    const auto cf = expansion_coefficients(Family::d, decomposition.f, basis);
    const auto cd = expansion_coefficients(Family::d, decomposition.residual, basis);
    r.f_decay = decay_table(cf, alpha + 0.5, options);
    r.residual_decay = decay_table(cd, 2.0 * alpha + 0.5, options);
    r.norm_f = coefficient_sup_norm(cf, alpha + 0.5);
    r.norm_residual_doubled = coefficient_sup_norm(cd, 2.0 * alpha + 0.5);
    r.norm_residual = coefficient_sup_norm(cd, alpha + 0.5);
    finish_report(r, alpha, thresholds);
    return r;
}

GainReport verify_residual_gain_2d(const Decomposition2D& decomposition, const TreeBasis& bx,
                                   const TreeBasis& by, double alpha,
                                   const TensorStack* term_stacks, const Nonlinearity* a,
                                   std::size_t order, const GainThresholds& thresholds,
                                   const DecayOptions& options) {
    GainReport r;
    r.dims = 2;
    const auto cf = expansion_coefficients(Family::alpha, decomposition.f, bx, by);
    const auto cd = expansion_coefficients(Family::alpha, decomposition.residual, bx, by);
    r.f_decay = decay_table(cf, alpha + 0.5, options);
    r.residual_decay = decay_table(cd, 2.0 * alpha + 0.5, options);
    r.norm_f = coefficient_sup_norm(cf, alpha + 0.5);
    r.norm_residual_doubled = coefficient_sup_norm(cd, 2.0 * alpha + 0.5);
    r.norm_residual = coefficient_sup_norm(cd, alpha + 0.5);
    if (term_stacks && a) {
        const auto bounds = residual_term_bounds(*term_stacks, decomposition.f, *a, order, options);
        r.term_slope = bounds.fit.slope;
        r.term_pass = bounds.fit.degenerate ||
                      bounds.fit.slope <= -(2.0 * alpha + 1.0) + thresholds.term_margin;
    }
    finish_report(r, alpha, thresholds);
    return r;
}

nlohmann::json to_json(const GainReport& r) {
    nlohmann::json out = {
        {"dims", r.dims},
        {"alpha", r.alpha},
        {"f_exponent", r.f_exponent},
        {"residual_exponent", r.residual_exponent},
        {"gain", r.gain},
        {"residual_degenerate", r.residual_degenerate},
        {"norm_f_alpha", r.norm_f},
        {"norm_residual_2alpha", r.norm_residual_doubled},
        {"norm_residual_alpha", r.norm_residual},
        {"ratio", r.ratio},
        {"f_exponent_ok", r.f_exponent_ok},
        {"gain_pass", r.gain_pass},
        {"slope_pass", r.slope_pass},
        {"pass", r.pass},
        {"f_decay", to_json(r.f_decay)},
        {"residual_decay", to_json(r.residual_decay)},
    };
    if (r.term_slope) out["term_slope"] = *r.term_slope;
    if (r.term_pass) out["term_pass"] = *r.term_pass;
    return out;
}

nlohmann::json to_json(const TermBounds& bounds) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : bounds.rows) {
        rows.push_back({{"l", row.l},
                        {"s", row.s},
                        {"first_shifted", row.first_shifted},
                        {"first_base", row.first_base},
                        {"second_shifted", row.second_shifted},
                        {"second_base", row.second_base},
                        {"total", row.total}});
    }
    return {{"rows", rows},
            {"fit",
             {{"slope", bounds.fit.slope},
              {"intercept", bounds.fit.intercept},
              {"residual", bounds.fit.residual},
              {"used", bounds.fit.used},
              {"sufficient", bounds.fit.sufficient},
              {"degenerate", bounds.fit.degenerate}}}};
}

}  // namespace treepara
