#include "treepara/multiscale.hpp"

#include "treepara/csv.hpp"
#include "treepara/error.hpp"

#include <ostream>

namespace treepara {

ScaleStack::ScaleStack(std::shared_ptr<const PartitionTree> tree) : tree_(std::move(tree)) {}

std::vector<double> ScaleStack::level_means(std::size_t m, std::span<const double> f) const {
    if (m > tree_->depth()) {
        throw Error(ErrorCode::LevelOutOfRange, "averaging level " + std::to_string(m) +
                                                    " exceeds depth " +
                                                    std::to_string(tree_->depth()));
    }
    if (f.size() != tree_->size()) {
        throw Error(ErrorCode::SizeMismatch, "signal has " + std::to_string(f.size()) +
                                                 " values, tree has " +
                                                 std::to_string(tree_->size()));
    }
    // Every element carries the same weight in both measure modes, so the
    // measure-weighted mean is the arithmetic mean.
    const auto& level = tree_->level(m);
    std::vector<double> means(level.size(), 0.0);
    for (std::size_t k = 0; k < level.size(); ++k) {
        double acc = 0.0;
        for (auto id : level[k].elements) acc += f[id];
        means[k] = acc / static_cast<double>(level[k].elements.size());
    }
    return means;
}

Signal1D ScaleStack::average(std::size_t m, std::span<const double> f) const {
    const auto means = level_means(m, f);
    Signal1D out(f.size());
    const auto& level = tree_->level(m);
    for (std::size_t k = 0; k < level.size(); ++k) {
        for (auto id : level[k].elements) out[id] = means[k];
    }
    return out;
}

std::size_t ScaleStack::level_for_P(int l) const {
    if (l < -1 || l >= static_cast<int>(tree_->depth())) {
        throw Error(ErrorCode::LevelOutOfRange,
                    "scale " + std::to_string(l) + " outside [-1, " +
                        std::to_string(static_cast<int>(tree_->depth()) - 1) + "]");
    }
    return static_cast<std::size_t>(l + 1);
}

Signal1D ScaleStack::P(int l, std::span<const double> f) const {
    return average(level_for_P(l), f);
}

Signal1D ScaleStack::scaling_P(int l, std::span<const double> f) const {
    if (l < 0) throw Error(ErrorCode::LevelOutOfRange, "scale " + std::to_string(l) + " < 0");
    return P(l, f);
}

Signal1D ScaleStack::Q(int l, std::span<const double> f) const {
    if (l < 0) throw Error(ErrorCode::LevelOutOfRange, "scale " + std::to_string(l) + " < 0");
    auto fine = P(l, f);
    const auto coarse = P(l - 1, f);
    for (std::size_t i = 0; i < fine.size(); ++i) fine[i] -= coarse[i];
    return fine;
}

void TensorStack::check_shape(const Signal2D& f) const {
    if (f.rows() != x_.tree().size() || f.cols() != y_.tree().size()) {
        throw Error(ErrorCode::SizeMismatch,
                    "2D signal is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                        ", trees are " + std::to_string(x_.tree().size()) + "x" +
                        std::to_string(y_.tree().size()));
    }
}

Signal2D TensorStack::average_x(std::size_t mx, const Signal2D& f) const {
    check_shape(f);
    if (mx > x_.tree().depth()) {
        throw Error(ErrorCode::LevelOutOfRange, "X averaging level " + std::to_string(mx));
    }
    Signal2D out(f.rows(), f.cols());
    std::vector<double> acc(f.cols());
    for (const auto& node : x_.tree().level(mx)) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (auto i : node.elements) {
            for (std::size_t p = 0; p < f.cols(); ++p) acc[p] += f(i, p);
        }
        const double inv = 1.0 / static_cast<double>(node.elements.size());
        for (auto i : node.elements) {
            for (std::size_t p = 0; p < f.cols(); ++p) out(i, p) = acc[p] * inv;
        }
    }
    return out;
}

Signal2D TensorStack::average_y(std::size_t my, const Signal2D& f) const {
    check_shape(f);
    Signal2D out(f.rows(), f.cols());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        const auto v = y_.average(my, f.row(i));
        std::copy(v.begin(), v.end(), out.row(i).begin());
    }
    return out;
}

std::size_t TensorStack::x_level(int l) const {
    if (l < -1 || l >= static_cast<int>(x_.tree().depth())) {
        throw Error(ErrorCode::LevelOutOfRange, "X scale " + std::to_string(l) + " out of range");
    }
    return static_cast<std::size_t>(l + 1);
}

std::size_t TensorStack::y_level(int s) const {
    if (s < -1 || s >= static_cast<int>(y_.tree().depth())) {
        throw Error(ErrorCode::LevelOutOfRange, "Y scale " + std::to_string(s) + " out of range");
    }
    return static_cast<std::size_t>(s + 1);
}

Signal2D TensorStack::tensor_PP(int l, int s, const Signal2D& f) const {
    return average(x_level(l), y_level(s), f);
}

Signal2D TensorStack::tensor_QP(int l, int s, const Signal2D& f) const {
    if (l < 0) throw Error(ErrorCode::LevelOutOfRange, "X scale " + std::to_string(l) + " < 0");
    const auto ys = average_y(y_level(s), f);
    return average_x(x_level(l), ys) - average_x(x_level(l - 1), ys);
}

Signal2D TensorStack::tensor_PQ(int l, int s, const Signal2D& f) const {
    if (s < 0) throw Error(ErrorCode::LevelOutOfRange, "Y scale " + std::to_string(s) + " < 0");
    const auto xs = average_x(x_level(l), f);
    return average_y(y_level(s), xs) - average_y(y_level(s - 1), xs);
}

Signal2D TensorStack::tensor_QQ(int l, int s, const Signal2D& f) const {
    if (l < 0 || s < 0) {
        throw Error(ErrorCode::LevelOutOfRange, "wavelet scales must be non-negative");
    }
    const auto fine_x = average_x(x_level(l), f);
    const auto coarse_x = average_x(x_level(l - 1), f);
    const auto qx = fine_x - coarse_x;
    return average_y(y_level(s), qx) - average_y(y_level(s - 1), qx);
}

std::string to_string(Family family) {
    switch (family) {
    case Family::s: return "s";
    case Family::d: return "d";
    case Family::omega: return "omega";
    case Family::beta: return "beta";
    case Family::gamma: return "gamma";
    case Family::alpha: return "alpha";
    }
    return "unknown";
}

Family parse_family(const std::string& text) {
    for (auto f : {Family::s, Family::d, Family::omega, Family::beta, Family::gamma, Family::alpha}) {
        if (to_string(f) == text) return f;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown coefficient family '" + text + "'");
}

bool is_tensor_family(Family family) {
    return family != Family::s && family != Family::d;
}

double CoefficientTable::at(const CoefficientKey& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) throw Error(ErrorCode::UnknownId, "coefficient key not in table");
    return it->second.value;
}

namespace {

/// Means of each column of g over the nodes of level m: result has one row
/// per level-m node.
std::vector<std::vector<double>> row_block_means(const PartitionTree& tree, std::size_t m,
                                                 const Signal2D& g) {
    std::vector<std::vector<double>> out;
    for (const auto& node : tree.level(m)) {
        std::vector<double> acc(g.cols(), 0.0);
        for (auto i : node.elements) {
            for (std::size_t p = 0; p < g.cols(); ++p) acc[p] += g(i, p);
        }
        for (auto& v : acc) v /= static_cast<double>(node.elements.size());
        out.push_back(std::move(acc));
    }
    return out;
}

Signal2D transpose(const Signal2D& f) {
    Signal2D out(f.cols(), f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t p = 0; p < f.cols(); ++p) out(p, i) = f(i, p);
    }
    return out;
}

/// Each column of g analysed in basis b; result(a, p) = <g(., p), b_a>.
Signal2D analyze_columns(const Signal2D& g, const TreeBasis& b) {
    Signal2D out(b.size(), g.cols());
    std::vector<double> column(g.rows());
    for (std::size_t p = 0; p < g.cols(); ++p) {
        for (std::size_t i = 0; i < g.rows(); ++i) column[i] = g(i, p);
        const auto c = b.analyze(column);
        for (std::size_t a = 0; a < c.size(); ++a) out(a, p) = c[a];
    }
    return out;
}

void add_1d_wavelets(CoefficientTable& table, const TreeBasis& basis,
                     const std::vector<double>& coef) {
    const auto& tree = basis.tree();
    for (std::size_t l = 0; l < tree.depth(); ++l) {
        for (std::size_t k = 0; k < tree.node_count(l); ++k) {
            const auto h = tree.child_count(l, k);
            for (std::size_t j = 1; j < h; ++j) {
                const auto key = CoefficientKey::one_d(l, k + 1, j);
                table.entries[key] = {coef[basis.index_of(l, k, j)], tree.scale_size(l, k)};
            }
        }
    }
}

/// beta-type table: X wavelets of the Y-child means. Swapping roles of the
/// axes (transposed input) yields gamma.
void add_wavelet_child(CoefficientTable& table, const Signal2D& f, const TreeBasis& wave,
                       const PartitionTree& child_tree, bool swap_axes) {
    const auto& wt = wave.tree();
    const auto ft = transpose(f);
    for (std::size_t s = 0; s < child_tree.depth(); ++s) {
        // column p of block = mean of f(x, .) over Y-node p at level s+1
        const auto means = row_block_means(child_tree, s + 1, ft);
        Signal2D block(f.rows(), means.size());
        for (std::size_t p = 0; p < means.size(); ++p) {
            for (std::size_t i = 0; i < f.rows(); ++i) block(i, p) = means[p][i];
        }
        const auto coef = analyze_columns(block, wave);
        for (std::size_t l = 0; l < wt.depth(); ++l) {
            for (std::size_t k = 0; k < wt.node_count(l); ++k) {
                for (std::size_t j = 1; j < wt.child_count(l, k); ++j) {
                    const auto a = wave.index_of(l, k, j);
                    for (std::size_t r = 0; r < child_tree.node_count(s); ++r) {
                        const auto& children = child_tree.node(s, r).children;
                        for (std::size_t c = 0; c < children.size(); ++c) {
                            const double size = wt.scale_size(l, k) * child_tree.scale_size(s, r);
                            CoefficientKey key;
                            if (!swap_axes) {
                                key = {l, s, k + 1, j, r + 1, c + 1};
                            } else {
                                key = {s, l, r + 1, c + 1, k + 1, j};
                            }
                            table.entries[key] = {coef(a, children[c]), size};
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

CoefficientTable expansion_coefficients(Family family, std::span<const double> f,
                                        const TreeBasis& basis) {
    if (is_tensor_family(family)) {
        throw Error(ErrorCode::InvalidArgument,
                    "family " + to_string(family) + " needs a 2D signal and two bases");
    }
    if (f.size() != basis.tree().size()) {
        throw Error(ErrorCode::SizeMismatch, "signal has " + std::to_string(f.size()) +
                                                 " values, basis expects " +
                                                 std::to_string(basis.tree().size()));
    }
    CoefficientTable table;
    table.family = family;
    const auto& tree = basis.tree();
    if (family == Family::d) {
        add_1d_wavelets(table, basis, basis.analyze(f));
        return table;
    }
    const ScaleStack stack(tree);
    for (std::size_t l = 0; l < tree.depth(); ++l) {
        const auto means = stack.level_means(l + 1, f);
        for (std::size_t k = 0; k < tree.node_count(l); ++k) {
            const auto& children = tree.node(l, k).children;
            for (std::size_t c = 0; c < children.size(); ++c) {
                const auto key = CoefficientKey::one_d(l, k + 1, c + 1);
                table.entries[key] = {means[children[c]], tree.scale_size(l, k)};
            }
        }
    }
    return table;
}

CoefficientTable expansion_coefficients(Family family, const Signal2D& f, const TreeBasis& bx,
                                        const TreeBasis& by) {
    if (!is_tensor_family(family)) {
        throw Error(ErrorCode::InvalidArgument,
                    "family " + to_string(family) + " needs a 1D signal");
    }
    const auto& tx = bx.tree();
    const auto& ty = by.tree();
    if (f.rows() != tx.size() || f.cols() != ty.size()) {
        throw Error(ErrorCode::SizeMismatch, "2D signal shape does not match the bases");
    }
    CoefficientTable table;
    table.family = family;

    switch (family) {
    case Family::alpha: {
        // rows analysed along Y, then columns along X
        const auto along_y = transpose(analyze_columns(transpose(f), by));
        const auto coef = analyze_columns(along_y, bx);
        for (std::size_t l = 0; l < tx.depth(); ++l) {
            for (std::size_t k = 0; k < tx.node_count(l); ++k) {
                for (std::size_t j = 1; j < tx.child_count(l, k); ++j) {
                    const auto a = bx.index_of(l, k, j);
                    for (std::size_t s = 0; s < ty.depth(); ++s) {
                        for (std::size_t r = 0; r < ty.node_count(s); ++r) {
                            for (std::size_t i = 1; i < ty.child_count(s, r); ++i) {
                                const auto b = by.index_of(s, r, i);
                                CoefficientKey key{l, s, k + 1, j, r + 1, i};
                                table.entries[key] = {coef(a, b),
                                                      tx.scale_size(l, k) * ty.scale_size(s, r)};
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    case Family::beta:
        add_wavelet_child(table, f, bx, ty, false);
        break;
    case Family::gamma:
        add_wavelet_child(table, transpose(f), by, tx, true);
        break;
    case Family::omega: {
        const ScaleStack sy(ty);
        for (std::size_t l = 0; l < tx.depth(); ++l) {
            const auto xm = row_block_means(tx, l + 1, f);  // [x-node][y]
            for (std::size_t s = 0; s < ty.depth(); ++s) {
                for (std::size_t k = 0; k < tx.node_count(l); ++k) {
                    const auto& xc = tx.node(l, k).children;
                    for (std::size_t j = 0; j < xc.size(); ++j) {
                        const auto ym = sy.level_means(s + 1, xm[xc[j]]);
                        for (std::size_t r = 0; r < ty.node_count(s); ++r) {
                            const auto& yc = ty.node(s, r).children;
                            for (std::size_t i = 0; i < yc.size(); ++i) {
                                CoefficientKey key{l, s, k + 1, j + 1, r + 1, i + 1};
                                table.entries[key] = {ym[yc[i]],
                                                      tx.scale_size(l, k) * ty.scale_size(s, r)};
                            }
                        }
                    }
                }
            }
        }
        break;
    }
    default:
        break;
    }
    return table;
}

void write_coefficient_table_csv(std::ostream& out, const CoefficientTable& table, bool header) {
    if (header) out << "family,l,s,k,j,r,i,value\n";
    const auto opt = [](const std::optional<std::size_t>& v) {
        return v ? std::to_string(*v) : std::string{};
    };
    for (const auto& [key, entry] : table.entries) {
        out << to_string(table.family) << ',' << key.l << ',' << opt(key.s) << ',' << key.k << ','
            << key.j << ',' << opt(key.r) << ',' << opt(key.i) << ',' << format_real(entry.value)
            << '\n';
    }
}

}  // namespace treepara
