#include "treepara/haar_basis.hpp"

#include "treepara/csv.hpp"
#include "treepara/error.hpp"

#include <cmath>
#include <ostream>

namespace treepara {

std::string to_string(BasisKind kind) {
    return kind == BasisKind::scaling ? "scaling" : "wavelet";
}

std::string to_string(TensorKind kind) {
    switch (kind) {
    case TensorKind::scaling_scaling: return "phi_phi";
    case TensorKind::wavelet_scaling: return "psi_phi";
    case TensorKind::scaling_wavelet: return "phi_psi";
    case TensorKind::wavelet_wavelet: return "psi_psi";
    }
    return "unknown";
}

std::vector<std::vector<double>> helmert_amplitudes(const std::vector<double>& child_measures) {
    std::vector<std::vector<double>> rows;
    if (child_measures.size() < 2) return rows;
    double before = child_measures[0];
    for (std::size_t j = 1; j < child_measures.size(); ++j) {
        const double mu = child_measures[j];
        const double after = before + mu;
        std::vector<double> row(child_measures.size(), 0.0);
        const double pos = std::sqrt(mu / (before * after));
        const double neg = -std::sqrt(before / (mu * after));
        for (std::size_t c = 0; c < j; ++c) row[c] = pos;
        row[j] = neg;
        rows.push_back(std::move(row));
        before = after;
    }
    return rows;
}

namespace {

std::vector<std::vector<double>> node_amplitudes(const PartitionTree& tree, std::size_t l,
                                                 std::size_t k) {
    const auto& node = tree.node(l, k);
    std::vector<double> measures;
    measures.reserve(node.children.size());
    for (auto c : node.children) measures.push_back(tree.measure(l + 1, c));
    return helmert_amplitudes(measures);
}

}  // namespace

std::vector<BasisFunction> build_node_wavelets(const PartitionTree& tree, std::size_t l,
                                               std::size_t k) {
    const auto& node = tree.node(l, k);
    const auto amps = node_amplitudes(tree, l, k);
    std::vector<BasisFunction> out;
    for (std::size_t j = 0; j < amps.size(); ++j) {
        BasisFunction fn;
        fn.kind = BasisKind::wavelet;
        fn.level = l;
        fn.node = k;
        fn.index = j + 1;
        // Wavelet j+1 lives on children 0..j+1; later children carry zero.
        for (std::size_t c = 0; c <= j + 1 && c < node.children.size(); ++c) {
            for (auto id : tree.node(l + 1, node.children[c]).elements) {
                fn.support.push_back(id);
                fn.values.push_back(amps[j][c]);
            }
        }
        out.push_back(std::move(fn));
    }
    return out;
}

TreeBasis::TreeBasis(PartitionTree tree) : tree_(std::move(tree)) {
    BasisFunction root;
    root.kind = BasisKind::scaling;
    root.support = tree_.node(0, 0).elements;
    root.values.assign(root.support.size(), 1.0 / std::sqrt(tree_.measure(0, 0)));
    functions_.push_back(std::move(root));

    node_offset_.resize(tree_.level_count());
    amp_.resize(tree_.level_count());
    for (std::size_t l = 0; l < tree_.level_count(); ++l) {
        const auto count = tree_.node_count(l);
        node_offset_[l].resize(count);
        amp_[l].resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            node_offset_[l][k] = functions_.size();
            if (l + 1 < tree_.level_count()) amp_[l][k] = node_amplitudes(tree_, l, k);
            for (auto& fn : build_node_wavelets(tree_, l, k)) functions_.push_back(std::move(fn));
        }
    }
}

std::size_t TreeBasis::index_of(std::size_t l, std::size_t k, std::size_t j) const {
    if (l >= amp_.size() || k >= amp_[l].size() || j == 0 || j > amp_[l][k].size()) {
        throw Error(ErrorCode::UnknownId, "no wavelet (" + std::to_string(l) + "," +
                                              std::to_string(k) + "," + std::to_string(j) + ")");
    }
    return node_offset_[l][k] + j - 1;
}

std::vector<double> TreeBasis::dense(std::size_t idx) const {
    const auto& fn = function(idx);
    std::vector<double> out(tree_.size(), 0.0);
    for (std::size_t i = 0; i < fn.support.size(); ++i) out[fn.support[i]] = fn.values[i];
    return out;
}

std::vector<double> TreeBasis::analyze(std::span<const double> f) const {
    if (f.size() != tree_.size()) {
        throw Error(ErrorCode::SizeMismatch, "signal has " + std::to_string(f.size()) +
                                                 " values, basis expects " +
                                                 std::to_string(tree_.size()));
    }
    const double w = weight();
    const std::size_t depth = tree_.depth();
    // sums[l][k] = weighted sum of f over node (l, k), built bottom-up
    std::vector<std::vector<double>> sums(tree_.level_count());
    sums[depth].assign(tree_.node_count(depth), 0.0);
    for (std::size_t k = 0; k < tree_.node_count(depth); ++k) {
        for (auto id : tree_.node(depth, k).elements) sums[depth][k] += w * f[id];
    }
    for (std::size_t l = depth; l-- > 0;) {
        sums[l].assign(tree_.node_count(l), 0.0);
        for (std::size_t k = 0; k < tree_.node_count(l); ++k) {
            for (auto c : tree_.node(l, k).children) sums[l][k] += sums[l + 1][c];
        }
    }

    std::vector<double> coef(functions_.size(), 0.0);
    coef[0] = sums[0][0] / std::sqrt(tree_.measure(0, 0));
    for (std::size_t l = 0; l < depth; ++l) {
        for (std::size_t k = 0; k < tree_.node_count(l); ++k) {
            const auto& children = tree_.node(l, k).children;
            const auto& rows = amp_[l][k];
            for (std::size_t j = 0; j < rows.size(); ++j) {
                double acc = 0.0;
                for (std::size_t c = 0; c <= j + 1; ++c) acc += rows[j][c] * sums[l + 1][children[c]];
                coef[node_offset_[l][k] + j] = acc;
            }
        }
    }
    return coef;
}

Signal1D TreeBasis::synthesize(std::span<const double> coefficients) const {
    if (coefficients.size() != functions_.size()) {
        throw Error(ErrorCode::SizeMismatch, "coefficient vector has " +
                                                 std::to_string(coefficients.size()) +
                                                 " entries, basis has " +
                                                 std::to_string(functions_.size()));
    }
    const std::size_t depth = tree_.depth();
    // current[k]: partial reconstruction on level-l node k
    std::vector<double> current(1, coefficients[0] / std::sqrt(tree_.measure(0, 0)));
    for (std::size_t l = 0; l < depth; ++l) {
        std::vector<double> next(tree_.node_count(l + 1), 0.0);
        for (std::size_t k = 0; k < tree_.node_count(l); ++k) {
            const auto& children = tree_.node(l, k).children;
            const auto& rows = amp_[l][k];
            for (std::size_t c = 0; c < children.size(); ++c) {
                double v = current[k];
                for (std::size_t j = 0; j < rows.size(); ++j) {
                    v += coefficients[node_offset_[l][k] + j] * rows[j][c];
                }
                next[children[c]] = v;
            }
        }
        current = std::move(next);
    }
    Signal1D f(tree_.size(), 0.0);
    for (std::size_t k = 0; k < tree_.node_count(depth); ++k) {
        for (auto id : tree_.node(depth, k).elements) f[id] = current[k];
    }
    return f;
}

TreeBasis build_tree_basis(const PartitionTree& tree) { return TreeBasis(tree); }

TensorBasis::TensorBasis(std::shared_ptr<const TreeBasis> bx, std::shared_ptr<const TreeBasis> by)
    : bx_(std::move(bx)), by_(std::move(by)) {}

TensorBasis build_tensor_basis(const TreeBasis& bx, const TreeBasis& by) {
    return TensorBasis(std::make_shared<const TreeBasis>(bx), std::make_shared<const TreeBasis>(by));
}

TensorKind TensorBasis::kind(std::size_t a, std::size_t b) const {
    const bool wx = bx_->function(a).kind == BasisKind::wavelet;
    const bool wy = by_->function(b).kind == BasisKind::wavelet;
    if (wx && wy) return TensorKind::wavelet_wavelet;
    if (wx) return TensorKind::wavelet_scaling;
    if (wy) return TensorKind::scaling_wavelet;
    return TensorKind::scaling_scaling;
}

Signal2D TensorBasis::element_values(std::size_t a, std::size_t b) const {
    const auto u = bx_->dense(a);
    const auto v = by_->dense(b);
    return Signal2D::outer(u, v);
}

Signal2D TensorBasis::analyze(const Signal2D& f) const {
    const std::size_t nx = bx_->tree().size();
    const std::size_t ny = by_->tree().size();
    if (f.rows() != nx || f.cols() != ny) {
        throw Error(ErrorCode::SizeMismatch, "2D signal is " + std::to_string(f.rows()) + "x" +
                                                 std::to_string(f.cols()) + ", basis is " +
                                                 std::to_string(nx) + "x" + std::to_string(ny));
    }
    Signal2D along_y(nx, ny);
    for (std::size_t i = 0; i < nx; ++i) {
        const auto c = by_->analyze(f.row(i));
        std::copy(c.begin(), c.end(), along_y.row(i).begin());
    }
    Signal2D out(nx, ny);
    std::vector<double> column(nx);
    for (std::size_t b = 0; b < ny; ++b) {
        for (std::size_t i = 0; i < nx; ++i) column[i] = along_y(i, b);
        const auto c = bx_->analyze(column);
        for (std::size_t a = 0; a < nx; ++a) out(a, b) = c[a];
    }
    return out;
}

Signal2D TensorBasis::synthesize(const Signal2D& coefficients) const {
    const std::size_t nx = bx_->size();
    const std::size_t ny = by_->size();
    if (coefficients.rows() != nx || coefficients.cols() != ny) {
        throw Error(ErrorCode::SizeMismatch, "coefficient table shape does not match the basis");
    }
    Signal2D along_x(nx, ny);
    std::vector<double> column(nx);
    for (std::size_t b = 0; b < ny; ++b) {
        for (std::size_t a = 0; a < nx; ++a) column[a] = coefficients(a, b);
        const auto v = bx_->synthesize(column);
        for (std::size_t i = 0; i < nx; ++i) along_x(i, b) = v[i];
    }
    Signal2D out(nx, ny);
    for (std::size_t i = 0; i < nx; ++i) {
        const auto v = by_->synthesize(along_x.row(i));
        std::copy(v.begin(), v.end(), out.row(i).begin());
    }
    return out;
}

nlohmann::json basis_to_json(const TreeBasis& basis) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& fn : basis.functions()) {
        out.push_back({{"kind", to_string(fn.kind)},
                       {"l", fn.level},
                       {"k", fn.node},
                       {"j", fn.index},
                       {"support", fn.support},
                       {"values", fn.values}});
    }
    return out;
}

void write_coefficients_csv(std::ostream& out, const TreeBasis& basis,
                            std::span<const double> coefficients) {
    if (coefficients.size() != basis.size()) {
        throw Error(ErrorCode::SizeMismatch, "coefficient vector does not match the basis");
    }
    out << "l,k,j,value\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& fn = basis.function(i);
        out << fn.level << ',' << fn.node << ',' << fn.index << ',' << format_real(coefficients[i])
            << '\n';
    }
}

}  // namespace treepara
