#pragma once

#include "treepara/partition_tree.hpp"
#include "treepara/signal.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace treepara {

enum class BasisKind { scaling, wavelet };

std::string to_string(BasisKind kind);

/// A Haar-like function attached to node (level, node). Wavelets carry a
/// local index j in 1..H-1; the scaling function has j = 0. Values are
/// listed per element of `support`, in support order.
struct BasisFunction {
    BasisKind kind = BasisKind::wavelet;
    std::size_t level = 0;
    std::size_t node = 0;
    std::size_t index = 0;
    std::vector<std::size_t> support;
    std::vector<double> values;
};

/// Amplitudes of the H-1 wavelets of a node with children of the given
/// measures. Row j-1 holds wavelet j: positive and equal on children
/// 0..j-1, negative on child j, zero after it.
std::vector<std::vector<double>> helmert_amplitudes(const std::vector<double>& child_measures);

/// The H-1 orthonormal wavelets of node (l, k) under the tree's measure.
std::vector<BasisFunction> build_node_wavelets(const PartitionTree& tree, std::size_t l,
                                               std::size_t k);

/// Orthonormal basis of L^2(X): the root scaling function followed by every
/// wavelet ordered by (level, node, j). Flat coefficient vectors use the
/// same order, with index 0 the scaling coefficient.
class TreeBasis {
public:
    explicit TreeBasis(PartitionTree tree);

    const PartitionTree& tree() const noexcept { return tree_; }
    std::size_t size() const noexcept { return functions_.size(); }
    const BasisFunction& function(std::size_t idx) const { return functions_.at(idx); }
    const std::vector<BasisFunction>& functions() const noexcept { return functions_; }
    const BasisFunction& scaling() const { return functions_.front(); }

    /// Flat index of wavelet (l, k, j); throws UnknownId when absent.
    std::size_t index_of(std::size_t l, std::size_t k, std::size_t j) const;
    /// Flat index of the first wavelet of node (l, k).
    std::size_t first_wavelet(std::size_t l, std::size_t k) const {
        return node_offset_.at(l).at(k);
    }

    /// Inner-product weight of one element.
    double weight() const noexcept { return tree_.element_weight(); }

    /// Dense values of function idx over all N elements.
    std::vector<double> dense(std::size_t idx) const;

    /// <f, b> for every basis function b. O(N * depth).
    std::vector<double> analyze(std::span<const double> f) const;
    /// Inverse of analyze.
    Signal1D synthesize(std::span<const double> coefficients) const;

private:
    PartitionTree tree_;
    std::vector<BasisFunction> functions_;
    std::vector<std::vector<std::size_t>> node_offset_;            // first flat index per node
    std::vector<std::vector<std::vector<std::vector<double>>>> amp_;  // [l][k][j-1][child]
};

TreeBasis build_tree_basis(const PartitionTree& tree);

enum class TensorKind { scaling_scaling, wavelet_scaling, scaling_wavelet, wavelet_wavelet };

std::string to_string(TensorKind kind);

/// Products u(x) v(y) of the two one-dimensional bases. Coefficients are
/// held in an N_X x N_Y table whose (a, b) entry belongs to
/// basis_x.function(a) x basis_y.function(b).
class TensorBasis {
public:
    TensorBasis(std::shared_ptr<const TreeBasis> bx, std::shared_ptr<const TreeBasis> by);

    const TreeBasis& x() const noexcept { return *bx_; }
    const TreeBasis& y() const noexcept { return *by_; }
    std::size_t size() const noexcept { return bx_->size() * by_->size(); }

    TensorKind kind(std::size_t a, std::size_t b) const;
    Signal2D element_values(std::size_t a, std::size_t b) const;

    Signal2D analyze(const Signal2D& f) const;
    Signal2D synthesize(const Signal2D& coefficients) const;

private:
    std::shared_ptr<const TreeBasis> bx_;
    std::shared_ptr<const TreeBasis> by_;
};

TensorBasis build_tensor_basis(const TreeBasis& bx, const TreeBasis& by);

/// List of {kind, l, k, j, support, values}.
nlohmann::json basis_to_json(const TreeBasis& basis);
/// CSV with header l,k,j,value; the scaling row has j = 0.
void write_coefficients_csv(std::ostream& out, const TreeBasis& basis,
                            std::span<const double> coefficients);

}  // namespace treepara
