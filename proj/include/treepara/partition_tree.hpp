#pragma once

#include "treepara/point_set.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace treepara {

enum class MeasureMode {
    normalized,  // |X^l_k| / N, root mass 1
    counting,    // |X^l_k|
};

std::string to_string(MeasureMode mode);
MeasureMode parse_measure_mode(const std::string& text);

struct NodeMeasure {
    double value = 0.0;
    MeasureMode mode = MeasureMode::normalized;
};

/// One node X^l_k. `index` is k (0-based within the level); `children` are
/// indices into level l+1 and are empty at the finest level.
struct TreeNode {
    std::size_t level = 0;
    std::size_t index = 0;
    std::vector<std::size_t> elements;  // sorted element ids
    std::vector<std::size_t> children;
};

/// Leveled nested partitions of {0, ..., N-1}: level 0 is the root, level L
/// holds singletons, and every level is a full partition of the set.
///
/// The constructor does not enforce the partition axioms so that invalid
/// documents can be inspected; call validate_partition_tree() (or use one of
/// the builders, which only produce valid trees).
class PartitionTree {
public:
    PartitionTree(std::size_t n, std::vector<std::vector<TreeNode>> levels,
                  MeasureMode mode = MeasureMode::normalized);

    std::size_t size() const noexcept { return n_; }
    /// L: index of the finest level.
    std::size_t depth() const noexcept { return levels_.empty() ? 0 : levels_.size() - 1; }
    std::size_t level_count() const noexcept { return levels_.size(); }

    const std::vector<std::vector<TreeNode>>& levels() const noexcept { return levels_; }
    const std::vector<TreeNode>& level(std::size_t l) const { return levels_.at(l); }
    const TreeNode& node(std::size_t l, std::size_t k) const { return levels_.at(l).at(k); }
    /// n(l)
    std::size_t node_count(std::size_t l) const { return levels_.at(l).size(); }
    /// H(l,k)
    std::size_t child_count(std::size_t l, std::size_t k) const {
        return node(l, k).children.size();
    }

    MeasureMode measure_mode() const noexcept { return mode_; }
    PartitionTree with_measure(MeasureMode mode) const;

    /// Measure of a single element: 1/N (normalized) or 1 (counting).
    double element_weight() const noexcept;
    NodeMeasure node_measure(std::size_t l, std::size_t k) const;
    double measure(std::size_t l, std::size_t k) const { return node_measure(l, k).value; }

    /// Scale size used by the Hölder calculus: 2^{-l} on balanced dyadic
    /// trees, the node measure otherwise.
    double scale_size(std::size_t l, std::size_t k) const;

    /// Index of the level-l node holding `id`. Levels past L resolve to the
    /// finest level. Throws UnknownId for ids outside the set.
    std::size_t node_of(std::size_t l, std::size_t id) const;

    /// Deepest level whose partition keeps i and j in one node.
    std::size_t deepest_common_level(std::size_t i, std::size_t j) const;

    /// Every internal node has exactly two equal-size children and all
    /// leaves sit at level L = log2 N.
    bool is_balanced_dyadic() const noexcept { return balanced_dyadic_; }

private:
    std::size_t n_;
    std::vector<std::vector<TreeNode>> levels_;
    MeasureMode mode_;
    std::vector<std::vector<std::size_t>> owner_;  // owner_[l][id] = k
    bool balanced_dyadic_ = false;
};

struct Violation {
    std::size_t level = 0;
    std::size_t node = 0;
    std::string axiom;   // root | disjointness | coverage | nesting | children | singleton-leaves | monotone-count | sorted
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_partition_tree(const PartitionTree& tree);

/// Binary tree over ids in order; N must be a power of two.
PartitionTree build_balanced_dyadic_tree(const PointSet& points,
                                         MeasureMode mode = MeasureMode::normalized);

/// rho_I: measure of the smallest node containing both ids, 0 when i == j.
double dyadic_distance(const PartitionTree& tree, std::size_t i, std::size_t j);

enum class ProductDistance {
    matched_levels,      // products X^l_k x Y^l_r of nodes taken at one common level
    independent_levels,  // products X^l_k x Y^s_r over all (l, s)
};

using ElementPair = std::pair<std::size_t, std::size_t>;

/// rho_R: measure of the smallest product node containing both pairs, 0 on
/// equal pairs.
double tensor_dyadic_distance(const PartitionTree& tree_x, const PartitionTree& tree_y,
                              ElementPair a, ElementPair b,
                              ProductDistance rule = ProductDistance::matched_levels);

}  // namespace treepara
