#pragma once

#include "treepara/clustering.hpp"
#include "treepara/partition_tree.hpp"
#include "treepara/point_set.hpp"
#include "treepara/signal.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace fixture {

using Partition = std::vector<std::vector<std::size_t>>;

/// Tree from explicit level partitions; children are linked by containment
/// of each node's first element. No validation is done.
inline treepara::PartitionTree tree_from_partitions(
    std::size_t n, const std::vector<Partition>& parts,
    treepara::MeasureMode mode = treepara::MeasureMode::normalized) {
    std::vector<std::vector<treepara::TreeNode>> levels(parts.size());
    for (std::size_t l = 0; l < parts.size(); ++l) {
        for (std::size_t k = 0; k < parts[l].size(); ++k) {
            treepara::TreeNode node;
            node.level = l;
            node.index = k;
            node.elements = parts[l][k];
            std::sort(node.elements.begin(), node.elements.end());
            levels[l].push_back(std::move(node));
        }
    }
    for (std::size_t l = 0; l + 1 < parts.size(); ++l) {
        for (auto& parent : levels[l]) {
            for (std::size_t c = 0; c < levels[l + 1].size(); ++c) {
                const auto& child = levels[l + 1][c];
                if (!child.elements.empty() &&
                    std::find(parent.elements.begin(), parent.elements.end(),
                              child.elements.front()) != parent.elements.end()) {
                    parent.children.push_back(c);
                }
            }
        }
    }
    return treepara::PartitionTree(n, std::move(levels), mode);
}

inline treepara::PartitionTree dyadic(std::size_t n,
                                      treepara::MeasureMode mode = treepara::MeasureMode::normalized) {
    return treepara::build_balanced_dyadic_tree(treepara::PointSet::indexed(n), mode);
}

inline treepara::PointSet random_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> coords(n, std::vector<double>(dim));
    for (auto& c : coords) {
        for (auto& v : c) v = u(rng);
    }
    return treepara::PointSet::from_coordinates(coords);
}

inline treepara::PartitionTree random_cluster_tree(std::size_t n, std::uint64_t seed,
                                                   std::size_t cap = 4) {
    treepara::ClusterOptions opts;
    opts.branching_cap = cap;
    return treepara::build_tree_from_clustering(random_points(n, 2, seed), opts);
}

/// Entries drawn uniformly from [-1, 1].
inline treepara::Signal2D uniform_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    treepara::Signal2D out(n, m);
    for (auto& v : out.data()) v = u(rng);
    return out;
}

}  // namespace fixture
