#pragma once

#include "treepara/partition_tree.hpp"
#include "treepara/point_set.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace treepara {

enum class Linkage { single, complete, average };

std::string to_string(Linkage linkage);
Linkage parse_linkage(const std::string& text);

/// One agglomerative merge. Clusters 0..N-1 are the singletons; merge m
/// creates cluster N+m.
struct Merge {
    std::size_t left = 0;   // cluster whose smallest element id is lower
    std::size_t right = 0;
    double height = 0.0;    // linkage distance at which the merge happened
    std::size_t size = 0;
};

/// Euclidean agglomerative clustering. Among equal-distance candidate pairs
/// the one with the lexicographically smallest (min id, min id) wins.
std::vector<Merge> agglomerate(const PointSet& points, Linkage linkage);

struct ClusterOptions {
    Linkage linkage = Linkage::average;
    std::size_t branching_cap = 4;
    /// A node is split into its top dendrogram merge and then, while fewer
    /// than branching_cap pieces exist, the piece with the highest merge is
    /// split again provided its height is at least split_ratio times the
    /// node's own merge height.
    double split_ratio = 0.5;
    MeasureMode measure = MeasureMode::normalized;
};

struct ClusterDiagnostics {
    bool degenerate_metric = false;
    std::vector<std::string> notes;
};

/// Partition tree from a dendrogram. Internal nodes get between 2 and
/// branching_cap children; singletons are carried down unchanged until the
/// finest level. When every pairwise distance is 0 the tree falls back to
/// balanced halving and the diagnostics say so.
PartitionTree build_tree_from_clustering(const PointSet& points, const ClusterOptions& options = {},
                                         ClusterDiagnostics* diagnostics = nullptr);

}  // namespace treepara
