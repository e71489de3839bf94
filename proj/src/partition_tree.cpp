#include "treepara/partition_tree.hpp"

#include "treepara/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace treepara {

namespace {

constexpr std::size_t kNoOwner = std::numeric_limits<std::size_t>::max();

bool check_balanced_dyadic(std::size_t n, const std::vector<std::vector<TreeNode>>& levels) {
    if (!std::has_single_bit(n)) return false;
    const auto depth = static_cast<std::size_t>(std::countr_zero(n));
    if (levels.size() != depth + 1) return false;
    for (std::size_t l = 0; l <= depth; ++l) {
        const std::size_t expected_nodes = std::size_t{1} << l;
        const std::size_t expected_size = n >> l;
        if (levels[l].size() != expected_nodes) return false;
        for (const auto& node : levels[l]) {
            if (node.elements.size() != expected_size) return false;
            if (l < depth && node.children.size() != 2) return false;
        }
    }
    return true;
}

}  // namespace

std::string to_string(MeasureMode mode) {
    return mode == MeasureMode::normalized ? "normalized" : "counting";
}

MeasureMode parse_measure_mode(const std::string& text) {
    if (text == "normalized") return MeasureMode::normalized;
    if (text == "counting") return MeasureMode::counting;
    throw Error(ErrorCode::InvalidArgument, "unknown measure mode '" + text + "'");
}

PartitionTree::PartitionTree(std::size_t n, std::vector<std::vector<TreeNode>> levels,
                             MeasureMode mode)
    : n_(n), levels_(std::move(levels)), mode_(mode) {
    owner_.resize(levels_.size());
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        owner_[l].assign(n_, kNoOwner);
        for (std::size_t k = 0; k < levels_[l].size(); ++k) {
            for (auto id : levels_[l][k].elements) {
                if (id < n_ && owner_[l][id] == kNoOwner) owner_[l][id] = k;
            }
        }
    }
    balanced_dyadic_ = check_balanced_dyadic(n_, levels_);
}

PartitionTree PartitionTree::with_measure(MeasureMode mode) const {
    PartitionTree copy = *this;
    copy.mode_ = mode;
    return copy;
}

double PartitionTree::element_weight() const noexcept {
    return mode_ == MeasureMode::normalized ? 1.0 / static_cast<double>(n_) : 1.0;
}

NodeMeasure PartitionTree::node_measure(std::size_t l, std::size_t k) const {
    const auto count = static_cast<double>(node(l, k).elements.size());
    return {count * element_weight(), mode_};
}

double PartitionTree::scale_size(std::size_t l, std::size_t k) const {
    if (balanced_dyadic_) return std::ldexp(1.0, -static_cast<int>(l));
    return measure(l, k);
}

std::size_t PartitionTree::node_of(std::size_t l, std::size_t id) const {
    if (id >= n_) {
        throw Error(ErrorCode::UnknownId, "element id " + std::to_string(id) +
                                              " outside 0.." + std::to_string(n_ - 1));
    }
    if (levels_.empty()) throw Error(ErrorCode::PartitionViolation, "tree has no levels");
    const std::size_t lv = std::min(l, depth());
    const std::size_t k = owner_[lv][id];
    if (k == kNoOwner) {
        throw Error(ErrorCode::PartitionViolation, "element " + std::to_string(id) +
                                                       " not covered at level " +
                                                       std::to_string(lv));
    }
    return k;
}

std::size_t PartitionTree::deepest_common_level(std::size_t i, std::size_t j) const {
    if (i == j) {
        (void)node_of(0, i);
        return depth();
    }
    std::size_t deepest = 0;
    for (std::size_t l = 0; l < levels_.size(); ++l) {
        if (node_of(l, i) != node_of(l, j)) break;
        deepest = l;
    }
    return deepest;
}

ValidationReport validate_partition_tree(const PartitionTree& tree) {
    ValidationReport report;
    auto add = [&](std::size_t l, std::size_t k, std::string axiom, std::string detail) {
        report.violations.push_back({l, k, std::move(axiom), std::move(detail)});
    };

    const std::size_t n = tree.size();
    const auto& levels = tree.levels();
    if (n == 0) {
        add(0, 0, "root", "set is empty");
        return report;
    }
    if (levels.empty()) {
        add(0, 0, "root", "tree has no levels");
        return report;
    }
    if (levels[0].size() != 1 || levels[0][0].elements.size() != n) {
        add(0, 0, "root", "level 0 must be a single node containing all " + std::to_string(n) +
                              " elements");
    }

    for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto& level = levels[l];
        std::vector<std::size_t> seen(n, 0);
        for (std::size_t k = 0; k < level.size(); ++k) {
            const auto& node = level[k];
            if (node.level != l || node.index != k) {
                add(l, k, "indexing", "node records (level " + std::to_string(node.level) +
                                          ", k " + std::to_string(node.index) + ")");
            }
            if (node.elements.empty()) add(l, k, "coverage", "node is empty");
            if (!std::is_sorted(node.elements.begin(), node.elements.end()) ||
                std::adjacent_find(node.elements.begin(), node.elements.end()) !=
                    node.elements.end()) {
                add(l, k, "sorted", "element list must be strictly increasing");
            }
            for (auto id : node.elements) {
                if (id >= n) {
                    add(l, k, "coverage", "element id " + std::to_string(id) + " out of range");
                    continue;
                }
                if (++seen[id] == 2) {
                    add(l, k, "disjointness",
                        "element " + std::to_string(id) + " appears in more than one node");
                }
            }
        }
        std::vector<std::size_t> missing;
        for (std::size_t id = 0; id < n; ++id) {
            if (seen[id] == 0) missing.push_back(id);
        }
        if (!missing.empty()) {
            std::string list;
            for (auto id : missing) list += (list.empty() ? "" : ",") + std::to_string(id);
            add(l, 0, "coverage", "level union omits ids {" + list + "}");
        }

        if (l > 0 && level.size() < levels[l - 1].size()) {
            add(l, 0, "monotone-count", "n(l) decreased from " +
                                            std::to_string(levels[l - 1].size()) + " to " +
                                            std::to_string(level.size()));
        }

        const bool finest = l + 1 == levels.size();
        if (finest) {
            for (std::size_t k = 0; k < level.size(); ++k) {
                if (level[k].elements.size() != 1) {
                    add(l, k, "singleton-leaves", "finest-level node has " +
                                                      std::to_string(level[k].elements.size()) +
                                                      " elements");
                }
                if (!level[k].children.empty()) {
                    add(l, k, "children", "finest-level node lists children");
                }
            }
            continue;
        }

        const auto& next = levels[l + 1];
        std::vector<std::size_t> parents(next.size(), 0);
        for (std::size_t k = 0; k < level.size(); ++k) {
            const auto& node = level[k];
            if (node.children.empty()) {
                add(l, k, "children", "H(l,k) must be at least 1");
                continue;
            }
            std::vector<std::size_t> merged;
            bool bad_ref = false;
            for (auto c : node.children) {
                if (c >= next.size()) {
                    add(l, k, "children", "child index " + std::to_string(c) + " out of range");
                    bad_ref = true;
                    continue;
                }
                ++parents[c];
                merged.insert(merged.end(), next[c].elements.begin(), next[c].elements.end());
            }
            if (bad_ref) continue;
            std::sort(merged.begin(), merged.end());
            if (merged != node.elements) {
                add(l, k, "nesting", "node elements differ from the union of its children");
            }
        }
        for (std::size_t c = 0; c < next.size(); ++c) {
            if (parents[c] != 1) {
                add(l + 1, c, "children", "node referenced by " + std::to_string(parents[c]) +
                                              " parents (expected exactly 1)");
            }
        }
    }
    return report;
}

PartitionTree build_balanced_dyadic_tree(const PointSet& points, MeasureMode mode) {
    const std::size_t n = points.size();
    if (!std::has_single_bit(n)) {
        throw Error(ErrorCode::NotPowerOfTwo, "N = " + std::to_string(n) +
                                                  " is not a power of two");
    }
    const auto depth = static_cast<std::size_t>(std::countr_zero(n));
    std::vector<std::vector<TreeNode>> levels(depth + 1);
    for (std::size_t l = 0; l <= depth; ++l) {
        const std::size_t count = std::size_t{1} << l;
        const std::size_t width = n >> l;
        levels[l].resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            auto& node = levels[l][k];
            node.level = l;
            node.index = k;
            node.elements.resize(width);
            std::iota(node.elements.begin(), node.elements.end(), k * width);
            if (l < depth) node.children = {2 * k, 2 * k + 1};
        }
    }
    return PartitionTree(n, std::move(levels), mode);
}

double dyadic_distance(const PartitionTree& tree, std::size_t i, std::size_t j) {
    if (i == j) {
        (void)tree.node_of(0, i);
        return 0.0;
    }
    const std::size_t l = tree.deepest_common_level(i, j);
    return tree.measure(l, tree.node_of(l, i));
}

double tensor_dyadic_distance(const PartitionTree& tree_x, const PartitionTree& tree_y,
                              ElementPair a, ElementPair b, ProductDistance rule) {
    if (a == b) {
        (void)tree_x.node_of(0, a.first);
        (void)tree_y.node_of(0, a.second);
        return 0.0;
    }
    // Equal coordinates share every node down to (and past) the leaves.
    const std::size_t cap = std::max(tree_x.depth(), tree_y.depth());
    const std::size_t lx = a.first == b.first ? cap : tree_x.deepest_common_level(a.first, b.first);
    const std::size_t ly =
        a.second == b.second ? cap : tree_y.deepest_common_level(a.second, b.second);

    auto mx = [&](std::size_t l) {
        const std::size_t lv = std::min(l, tree_x.depth());
        return tree_x.measure(lv, tree_x.node_of(lv, a.first));
    };
    auto my = [&](std::size_t l) {
        const std::size_t lv = std::min(l, tree_y.depth());
        return tree_y.measure(lv, tree_y.node_of(lv, a.second));
    };

    if (rule == ProductDistance::independent_levels) return mx(lx) * my(ly);
    const std::size_t l = std::min(lx, ly);
    return mx(l) * my(l);
}

}  // namespace treepara
