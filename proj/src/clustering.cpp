#include "treepara/clustering.hpp"

#include "treepara/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <tuple>

namespace treepara {

std::string to_string(Linkage linkage) {
    switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    }
    return "average";
}

Linkage parse_linkage(const std::string& text) {
    if (text == "single") return Linkage::single;
    if (text == "complete") return Linkage::complete;
    if (text == "average") return Linkage::average;
    throw Error(ErrorCode::InvalidArgument, "unknown linkage '" + text + "'");
}

std::vector<Merge> agglomerate(const PointSet& points, Linkage linkage) {
    if (!points.has_coordinates()) {
        throw Error(ErrorCode::MissingCoordinates, "clustering needs point coordinates");
    }
    const std::size_t n = points.size();
    std::vector<Merge> merges;
    if (n < 2) return merges;
    merges.reserve(n - 1);

    // Slot i holds the active cluster whose smallest element id is i.
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::sqrt(points.squared_distance(i, j));
            dist[i * n + j] = d;
            dist[j * n + i] = d;
        }
    }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return dist[i * n + j]; };

    std::vector<bool> active(n, true);
    std::vector<std::size_t> cluster_id(n), cluster_size(n, 1);
    for (std::size_t i = 0; i < n; ++i) cluster_id[i] = i;

    constexpr auto inf = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> nearest(n, 0);
    std::vector<double> nearest_dist(n, inf);
    auto refresh = [&](std::size_t i) {
        nearest_dist[i] = inf;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !active[j]) continue;
            if (at(i, j) < nearest_dist[i]) {
                nearest_dist[i] = at(i, j);
                nearest[i] = j;
            }
        }
    };
    for (std::size_t i = 0; i < n; ++i) refresh(i);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t a = n, b = n;
        double best = inf;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            const std::size_t lo = std::min(i, nearest[i]);
            const std::size_t hi = std::max(i, nearest[i]);
            if (std::tie(nearest_dist[i], lo, hi) < std::tie(best, a, b)) {
                best = nearest_dist[i];
                a = lo;
                b = hi;
            }
        }

        merges.push_back({cluster_id[a], cluster_id[b], best, cluster_size[a] + cluster_size[b]});

        const double wa = static_cast<double>(cluster_size[a]);
        const double wb = static_cast<double>(cluster_size[b]);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == a || k == b) continue;
            double updated = 0.0;
            switch (linkage) {
            case Linkage::single: updated = std::min(at(a, k), at(b, k)); break;
            case Linkage::complete: updated = std::max(at(a, k), at(b, k)); break;
            case Linkage::average: updated = (wa * at(a, k) + wb * at(b, k)) / (wa + wb); break;
            }
            at(a, k) = updated;
            at(k, a) = updated;
        }
        active[b] = false;
        cluster_size[a] += cluster_size[b];
        cluster_id[a] = n + step;

        refresh(a);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == a) continue;
            if (nearest[k] == a || nearest[k] == b) {
                refresh(k);
            } else if (at(k, a) < nearest_dist[k] ||
                       (at(k, a) == nearest_dist[k] && a < nearest[k])) {
                nearest_dist[k] = at(k, a);
                nearest[k] = a;
            }
        }
    }
    return merges;
}

namespace {

struct Piece {
    std::size_t cluster = 0;  // dendrogram cluster id (unused by the fallback splitter)
    std::vector<std::size_t> elements;
};

using Splitter = std::function<std::vector<Piece>(const Piece&)>;

PartitionTree assemble_levels(std::size_t n, Piece root, const Splitter& split, MeasureMode mode) {
    std::vector<std::vector<TreeNode>> levels;
    std::vector<Piece> current{std::move(root)};
    std::sort(current.front().elements.begin(), current.front().elements.end());

    for (std::size_t l = 0;; ++l) {
        std::vector<TreeNode> level(current.size());
        bool all_singletons = true;
        for (std::size_t k = 0; k < current.size(); ++k) {
            level[k].level = l;
            level[k].index = k;
            level[k].elements = current[k].elements;
            all_singletons = all_singletons && current[k].elements.size() == 1;
        }
        if (all_singletons) {
            levels.push_back(std::move(level));
            break;
        }
        std::vector<Piece> next;
        for (std::size_t k = 0; k < current.size(); ++k) {
            std::vector<Piece> children;
            if (current[k].elements.size() == 1) {
                children.push_back(current[k]);
            } else {
                children = split(current[k]);
                for (auto& c : children) std::sort(c.elements.begin(), c.elements.end());
                std::sort(children.begin(), children.end(), [](const Piece& x, const Piece& y) {
                    return x.elements.front() < y.elements.front();
                });
            }
            for (auto& c : children) {
                level[k].children.push_back(next.size());
                next.push_back(std::move(c));
            }
        }
        levels.push_back(std::move(level));
        current = std::move(next);
    }
    return PartitionTree(n, std::move(levels), mode);
}

}  // namespace

PartitionTree build_tree_from_clustering(const PointSet& points, const ClusterOptions& options,
                                         ClusterDiagnostics* diagnostics) {
    if (!points.has_coordinates()) {
        throw Error(ErrorCode::MissingCoordinates, "clustering needs point coordinates");
    }
    const std::size_t n = points.size();
    if (n < 2) throw Error(ErrorCode::TooSmall, "clustering needs at least 2 points");
    if (options.branching_cap < 2) {
        throw Error(ErrorCode::InvalidArgument, "branching cap must be at least 2");
    }
    ClusterDiagnostics local;
    ClusterDiagnostics& diag = diagnostics ? *diagnostics : local;

    bool degenerate = true;
    for (std::size_t i = 0; i < n && degenerate; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (points.squared_distance(i, j) > 0.0) {
                degenerate = false;
                break;
            }
        }
    }

    Piece root;
    root.elements.resize(n);
    for (std::size_t i = 0; i < n; ++i) root.elements[i] = i;

    if (degenerate) {
        diag.degenerate_metric = true;
        diag.notes.push_back(std::string(to_string(ErrorCode::DegenerateMetric)) +
                             ": all pairwise distances are 0; using balanced halving");
        Splitter halve = [](const Piece& p) {
            const std::size_t mid = p.elements.size() / 2;
            Piece lo, hi;
            lo.elements.assign(p.elements.begin(), p.elements.begin() + static_cast<long>(mid));
            hi.elements.assign(p.elements.begin() + static_cast<long>(mid), p.elements.end());
            return std::vector<Piece>{std::move(lo), std::move(hi)};
        };
        return assemble_levels(n, std::move(root), halve, options.measure);
    }

    const auto merges = agglomerate(points, options.linkage);
    const std::size_t total = n + merges.size();
    std::vector<std::vector<std::size_t>> members(total);
    std::vector<std::size_t> min_id(total);
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = {i};
        min_id[i] = i;
    }
    for (std::size_t m = 0; m < merges.size(); ++m) {
        const auto& mg = merges[m];
        auto& mem = members[n + m];
        mem = members[mg.left];
        mem.insert(mem.end(), members[mg.right].begin(), members[mg.right].end());
        min_id[n + m] = std::min(min_id[mg.left], min_id[mg.right]);
    }
    auto is_leaf = [n](std::size_t c) { return c < n; };
    auto height = [&](std::size_t c) { return merges[c - n].height; };

    const std::size_t cap = options.branching_cap;
    const double ratio = options.split_ratio;
    Splitter split = [&](const Piece& p) {
        const double threshold = ratio * height(p.cluster);
        std::vector<std::size_t> pieces{merges[p.cluster - n].left, merges[p.cluster - n].right};
        while (pieces.size() < cap) {
            std::size_t pick = pieces.size();
            for (std::size_t q = 0; q < pieces.size(); ++q) {
                const std::size_t c = pieces[q];
                if (is_leaf(c) || height(c) < threshold) continue;
                if (pick == pieces.size() || height(c) > height(pieces[pick]) ||
                    (height(c) == height(pieces[pick]) && min_id[c] < min_id[pieces[pick]])) {
                    pick = q;
                }
            }
            if (pick == pieces.size()) break;
            const std::size_t c = pieces[pick];
            pieces[pick] = merges[c - n].left;
            pieces.push_back(merges[c - n].right);
        }
        std::vector<Piece> out;
        out.reserve(pieces.size());
        for (auto c : pieces) out.push_back({c, members[c]});
        return out;
    };
    root.cluster = total - 1;
    return assemble_levels(n, std::move(root), split, options.measure);
}

}  // namespace treepara
