#pragma once

// Brute-force reference computations for the unit and acceptance tests.
// They read only the raw node lists of a tree and never call the library's
// operators, bases, or distances.

#include "treepara/partition_tree.hpp"
#include "treepara/signal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using treepara::PartitionTree;
using treepara::Signal2D;

inline bool contains(const std::vector<std::size_t>& elems, std::size_t id) {
    return std::find(elems.begin(), elems.end(), id) != elems.end();
}

inline double node_mass(const PartitionTree& t, const treepara::TreeNode& node) {
    const double c = static_cast<double>(node.elements.size());
    return t.measure_mode() == treepara::MeasureMode::normalized ? c / static_cast<double>(t.size())
                                                                 : c;
}

/// min measure over every node containing both ids.
inline double dyadic_distance(const PartitionTree& t, std::size_t i, std::size_t j) {
    if (i == j) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& level : t.levels()) {
        for (const auto& node : level) {
            if (contains(node.elements, i) && contains(node.elements, j)) {
                best = std::min(best, node_mass(t, node));
            }
        }
    }
    return best;
}

/// min over product nodes X^l_k x Y^s_r containing both pairs, restricted to
/// l == s when `matched` (levels past a tree's depth reuse its leaves).
inline double tensor_distance(const PartitionTree& tx, const PartitionTree& ty, std::size_t i,
                              std::size_t p, std::size_t j, std::size_t q, bool matched) {
    if (i == j && p == q) return 0.0;
    const std::size_t top = std::max(tx.depth(), ty.depth());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l <= top; ++l) {
        for (std::size_t s = 0; s <= top; ++s) {
            if (matched && l != s) continue;
            if (!matched && (l > tx.depth() || s > ty.depth())) continue;
            const auto& lx = tx.level(std::min(l, tx.depth()));
            const auto& ly = ty.level(std::min(s, ty.depth()));
            for (const auto& a : lx) {
                if (!contains(a.elements, i) || !contains(a.elements, j)) continue;
                for (const auto& b : ly) {
                    if (!contains(b.elements, p) || !contains(b.elements, q)) continue;
                    best = std::min(best, node_mass(tx, a) * node_mass(ty, b));
                }
            }
        }
    }
    return best;
}

/// E_m f by scanning, for every element, the level for its node.
inline std::vector<double> average(const PartitionTree& t, std::size_t m,
                                   const std::vector<double>& f) {
    std::vector<double> out(f.size());
    for (std::size_t id = 0; id < f.size(); ++id) {
        for (const auto& node : t.level(m)) {
            if (!contains(node.elements, id)) continue;
            double s = 0.0;
            for (auto e : node.elements) s += f[e];
            out[id] = s / static_cast<double>(node.elements.size());
        }
    }
    return out;
}

/// P^l with P^{-1} = E_0.
inline std::vector<double> P(const PartitionTree& t, int l, const std::vector<double>& f) {
    return average(t, static_cast<std::size_t>(l + 1), f);
}

inline std::vector<double> Q(const PartitionTree& t, int l, const std::vector<double>& f) {
    auto a = P(t, l, f);
    const auto b = P(t, l - 1, f);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

/// 2D P^l P^s by explicit double loops over block members.
inline Signal2D PP(const PartitionTree& tx, const PartitionTree& ty, int l, int s,
                   const Signal2D& f) {
    Signal2D out(f.rows(), f.cols());
    const auto& lx = tx.level(static_cast<std::size_t>(l + 1));
    const auto& ly = ty.level(static_cast<std::size_t>(s + 1));
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t p = 0; p < f.cols(); ++p) {
            for (const auto& a : lx) {
                if (!contains(a.elements, i)) continue;
                for (const auto& b : ly) {
                    if (!contains(b.elements, p)) continue;
                    double sum = 0.0;
                    for (auto x : a.elements) {
                        for (auto y : b.elements) sum += f(x, y);
                    }
                    out(i, p) = sum / static_cast<double>(a.elements.size() * b.elements.size());
                }
            }
        }
    }
    return out;
}

/// Wavelet j of node (l, k) by Gram-Schmidt on the pair (S_j, S_{j-1}) of
/// cumulative child indicators S_j = chi_{c_0} + ... + chi_{c_j}: the part of
/// S_{j-1} orthogonal to S_j, normalized. Returns dense vectors, j = 1..H-1.
inline std::vector<std::vector<double>> gram_schmidt_node(const PartitionTree& t, std::size_t l,
                                                          std::size_t k) {
    const double w = t.measure_mode() == treepara::MeasureMode::normalized
                         ? 1.0 / static_cast<double>(t.size())
                         : 1.0;
    const auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += w * a[i] * b[i];
        return s;
    };
    const auto& node = t.node(l, k);
    std::vector<std::vector<double>> cumulative;
    std::vector<double> acc(t.size(), 0.0);
    for (auto c : node.children) {
        for (auto id : t.node(l + 1, c).elements) acc[id] = 1.0;
        cumulative.push_back(acc);
    }
    std::vector<std::vector<double>> out;
    for (std::size_t j = 1; j < cumulative.size(); ++j) {
        auto u = cumulative[j];
        const double nu = std::sqrt(dot(u, u));
        for (auto& x : u) x /= nu;
        auto v = cumulative[j - 1];
        const double c = dot(v, u);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
        const double nv = std::sqrt(dot(v, v));
        for (auto& x : v) x /= nv;
        out.push_back(std::move(v));
    }
    return out;
}

inline double weighted_dot(const PartitionTree& t, const std::vector<double>& a,
                           const std::vector<double>& b) {
    const double w = t.measure_mode() == treepara::MeasureMode::normalized
                         ? 1.0 / static_cast<double>(t.size())
                         : 1.0;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w * a[i] * b[i];
    return s;
}

/// Sum_l A'(P^l f) Q^l f, term by term from the oracle averages.
inline std::vector<double> paraproduct_1d(const PartitionTree& t, const std::vector<double>& f,
                                          const std::function<double(double)>& da) {
    std::vector<double> out(f.size(), 0.0);
    for (int l = 0; l < static_cast<int>(t.depth()); ++l) {
        const auto p = P(t, l, f);
        const auto q = Q(t, l, f);
        for (std::size_t i = 0; i < f.size(); ++i) out[i] += da(p[i]) * q[i];
    }
    return out;
}

/// Sum_{l,s} A'(PP) QQ + A''(PP) QP PQ with every operator from explicit
/// block loops.
inline Signal2D paraproduct_2d(const PartitionTree& tx, const PartitionTree& ty,
                               const Signal2D& f, const std::function<double(double)>& da,
                               const std::function<double(double)>& dda) {
    Signal2D out(f.rows(), f.cols());
    for (int l = 0; l < static_cast<int>(tx.depth()); ++l) {
        for (int s = 0; s < static_cast<int>(ty.depth()); ++s) {
            const auto a = PP(tx, ty, l, s, f);
            const auto b = PP(tx, ty, l - 1, s, f);
            const auto c = PP(tx, ty, l, s - 1, f);
            const auto d = PP(tx, ty, l - 1, s - 1, f);
            for (std::size_t i = 0; i < f.rows(); ++i) {
                for (std::size_t p = 0; p < f.cols(); ++p) {
                    const double qq = a(i, p) - b(i, p) - c(i, p) + d(i, p);
                    const double qp = a(i, p) - b(i, p);
                    const double pq = a(i, p) - c(i, p);
                    out(i, p) += da(a(i, p)) * qq + dda(a(i, p)) * qp * pq;
                }
            }
        }
    }
    return out;
}

inline double pairwise_seminorm(const PartitionTree& t, const std::vector<double>& f,
                                double alpha) {
    double best = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (i == j) continue;
            best = std::max(best, std::abs(f[i] - f[j]) / std::pow(oracle::dyadic_distance(t, i, j), alpha));
        }
    }
    return best;
}

inline std::vector<double> random_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> f(n);
    for (auto& v : f) v = g(rng);
    return f;
}

inline Signal2D random_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
    Signal2D out(n, m);
    const auto v = random_signal(n * m, seed);
    std::copy(v.begin(), v.end(), out.data().begin());
    return out;
}

}  // namespace oracle
