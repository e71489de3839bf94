#pragma once

#include "treepara/haar_basis.hpp"
#include "treepara/partition_tree.hpp"
#include "treepara/signal.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace treepara {

/// Conditional averaging on one tree.
///
/// Level indexing: E_m averages over level-m nodes (m = 0..L). The scaling
/// operator P^l is E_{l+1} for l = 0..L-1, so P^{L-1} is the identity, and
/// P^{-1} := E_0 is the global mean. Q^l = P^l - P^{l-1}, so
/// E_0 f + sum_{l=0}^{L-1} Q^l f = f.
class ScaleStack {
public:
    explicit ScaleStack(std::shared_ptr<const PartitionTree> tree);
    explicit ScaleStack(const PartitionTree& tree)
        : ScaleStack(std::make_shared<const PartitionTree>(tree)) {}

    const PartitionTree& tree() const noexcept { return *tree_; }
    /// Number of scales carrying a P^l / Q^l pair, i.e. L.
    std::size_t scales() const noexcept { return tree_->depth(); }

    /// Node means of f at level m.
    std::vector<double> level_means(std::size_t m, std::span<const double> f) const;
    /// E_m f; throws LevelOutOfRange for m > L.
    Signal1D average(std::size_t m, std::span<const double> f) const;

    /// P^l f for l in [-1, L-1].
    Signal1D P(int l, std::span<const double> f) const;
    /// Q^l f for l in [0, L-1].
    Signal1D Q(int l, std::span<const double> f) const;

    /// P^l f for l in [0, L-1].
    Signal1D scaling_P(int l, std::span<const double> f) const;
    Signal1D wavelet_Q(int l, std::span<const double> f) const { return Q(l, f); }

private:
    std::size_t level_for_P(int l) const;
    std::shared_ptr<const PartitionTree> tree_;
};

/// Separable operators on X x Y: the first factor acts along rows (X), the
/// second along columns (Y). Same level conventions as ScaleStack.
class TensorStack {
public:
    TensorStack(ScaleStack x, ScaleStack y) : x_(std::move(x)), y_(std::move(y)) {}

    const ScaleStack& x() const noexcept { return x_; }
    const ScaleStack& y() const noexcept { return y_; }

    /// E^X_mx applied to every column.
    Signal2D average_x(std::size_t mx, const Signal2D& f) const;
    /// E^Y_my applied to every row.
    Signal2D average_y(std::size_t my, const Signal2D& f) const;
    Signal2D average(std::size_t mx, std::size_t my, const Signal2D& f) const {
        return average_y(my, average_x(mx, f));
    }

    /// P^l P^s f for l, s >= -1.
    Signal2D tensor_PP(int l, int s, const Signal2D& f) const;
    /// Q^l P^s f
    Signal2D tensor_QP(int l, int s, const Signal2D& f) const;
    /// P^l Q^s f
    Signal2D tensor_PQ(int l, int s, const Signal2D& f) const;
    /// Q^l Q^s f
    Signal2D tensor_QQ(int l, int s, const Signal2D& f) const;

private:
    void check_shape(const Signal2D& f) const;
    std::size_t x_level(int l) const;
    std::size_t y_level(int s) const;
    ScaleStack x_;
    ScaleStack y_;
};

enum class Family { s, d, omega, beta, gamma, alpha };

std::string to_string(Family family);
Family parse_family(const std::string& text);
bool is_tensor_family(Family family);

/// Key of one coefficient. Node and local indices are 1-based, levels are
/// 0-based. One-dimensional families leave s, r, i unset.
struct CoefficientKey {
    std::size_t l = 0;
    std::optional<std::size_t> s;
    std::size_t k = 1;
    std::size_t j = 1;
    std::optional<std::size_t> r;
    std::optional<std::size_t> i;

    auto operator<=>(const CoefficientKey&) const = default;

    static CoefficientKey one_d(std::size_t l, std::size_t k, std::size_t j) {
        CoefficientKey key;
        key.l = l;
        key.k = k;
        key.j = j;
        return key;
    }
    static CoefficientKey tensor(std::size_t l, std::size_t s, std::size_t k, std::size_t j,
                                 std::size_t r, std::size_t i) {
        return {l, s, k, j, r, i};
    }
};

struct CoefficientEntry {
    double value = 0.0;
    /// Scale size of the home node (product of both sizes for tensor families).
    double size = 1.0;
};

struct CoefficientTable {
    Family family = Family::d;
    std::map<CoefficientKey, CoefficientEntry> entries;

    double at(const CoefficientKey& key) const;
    std::size_t size() const noexcept { return entries.size(); }
};

/// Signed expansion coefficients:
///   s      child means of f,
///   d      <f, psi>,
///   omega  block means over child x child,
///   beta   <mean over Y-child of f, psi_x>,
///   gamma  <mean over X-child of f, psi_y>,
///   alpha  <f, psi_x x psi_y>.
CoefficientTable expansion_coefficients(Family family, std::span<const double> f,
                                        const TreeBasis& basis);
CoefficientTable expansion_coefficients(Family family, const Signal2D& f, const TreeBasis& bx,
                                        const TreeBasis& by);

/// CSV with header family,l,s,k,j,r,i,value.
void write_coefficient_table_csv(std::ostream& out, const CoefficientTable& table,
                                 bool header = true);

}  // namespace treepara
