#include "treepara/signal.hpp"

#include "treepara/error.hpp"

#include <algorithm>

namespace treepara {

Signal2D::Signal2D(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorCode::SizeMismatch, "2D signal data has " + std::to_string(data_.size()) +
                                                 " entries, expected " +
                                                 std::to_string(rows_ * cols_));
    }
}

Signal2D& Signal2D::operator+=(const Signal2D& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) {
        throw Error(ErrorCode::SizeMismatch, "2D signal shapes differ");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Signal2D& Signal2D::operator-=(const Signal2D& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) {
        throw Error(ErrorCode::SizeMismatch, "2D signal shapes differ");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Signal2D Signal2D::outer(std::span<const double> u, std::span<const double> v) {
    Signal2D out(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t p = 0; p < v.size(); ++p) out(i, p) = u[i] * v[p];
    }
    return out;
}

double max_abs(std::span<const double> values) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "signal lengths differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace treepara
