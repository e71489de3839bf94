#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace treepara {

/// One real value per element id.
using Signal1D = std::vector<double>;

/// Dense row-major table f(x_i, y_p); rows index X, columns index Y.
class Signal2D {
public:
    Signal2D() = default;
    Signal2D(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Signal2D(std::size_t rows, std::size_t cols, std::vector<double> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i, std::size_t p) { return data_[i * cols_ + p]; }
    double operator()(std::size_t i, std::size_t p) const { return data_[i * cols_ + p]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double>& data() noexcept { return data_; }
    const std::vector<double>& data() const noexcept { return data_; }

    Signal2D& operator+=(const Signal2D& other);
    Signal2D& operator-=(const Signal2D& other);
    friend Signal2D operator+(Signal2D a, const Signal2D& b) { return a += b; }
    friend Signal2D operator-(Signal2D a, const Signal2D& b) { return a -= b; }
    Signal2D& operator*=(double factor) {
        for (auto& v : data_) v *= factor;
        return *this;
    }
    friend Signal2D operator*(Signal2D a, double factor) { return a *= factor; }

    /// f(x,y) = u(x) v(y)
    static Signal2D outer(std::span<const double> u, std::span<const double> v);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double max_abs(std::span<const double> values);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
inline double max_abs(const Signal2D& s) { return max_abs(s.data()); }
inline double max_abs_diff(const Signal2D& a, const Signal2D& b) {
    return max_abs_diff(a.data(), b.data());
}

}  // namespace treepara
