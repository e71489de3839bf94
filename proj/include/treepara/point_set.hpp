#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace treepara {

struct Point {
    std::size_t id = 0;
    std::vector<double> coords;  // empty when the set carries no geometry
};

/// Finite set X = {x_0, ..., x_{N-1}} with stable contiguous ids and optional
/// coordinates of a common dimension.
class PointSet {
public:
    /// Validates ids (unique, contiguous from 0), N >= 1 and a shared
    /// coordinate dimension. Points are reordered by id.
    PointSet(std::vector<Point> points, std::string name = {});

    /// N abstract elements without coordinates.
    static PointSet indexed(std::size_t n, std::string name = {});
    static PointSet from_coordinates(const std::vector<std::vector<double>>& coords,
                                     std::string name = {});

    std::size_t size() const noexcept { return points_.size(); }
    /// Coordinate dimension m; 0 when no coordinates are present.
    std::size_t dimension() const noexcept { return dimension_; }
    bool has_coordinates() const noexcept { return dimension_ > 0; }
    const std::string& name() const noexcept { return name_; }

    const Point& operator[](std::size_t id) const { return points_.at(id); }
    const std::vector<Point>& points() const noexcept { return points_; }

    double squared_distance(std::size_t i, std::size_t j) const;

private:
    std::vector<Point> points_;
    std::string name_;
    std::size_t dimension_ = 0;
};

}  // namespace treepara
