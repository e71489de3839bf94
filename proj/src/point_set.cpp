#include "treepara/point_set.hpp"

#include "treepara/error.hpp"

#include <algorithm>

namespace treepara {

PointSet::PointSet(std::vector<Point> points, std::string name)
    : points_(std::move(points)), name_(std::move(name)) {
    if (points_.empty()) {
        throw Error(ErrorCode::TooSmall, "point set must contain at least one element");
    }
    std::sort(points_.begin(), points_.end(),
              [](const Point& a, const Point& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].id != i) {
            throw Error(ErrorCode::SchemaError,
                        "element ids must be unique and contiguous from 0 (expected " +
                            std::to_string(i) + ", found " + std::to_string(points_[i].id) + ")");
        }
    }
    dimension_ = points_.front().coords.size();
    for (const auto& p : points_) {
        if (p.coords.size() != dimension_) {
            throw Error(ErrorCode::SchemaError,
                        "element " + std::to_string(p.id) + " has coordinate dimension " +
                            std::to_string(p.coords.size()) + ", expected " +
                            std::to_string(dimension_));
        }
    }
}

PointSet PointSet::indexed(std::size_t n, std::string name) {
    std::vector<Point> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i].id = i;
    return PointSet(std::move(pts), std::move(name));
}

PointSet PointSet::from_coordinates(const std::vector<std::vector<double>>& coords,
                                    std::string name) {
    std::vector<Point> pts(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        pts[i].id = i;
        pts[i].coords = coords[i];
    }
    return PointSet(std::move(pts), std::move(name));
}

double PointSet::squared_distance(std::size_t i, std::size_t j) const {
    const auto& a = points_.at(i).coords;
    const auto& b = points_.at(j).coords;
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        acc += diff * diff;
    }
    return acc;
}

}  // namespace treepara
