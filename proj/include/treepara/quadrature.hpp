#pragma once

#include <cstddef>
#include <vector>

namespace treepara {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// up to 2n-1.
QuadratureRule gauss_legendre(std::size_t n);

/// The same rule mapped to [0, 1] (weights sum to 1).
QuadratureRule gauss_legendre_unit(std::size_t n);

}  // namespace treepara
