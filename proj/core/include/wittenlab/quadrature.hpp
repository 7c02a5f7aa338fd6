#pragma once

#include <cstddef>
#include <vector>

namespace wittenlab {

/// Nodes (ascending) and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// N-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// Composite Gauss-Legendre rule: `per_panel` nodes on each panel between
/// consecutive (ascending) breakpoints.
QuadratureRule composite_gauss_legendre(const std::vector<double>& breakpoints,
                                        std::size_t per_panel);

}  // namespace wittenlab
