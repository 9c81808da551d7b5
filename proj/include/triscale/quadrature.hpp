#pragma once

#include <cstddef>
#include <vector>

namespace triscale {

/// Gauss-Legendre rule mapped to [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n from the Chebyshev-like initial guesses;
/// accurate to a few ulps for the sizes used here (n <= a few hundred).
QuadratureRule gauss_legendre_unit(std::size_t points);

}  // namespace triscale
