#pragma once

#include <vector>

#include "curvlayer/grid.hpp"

namespace curvlayer {

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's recursion).
std::vector<double> fornberg_weights(int m, const std::vector<double>& nodes, double x0);

// Half-width of the central stencils used for sampled derivatives.
inline constexpr int kStencilRadius = 4;

// Weights on unit offsets -4..4 for the m-th derivative (m = 0..4).
const std::vector<double>& central_weights(int m);

// d^{n1+n2} f / dx^{n1} dy^{n2} by products of 1D central stencils.
// Nodes within kStencilRadius of the boundary are set to zero.
Field2D central_partial(const Field2D& f, int n1, int n2);

}  // namespace curvlayer
