#pragma once

#include <cstddef>
#include <vector>

namespace frontlab {

/// Finite-difference weights (Fornberg 1988) for derivatives 0..order at z
/// on arbitrary distinct nodes x. Result is indexed [derivative][node].
std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int order);

/// d^order y / dt^order at every node, using a `width`-point stencil centred
/// where possible (shifted at the ends). t must be strictly increasing.
std::vector<double> derivative(const std::vector<double>& t, const std::vector<double>& y, int order,
                               std::size_t width = 5);

}  // namespace frontlab
