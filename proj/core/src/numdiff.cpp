#include "frontlab/numdiff.hpp"

#include <algorithm>

#include "frontlab/error.hpp"

namespace frontlab {

std::vector<std::vector<double>> fd_weights(double z, const std::vector<double>& x, int order) {
  const std::size_t n = x.size();
  const std::size_t m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  if (n == 0) return c;
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

std::vector<double> derivative(const std::vector<double>& t, const std::vector<double>& y, int order,
                               std::size_t width) {
  const std::size_t n = t.size();
  if (y.size() != n) throw Error(ErrorCode::InvalidArgument, "derivative: size mismatch");
  if (n < width || width < static_cast<std::size_t>(order) + 1) {
    throw Error(ErrorCode::InvalidArgument, "derivative: too few nodes for the stencil");
  }
  std::vector<double> out(n);
  std::vector<double> xs(width);
  const std::size_t half = width / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = std::min(i >= half ? i - half : 0, n - width);
    for (std::size_t j = 0; j < width; ++j) xs[j] = t[lo + j];
    const auto w = fd_weights(t[i], xs, order);
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += w[static_cast<std::size_t>(order)][j] * y[lo + j];
    out[i] = acc;
  }
  return out;
}

}  // namespace frontlab
