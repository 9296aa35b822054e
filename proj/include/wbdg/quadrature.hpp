#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "error.hpp"

namespace wbdg {

struct Quadrature {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
  int size() const { return static_cast<int>(nodes.size()); }
};

// Legendre polynomial P_n and its derivative at x.
inline void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  // derivative from the recurrence; valid away from |x| = 1
  if (std::abs(x) < 1.0) {
    dp = n * (x * p1 - p0) / (x * x - 1.0);
  } else {
    double s = (x > 0 || n % 2 == 1) ? 1.0 : -1.0;
    dp = s * 0.5 * n * (n + 1);
  }
}

inline Quadrature gauss_legendre(int npts) {
  if (npts < 1) throw ConfigError("gauss_legendre: npts must be >= 1");
  Quadrature q;
  q.nodes.resize(npts);
  q.weights.resize(npts);
  int half = (npts + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    double p = 0, dp = 1;
    for (int it = 0; it < 100; ++it) {
      legendre(npts, x, p, dp);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    legendre(npts, x, p, dp);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[npts - 1 - i] = x;
    q.weights[i] = w;
    q.weights[npts - 1 - i] = w;
  }
  if (npts % 2 == 1) q.nodes[npts / 2] = 0.0;
  return q;
}

}  // namespace wbdg
