#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "error.hpp"
#include "quadrature.hpp"

namespace wbdg {

template <int Dim>
using Point = std::array<double, Dim>;

// Orthonormal Legendre modes on the reference cell [-1,1]^Dim with respect to
// the normalized measure (reference volume scaled to 1). Mode 0 is the
// constant 1, so coefficient 0 is the cell average. In 2D the space is the
// total-degree space P^k, ordered by degree: (0,0),(1,0),(0,1),(2,0),(1,1),...
template <int Dim>
class Basis {
 public:
  explicit Basis(int degree) : degree_(degree) {
    if (degree < 0) throw ConfigError("basis degree must be >= 0");
    if constexpr (Dim == 1) {
      for (int a = 0; a <= degree; ++a) exps_.push_back({a});
    } else {
      for (int s = 0; s <= degree; ++s)
        for (int b = 0; b <= s; ++b) exps_.push_back({s - b, b});
    }
  }

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exps_.size()); }
  const std::array<int, Dim>& exponents(int l) const { return exps_[l]; }
  // total polynomial degree of mode l
  int mode_degree(int l) const {
    int s = 0;
    for (int d = 0; d < Dim; ++d) s += exps_[l][d];
    return s;
  }

  double value(int l, const Point<Dim>& xi) const {
    double v = 1.0;
    for (int d = 0; d < Dim; ++d) {
      double p, dp;
      int a = exps_[l][d];
      legendre(a, xi[d], p, dp);
      v *= std::sqrt(2.0 * a + 1.0) * p;
    }
    return v;
  }

  // derivative with respect to the reference coordinate xi_dir
  double derivative(int l, const Point<Dim>& xi, int dir) const {
    double v = 1.0;
    for (int d = 0; d < Dim; ++d) {
      double p, dp;
      int a = exps_[l][d];
      legendre(a, xi[d], p, dp);
      v *= std::sqrt(2.0 * a + 1.0) * (d == dir ? dp : p);
    }
    return v;
  }

 private:
  int degree_;
  std::vector<std::array<int, Dim>> exps_;
};

}  // namespace wbdg
