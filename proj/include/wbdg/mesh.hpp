#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "basis.hpp"
#include "error.hpp"

namespace wbdg {

// Uniform interval (Dim = 1) or rectangular (Dim = 2) grid. Cells are numbered
// with x fastest: cell = i + nx * j.
template <int Dim>
class Mesh {
 public:
  Mesh() = default;
  Mesh(const Point<Dim>& lo, const Point<Dim>& hi, const std::array<int, Dim>& n)
      : lo_(lo), hi_(hi), n_(n) {
    for (int d = 0; d < Dim; ++d) {
      if (n[d] < 1) throw ConfigError("mesh: cell count must be >= 1");
      if (!(hi[d] > lo[d]) || !std::isfinite(lo[d]) || !std::isfinite(hi[d]))
        throw ConfigError("mesh: extents must satisfy max > min");
      h_[d] = (hi[d] - lo[d]) / n[d];
    }
  }

  int cells() const {
    int c = 1;
    for (int d = 0; d < Dim; ++d) c *= n_[d];
    return c;
  }
  int n(int d) const { return n_[d]; }
  double lo(int d) const { return lo_[d]; }
  double hi(int d) const { return hi_[d]; }
  double h(int d) const { return h_[d]; }
  double h_min() const {
    double m = h_[0];
    for (int d = 1; d < Dim; ++d) m = std::min(m, h_[d]);
    return m;
  }
  double cell_measure() const {
    double m = 1.0;
    for (int d = 0; d < Dim; ++d) m *= h_[d];
    return m;
  }

  // Interface coordinate i in [0, n_d] along direction d.
  double face_coord(int d, int i) const {
    if (i <= 0) return lo_[d];
    if (i >= n_[d]) return hi_[d];
    return lo_[d] + (i * (hi_[d] - lo_[d])) / n_[d];
  }

  std::array<int, Dim> index(int cell) const {
    if constexpr (Dim == 1) {
      return {cell};
    } else {
      return {cell % n_[0], cell / n_[0]};
    }
  }
  int cell(const std::array<int, Dim>& idx) const {
    if constexpr (Dim == 1) {
      return idx[0];
    } else {
      return idx[0] + n_[0] * idx[1];
    }
  }

  // Neighbor across face f (f = 2*d + side, side 0 = lower). Returns -1 on a
  // non-periodic boundary.
  int neighbor(int cell, int f, bool periodic) const {
    int d = f / 2;
    auto idx = index(cell);
    idx[d] += (f % 2 == 0) ? -1 : 1;
    if (idx[d] < 0 || idx[d] >= n_[d]) {
      if (!periodic) return -1;
      idx[d] = (idx[d] + n_[d]) % n_[d];
    }
    return this->cell(idx);
  }

  Point<Dim> lower(int cell) const {
    auto idx = index(cell);
    Point<Dim> p;
    for (int d = 0; d < Dim; ++d) p[d] = face_coord(d, idx[d]);
    return p;
  }
  Point<Dim> upper(int cell) const {
    auto idx = index(cell);
    Point<Dim> p;
    for (int d = 0; d < Dim; ++d) p[d] = face_coord(d, idx[d] + 1);
    return p;
  }
  Point<Dim> center(int cell) const {
    auto a = lower(cell), b = upper(cell);
    Point<Dim> p;
    for (int d = 0; d < Dim; ++d) p[d] = 0.5 * (a[d] + b[d]);
    return p;
  }

  Point<Dim> to_physical(int cell, const Point<Dim>& xi) const {
    auto a = lower(cell), b = upper(cell);
    Point<Dim> p;
    for (int d = 0; d < Dim; ++d) {
      if (xi[d] == -1.0)
        p[d] = a[d];
      else if (xi[d] == 1.0)
        p[d] = b[d];
      else
        p[d] = 0.5 * (a[d] + b[d]) + 0.5 * xi[d] * (b[d] - a[d]);
    }
    return p;
  }

  // Throws ContractError if x lies outside the cell (beyond round-off).
  Point<Dim> to_reference(int cell, const Point<Dim>& x) const {
    auto a = lower(cell), b = upper(cell);
    Point<Dim> xi;
    for (int d = 0; d < Dim; ++d) {
      double tol = 1e-12 * (b[d] - a[d]);
      if (x[d] < a[d] - tol || x[d] > b[d] + tol) {
        std::ostringstream os;
        os << "point outside cell " << cell << " in direction " << d << ": " << x[d] << " not in ["
           << a[d] << ", " << b[d] << "]";
        throw ContractError(os.str());
      }
      xi[d] = std::clamp((2.0 * x[d] - a[d] - b[d]) / (b[d] - a[d]), -1.0, 1.0);
    }
    return xi;
  }

  // Cell containing x (points on interfaces go to the upper cell, except at hi).
  int locate(const Point<Dim>& x) const {
    std::array<int, Dim> idx;
    for (int d = 0; d < Dim; ++d) {
      if (x[d] < lo_[d] - 1e-12 * h_[d] || x[d] > hi_[d] + 1e-12 * h_[d])
        throw ContractError("locate: point outside the domain");
      int i = static_cast<int>(std::floor((x[d] - lo_[d]) / h_[d]));
      i = std::clamp(i, 0, n_[d] - 1);
      if (x[d] < face_coord(d, i) && i > 0) --i;
      if (x[d] >= face_coord(d, i + 1) && i < n_[d] - 1) ++i;
      idx[d] = i;
    }
    return cell(idx);
  }

 private:
  Point<Dim> lo_{}, hi_{}, h_{};
  std::array<int, Dim> n_{};
};

inline Mesh<1> build_mesh_1d(double x_min, double x_max, int nx) {
  return Mesh<1>({x_min}, {x_max}, {nx});
}

inline Mesh<2> build_mesh_2d(double x_min, double x_max, int nx, double y_min, double y_max,
                             int ny) {
  return Mesh<2>({x_min, y_min}, {x_max, y_max}, {nx, ny});
}

}  // namespace wbdg
