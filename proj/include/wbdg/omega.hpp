#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "discretization.hpp"

namespace wbdg {

// Time-independent potential (Euler) or bottom (Ripa). Piecewise definitions
// receive a selector point, the center of the cell asking, so that jumps
// placed on cell interfaces produce one-sided values.
template <int Dim>
struct Potential {
  std::string name;
  std::function<double(const Point<Dim>& x, const Point<Dim>& selector)> value;
  std::function<Point<Dim>(const Point<Dim>& x, const Point<Dim>& selector)> gradient;

  double operator()(const Point<Dim>& x) const { return value(x, x); }
};

template <int Dim>
Potential<Dim> zero_potential() {
  return {"zero", [](const Point<Dim>&, const Point<Dim>&) { return 0.0; },
          [](const Point<Dim>&, const Point<Dim>&) { return Point<Dim>{}; }};
}

// Analytic: pointwise evaluation at every quadrature and trace point.
// Projected: L2 projection into P^k per cell, values and gradients taken from
// the cell polynomial (traces are one-sided).
enum class OmegaMode { Analytic, Projected };

template <int Dim>
class OmegaField {
 public:
  OmegaField(DiscretizationPtr<Dim> disc, Potential<Dim> pot, OmegaMode mode)
      : disc_(std::move(disc)), pot_(std::move(pot)), mode_(mode) {
    const auto& D = *disc_;
    const auto& mesh = D.mesh();
    int nc = D.cells(), nq = D.vol_points(), nm = D.modes(), nfp = D.face_points();
    vol_.resize(nc * nq);
    grad_.resize(nc * nq);
    face_.resize(nc * D.faces() * nfp);
    avg_.resize(nc);
    if (mode == OmegaMode::Projected) coeffs_.resize(nc * nm);
    for (int c = 0; c < nc; ++c) {
      Point<Dim> ctr = mesh.center(c);
      if (mode == OmegaMode::Projected) {
        double* a = &coeffs_[c * nm];
        D.project(c, [&](const Point<Dim>& x) { return pot_.value(x, ctr); }, a);
        for (int q = 0; q < nq; ++q) {
          vol_[c * nq + q] = D.eval_vol(a, q);
          Point<Dim> g;
          for (int d = 0; d < Dim; ++d) {
            const double* dp = D.dphi(d, q);
            double s = 0.0;
            for (int l = 0; l < nm; ++l) s += a[l] * dp[l];
            g[d] = s * 2.0 / mesh.h(d);
          }
          grad_[c * nq + q] = g;
        }
        for (int f = 0; f < D.faces(); ++f)
          for (int p = 0; p < nfp; ++p) face_[(c * D.faces() + f) * nfp + p] = D.eval_face(a, f, p);
        avg_[c] = a[0];
      } else {
        double s = 0.0;
        for (int q = 0; q < nq; ++q) {
          Point<Dim> x = D.vol_point(c, q);
          vol_[c * nq + q] = pot_.value(x, ctr);
          grad_[c * nq + q] = pot_.gradient(x, ctr);
          s += D.vol_weight(q) * vol_[c * nq + q];
        }
        for (int f = 0; f < D.faces(); ++f)
          for (int p = 0; p < nfp; ++p)
            face_[(c * D.faces() + f) * nfp + p] = pot_.value(D.face_point(c, f, p), ctr);
        avg_[c] = s;
      }
    }
  }

  OmegaMode mode() const { return mode_; }
  const Potential<Dim>& potential() const { return pot_; }
  const Discretization<Dim>& discretization() const { return *disc_; }

  double vol(int cell, int q) const { return vol_[cell * disc_->vol_points() + q]; }
  const Point<Dim>& grad(int cell, int q) const { return grad_[cell * disc_->vol_points() + q]; }
  double face(int cell, int f, int p) const {
    return face_[(cell * disc_->faces() + f) * disc_->face_points() + p];
  }
  double average(int cell) const { return avg_[cell]; }

  // Value the solver uses at an arbitrary point of a cell.
  double at(int cell, const Point<Dim>& x) const {
    if (mode_ == OmegaMode::Projected)
      return disc_->eval_at(&coeffs_[cell * disc_->modes()], cell, x);
    disc_->mesh().to_reference(cell, x);
    return pot_.value(x, disc_->mesh().center(cell));
  }
  // Analytic value as seen from a cell (selector = its center).
  double analytic(int cell, const Point<Dim>& x) const {
    return pot_.value(x, disc_->mesh().center(cell));
  }

 private:
  DiscretizationPtr<Dim> disc_;
  Potential<Dim> pot_;
  OmegaMode mode_;
  std::vector<double> vol_, face_, avg_, coeffs_;
  std::vector<Point<Dim>> grad_;
};

template <int Dim>
using OmegaPtr = std::shared_ptr<const OmegaField<Dim>>;

}  // namespace wbdg
