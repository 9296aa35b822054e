#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "field.hpp"
#include "omega.hpp"
#include "parallel.hpp"

namespace wbdg {

struct LimiterConfig {
  bool enabled = true;
  double M = 0.0;  // TVB constant; threshold is M * h^2
};

inline double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

// TVB-corrected minmod: a is returned unchanged when |a| <= threshold.
inline double minmod_tvb(double a, double b, double c, double threshold) {
  if (std::abs(a) <= threshold) return a;
  return minmod(a, b, c);
}

struct LimiterStats {
  int troubled = 0;
  int fallbacks = 0;  // cells limited component-wise after a failed decomposition
};

// TVB minmod limiter on local characteristic fields of the polynomials V.
// The characteristic basis of a cell is taken at its cell-average conservative
// state: L_V = L_U dU/dV and R_V = (dU/dV)^{-1} R_U. Troubled cells keep their
// average and a limited linear part; higher modes are dropped. Neighbor data
// are read from a snapshot, so the result does not depend on cell order.
template <class Model>
class TvbLimiter {
 public:
  static constexpr int dim = Model::dim;
  static constexpr int nvars = Model::nvars;
  using State = typename Model::State;
  using Matrix = typename Model::Matrix;

  TvbLimiter(Model model, OmegaPtr<dim> omega, LimiterConfig cfg, std::array<bool, dim> periodic)
      : model_(std::move(model)), omega_(std::move(omega)), cfg_(cfg), periodic_(periodic) {}

  const LimiterConfig& config() const { return cfg_; }

  // ubar[c]: cell-average conservative state of cell c.
  LimiterStats apply(DGField<Model>& V, const std::vector<State>& ubar) const {
    LimiterStats st;
    if (!cfg_.enabled || V.disc().degree() == 0) return st;
    const auto& D = V.disc();
    const auto& mesh = D.mesh();
    const int nm = D.modes();
    const std::vector<double> snap = V.coeffs();
    const int stride = nvars * nm;
    std::atomic<int> troubled{0}, fallbacks{0};

    // reference points of the face centers and the linear mode per direction
    std::array<int, dim> slope_mode;
    for (int d = 0; d < dim; ++d)
      for (int l = 0; l < nm; ++l)
        if (D.basis().mode_degree(l) == 1 && D.basis().exponents(l)[d] == 1) slope_mode[d] = l;

    parallel_for(D.cells(), [&](int b, int e) {
      for (int c = b; c < e; ++c) {
        const double* a = &snap[c * stride];
        std::array<Matrix, dim> Ls, Rs;
        bool ok = true;
        for (int d = 0; d < dim; ++d) ok = characteristic_maps(c, ubar[c], d, Ls[d], Rs[d]) && ok;
        bool trouble = false;
        std::array<State, dim> dplus, dminus;
        std::array<bool, dim> active{};
        for (int d = 0; d < dim; ++d) {
          int lo = mesh.neighbor(c, 2 * d, periodic_[d]);
          int hi = mesh.neighbor(c, 2 * d + 1, periodic_[d]);
          if (lo < 0 && hi < 0) continue;
          active[d] = true;
          State avg, up, dn;
          for (int i = 0; i < nvars; ++i) avg[i] = a[i * nm];
          for (int i = 0; i < nvars; ++i) {
            if (hi >= 0) up[i] = snap[hi * stride + i * nm] - avg[i];
            if (lo >= 0) dn[i] = avg[i] - snap[lo * stride + i * nm];
          }
          if (hi < 0) up = dn;
          if (lo < 0) dn = up;
          const Matrix& L = Ls[d];
          dplus[d] = L * up;
          dminus[d] = L * dn;
          // deviations of the face-center values from the average
          Point<dim> xi{};
          xi[d] = 1.0;
          State vr, vl;
          for (int i = 0; i < nvars; ++i) vr[i] = D.eval_ref(a + i * nm, xi);
          xi[d] = -1.0;
          for (int i = 0; i < nvars; ++i) vl[i] = D.eval_ref(a + i * nm, xi);
          State wr = L * (vr - avg), wl = L * (avg - vl);
          const double thr = cfg_.M * mesh.h(d) * mesh.h(d);
          for (int i = 0; i < nvars; ++i) {
            if (minmod_tvb(wr[i], dplus[d][i], dminus[d][i], thr) != wr[i]) trouble = true;
            if (minmod_tvb(wl[i], dplus[d][i], dminus[d][i], thr) != wl[i]) trouble = true;
          }
        }
        if (!trouble) continue;
        ++troubled;
        if (!ok) ++fallbacks;
        double* out = V.cell_data(c);
        for (int i = 0; i < nvars; ++i)
          for (int l = 1; l < nm; ++l) out[i * nm + l] = 0.0;
        const double s3 = std::sqrt(3.0);
        for (int d = 0; d < dim; ++d) {
          if (!active[d]) continue;
          const int sm = slope_mode[d];
          State slope;
          for (int i = 0; i < nvars; ++i) slope[i] = s3 * a[i * nm + sm];
          State w = Ls[d] * slope;
          const double thr = cfg_.M * mesh.h(d) * mesh.h(d);
          for (int i = 0; i < nvars; ++i) w[i] = minmod_tvb(w[i], dplus[d][i], dminus[d][i], thr);
          State lim = Rs[d] * w;
          for (int i = 0; i < nvars; ++i) out[i * nm + sm] = lim[i] / s3;
        }
      }
    });
    st.troubled = troubled;
    st.fallbacks = fallbacks;
    return st;
  }

  // Cell averages of U by quadrature of the current field (for standalone use).
  std::vector<State> cell_averages(DGField<Model>& V) const {
    const auto& D = V.disc();
    std::vector<State> out(D.cells());
    for (int c = 0; c < D.cells(); ++c) {
      State s = State::Zero();
      for (int q = 0; q < D.vol_points(); ++q) {
        double h = V.vol_hint(c, q);
        s += D.vol_weight(q) *
             model_.to_cons(V.eval_vol(c, q), omega_->vol(c, q), V.vol_regime(c, q), &h);
      }
      out[c] = s;
    }
    return out;
  }

  LimiterStats apply(DGField<Model>& V) const { return apply(V, cell_averages(V)); }

 private:
  bool characteristic_maps(int c, const State& Ubar, int dir, Matrix& L, Matrix& R) const {
    try {
      State Vbar = model_.to_equil(Ubar, omega_->average(c));
      Matrix Juv = model_.dcons_dequil(Vbar, Ubar, omega_->average(c));
      Matrix RU = model_.eigenvectors(Ubar, dir);
      Eigen::FullPivLU<Matrix> lu(Juv);
      if (!lu.isInvertible()) throw StateError("singular transform Jacobian");
      R = lu.solve(RU);
      Eigen::FullPivLU<Matrix> lr(R);
      if (!lr.isInvertible()) throw StateError("singular eigenvector matrix");
      L = lr.inverse();
      if (!L.allFinite() || !R.allFinite()) throw StateError("non-finite characteristic map");
      return true;
    } catch (const StateError&) {
      L.setIdentity();
      R.setIdentity();
      return false;
    }
  }

  Model model_;
  OmegaPtr<dim> omega_;
  LimiterConfig cfg_;
  std::array<bool, dim> periodic_;
};

}  // namespace wbdg
