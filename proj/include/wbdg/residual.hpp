#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <sstream>
#include <vector>

#include "boundary.hpp"
#include "discretization.hpp"
#include "error.hpp"
#include "field.hpp"
#include "flux.hpp"
#include "omega.hpp"
#include "parallel.hpp"

namespace wbdg {

template <class State>
struct Reconstruction {
  State Ustar_int, Ustar_ext, U_int;
};

// Traces evaluated at the common value omega* = max(omega_int, omega_ext).
template <class Model>
Reconstruction<typename Model::State> hydrostatic_reconstruct(
    const Model& m, const typename Model::State& V_int, const typename Model::State& V_ext,
    double w_int, double w_ext, FlowRegime r_int, FlowRegime r_ext) {
  double ws = std::max(w_int, w_ext);
  Reconstruction<typename Model::State> r;
  r.U_int = m.to_cons(V_int, w_int, r_int);
  r.Ustar_int = m.to_cons(V_int, ws, r_int);
  r.Ustar_ext = m.to_cons(V_ext, ws, r_ext);
  return r;
}

template <class Model>
using BoundarySet = std::array<BoundarySpec<Model::dim, typename Model::State>, 2 * Model::dim>;

// Semi-discrete DG operator. All moments are per unit cell measure:
//   M_l(V) = (1/|T|) int U(V) phi_l,
//   R_l(V) = (1/|T|) [ int F(U):grad phi_l - oint F^* phi_l + int r(U) phi_l ],
// so that d/dt M(V) = R(V) with orthonormal phi_l.
template <class Model>
class ResidualOperator {
 public:
  static constexpr int dim = Model::dim;
  static constexpr int nvars = Model::nvars;
  using State = typename Model::State;
  using Physics = typename Model::Physics;

  ResidualOperator(Model model, DiscretizationPtr<dim> disc, OmegaPtr<dim> omega,
                   BoundarySet<Model> bcs, FluxScheme scheme)
      : model_(std::move(model)), disc_(std::move(disc)), omega_(std::move(omega)),
        bcs_(std::move(bcs)), scheme_(scheme) {
    if (scheme == FluxScheme::Roe && !has_roe_flux<Physics>)
      throw ConfigError("Roe flux is only available for the Euler model");
    for (int d = 0; d < dim; ++d) {
      bool lo = bcs_[2 * d].kind == BoundaryKind::Periodic;
      bool hi = bcs_[2 * d + 1].kind == BoundaryKind::Periodic;
      if (lo != hi) throw ConfigError("periodic boundaries must be paired");
      periodic_[d] = lo;
    }
    const auto& D = *disc_;
    int nc = D.cells();
    u_vol_.resize(nc * D.vol_points());
    v_face_.resize(nc * D.faces() * D.face_points());
    u_face_.resize(v_face_.size());
    f_out_.resize(v_face_.size());
    cell_alpha_.resize(nc);
    cell_speed_.resize(nc);
  }

  const Model& model() const { return model_; }
  const Discretization<dim>& disc() const { return *disc_; }
  const DiscretizationPtr<dim>& disc_ptr() const { return disc_; }
  const OmegaField<dim>& omega() const { return *omega_; }
  const OmegaPtr<dim>& omega_ptr() const { return omega_; }
  const BoundarySet<Model>& boundaries() const { return bcs_; }
  FluxScheme scheme() const { return scheme_; }
  bool periodic(int d) const { return periodic_[d]; }

  // Conservative states at all volume / trace points (updates warm-start hints).
  void evaluate_states(DGField<Model>& V) {
    const auto& D = *disc_;
    const int nq = D.vol_points(), nfp = D.face_points(), nf = D.faces();
    parallel_for(D.cells(), [&](int b, int e) {
      for (int c = b; c < e; ++c) {
        double amax = 0.0, smax = 0.0;
        for (int q = 0; q < nq; ++q) {
          State Vq = V.eval_vol(c, q);
          State& U = u_vol_[c * nq + q];
          U = to_cons_at(Vq, omega_->vol(c, q), V.vol_regime(c, q), &V.vol_hint(c, q), c);
          for (int d = 0; d < dim; ++d) smax = std::max(smax, model_.max_wave_speed(U, d));
        }
        amax = smax;
        for (int f = 0; f < nf; ++f)
          for (int p = 0; p < nfp; ++p) {
            int k = (c * nf + f) * nfp + p;
            v_face_[k] = V.eval_face(c, f, p);
            u_face_[k] = to_cons_at(v_face_[k], omega_->face(c, f, p), V.face_regime(c, f, p),
                                    &V.face_hint(c, f, p), c, true);
            for (int d = 0; d < dim; ++d)
              amax = std::max(amax, model_.max_wave_speed(u_face_[k], d));
          }
        cell_alpha_[c] = amax;
        cell_speed_[c] = smax;
      }
    });
    alpha_ = 0.0;
    max_speed_ = 0.0;
    for (int c = 0; c < D.cells(); ++c) {
      alpha_ = std::max(alpha_, cell_alpha_[c]);
      max_speed_ = std::max(max_speed_, cell_speed_[c]);
    }
    if (!std::isfinite(alpha_)) throw StateError("non-finite wave speed");
  }

  // Evaluates states, then moments (if requested) and the residual.
  void evaluate(DGField<Model>& V, double t, std::vector<double>* moments,
                std::vector<double>& residual) {
    evaluate_states(V);
    compute_face_fluxes(V, t);
    assemble(moments, residual);
  }

  // Re-tags each point from its current conservative state; returns the
  // number of tags changed. Uses the states of the last evaluate_states.
  int refresh_regimes(DGField<Model>& V) const {
    const auto& D = *disc_;
    int changed = 0;
    for (int c = 0; c < D.cells(); ++c) {
      for (int q = 0; q < D.vol_points(); ++q) {
        FlowRegime& r = V.vol_regime(c, q);
        FlowRegime n = model_.classify(u_vol_[c * D.vol_points() + q], r);
        if (n != r) ++changed, r = n;
      }
      for (int f = 0; f < D.faces(); ++f)
        for (int p = 0; p < D.face_points(); ++p) {
          FlowRegime& r = V.face_regime(c, f, p);
          FlowRegime n = model_.classify(u_face_[(c * D.faces() + f) * D.face_points() + p], r);
          if (n != r) ++changed, r = n;
        }
    }
    return changed;
  }

  double alpha() const { return alpha_; }
  double max_speed() const { return max_speed_; }
  const State& vol_state(int c, int q) const { return u_vol_[c * disc_->vol_points() + q]; }
  const State& face_state(int c, int f, int p) const {
    return u_face_[(c * disc_->faces() + f) * disc_->face_points() + p];
  }
  // Outward normal flux F^* . n used by cell c at face point (f, p).
  const State& face_flux(int c, int f, int p) const {
    return f_out_[(c * disc_->faces() + f) * disc_->face_points() + p];
  }

 private:
  // Traces (trace = true) whose data dips below the sonic bound take the
  // critical state instead; volume points stay strict.
  State to_cons_at(const State& V, double w, FlowRegime r, double* hint, int cell,
                   bool trace = false) const {
    try {
      return trace ? to_cons_trace(V, w, r, hint) : model_.to_cons(V, w, r, hint);
    } catch (const StateError& e) {
      std::ostringstream os;
      os << e.what() << " [cell " << cell << " centered at";
      for (double x : disc_->mesh().center(cell)) os << ' ' << x;
      os << ']';
      if (dynamic_cast<const NoEquilibriumError*>(&e)) throw NoEquilibriumError(os.str());
      throw StateError(os.str());
    }
  }

  State to_cons_trace(const State& V, double w, FlowRegime r, double* hint) const {
    try {
      return model_.to_cons(V, w, r, hint);
    } catch (const NoEquilibriumError&) {
      return model_.to_cons(V, w, FlowRegime::Sonic, hint);
    }
  }

  State boundary_state(int c, int f, int p, const State& Ui, double t) const {
    int d = f / 2;
    Point<dim> x = disc_->face_point(c, f, p);
    State Ue = apply_boundary(bcs_[f], Ui, x, t, d);
    model_.physics().check(Ue);
    return Ue;
  }

  void compute_face_fluxes(DGField<Model>& V, double t) {
    const auto& D = *disc_;
    const auto& mesh = D.mesh();
    const auto& phys = model_.physics();
    const int nfp = D.face_points(), nf = D.faces();
    auto slot = [&](int c, int f, int p) { return (c * nf + f) * nfp + p; };
    parallel_for(D.cells(), [&](int b, int e) {
      for (int c = b; c < e; ++c) {
        auto idx = mesh.index(c);
        for (int d = 0; d < dim; ++d) {
          const int fu = 2 * d + 1, fl = 2 * d;
          int nb = mesh.neighbor(c, fu, periodic_[d]);
          if (nb >= 0) {
            for (int p = 0; p < nfp; ++p) {
              int kl = slot(c, fu, p), kr = slot(nb, fl, p);
              const State& UL = u_face_[kl];
              const State& UR = u_face_[kr];
              double wl = omega_->face(c, fu, p), wr = omega_->face(nb, fl, p);
              if (Model::hydrostatic_reconstruction && wl != wr) {
                double ws = std::max(wl, wr);
                double hl = V.face_hint(c, fu, p), hr = V.face_hint(nb, fl, p);
                State USL, USR;
                try {
                  USL = to_cons_trace(v_face_[kl], ws, V.face_regime(c, fu, p), &hl);
                  USR = to_cons_trace(v_face_[kr], ws, V.face_regime(nb, fl, p), &hr);
                } catch (const StateError& err) {
                  std::ostringstream os;
                  os << "hydrostatic reconstruction failed at face between cells " << c << " and "
                     << nb << ": " << err.what();
                  throw StateError(os.str());
                }
                State Fh = numerical_flux(phys, scheme_, USL, USR, Normal{d, 1.0}, alpha_);
                f_out_[kl] = Fh - phys.flux(USL, d) + phys.flux(UL, d);
                f_out_[kr] = -(Fh - phys.flux(USR, d) + phys.flux(UR, d));
              } else {
                State Fh = numerical_flux(phys, scheme_, UL, UR, Normal{d, 1.0}, alpha_);
                f_out_[kl] = Fh;
                f_out_[kr] = -Fh;
              }
            }
          }
          if (!periodic_[d]) {
            if (idx[d] == mesh.n(d) - 1) {
              for (int p = 0; p < nfp; ++p) {
                int k = slot(c, fu, p);
                State Ue = boundary_state(c, fu, p, u_face_[k], t);
                f_out_[k] = numerical_flux(phys, scheme_, u_face_[k], Ue, Normal{d, 1.0}, alpha_);
              }
            }
            if (idx[d] == 0) {
              for (int p = 0; p < nfp; ++p) {
                int k = slot(c, fl, p);
                State Ue = boundary_state(c, fl, p, u_face_[k], t);
                f_out_[k] = -numerical_flux(phys, scheme_, Ue, u_face_[k], Normal{d, 1.0}, alpha_);
              }
            }
          }
        }
      }
    });
  }

  void assemble(std::vector<double>* moments, std::vector<double>& residual) const {
    const auto& D = *disc_;
    const auto& mesh = D.mesh();
    const int nq = D.vol_points(), nm = D.modes(), nfp = D.face_points(), nf = D.faces();
    const std::size_t total = static_cast<std::size_t>(D.cells()) * nvars * nm;
    residual.assign(total, 0.0);
    if (moments) moments->assign(total, 0.0);
    std::array<double, dim> scale;
    for (int d = 0; d < dim; ++d) scale[d] = 2.0 / mesh.h(d);
    parallel_for(D.cells(), [&](int b, int e) {
      for (int c = b; c < e; ++c) {
        double* R = &residual[static_cast<std::size_t>(c) * nvars * nm];
        double* M = moments ? &(*moments)[static_cast<std::size_t>(c) * nvars * nm] : nullptr;
        for (int q = 0; q < nq; ++q) {
          const State& U = u_vol_[c * nq + q];
          const double w = D.vol_weight(q);
          const double* ph = D.phi(q);
          State S = model_.source(U, omega_->grad(c, q));
          std::array<State, dim> F;
          for (int d = 0; d < dim; ++d) F[d] = model_.flux(U, d);
          for (int i = 0; i < nvars; ++i) {
            double* Ri = R + i * nm;
            for (int l = 0; l < nm; ++l) {
              double v = S[i] * ph[l];
              for (int d = 0; d < dim; ++d) v += F[d][i] * scale[d] * D.dphi(d, q)[l];
              Ri[l] += w * v;
            }
            if (M) {
              double* Mi = M + i * nm;
              for (int l = 0; l < nm; ++l) Mi[l] += w * U[i] * ph[l];
            }
          }
        }
        for (int f = 0; f < nf; ++f) {
          const double hinv = 1.0 / mesh.h(f / 2);
          for (int p = 0; p < nfp; ++p) {
            const State& Fo = f_out_[(c * nf + f) * nfp + p];
            const double w = D.face_weight(p) * hinv;
            const double* ph = D.face_phi(f, p);
            for (int i = 0; i < nvars; ++i)
              for (int l = 0; l < nm; ++l) R[i * nm + l] -= w * Fo[i] * ph[l];
          }
        }
      }
    });
  }

  Model model_;
  DiscretizationPtr<dim> disc_;
  OmegaPtr<dim> omega_;
  BoundarySet<Model> bcs_;
  FluxScheme scheme_;
  std::array<bool, dim> periodic_{};
  std::vector<State> u_vol_, v_face_, u_face_, f_out_;
  std::vector<double> cell_alpha_, cell_speed_;
  double alpha_ = 0.0, max_speed_ = 0.0;
};

}  // namespace wbdg
