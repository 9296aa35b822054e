#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "omega.hpp"
#include "parallel.hpp"

namespace wbdg {

struct NewtonOptions {
  double tol = 1e-12;         // scaled residual at which a solve is accepted
  double polish_tol = 1e-14;  // one extra step is taken while above this
  int max_iter = 50;
  int max_halvings = 20;
};

struct StageStats {
  long solves = 0;
  long iterations = 0;
  int max_iterations = 0;
};

// Per-cell projection solve: find coefficients V such that
//   (1/|T|) int U(V) phi_l = target_l   for every component and mode.
// Components that coincide in U and V are copied; the others are found by a
// damped Newton iteration over all their coefficients jointly.
template <class Model>
class StageSolver {
 public:
  static constexpr int dim = Model::dim;
  static constexpr int nvars = Model::nvars;
  using State = typename Model::State;
  using Matrix = typename Model::Matrix;

  StageSolver(Model model, OmegaPtr<dim> omega, NewtonOptions opt = {})
      : model_(std::move(model)), omega_(std::move(omega)), opt_(opt) {
    for (int i = 0; i < nvars; ++i)
      if (!Model::direct[i]) nonlinear_.push_back(i);
  }

  const NewtonOptions& options() const { return opt_; }

  // Solves every cell; V holds the initial guess on entry.
  StageStats solve(const std::vector<double>& targets, DGField<Model>& V) const {
    const int nc = V.cells();
    std::vector<int> iters(nc, 0);
    parallel_for(nc, [&](int b, int e) {
      for (int c = b; c < e; ++c)
        iters[c] = solve_cell(c, &targets[static_cast<std::size_t>(c) * nvars * V.modes()], V);
    }, 4);
    StageStats s;
    for (int c = 0; c < nc; ++c) {
      s.solves++;
      s.iterations += iters[c];
      s.max_iterations = std::max(s.max_iterations, iters[c]);
    }
    return s;
  }

  // Returns the Newton iteration count. Throws ConvergenceError with the cell id.
  int solve_cell(int c, const double* target, DGField<Model>& V) const {
    const auto& D = V.disc();
    const int nm = D.modes(), nq = D.vol_points();
    const int nn = static_cast<int>(nonlinear_.size());
    double* a = V.cell_data(c);
    for (int i = 0; i < nvars; ++i)
      if (Model::direct[i])
        for (int l = 0; l < nm; ++l) a[i * nm + l] = target[i * nm + l];
    if (nn == 0) return 0;

    // residual scale per nonlinear component
    double smax = 0.0;
    std::vector<double> scale(nn);
    for (int k = 0; k < nn; ++k) {
      double s = 0.0;
      for (int l = 0; l < nm; ++l) s = std::max(s, std::abs(target[nonlinear_[k] * nm + l]));
      scale[k] = s;
      smax = std::max(smax, s);
    }
    for (int k = 0; k < nn; ++k) scale[k] = std::max({scale[k], 1e-6 * smax, 1e-300});

    std::vector<double> hints(nq);
    for (int q = 0; q < nq; ++q) hints[q] = V.vol_hint(c, q);
    std::vector<State> Vq(nq), Uq(nq);
    const int n = nn * nm;
    Eigen::VectorXd G(n), x(n), dx(n);
    Eigen::MatrixXd J(n, n);

    auto load = [&](const double* coef, Eigen::VectorXd& out) {
      for (int k = 0; k < nn; ++k)
        for (int l = 0; l < nm; ++l) out[k * nm + l] = coef[nonlinear_[k] * nm + l];
    };
    auto store = [&](const Eigen::VectorXd& in, double* coef) {
      for (int k = 0; k < nn; ++k)
        for (int l = 0; l < nm; ++l) coef[nonlinear_[k] * nm + l] = in[k * nm + l];
    };
    // evaluates U at the volume points for coefficients a (with x stored),
    // returns the scaled residual norm; throws StateError if inadmissible
    std::vector<double> trial(nvars * nm);
    auto evaluate = [&](const double* coef, Eigen::VectorXd& g) {
      for (int q = 0; q < nq; ++q) {
        const double* ph = D.phi(q);
        for (int i = 0; i < nvars; ++i) {
          double s = 0.0;
          for (int l = 0; l < nm; ++l) s += coef[i * nm + l] * ph[l];
          Vq[q][i] = s;
        }
        double h = hints[q];
        Uq[q] = model_.to_cons(Vq[q], omega_->vol(c, q), V.vol_regime(c, q), &h);
        hints[q] = h;
      }
      double r = 0.0;
      for (int k = 0; k < nn; ++k) {
        int i = nonlinear_[k];
        for (int l = 0; l < nm; ++l) {
          double s = 0.0;
          for (int q = 0; q < nq; ++q) s += D.vol_weight(q) * Uq[q][i] * D.phi(q)[l];
          g[k * nm + l] = s - target[i * nm + l];
          r = std::max(r, std::abs(g[k * nm + l]) / scale[k]);
        }
      }
      if (!std::isfinite(r)) throw StateError("non-finite stage residual");
      return r;
    };

    double r;
    try {
      r = evaluate(a, G);
    } catch (const StateError&) {
      // fall back to a constant guess from the target cell average
      State Ubar, Vbar;
      for (int i = 0; i < nvars; ++i) Ubar[i] = target[i * nm];
      try {
        Vbar = model_.to_equil(Ubar, omega_->average(c));
      } catch (const StateError& e) {
        throw ConvergenceError(fail_message(c, D, std::string("inadmissible cell average: ") + e.what()));
      }
      for (int k = 0; k < nn; ++k)
        for (int l = 0; l < nm; ++l) a[nonlinear_[k] * nm + l] = l == 0 ? Vbar[nonlinear_[k]] : 0.0;
      try {
        r = evaluate(a, G);
      } catch (const StateError& e) {
        throw ConvergenceError(fail_message(c, D, e.what()));
      }
    }
    load(a, x);

    int it = 0;
    bool polished = false;
    for (;; ++it) {
      if (r <= opt_.tol && (r <= opt_.polish_tol || polished)) break;
      if (r <= opt_.tol) polished = true;
      if (it >= opt_.max_iter) {
        std::ostringstream os;
        os << "stage Newton did not converge (residual " << r << ")";
        throw ConvergenceError(fail_message(c, D, os.str()));
      }
      J.setZero();
      for (int q = 0; q < nq; ++q) {
        Matrix Dq = model_.dcons_dequil(Vq[q], Uq[q], omega_->vol(c, q));
        const double w = D.vol_weight(q);
        const double* ph = D.phi(q);
        for (int ki = 0; ki < nn; ++ki)
          for (int kj = 0; kj < nn; ++kj) {
            double dij = w * Dq(nonlinear_[ki], nonlinear_[kj]);
            if (dij == 0.0) continue;
            for (int l = 0; l < nm; ++l)
              for (int m = 0; m < nm; ++m) J(ki * nm + l, kj * nm + m) += dij * ph[l] * ph[m];
          }
      }
      dx = J.partialPivLu().solve(-G);
      if (!dx.allFinite()) throw ConvergenceError(fail_message(c, D, "singular stage Jacobian"));
      double xnorm = x.lpNorm<Eigen::Infinity>();
      if (dx.lpNorm<Eigen::Infinity>() <= 4e-16 * xnorm && r <= 1e3 * opt_.tol) break;

      double lambda = 1.0;
      bool accepted = false;
      Eigen::VectorXd Gt(n), xt(n);
      for (int h = 0; h <= opt_.max_halvings; ++h, lambda *= 0.5) {
        xt = x + lambda * dx;
        std::copy(a, a + nvars * nm, trial.begin());
        store(xt, trial.data());
        try {
          double rt = evaluate(trial.data(), Gt);
          if (polished && rt > r) break;  // polishing step made things worse
          r = rt;
          accepted = true;
          break;
        } catch (const StateError&) {
        }
      }
      if (!accepted) {
        if (polished) {
          // restore the states of the accepted iterate
          evaluate(a, G);
          break;
        }
        throw ConvergenceError(fail_message(c, D, "no admissible damped Newton step"));
      }
      x = xt;
      G = Gt;
      store(x, a);
    }
    for (int q = 0; q < nq; ++q) V.vol_hint(c, q) = hints[q];
    return it;
  }

 private:
  static std::string fail_message(int c, const Discretization<dim>& D, const std::string& what) {
    std::ostringstream os;
    os << "cell " << c << " centered at";
    for (double v : D.mesh().center(c)) os << ' ' << v;
    os << ": " << what;
    return os.str();
  }

  Model model_;
  OmegaPtr<dim> omega_;
  NewtonOptions opt_;
  std::vector<int> nonlinear_;
};

}  // namespace wbdg
