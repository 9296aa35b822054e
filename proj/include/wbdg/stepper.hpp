#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "field.hpp"
#include "limiter.hpp"
#include "residual.hpp"
#include "stage_solver.hpp"

namespace wbdg {

struct StepperOptions {
  double cfl = 0.1;
  int max_dt_halvings = 5;
  NewtonOptions newton;
  LimiterConfig limiter;
};

struct RunStats {
  long steps = 0;
  long dt_halvings = 0;
  long newton_iterations = 0;
  long stage_solves = 0;
  int max_newton_iterations = 0;
  long troubled_cells = 0;
  long limiter_fallbacks = 0;
  long regime_changes = 0;
};

// Third-order SSP Runge-Kutta in moment form:
//   M(V1) = M(Vn) + dt R(Vn)
//   M(V2) = 3/4 M(Vn) + 1/4 (M(V1) + dt R(V1))
//   M(V') = 1/3 M(Vn) + 2/3 (M(V2) + dt R(V2))
// with a per-cell projection solve and the limiter after every stage.
template <class Model>
class SspRk3 {
 public:
  static constexpr int dim = Model::dim;
  static constexpr int nvars = Model::nvars;
  using State = typename Model::State;

  SspRk3(ResidualOperator<Model>& op, StepperOptions opt = {})
      : op_(op), opt_(opt), solver_(op.model(), op.omega_ptr(), opt.newton),
        limiter_(op.model(), op.omega_ptr(), opt.limiter, periodic_flags(op)) {}

  const StepperOptions& options() const { return opt_; }
  const RunStats& stats() const { return stats_; }
  ResidualOperator<Model>& op() { return op_; }

  // dt = CFL h_min / max |lambda| over all volume quadrature points.
  double compute_dt(DGField<Model>& V) {
    op_.evaluate_states(V);
    return dt_from_speed(op_.max_speed());
  }

  double dt_from_speed(double smax) const {
    if (!(smax > 0.0) || !std::isfinite(smax)) throw StateError("non-finite or zero wave speed");
    return opt_.cfl * op_.disc().mesh().h_min() / smax;
  }

  // One step of at most dt_max; returns the dt taken.
  double step(DGField<Model>& V, double t, double dt_max) {
    std::vector<double> M0, R0;
    op_.evaluate(V, t, &M0, R0);
    int changed = op_.refresh_regimes(V);
    if (changed > 0) {
      stats_.regime_changes += changed;
      op_.evaluate(V, t, &M0, R0);
    }
    double dt = std::min(dt_from_speed(op_.max_speed()), dt_max);
    const DGField<Model> Vn = V;
    for (int attempt = 0;; ++attempt) {
      try {
        stages(V, M0, R0, t, dt);
        stats_.steps++;
        return dt;
      } catch (const Error& e) {
        if (attempt >= opt_.max_dt_halvings) {
          std::ostringstream os;
          os << "step at t=" << t << " failed after " << attempt << " dt halvings: " << e.what();
          throw ConvergenceError(os.str());
        }
        V = Vn;
        dt *= 0.5;
        stats_.dt_halvings++;
      }
    }
  }

  // Advances to t_final (the last step is shortened to land exactly).
  void advance(DGField<Model>& V, double& t, double t_final,
               const std::function<void(const DGField<Model>&, double)>& on_step = {}) {
    while (t < t_final) {
      double remaining = t_final - t;
      double dt = step(V, t, remaining);
      t = (dt == remaining) ? t_final : t + dt;
      if (on_step) on_step(V, t);
    }
  }

 private:
  static std::array<bool, dim> periodic_flags(const ResidualOperator<Model>& op) {
    std::array<bool, dim> p;
    for (int d = 0; d < dim; ++d) p[d] = op.periodic(d);
    return p;
  }

  void solve_and_limit(const std::vector<double>& target, DGField<Model>& V) {
    StageStats s = solver_.solve(target, V);
    stats_.stage_solves += s.solves;
    stats_.newton_iterations += s.iterations;
    stats_.max_newton_iterations = std::max(stats_.max_newton_iterations, s.max_iterations);
    if (opt_.limiter.enabled) {
      const int nm = V.modes(), nc = V.cells();
      std::vector<State> ubar(nc);
      for (int c = 0; c < nc; ++c)
        for (int i = 0; i < nvars; ++i) ubar[c][i] = target[(c * nvars + i) * nm];
      LimiterStats ls = limiter_.apply(V, ubar);
      stats_.troubled_cells += ls.troubled;
      stats_.limiter_fallbacks += ls.fallbacks;
    }
  }

  void stages(DGField<Model>& V, const std::vector<double>& M0,
              const std::vector<double>& R0, double t, double dt) {
    const std::size_t n = M0.size();
    std::vector<double> T(n), M, R;
    for (std::size_t k = 0; k < n; ++k) T[k] = M0[k] + dt * R0[k];
    solve_and_limit(T, V);

    op_.evaluate(V, t + dt, &M, R);
    for (std::size_t k = 0; k < n; ++k) T[k] = 0.75 * M0[k] + 0.25 * (M[k] + dt * R[k]);
    solve_and_limit(T, V);

    op_.evaluate(V, t + 0.5 * dt, &M, R);
    for (std::size_t k = 0; k < n; ++k)
      T[k] = M0[k] / 3.0 + 2.0 / 3.0 * (M[k] + dt * R[k]);
    solve_and_limit(T, V);
  }

  ResidualOperator<Model>& op_;
  StepperOptions opt_;
  StageSolver<Model> solver_;
  TvbLimiter<Model> limiter_;
  RunStats stats_;
};

}  // namespace wbdg
