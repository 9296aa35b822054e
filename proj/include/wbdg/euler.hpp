#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "basis.hpp"
#include "error.hpp"
#include "regime.hpp"

namespace wbdg {

// Compressible Euler equations with a gravitational potential phi.
//   U = (rho, rho u_1..rho u_Dim, E),  V = (K, rho u_1..rho u_Dim, eps)
// with K = p / rho^gamma and eps = |u|^2/2 + gamma/(gamma-1) p/rho + phi.
template <int Dim>
class EulerModel {
 public:
  static constexpr int dim = Dim;
  static constexpr int nvars = Dim + 2;
  using State = Eigen::Matrix<double, nvars, 1>;
  using Matrix = Eigen::Matrix<double, nvars, nvars>;
  using Physics = EulerModel<Dim>;

  // momenta are shared by U and V
  static constexpr std::array<bool, nvars> direct = [] {
    std::array<bool, nvars> a{};
    for (int i = 1; i <= Dim; ++i) a[i] = true;
    return a;
  }();
  static constexpr bool hydrostatic_reconstruction = true;

  struct Critical {
    double rho;
    double xi;
  };

  explicit EulerModel(double gamma = 1.4) : gamma_(gamma) {
    if (!(gamma > 1.0)) throw ConfigError("Euler model: gamma must be > 1");
  }

  double gamma() const { return gamma_; }
  const Physics& physics() const { return *this; }
  static const char* name() { return "euler"; }

  static std::vector<std::string> cons_names() {
    if constexpr (Dim == 1) return {"rho", "rhou", "E"};
    else return {"rho", "rhou", "rhov", "E"};
  }
  static std::vector<std::string> equil_names() {
    if constexpr (Dim == 1) return {"K", "rhou", "epsilon"};
    else return {"K", "rhou", "rhov", "epsilon"};
  }
  static std::vector<std::string> derived_names() {
    if constexpr (Dim == 1) return {"p", "u"};
    else return {"p", "u", "v"};
  }
  std::vector<double> derived(const State& U, double /*omega*/) const {
    std::vector<double> d{pressure(U)};
    for (int i = 0; i < Dim; ++i) d.push_back(U[1 + i] / U[0]);
    return d;
  }

  double kinetic(const State& U) const {
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
    return 0.5 * m2 / U[0];
  }
  double pressure(const State& U) const { return (gamma_ - 1.0) * (U[nvars - 1] - kinetic(U)); }
  double sound_speed(const State& U) const { return std::sqrt(gamma_ * pressure(U) / U[0]); }
  double mach(const State& U) const {
    double u2 = 0.0;
    for (int i = 0; i < Dim; ++i) u2 += U[1 + i] * U[1 + i];
    return std::sqrt(u2) / U[0] / sound_speed(U);
  }

  void check(const State& U) const {
    double p = U[0] > 0 ? pressure(U) : -1.0;
    if (!(U[0] > 0.0) || !(p > 0.0) || !U.allFinite()) {
      std::ostringstream os;
      os << "inadmissible Euler state: rho=" << U[0] << " p=" << p;
      throw StateError(os.str());
    }
  }

  // From primitive values (rho, velocity, p).
  State from_primitive(double rho, const std::array<double, Dim>& u, double p) const {
    State U;
    U[0] = rho;
    double ke = 0.0;
    for (int i = 0; i < Dim; ++i) {
      U[1 + i] = rho * u[i];
      ke += 0.5 * rho * u[i] * u[i];
    }
    U[nvars - 1] = p / (gamma_ - 1.0) + ke;
    return U;
  }

  State flux(const State& U, int dir) const {
    double p = pressure(U);
    double ud = U[1 + dir] / U[0];
    State F;
    F[0] = U[1 + dir];
    for (int i = 0; i < Dim; ++i) F[1 + i] = U[1 + i] * ud;
    F[1 + dir] += p;
    F[nvars - 1] = (U[nvars - 1] + p) * ud;
    return F;
  }

  State source(const State& U, const Point<Dim>& grad_phi) const {
    State S;
    S[0] = 0.0;
    double work = 0.0;
    for (int i = 0; i < Dim; ++i) {
      S[1 + i] = -U[0] * grad_phi[i];
      work += U[1 + i] * grad_phi[i];
    }
    S[nvars - 1] = -work;
    return S;
  }

  double max_wave_speed(const State& U, int dir) const {
    return std::abs(U[1 + dir] / U[0]) + sound_speed(U);
  }

  State to_equil(const State& U, double phi) const {
    check(U);
    double p = pressure(U);
    double rho = U[0];
    double u2 = 0.0;
    for (int i = 0; i < Dim; ++i) u2 += U[1 + i] * U[1 + i];
    u2 /= rho * rho;
    State V;
    V[0] = p / std::pow(rho, gamma_);
    for (int i = 0; i < Dim; ++i) V[1 + i] = U[1 + i];
    V[nvars - 1] = 0.5 * u2 + gamma_ / (gamma_ - 1.0) * p / rho + phi;
    return V;
  }

  // Sonic point of xi(rho) = m2/(2 rho^2) + gamma/(gamma-1) K rho^(gamma-1).
  Critical critical_point(double K, double m2) const {
    if (!(m2 > 0.0)) throw ContractError("critical_point: zero momentum has no sonic point");
    double rs = std::pow(m2 / (gamma_ * K), 1.0 / (gamma_ + 1.0));
    return {rs, xi(rs, K, m2)};
  }

  double xi(double rho, double K, double m2) const {
    return 0.5 * m2 / (rho * rho) + gamma_ / (gamma_ - 1.0) * K * std::pow(rho, gamma_ - 1.0);
  }

  // Density with xi(rho) = B on the branch selected by regime (Sonic is
  // treated as Subsonic, except that data below the sonic bound returns the
  // critical density). hint, if positive, is a nearby density.
  double solve_density(double K, double m2, double B, FlowRegime regime, double hint = 0.0) const {
    if (!(K > 0.0) || !std::isfinite(B)) {
      std::ostringstream os;
      os << "Euler transform: K=" << K << " eps-phi=" << B;
      throw StateError(os.str());
    }
    const double g = gamma_;
    if (m2 == 0.0) {
      if (!(B > 0.0)) throw NoEquilibriumError("Euler transform: eps - phi must be positive at rest");
      return std::pow((g - 1.0) / (K * g) * B, 1.0 / (g - 1.0));
    }
    Critical cp = critical_point(K, m2);
    if (B < cp.xi * (1.0 - 1e-14) && regime != FlowRegime::Sonic) {
      std::ostringstream os;
      os << "no equilibrium: eps - phi = " << B << " below sonic bound " << cp.xi;
      throw NoEquilibriumError(os.str());
    }
    if (B <= cp.xi * (1.0 + 1e-14)) return cp.rho;  // also the Sonic clamp

    const bool super = regime == FlowRegime::Supersonic;
    const double c1 = g / (g - 1.0) * K;
    auto f = [&](double r, double& df) {
      double rg = c1 * std::pow(r, g - 1.0);
      df = -m2 / (r * r * r) + (g - 1.0) * rg / r;
      return 0.5 * m2 / (r * r) + rg - B;
    };
    // Safeguarded Newton on the branch interval: (rho*, inf) subsonic,
    // (0, rho*) supersonic. f < 0 at the sonic end, f > 0 at the far end.
    const double inf = std::numeric_limits<double>::infinity();
    double lo = super ? 0.0 : cp.rho, hi = super ? cp.rho : inf;
    double r, df;
    if (hint > lo && hint < hi) {
      r = hint;
    } else if (!super) {
      r = std::max(std::pow((g - 1.0) / (K * g) * B, 1.0 / (g - 1.0)), 1.01 * cp.rho);
    } else {
      r = std::min(std::sqrt(0.5 * m2 / B), 0.99 * cp.rho);
    }
    // Newton to round-off: stop once the step no longer moves r
    const double tol = 1e-13 * std::max(1.0, std::abs(B));
    for (int it = 0; it < 200; ++it) {
      double fr = f(r, df);
      if (fr == 0.0) return r;
      if ((fr > 0.0) != super) hi = r;
      else lo = r;
      double rn = r - fr / df;
      if (!(rn > lo && rn < hi) || df == 0.0) rn = hi == inf ? 2.0 * r : 0.5 * (lo + hi);
      if (std::abs(rn - r) <= 2e-16 * r || (hi < inf && hi - lo <= 4e-16 * hi)) {
        if (std::abs(fr) <= tol) return std::abs(f(rn, df)) < std::abs(fr) ? rn : r;
        break;
      }
      r = rn;
    }
    std::ostringstream os;
    os.precision(17);
    os << "Euler transform: density Newton did not converge (K=" << K << " m2=" << m2 << " eps-phi=" << B
       << " hint=" << hint << ")";
    throw ConvergenceError(os.str());
  }

  State to_cons(const State& V, double phi, FlowRegime regime, double* hint = nullptr) const {
    double K = V[0];
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += V[1 + i] * V[1 + i];
    double rho = solve_density(K, m2, V[nvars - 1] - phi, regime, hint ? *hint : 0.0);
    if (hint) *hint = rho;
    State U;
    U[0] = rho;
    for (int i = 0; i < Dim; ++i) U[1 + i] = V[1 + i];
    U[nvars - 1] = K * std::pow(rho, gamma_) / (gamma_ - 1.0) + 0.5 * m2 / rho;
    return U;
  }

  // dU/dV at a point, by implicit differentiation of xi(rho, K, m) = eps - phi.
  Matrix dcons_dequil(const State& V, const State& U, double /*phi*/) const {
    const double g = gamma_;
    double rho = U[0], K = V[0];
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
    double rg1 = std::pow(rho, g - 1.0);
    double c2 = g * K * rg1;
    double g_rho = (c2 - m2 / (rho * rho)) / rho;
    double floor = 1e-12 * (c2 + m2 / (rho * rho)) / rho;
    if (std::abs(g_rho) < floor) g_rho = g_rho < 0 ? -floor : floor;
    double g_K = g / (g - 1.0) * rg1;

    Matrix J = Matrix::Zero();
    // drho = (deps - g_K dK - sum m_i/rho^2 dm_i) / g_rho
    J(0, 0) = -g_K / g_rho;
    for (int i = 0; i < Dim; ++i) J(0, 1 + i) = -(U[1 + i] / (rho * rho)) / g_rho;
    J(0, nvars - 1) = 1.0 / g_rho;
    for (int i = 0; i < Dim; ++i) J(1 + i, 1 + i) = 1.0;
    double dE_drho = g * K * rg1 / (g - 1.0) - 0.5 * m2 / (rho * rho);
    double dE_dK = rg1 * rho / (g - 1.0);
    for (int j = 0; j < nvars; ++j) J(nvars - 1, j) = dE_drho * J(0, j);
    J(nvars - 1, 0) += dE_dK;
    for (int i = 0; i < Dim; ++i) J(nvars - 1, 1 + i) += U[1 + i] / rho;
    return J;
  }

  FlowRegime classify(const State& U, FlowRegime previous) const {
    return classify_number(mach(U), previous);
  }

  // Right eigenvectors of dF_dir/dU (columns), ordered u-c, u, [shear], u+c.
  Matrix eigenvectors(const State& U, int dir) const {
    double rho = U[0];
    double p = pressure(U);
    double c = std::sqrt(gamma_ * p / rho);
    double H = (U[nvars - 1] + p) / rho;
    std::array<double, Dim> u;
    double q2 = 0.0;
    for (int i = 0; i < Dim; ++i) {
      u[i] = U[1 + i] / rho;
      q2 += u[i] * u[i];
    }
    double un = u[dir];
    Matrix R = Matrix::Zero();
    R(0, 0) = 1.0;
    R(0, 1) = 1.0;
    R(0, nvars - 1) = 1.0;
    for (int i = 0; i < Dim; ++i) {
      R(1 + i, 0) = u[i];
      R(1 + i, 1) = u[i];
      R(1 + i, nvars - 1) = u[i];
    }
    R(1 + dir, 0) -= c;
    R(1 + dir, nvars - 1) += c;
    R(nvars - 1, 0) = H - un * c;
    R(nvars - 1, 1) = 0.5 * q2;
    R(nvars - 1, nvars - 1) = H + un * c;
    if constexpr (Dim == 2) {
      int t = 1 - dir;
      R(1 + t, 2) = 1.0;
      R(nvars - 1, 2) = u[t];
    }
    return R;
  }

  std::array<double, nvars> eigenvalues(const State& U, int dir) const {
    double un = U[1 + dir] / U[0];
    double c = sound_speed(U);
    std::array<double, nvars> l;
    for (int i = 0; i < nvars; ++i) l[i] = un;
    l[0] = un - c;
    l[nvars - 1] = un + c;
    return l;
  }

 private:
  double gamma_;
};

}  // namespace wbdg
