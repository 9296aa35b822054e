#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "basis.hpp"
#include "error.hpp"
#include "regime.hpp"

namespace wbdg {

// Roots of g theta h^3 - (E - g b theta) h^2 + |hu|^2 / 2 = 0, h1 <= h2 <= h3.
struct CubicRoots {
  double h1, h2, h3;
};

// Relative distance from the sonic (double-root) bound inside which both
// positive roots collapse to the double root.
inline constexpr double kRipaSonicSnap = 1e-12;

// Ripa shallow water model with temperature and bottom b.
//   U = (h, hu_1..hu_Dim, h theta),  V = (E, hu_1..hu_Dim, theta)
// with E = |u|^2/2 + g theta (h + b).
template <int Dim>
class RipaModel {
 public:
  static constexpr int dim = Dim;
  static constexpr int nvars = Dim + 2;
  using State = Eigen::Matrix<double, nvars, 1>;
  using Matrix = Eigen::Matrix<double, nvars, nvars>;
  using Physics = RipaModel<Dim>;

  static constexpr std::array<bool, nvars> direct = [] {
    std::array<bool, nvars> a{};
    for (int i = 1; i <= Dim; ++i) a[i] = true;
    return a;
  }();
  static constexpr bool hydrostatic_reconstruction = true;

  explicit RipaModel(double g = 9.812) : g_(g) {
    if (!(g > 0.0)) throw ConfigError("Ripa model: g must be > 0");
  }

  double g() const { return g_; }
  const Physics& physics() const { return *this; }
  static const char* name() { return "ripa"; }

  static std::vector<std::string> cons_names() {
    if constexpr (Dim == 1) return {"h", "hu", "htheta"};
    else return {"h", "hu", "hv", "htheta"};
  }
  static std::vector<std::string> equil_names() {
    if constexpr (Dim == 1) return {"E", "hu", "theta"};
    else return {"E", "hu", "hv", "theta"};
  }
  static std::vector<std::string> derived_names() {
    if constexpr (Dim == 1) return {"p", "u", "eta"};
    else return {"p", "u", "v", "eta"};
  }
  std::vector<double> derived(const State& U, double b) const {
    std::vector<double> d{pressure(U)};
    for (int i = 0; i < Dim; ++i) d.push_back(U[1 + i] / U[0]);
    d.push_back(U[0] + b);
    return d;
  }

  double pressure(const State& U) const { return 0.5 * g_ * U[0] * U[nvars - 1]; }
  double celerity(const State& U) const { return std::sqrt(g_ * U[nvars - 1]); }
  double froude(const State& U) const {
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
    return std::sqrt(m2) / U[0] / celerity(U);
  }

  void check(const State& U) const {
    if (!(U[0] > 0.0) || !(U[nvars - 1] > 0.0) || !U.allFinite()) {
      std::ostringstream os;
      os << "inadmissible Ripa state: h=" << U[0] << " htheta=" << U[nvars - 1];
      throw StateError(os.str());
    }
  }

  State from_primitive(double h, const std::array<double, Dim>& u, double theta) const {
    State U;
    U[0] = h;
    for (int i = 0; i < Dim; ++i) U[1 + i] = h * u[i];
    U[nvars - 1] = h * theta;
    return U;
  }

  State flux(const State& U, int dir) const {
    double ud = U[1 + dir] / U[0];
    State F;
    F[0] = U[1 + dir];
    for (int i = 0; i < Dim; ++i) F[1 + i] = U[1 + i] * ud;
    F[1 + dir] += pressure(U);
    F[nvars - 1] = U[nvars - 1] * ud;
    return F;
  }

  State source(const State& U, const Point<Dim>& grad_b) const {
    State S = State::Zero();
    for (int i = 0; i < Dim; ++i) S[1 + i] = -g_ * U[nvars - 1] * grad_b[i];
    return S;
  }

  double max_wave_speed(const State& U, int dir) const {
    return std::abs(U[1 + dir] / U[0]) + celerity(U);
  }

  State to_equil(const State& U, double b) const {
    check(U);
    double h = U[0];
    double theta = U[nvars - 1] / h;
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
    State V;
    V[0] = 0.5 * m2 / (h * h) + g_ * theta * (h + b);
    for (int i = 0; i < Dim; ++i) V[1 + i] = U[1 + i];
    V[nvars - 1] = theta;
    return V;
  }

  // Trigonometric roots of the depth cubic (m2 = |hu|^2 > 0).
  // With clamp, data below the sonic bound returns the double root.
  CubicRoots cubic_roots(double E, double m2, double theta, double b, bool clamp = false) const {
    const double a = g_ * theta;
    const double A = E - g_ * b * theta;
    if (!(A > 0.0) || !(theta > 0.0)) {
      std::ostringstream os;
      os << "no equilibrium: E - g b theta = " << A;
      throw NoEquilibriumError(os.str());
    }
    // s = cos(3 psi) in [-1, 1]; s = -1 is the sonic double root
    double s = 1.0 - 27.0 * a * a * m2 / (4.0 * A * A * A);
    if (s < -1.0 - kRipaSonicSnap && !clamp) {
      std::ostringstream os;
      os << "no equilibrium: E = " << E << " below sonic bound (cos argument " << s << ")";
      throw NoEquilibriumError(os.str());
    }
    const double r = A / (3.0 * a);
    if (s <= -1.0 + kRipaSonicSnap) {
      double hc = std::cbrt(m2 / a);
      return {-hc / 2.0, hc, hc};
    }
    double psi = std::acos(std::min(1.0, s)) / 3.0;
    constexpr double tp = 2.0 * std::numbers::pi / 3.0;
    CubicRoots c{r * (1.0 + 2.0 * std::cos(psi + tp)), r * (1.0 + 2.0 * std::cos(psi - tp)),
                 r * (1.0 + 2.0 * std::cos(psi))};
    auto polish = [&](double h) {
      double f = (a * h - A) * h * h + 0.5 * m2;
      double df = (3.0 * a * h - 2.0 * A) * h;
      if (std::abs(df) <= 1e-8 * A * std::abs(h)) return h;
      return h - f / df;
    };
    c.h1 = polish(c.h1);
    c.h2 = polish(c.h2);
    c.h3 = polish(c.h3);
    return c;
  }

  double solve_depth(double E, double m2, double theta, double b, FlowRegime regime) const {
    if (!(theta > 0.0) || !std::isfinite(E)) {
      std::ostringstream os;
      os << "Ripa transform: theta=" << theta << " E=" << E;
      throw StateError(os.str());
    }
    if (m2 == 0.0) {
      double h = E / (g_ * theta) - b;
      if (!(h > 0.0)) throw NoEquilibriumError("Ripa transform: E <= g b theta at rest");
      return h;
    }
    CubicRoots c = cubic_roots(E, m2, theta, b, regime == FlowRegime::Sonic);
    return regime == FlowRegime::Supersonic ? c.h2 : c.h3;
  }

  State to_cons(const State& V, double b, FlowRegime regime, double* /*hint*/ = nullptr) const {
    double theta = V[nvars - 1];
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += V[1 + i] * V[1 + i];
    double h = solve_depth(V[0], m2, theta, b, regime);
    State U;
    U[0] = h;
    for (int i = 0; i < Dim; ++i) U[1 + i] = V[1 + i];
    U[nvars - 1] = h * theta;
    return U;
  }

  // dU/dV from E = |m|^2/(2h^2) + g theta (h + b).
  Matrix dcons_dequil(const State& V, const State& U, double b) const {
    double h = U[0], theta = V[nvars - 1];
    double m2 = 0.0;
    for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
    double f_h = g_ * theta - m2 / (h * h * h);
    double floor = 1e-12 * (g_ * theta + m2 / (h * h * h));
    if (std::abs(f_h) < floor) f_h = f_h < 0 ? -floor : floor;
    Matrix J = Matrix::Zero();
    J(0, 0) = 1.0 / f_h;
    for (int i = 0; i < Dim; ++i) J(0, 1 + i) = -(U[1 + i] / (h * h)) / f_h;
    J(0, nvars - 1) = -g_ * (h + b) / f_h;
    for (int i = 0; i < Dim; ++i) J(1 + i, 1 + i) = 1.0;
    for (int j = 0; j < nvars; ++j) J(nvars - 1, j) = theta * J(0, j);
    J(nvars - 1, nvars - 1) += h;
    return J;
  }

  FlowRegime classify(const State& U, FlowRegime previous) const {
    return classify_number(froude(U), previous);
  }

  // Right eigenvectors of dF_dir/dU, ordered u-c, u, [shear], u+c.
  Matrix eigenvectors(const State& U, int dir) const {
    double h = U[0];
    double theta = U[nvars - 1] / h;
    double c = celerity(U);
    std::array<double, Dim> u;
    for (int i = 0; i < Dim; ++i) u[i] = U[1 + i] / h;
    Matrix R = Matrix::Zero();
    for (int k : {0, 1, nvars - 1}) {
      R(0, k) = 1.0;
      for (int i = 0; i < Dim; ++i) R(1 + i, k) = u[i];
    }
    R(1 + dir, 0) -= c;
    R(1 + dir, nvars - 1) += c;
    R(nvars - 1, 0) = theta;
    R(nvars - 1, 1) = -theta;
    R(nvars - 1, nvars - 1) = theta;
    if constexpr (Dim == 2) R(1 + (1 - dir), 2) = 1.0;
    return R;
  }

  std::array<double, nvars> eigenvalues(const State& U, int dir) const {
    double un = U[1 + dir] / U[0];
    double c = celerity(U);
    std::array<double, nvars> l;
    for (int i = 0; i < nvars; ++i) l[i] = un;
    l[0] = un - c;
    l[nvars - 1] = un + c;
    return l;
  }

 private:
  double g_;
};

// Ripa model in isobaric variables V = (h, u_1..u_Dim, p), p = g h^2 theta / 2.
// The transform does not involve b, so no hydrostatic reconstruction is used.
template <int Dim>
class RipaIsobaricModel {
 public:
  static constexpr int dim = Dim;
  static constexpr int nvars = Dim + 2;
  using Physics = RipaModel<Dim>;
  using State = typename Physics::State;
  using Matrix = typename Physics::Matrix;

  static constexpr std::array<bool, nvars> direct = [] {
    std::array<bool, nvars> a{};
    a[0] = true;
    return a;
  }();
  static constexpr bool hydrostatic_reconstruction = false;

  explicit RipaIsobaricModel(double g = 9.812) : phys_(g) {}

  double g() const { return phys_.g(); }
  const Physics& physics() const { return phys_; }
  static const char* name() { return "ripa-isobaric"; }

  static std::vector<std::string> cons_names() { return Physics::cons_names(); }
  static std::vector<std::string> equil_names() {
    if constexpr (Dim == 1) return {"h", "u", "p"};
    else return {"h", "u", "v", "p"};
  }
  static std::vector<std::string> derived_names() { return Physics::derived_names(); }
  std::vector<double> derived(const State& U, double b) const { return phys_.derived(U, b); }

  void check(const State& U) const { phys_.check(U); }
  State flux(const State& U, int dir) const { return phys_.flux(U, dir); }
  State source(const State& U, const Point<Dim>& grad_b) const { return phys_.source(U, grad_b); }
  double max_wave_speed(const State& U, int dir) const { return phys_.max_wave_speed(U, dir); }

  State to_equil(const State& U, double /*b*/ = 0.0) const {
    phys_.check(U);
    State V;
    V[0] = U[0];
    for (int i = 0; i < Dim; ++i) V[1 + i] = U[1 + i] / U[0];
    V[nvars - 1] = 0.5 * phys_.g() * U[0] * U[nvars - 1];
    return V;
  }

  State to_cons(const State& V, double /*b*/ = 0.0, FlowRegime = FlowRegime::Subsonic,
                double* = nullptr) const {
    if (!(V[0] > 0.0) || !std::isfinite(V[nvars - 1])) {
      std::ostringstream os;
      os << "isobaric transform: h=" << V[0];
      throw StateError(os.str());
    }
    State U;
    U[0] = V[0];
    for (int i = 0; i < Dim; ++i) U[1 + i] = V[0] * V[1 + i];
    U[nvars - 1] = 2.0 / phys_.g() * V[nvars - 1] / V[0];
    return U;
  }

  Matrix dcons_dequil(const State& V, const State& /*U*/, double /*b*/) const {
    Matrix J = Matrix::Zero();
    double h = V[0];
    J(0, 0) = 1.0;
    for (int i = 0; i < Dim; ++i) {
      J(1 + i, 0) = V[1 + i];
      J(1 + i, 1 + i) = h;
    }
    J(nvars - 1, 0) = -2.0 / phys_.g() * V[nvars - 1] / (h * h);
    J(nvars - 1, nvars - 1) = 2.0 / (phys_.g() * h);
    return J;
  }

  FlowRegime classify(const State&, FlowRegime previous) const { return previous; }
  Matrix eigenvectors(const State& U, int dir) const { return phys_.eigenvectors(U, dir); }
  std::array<double, nvars> eigenvalues(const State& U, int dir) const {
    return phys_.eigenvalues(U, dir);
  }

 private:
  Physics phys_;
};

}  // namespace wbdg
