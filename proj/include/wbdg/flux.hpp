#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "error.hpp"
#include "euler.hpp"

namespace wbdg {

enum class FluxScheme { LaxFriedrichsGlobal, Roe, IsobaricModifiedLF };

inline FluxScheme parse_flux_scheme(const std::string& s) {
  if (s == "lf") return FluxScheme::LaxFriedrichsGlobal;
  if (s == "roe") return FluxScheme::Roe;
  if (s == "isobaric") return FluxScheme::IsobaricModifiedLF;
  throw ConfigError("unknown flux '" + s + "' (expected lf, roe or isobaric)");
}

inline std::string to_string(FluxScheme f) {
  switch (f) {
    case FluxScheme::LaxFriedrichsGlobal: return "lf";
    case FluxScheme::Roe: return "roe";
    case FluxScheme::IsobaricModifiedLF: return "isobaric";
  }
  return "?";
}

// Outward normal of a Cartesian face: sign * e_dir.
struct Normal {
  int dir;
  double sign;
};

template <class P>
typename P::State normal_flux(const P& phys, const typename P::State& U, Normal n) {
  return n.sign * phys.flux(U, n.dir);
}

template <class P>
typename P::State lf_flux(const P& phys, const typename P::State& Ui, const typename P::State& Ue,
                          Normal n, double alpha) {
  return 0.5 * (normal_flux(phys, Ui, n) + normal_flux(phys, Ue, n) - alpha * (Ue - Ui));
}

inline double isobaric_delta(double un_int, double un_ext) {
  double a = -std::min(un_int, 0.0) / std::max(std::abs(un_int), 1.0);
  double b = std::max(un_ext, 0.0) / std::max(std::abs(un_ext), 1.0);
  return std::max(a, b);
}

// Lax-Friedrichs flux with dissipation scaled by isobaric_delta of the normal
// velocities (component 1 + dir of the state is the normal discharge).
template <class P>
typename P::State isobaric_flux(const P& phys, const typename P::State& Ui,
                                const typename P::State& Ue, Normal n, double alpha) {
  double ui = n.sign * Ui[1 + n.dir] / Ui[0];
  double ue = n.sign * Ue[1 + n.dir] / Ue[0];
  double delta = isobaric_delta(ui, ue);
  return 0.5 * (normal_flux(phys, Ui, n) + normal_flux(phys, Ue, n) - alpha * delta * (Ue - Ui));
}

inline std::atomic<long>& roe_fallback_count() {
  static std::atomic<long> n{0};
  return n;
}

// Roe flux along +e_dir for left/right states (no entropy fix).
template <int Dim>
typename EulerModel<Dim>::State roe_flux_axis(const EulerModel<Dim>& m,
                                              const typename EulerModel<Dim>::State& UL,
                                              const typename EulerModel<Dim>::State& UR, int dir) {
  using State = typename EulerModel<Dim>::State;
  using Matrix = typename EulerModel<Dim>::Matrix;
  constexpr int nv = EulerModel<Dim>::nvars;
  const double g = m.gamma();
  double sl = std::sqrt(UL[0]), sr = std::sqrt(UR[0]);
  double pl = m.pressure(UL), pr = m.pressure(UR);
  double Hl = (UL[nv - 1] + pl) / UL[0], Hr = (UR[nv - 1] + pr) / UR[0];
  std::array<double, Dim> u;
  double q2 = 0.0;
  for (int i = 0; i < Dim; ++i) {
    u[i] = (UL[1 + i] / sl + UR[1 + i] / sr) / (sl + sr);
    q2 += u[i] * u[i];
  }
  double H = (sl * Hl + sr * Hr) / (sl + sr);
  double c2 = (g - 1.0) * (H - 0.5 * q2);
  State FL = m.flux(UL, dir), FR = m.flux(UR, dir);
  if (!(c2 > 0.0) || !std::isfinite(c2)) {
    ++roe_fallback_count();
    double a = std::max(m.max_wave_speed(UL, dir), m.max_wave_speed(UR, dir));
    return 0.5 * (FL + FR - a * (UR - UL));
  }
  double c = std::sqrt(c2);
  // eigenvectors at the Roe state, built like EulerModel::eigenvectors
  Matrix R = Matrix::Zero();
  for (int k : {0, 1, nv - 1}) {
    R(0, k) = 1.0;
    for (int i = 0; i < Dim; ++i) R(1 + i, k) = u[i];
  }
  R(1 + dir, 0) -= c;
  R(1 + dir, nv - 1) += c;
  R(nv - 1, 0) = H - u[dir] * c;
  R(nv - 1, 1) = 0.5 * q2;
  R(nv - 1, nv - 1) = H + u[dir] * c;
  if constexpr (Dim == 2) {
    R(1 + (1 - dir), 2) = 1.0;
    R(nv - 1, 2) = u[1 - dir];
  }
  State alpha = R.partialPivLu().solve(UR - UL);
  State diss = State::Zero();
  for (int k = 0; k < nv; ++k) {
    double lam = u[dir];
    if (k == 0) lam -= c;
    if (k == nv - 1) lam += c;
    diss += std::abs(lam) * alpha[k] * R.col(k);
  }
  return 0.5 * (FL + FR - diss);
}

template <int Dim>
typename EulerModel<Dim>::State roe_flux(const EulerModel<Dim>& m,
                                         const typename EulerModel<Dim>::State& Ui,
                                         const typename EulerModel<Dim>::State& Ue, Normal n) {
  if (n.sign > 0) return roe_flux_axis(m, Ui, Ue, n.dir);
  return -roe_flux_axis(m, Ue, Ui, n.dir);
}

template <class P>
constexpr bool has_roe_flux = false;
template <int Dim>
constexpr bool has_roe_flux<EulerModel<Dim>> = true;

// Numerical flux dotted with n for interior trace Ui and exterior trace Ue.
template <class P>
typename P::State numerical_flux(const P& phys, FluxScheme scheme, const typename P::State& Ui,
                                 const typename P::State& Ue, Normal n, double alpha) {
  switch (scheme) {
    case FluxScheme::LaxFriedrichsGlobal: return lf_flux(phys, Ui, Ue, n, alpha);
    case FluxScheme::IsobaricModifiedLF: return isobaric_flux(phys, Ui, Ue, n, alpha);
    case FluxScheme::Roe:
      if constexpr (has_roe_flux<P>) return roe_flux(phys, Ui, Ue, n);
      else throw ConfigError("Roe flux is only available for the Euler model");
  }
  throw ConfigError("unknown flux scheme");
}

// Well-balanced flux: F^(U*int, U*ext, n) - F(U*int).n + F(Uint).n
template <class P>
typename P::State interface_flux(const P& phys, FluxScheme scheme, const typename P::State& Ustar_int,
                                 const typename P::State& Ustar_ext, const typename P::State& U_int,
                                 Normal n, double alpha) {
  return numerical_flux(phys, scheme, Ustar_int, Ustar_ext, n, alpha) -
         normal_flux(phys, Ustar_int, n) + normal_flux(phys, U_int, n);
}

}  // namespace wbdg
