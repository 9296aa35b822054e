#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "../euler.hpp"
#include "../omega.hpp"
#include "../ripa.hpp"
#include "case_spec.hpp"
#include "potentials.hpp"

namespace wbdg::harness {

// Initial data, optional exact solution and boundary data of a named profile,
// all in conservative variables of the physics P.
template <class P>
struct Setup {
  static constexpr int dim = P::dim;
  using State = typename P::State;
  using X = Point<dim>;

  std::function<State(const X&)> initial;
  std::function<State(const X&, double)> exact;  // empty if unknown
  // branch tag at x for a point of the cell centered at `center`; empty means
  // classify the initial state
  std::function<FlowRegime(const X& x, const X& center)> regime;
  // per side ghost data (GhostFromFunction sides); empty means exact, then initial
  std::array<std::function<State(const X&, double)>, 2 * dim> ghost;
  // per side component overrides (CharacteristicInflowOutflow sides)
  std::array<std::vector<std::pair<int, double>>, 2 * dim> overrides;
};

inline const std::vector<std::string>& euler_profiles() {
  static const std::vector<std::string> n = {
      "isentropic", "isentropic-pulse", "polytropic", "polytropic-pulse", "adiabatic",
      "adiabatic-pulse", "velocity-pulse", "stationary-shock", "exp-decay", "sod", "travelling-wave"};
  return n;
}

inline const std::vector<std::string>& ripa_profiles() {
  static const std::vector<std::string> n = {
      "moving-subcritical", "moving-supercritical", "moving-transcritical", "dam-flat",
      "dam-bumps", "dam-step", "isobaric-jump", "smooth-periodic", "still-water", "ridge-pulse",
      "radial-dam", "isobaric-disk"};
  return n;
}

namespace detail {

[[noreturn]] inline void unknown_profile(const CaseSpec& s, int dim) {
  throw ConfigError("profile '" + s.profile + "' is not defined for model " + s.model + " in " +
                    std::to_string(dim) + "D");
}

}  // namespace detail

// ---------------------------------------------------------------- Euler

template <int D>
Setup<EulerModel<D>> euler_setup(const CaseSpec& s, const EulerModel<D>& m, const Potential<D>& phi) {
  using Su = Setup<EulerModel<D>>;
  using State = typename Su::State;
  using X = Point<D>;
  constexpr double pi = std::numbers::pi;
  const double g = m.gamma();
  const std::array<double, D> zero{};
  Su su;

  auto isentropic = [m, phi, g, zero](const X& x, double dp) {
    double b = 1.0 - (g - 1.0) / g * phi(x);
    return m.from_primitive(std::pow(b, 1.0 / (g - 1.0)), zero, std::pow(b, g / (g - 1.0)) + dp);
  };

  // equilibrium through the anchor (rho0, u0, p0) at x0, on the given branch
  struct Anchor {
    double K, mom, eps;
    FlowRegime regime;
  };
  auto anchor = [g, phi](double rho0, double u0, double p0, const X& x0) {
    double c2 = g * p0 / rho0;
    Anchor a;
    a.K = p0 / std::pow(rho0, g);
    a.mom = rho0 * u0;
    a.eps = 0.5 * u0 * u0 + g / (g - 1.0) * p0 / rho0 + phi(x0);
    a.regime = u0 * u0 > c2 ? FlowRegime::Supersonic : FlowRegime::Subsonic;
    return a;
  };
  auto on_anchor = [m, g, phi](const Anchor& a, const X& x, double dp) {
    double rho = m.solve_density(a.K, a.mom * a.mom, a.eps - phi(x), a.regime);
    double p = a.K * std::pow(rho, g) + dp;
    std::array<double, D> u{};
    u[0] = a.mom / rho;
    return m.from_primitive(rho, u, p);
  };

  const std::string& p = s.profile;
  if (p == "isentropic") {
    su.initial = [=](const X& x) { return isentropic(x, 0.0); };
  } else if (p == "isentropic-pulse") {
    double A = s.amplitude, c = s.center;
    su.initial = [=](const X& x) {
      double r2 = 0.0;
      for (int d = 0; d < D; ++d) r2 += (x[d] - c) * (x[d] - c);
      return isentropic(x, A * std::exp(-100.0 * 1.21 * r2));
    };
    su.ghost.fill([=](const X& x, double) { return isentropic(x, 0.0); });
  } else if (p == "polytropic" || p == "polytropic-pulse") {
    if constexpr (D == 2) {
      double A = p == "polytropic-pulse" ? s.amplitude : 0.0;
      double a = std::sqrt(2.0 * pi);
      auto state = [=](const X& x, double amp) {
        double r = std::hypot(x[0], x[1]);
        double rho = detail::sinc(a * r);
        return m.from_primitive(rho, zero, rho * rho + amp * std::exp(-100.0 * r * r));
      };
      su.initial = [=](const X& x) { return state(x, A); };
      su.ghost.fill([=](const X& x, double) { return state(x, 0.0); });
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "adiabatic" || p == "adiabatic-pulse" || p == "velocity-pulse") {
    if constexpr (D == 1) {
      double M = p == "velocity-pulse" ? 0.0 : s.mach;
      Anchor a = anchor(1.0, -M * std::sqrt(g), 1.0, X{s.xmin});
      double A = p == "adiabatic-pulse" ? s.amplitude : 0.0, xb = s.center;
      su.initial = [=](const X& x) {
        return on_anchor(a, x, A * std::exp(-100.0 * (x[0] - xb) * (x[0] - xb)));
      };
      su.regime = [a](const X&, const X&) { return a.regime; };
      auto steady = [=](const X& x, double) { return on_anchor(a, x, 0.0); };
      su.ghost.fill(steady);
      if (p == "velocity-pulse") {
        double Av = s.amplitude;
        su.ghost[0] = [=](const X& x, double t) {
          State U = on_anchor(a, x, 0.0);
          return m.from_primitive(U[0], {Av * std::sin(4.0 * pi * t)}, m.pressure(U));
        };
      }
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "stationary-shock") {
    if constexpr (D == 1) {
      // pre-shock state above the shock, Rankine-Hugoniot state below
      double M = s.mach, xs = s.center;
      double rho1 = 1.0, u1 = -M * std::sqrt(g), p1 = 1.0;
      double rho2 = rho1 * (g + 1.0) * M * M / ((g - 1.0) * M * M + 2.0);
      double p2 = p1 * (2.0 * g * M * M / (g + 1.0) - (g - 1.0) / (g + 1.0));
      double u2 = rho1 / rho2 * u1;
      Anchor up = anchor(rho1, u1, p1, X{xs}), low = anchor(rho2, u2, p2, X{xs});
      su.initial = [=](const X& x) { return on_anchor(x[0] > xs ? up : low, x, 0.0); };
      su.regime = [=](const X&, const X& c) { return c[0] > xs ? up.regime : low.regime; };
      su.ghost[0] = [=](const X& x, double) { return on_anchor(low, x, 0.0); };
      su.ghost[1] = [=](const X& x, double) { return on_anchor(up, x, 0.0); };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "exp-decay") {
    if constexpr (D == 1) {
      su.initial = [=](const X& x) {
        return m.from_primitive(std::exp(-x[0]), zero, (1.0 + x[0]) * std::exp(-x[0]));
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "sod") {
    if constexpr (D == 1) {
      double xs = s.center;
      su.initial = [=](const X& x) {
        return x[0] < xs ? m.from_primitive(1.0, zero, 1.0) : m.from_primitive(0.125, zero, 0.1);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "travelling-wave") {
    if constexpr (D == 2) {
      su.exact = [=](const X& x, double t) {
        double arg = pi * (x[0] + x[1] - 2.0 * t);
        double rho = 1.0 + 0.2 * std::sin(arg);
        double pr = 5.5 + 2.0 * t - x[0] - x[1] + 0.2 * std::cos(arg) / pi;
        return m.from_primitive(rho, {1.0, 1.0}, pr);
      };
      su.initial = [f = su.exact](const X& x) { return f(x, 0.0); };
    } else {
      detail::unknown_profile(s, D);
    }
  } else {
    detail::unknown_profile(s, D);
  }
  return su;
}

// ---------------------------------------------------------------- Ripa

template <int D>
Setup<RipaModel<D>> ripa_setup(const CaseSpec& s, const RipaModel<D>& m, const Potential<D>& bot) {
  using Su = Setup<RipaModel<D>>;
  using State = typename Su::State;
  using X = Point<D>;
  constexpr double pi = std::numbers::pi;
  const std::array<double, D> zero{};
  Su su;
  const std::string& p = s.profile;

  if (p == "moving-subcritical" || p == "moving-supercritical" || p == "moving-transcritical") {
    if constexpr (D == 1) {
      // constant (E, hu, theta); the pulse variants add A to h on [5.75, 6.25]
      double E, q;
      const double theta = 5.0;
      if (p == "moving-subcritical") E = 22.06605 * 5.0, q = 4.42 * std::sqrt(5.0);
      else if (p == "moving-supercritical") E = 91.624 * 5.0, q = 24.0 * std::sqrt(5.0);
      else E = 11.0907140397782 * 5.0, q = 1.53 * std::sqrt(5.0);
      FlowRegime fixed = p == "moving-supercritical" ? FlowRegime::Supersonic : FlowRegime::Subsonic;
      bool trans = p == "moving-transcritical";
      auto regime_at = [=](const X& c) {
        return trans ? (c[0] < 10.0 ? FlowRegime::Subsonic : FlowRegime::Supersonic) : fixed;
      };
      double A = s.amplitude;
      auto steady = [=](const X& x, const X& c) {
        State V;
        V << E, q, theta;
        return m.to_cons(V, bot.value(x, c), regime_at(c));
      };
      su.initial = [=](const X& x) {
        State U = steady(x, x);
        if (A != 0.0 && x[0] >= 5.75 && x[0] <= 6.25) {
          double h = U[0] + A;
          U[2] = h * theta;
          U[0] = h;
        }
        return U;
      };
      su.regime = [=](const X&, const X& c) { return regime_at(c); };
      su.ghost.fill([=](const X& x, double) { return steady(x, x); });
      if (p == "moving-subcritical") {
        su.overrides[0] = {{1, q}};
        su.overrides[1] = {{0, 2.0}};
      } else if (p == "moving-supercritical") {
        su.overrides[0] = {{0, 2.0}, {1, q}};
      } else {
        su.overrides[0] = {{1, q}};
      }
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "dam-flat") {
    if constexpr (D == 1) {
      su.initial = [=](const X& x) {
        return std::abs(x[0]) <= 0.5 ? m.from_primitive(2.0, {0.75}, 1.0) : m.from_primitive(1.0, {0.5}, 1.5);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "dam-bumps") {
    if constexpr (D == 1) {
      su.initial = [=](const X& x) {
        double b = bot(x);
        return x[0] <= 0.0 ? m.from_primitive(5.0 - b, zero, 3.0) : m.from_primitive(2.0 - b, zero, 5.0);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "dam-step") {
    if constexpr (D == 1) {
      su.initial = [=](const X& x) {
        double b = bot(x);
        return x[0] <= 300.0 ? m.from_primitive(20.0 - b, {1.0}, 10.0)
                             : m.from_primitive(15.0 - b, {5.0}, 5.0);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "isobaric-jump") {
    if constexpr (D == 1) {
      su.initial = [=](const X& x) {
        return x[0] < 0.0 ? m.from_primitive(2.0 * std::sqrt(2.0), zero, 1.0) : m.from_primitive(1.0, zero, 8.0);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "smooth-periodic") {
    if constexpr (D == 2) {
      su.initial = [=](const X& x) {
        double sx = std::sin(2.0 * pi * x[0]), cx = std::cos(2.0 * pi * x[0]);
        double sy = std::sin(2.0 * pi * x[1]), cy = std::cos(2.0 * pi * x[1]);
        double h = 10.0 + std::exp(sx) * cy;
        double hu = std::sin(cx) * sy, hv = cx * std::cos(sy);
        double theta = 2.0 + sx * cy;
        State U;
        U << h, hu, hv, h * theta;
        return U;
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "still-water") {
    su.initial = [=](const X& x) { return m.from_primitive(3.0 - bot(x), zero, 4.0 / 3.0); };
  } else if (p == "ridge-pulse") {
    if constexpr (D == 2) {
      double A = s.amplitude;
      auto state = [=](const X& x, double amp) {
        double b = bot(x);
        if (x[0] >= 0.05 && x[0] <= 0.15) return m.from_primitive(6.0 - b + amp, zero, 24.0 / (6.0 + amp));
        return m.from_primitive(6.0 - b, zero, 4.0);
      };
      su.initial = [=](const X& x) { return state(x, A); };
      su.ghost.fill([=](const X& x, double) { return state(x, 0.0); });
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "radial-dam") {
    if constexpr (D == 2) {
      su.initial = [=](const X& x) {
        return x[0] * x[0] + x[1] * x[1] <= 0.25 ? m.from_primitive(2.0, zero, 1.0)
                                                 : m.from_primitive(1.0, zero, 1.5);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else if (p == "isobaric-disk") {
    if constexpr (D == 2) {
      double A = s.amplitude;
      su.initial = [=](const X& x) {
        double r2 = x[0] * x[0] + x[1] * x[1], b = bot(x);
        if (r2 > 0.25) return m.from_primitive(2.0 - b, zero, 3.0);
        double bump = (r2 >= 0.01 && r2 <= 0.09) ? A : 0.0;
        return m.from_primitive(3.0 - b + bump, zero, 4.0 / 3.0);
      };
    } else {
      detail::unknown_profile(s, D);
    }
  } else {
    detail::unknown_profile(s, D);
  }
  return su;
}

inline bool profile_exists(const CaseSpec& s) {
  const auto& names = s.model == "euler" ? euler_profiles() : ripa_profiles();
  for (const auto& n : names)
    if (n == s.profile) return true;
  return false;
}

}  // namespace wbdg::harness
