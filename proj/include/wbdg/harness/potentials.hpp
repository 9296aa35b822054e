#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../omega.hpp"

namespace wbdg::harness {

// Named gravitational potentials (Euler) and bottom topographies (Ripa).
inline const std::vector<std::string>& potential_names(int dim) {
  static const std::vector<std::string> one = {"zero", "x", "x2", "sin2pi", "bump", "cos-bumps", "step"};
  static const std::vector<std::string> two = {"zero", "x+y", "polytropic", "twin-gauss", "sincos",
                                               "ridge"};
  return dim == 1 ? one : two;
}

namespace detail {

// sin(a r)/(a r) and (cos(a r) - sin(a r)/(a r)) / r^2, with series near r = 0
inline double sinc(double ar) {
  if (std::abs(ar) < 1e-4) return 1.0 - ar * ar / 6.0 + ar * ar * ar * ar / 120.0;
  return std::sin(ar) / ar;
}
inline double sinc_slope(double a, double r) {
  double ar = a * r;
  if (ar < 1e-3) return a * a * (-1.0 / 3.0 + ar * ar / 30.0);
  return (std::cos(ar) - std::sin(ar) / ar) / (r * r);
}

}  // namespace detail

template <int Dim>
Potential<Dim> make_potential(const std::string& name) {
  using P = Point<Dim>;
  constexpr double pi = std::numbers::pi;
  if (name == "zero") return zero_potential<Dim>();
  if constexpr (Dim == 1) {
    if (name == "x")
      return {name, [](const P& x, const P&) { return x[0]; }, [](const P&, const P&) { return P{1.0}; }};
    if (name == "x2")
      return {name, [](const P& x, const P&) { return 0.5 * x[0] * x[0]; },
              [](const P& x, const P&) { return P{x[0]}; }};
    if (name == "sin2pi")
      return {name, [](const P& x, const P&) { return std::sin(2.0 * pi * x[0]); },
              [](const P& x, const P&) { return P{2.0 * pi * std::cos(2.0 * pi * x[0])}; }};
    if (name == "bump")
      return {name,
              [](const P& x, const P&) {
                double s = x[0] - 10.0;
                return x[0] >= 8.0 && x[0] <= 12.0 ? 0.2 - 0.05 * s * s : 0.0;
              },
              [](const P& x, const P&) {
                return P{x[0] >= 8.0 && x[0] <= 12.0 ? -0.1 * (x[0] - 10.0) : 0.0};
              }};
    if (name == "cos-bumps")
      return {name,
              [](const P& x, const P&) {
                double s = x[0];
                if (s >= -0.4 && s <= -0.2) return 0.5 * (std::cos(10.0 * pi * (s + 0.3)) + 1.0);
                if (s >= 0.2 && s <= 0.4) return 0.75 * (std::cos(10.0 * pi * (s - 0.3)) + 1.0);
                return 0.0;
              },
              [](const P& x, const P&) {
                double s = x[0];
                if (s >= -0.4 && s <= -0.2) return P{-5.0 * pi * std::sin(10.0 * pi * (s + 0.3))};
                if (s >= 0.2 && s <= 0.4) return P{-7.5 * pi * std::sin(10.0 * pi * (s - 0.3))};
                return P{0.0};
              }};
    if (name == "step")
      // the jump sits on cell interfaces; the selector picks the side
      return {name,
              [](const P& x, const P& sel) {
                double s = (x[0] == 225.0 || x[0] == 375.0) ? sel[0] : x[0];
                return s >= 225.0 && s <= 375.0 ? 8.0 : 0.0;
              },
              [](const P&, const P&) { return P{0.0}; }};
  } else {
    if (name == "x+y")
      return {name, [](const P& x, const P&) { return x[0] + x[1]; },
              [](const P&, const P&) { return P{1.0, 1.0}; }};
    if (name == "polytropic") {
      const double a = std::sqrt(2.0 * pi);
      return {name,
              [a](const P& x, const P&) { return -2.0 * detail::sinc(a * std::hypot(x[0], x[1])); },
              [a](const P& x, const P&) {
                double s = -2.0 * detail::sinc_slope(a, std::hypot(x[0], x[1]));
                return P{s * x[0], s * x[1]};
              }};
    }
    if (name == "twin-gauss") {
      auto side = [](const P& x, const P& sel, double& amp, double& c) {
        bool left = x[0] == 0.0 ? sel[0] < 0.0 : x[0] < 0.0;
        amp = left ? 0.5 : 0.6;
        c = left ? -0.5 : 0.5;
      };
      return {name,
              [side](const P& x, const P& sel) {
                double amp, c;
                side(x, sel, amp, c);
                return amp * std::exp(-100.0 * ((x[0] - c) * (x[0] - c) + (x[1] - c) * (x[1] - c)));
              },
              [side](const P& x, const P& sel) {
                double amp, c;
                side(x, sel, amp, c);
                double e = amp * std::exp(-100.0 * ((x[0] - c) * (x[0] - c) + (x[1] - c) * (x[1] - c)));
                return P{-200.0 * (x[0] - c) * e, -200.0 * (x[1] - c) * e};
              }};
    }
    if (name == "sincos")
      return {name,
              [](const P& x, const P&) { return std::sin(2.0 * pi * x[0]) + std::cos(2.0 * pi * x[1]); },
              [](const P& x, const P&) {
                return P{2.0 * pi * std::cos(2.0 * pi * x[0]), -2.0 * pi * std::sin(2.0 * pi * x[1])};
              }};
    if (name == "ridge")
      return {name,
              [](const P& x, const P&) {
                return 3.0 * std::exp(-5.0 * (x[0] - 0.9) * (x[0] - 0.9) - 50.0 * (x[1] - 0.5) * (x[1] - 0.5));
              },
              [](const P& x, const P&) {
                double e = 3.0 * std::exp(-5.0 * (x[0] - 0.9) * (x[0] - 0.9) - 50.0 * (x[1] - 0.5) * (x[1] - 0.5));
                return P{-10.0 * (x[0] - 0.9) * e, -100.0 * (x[1] - 0.5) * e};
              }};
  }
  throw ConfigError("unknown potential '" + name + "' for dimension " + std::to_string(Dim));
}

}  // namespace wbdg::harness
