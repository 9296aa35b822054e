#pragma once

#include <string>
#include <vector>

#include "case_spec.hpp"

namespace wbdg::harness {

struct CatalogEntry {
  CaseSpec spec;
  std::string description;
};

namespace detail {

inline CaseSpec euler1d(const std::string& name, double xmin, double xmax, int nx, double gamma,
                        const std::string& omega, const std::string& profile, double t_final) {
  CaseSpec s;
  s.name = name;
  s.model = "euler";
  s.dim = 1;
  s.xmin = xmin;
  s.xmax = xmax;
  s.nx = nx;
  s.gamma = gamma;
  s.omega = omega;
  s.profile = profile;
  s.t_final = t_final;
  return s;
}

inline CaseSpec ripa1d(const std::string& name, double xmin, double xmax, int nx, double g,
                       const std::string& bottom, const std::string& profile, double t_final) {
  CaseSpec s = euler1d(name, xmin, xmax, nx, 1.4, bottom, profile, t_final);
  s.model = "ripa";
  s.g = g;
  return s;
}

inline CaseSpec square(CaseSpec s, double lo, double hi, double ylo, double yhi, int nx, int ny) {
  s.dim = 2;
  s.xmin = lo;
  s.xmax = hi;
  s.ymin = ylo;
  s.ymax = yhi;
  s.nx = nx;
  s.ny = ny;
  return s;
}

inline void sides(CaseSpec& s, const std::string& all) { s.bc = {all, all, all, all}; }

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  using namespace detail;
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> c;
    auto add = [&](CaseSpec s, const std::string& d) { c.push_back({std::move(s), d}); };

    // ---- Euler, one dimension
    {
      CaseSpec s = euler1d("euler-accuracy-1d", 0.0, 1.0, 20, 1.4, "x2", "exp-decay", 0.1);
      sides(s, "exact");
      s.limiter = false;
      s.reference = "initial";
      add(s, "smooth non-isentropic hydrostatic state, phi = x^2/2; convergence study");
    }
    const char* iseq[][2] = {{"euler-iseq-1d", "x"}, {"euler-iseq-1d-quadratic", "x2"},
                             {"euler-iseq-1d-sine", "sin2pi"}};
    for (auto& [n, w] : iseq) {
      CaseSpec s = euler1d(n, 0.0, 1.0, 100, 1.4, w, "isentropic", 2.0);
      sides(s, "wall");
      s.reference = "initial";
      s.threshold = 1e-11;
      add(s, std::string("isentropic hydrostatic atmosphere, phi = ") + w);
    }
    const struct {
      const char* name;
      double mach, t;
    } adi[] = {{"euler-adiabatic-hydro", 0.0, 4.0},
               {"euler-adiabatic-subsonic", 0.01, 4.0},
               {"euler-adiabatic-supersonic", 2.5, 1.0}};
    for (auto& a : adi) {
      CaseSpec s = euler1d(a.name, 0.0, 2.0, 100, 5.0 / 3.0, "x", "adiabatic", a.t);
      sides(s, "exact");
      s.mach = a.mach;
      s.reference = "initial";
      s.threshold = 1e-11;
      add(s, "steady adiabatic flow through (1, -M c, 1) at x = 0, M = " + fmt(a.mach));
    }
    {
      CaseSpec s = euler1d("euler-velocity-pulse", 0.0, 2.0, 100, 5.0 / 3.0, "x", "velocity-pulse", 1.5);
      sides(s, "exact");
      s.amplitude = 1e-6;
      add(s, "hydrostatic atmosphere driven by u(0,t) = A sin(4 pi t)");
    }
    const struct {
      const char* name;
      double mach, center, t;
    } pp[] = {{"euler-pressure-pulse-hydro", 0.0, 1.0, 0.45},
              {"euler-pressure-pulse-subsonic", 0.01, 1.1, 0.45},
              {"euler-pressure-pulse-supersonic", 2.5, 1.5, 0.25}};
    for (auto& a : pp) {
      CaseSpec s = euler1d(a.name, 0.0, 2.0, 50, 5.0 / 3.0, "x", "adiabatic-pulse", a.t);
      sides(s, "exact");
      s.mach = a.mach;
      s.center = a.center;
      s.amplitude = 1e-6;
      add(s, "Gaussian pressure pulse on the adiabatic flow, M = " + fmt(a.mach));
    }
    {
      CaseSpec s = euler1d("euler-stationary-shock", 0.0, 2.0, 100, 5.0 / 3.0, "x2", "stationary-shock", 1.0);
      sides(s, "exact");
      s.mach = 2.5;
      s.center = 1.0;
      s.flux = "roe";
      s.reference = "initial";
      s.threshold = 1e-10;
      add(s, "subsonic and supersonic equilibria joined by a stationary shock at x = 1");
    }
    {
      CaseSpec s = euler1d("euler-shock-tube", 0.0, 1.0, 200, 1.4, "x", "sod", 0.2);
      sides(s, "wall");
      s.center = 0.5;
      add(s, "Sod shock tube under gravity phi = x");
    }

    // ---- Euler, two dimensions
    {
      CaseSpec s = square(euler1d("euler-accuracy-2d", 0, 0, 0, 1.4, "x+y", "travelling-wave", 0.1),
                          0.0, 2.0, 0.0, 2.0, 10, 0);
      sides(s, "exact");
      s.limiter = false;
      s.reference = "exact";
      add(s, "travelling density wave with linear potential; convergence study");
    }
    {
      CaseSpec s = square(euler1d("euler-polytropic-2d", 0, 0, 0, 2.0, "polytropic", "polytropic", 0.5),
                          -0.5, 0.5, -0.5, 0.5, 50, 0);
      sides(s, "exact");
      s.reference = "initial";
      s.threshold = 1e-12;
      add(s, "polytropic hydrostatic equilibrium, gamma = 2");
    }
    {
      CaseSpec s = square(euler1d("euler-polytropic-pulse-2d", 0, 0, 0, 2.0, "polytropic", "polytropic-pulse", 0.2),
                          -0.5, 0.5, -0.5, 0.5, 100, 0);
      sides(s, "transmissive");
      s.amplitude = 1e-6;
      add(s, "Gaussian pressure pulse on the polytropic equilibrium");
    }
    {
      CaseSpec s = square(euler1d("euler-isentropic-2d", 0, 0, 0, 1.4, "x+y", "isentropic", 0.5),
                          0.0, 1.0, 0.0, 1.0, 50, 0);
      sides(s, "exact");
      s.reference = "initial";
      s.threshold = 1e-12;
      add(s, "isentropic hydrostatic equilibrium, phi = x + y");
    }
    {
      CaseSpec s = square(euler1d("euler-isentropic-pulse-2d", 0, 0, 0, 1.4, "x+y", "isentropic-pulse", 0.15),
                          0.0, 1.0, 0.0, 1.0, 100, 0);
      sides(s, "transmissive");
      s.amplitude = 1e-6;
      s.center = 0.3;
      add(s, "Gaussian pressure pulse on the isentropic equilibrium");
    }

    // ---- Ripa, one dimension
    const struct {
      const char* name;
      const char* profile;
      const char* right;
      double pulse_t;
    } mov[] = {{"subcritical", "moving-subcritical", "characteristic", 0.75},
               {"supercritical", "moving-supercritical", "transmissive", 0.45},
               {"transcritical", "moving-transcritical", "transmissive", 0.75}};
    for (auto& m : mov) {
      CaseSpec s = ripa1d(std::string("ripa-moving-") + m.name, 0.0, 25.0, 200, 9.812, "bump", m.profile, 1.0);
      s.bc = {"characteristic", m.right, "transmissive", "transmissive"};
      s.reference = "initial";
      s.threshold = 1e-11;
      add(s, std::string(m.name) + " moving-water equilibrium over a bump");
      CaseSpec p = s;
      p.name = std::string("ripa-pulse-") + m.name;
      p.amplitude = 1e-4;
      p.t_final = m.pulse_t;
      p.bc = {"transmissive", "transmissive", "transmissive", "transmissive"};
      p.reference = "none";
      p.threshold = 0.0;
      add(p, std::string("small depth pulse on the ") + m.name + " flow");
    }
    add(ripa1d("ripa-dam-flat", -1.0, 1.0, 200, 9.812, "zero", "dam-flat", 0.075),
        "Riemann problems with nonzero velocity over a flat bottom");
    add(ripa1d("ripa-dam-bumps", -1.0, 1.0, 200, 9.812, "cos-bumps", "dam-bumps", 0.045),
        "dam break over two cosine bumps");
    add(ripa1d("ripa-dam-step", 0.0, 600.0, 200, 9.812, "step", "dam-step", 3.0),
        "dam break over a rectangular step");
    {
      CaseSpec s = ripa1d("ripa-isobaric-1d", -1000.0, 1000.0, 2000, 1.0, "zero", "isobaric-jump", 10.0);
      s.model = "ripa-isobaric";
      s.flux = "isobaric";
      add(s, "isobaric temperature/depth jump, p = 4 everywhere");
    }

    // ---- Ripa, two dimensions
    {
      CaseSpec s = square(ripa1d("ripa-accuracy-2d", 0, 0, 0, 9.812, "sincos", "smooth-periodic", 0.01),
                          0.0, 1.0, 0.0, 1.0, 25, 0);
      sides(s, "periodic");
      s.limiter = false;
      s.reference = "fine:400";
      add(s, "smooth periodic flow over a smooth bottom; convergence study");
    }
    {
      CaseSpec s = square(ripa1d("ripa-still-2d", 0, 0, 0, 9.812, "twin-gauss", "still-water", 0.1),
                          -1.0, 1.0, -1.0, 1.0, 20, 0);
      sides(s, "transmissive");
      s.reference = "initial";
      s.threshold = 1e-11;
      add(s, "still water over two Gaussian humps");
    }
    {
      CaseSpec s = square(ripa1d("ripa-pulse-2d", 0, 0, 0, 9.812, "ridge", "ridge-pulse", 0.05),
                          -2.0, 2.0, 0.0, 1.0, 200, 100);
      sides(s, "reflective");
      s.amplitude = 1e-3;
      add(s, "small isobaric pulse travelling over an elliptic hump");
    }
    {
      CaseSpec s = square(ripa1d("ripa-radial-dam-2d", 0, 0, 0, 9.812, "zero", "radial-dam", 0.05),
                          -1.0, 1.0, -1.0, 1.0, 100, 0);
      sides(s, "transmissive");
      add(s, "radial dam break over a flat bottom");
    }
    {
      CaseSpec s = square(ripa1d("ripa-steady-2d", 0, 0, 0, 1.0, "twin-gauss", "isobaric-disk", 0.12),
                          -1.0, 1.0, -1.0, 1.0, 100, 0);
      sides(s, "transmissive");
      s.model = "ripa-isobaric";
      s.flux = "isobaric";
      add(s, "two still-water states joined by a temperature jump");
      CaseSpec p = s;
      p.name = "ripa-steady-pulse-2d";
      p.amplitude = 0.1;
      p.t_final = 0.15;
      add(p, "depth ring perturbation of the two-state steady solution");
    }
    return c;
  }();
  return entries;
}

inline const CatalogEntry* find_case(const std::string& name) {
  for (const auto& e : catalog())
    if (e.spec.name == name) return &e;
  return nullptr;
}

inline CaseSpec lookup_case(const std::string& name) {
  if (auto e = find_case(name)) return e->spec;
  throw ConfigError("unknown case '" + name + "'");
}

}  // namespace wbdg::harness
