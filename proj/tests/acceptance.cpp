// Acceptance runs. `acceptance --criterion N` runs one criterion, no argument
// runs all of them. Each prints "criterion N: PASS|FAIL <detail>".
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <wbdg/wbdg.hpp>

#include "oracles.hpp"

using namespace wbdg;
using namespace wbdg::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double max_diff(const Table& a, const Table& b, const std::string& col) {
  int ca = a.column(col), cb = b.column(col);
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows.size(); ++i) m = std::max(m, std::abs(a.rows[i][ca] - b.rows[i][cb]));
  return m;
}

double max_dev(const Table& t, const std::string& col, double value) {
  int c = t.column(col);
  double m = 0.0;
  for (const auto& r : t.rows) m = std::max(m, std::abs(r[c] - value));
  return m;
}

// Largest L1 or Linf entry of a run against its reference.
Outcome equilibrium_runs(const std::vector<std::string>& names, double tol, int nx_override = 0) {
  Outcome o;
  for (const auto& n : names) {
    auto s = lookup_case(n);
    if (nx_override > 0) {
      s.nx = nx_override;
      s.ny = 0;
    }
    auto r = run_case(s);
    double e = r.report.max_error();
    o.check(e <= tol, n + (nx_override ? "@" + std::to_string(nx_override) : "") + " " + sci(e));
  }
  return o;
}

Outcome orders_within(const ConvergenceTable& t, const std::vector<std::string>& vars, double lo,
                      double hi, const std::string& label) {
  Outcome o;
  double omin = 1e9, omax = -1e9;
  for (std::size_t r = 1; r < t.meshes.size(); ++r)
    for (const auto& v : vars) {
      double q = t.order_of(static_cast<int>(r), v);
      omin = std::min(omin, q);
      omax = std::max(omax, q);
    }
  o.check(omin >= lo && omax <= hi, label + " orders " + std::to_string(omin).substr(0, 4) + ".." +
                                        std::to_string(omax).substr(0, 4));
  return o;
}

Outcome criterion1() {
  return equilibrium_runs({"euler-iseq-1d", "euler-iseq-1d-quadratic", "euler-iseq-1d-sine"}, 1e-11);
}

Outcome criterion2() {
  return equilibrium_runs({"euler-adiabatic-hydro", "euler-adiabatic-subsonic", "euler-adiabatic-supersonic"},
                          1e-11);
}

Outcome criterion3() { return equilibrium_runs({"euler-stationary-shock"}, 1e-10); }

Outcome criterion4() {
  auto s = lookup_case("euler-accuracy-1d");
  auto t = run_convergence(s, {20, 40, 80, 160, 320});
  Outcome o = orders_within(t, {"rho", "rhou", "E"}, 2.7, 3.3, "1d");
  double l1 = t.l1.back()[0];
  o.check(l1 >= 6.13e-11 / 3 && l1 <= 6.13e-11 * 3, "L1(rho)@320 " + sci(l1));
  return o;
}

Outcome criterion5() {
  return equilibrium_runs({"ripa-moving-subcritical", "ripa-moving-supercritical", "ripa-moving-transcritical"},
                          1e-11);
}

Outcome criterion6() {
  Outcome o;
  auto s = lookup_case("ripa-isobaric-1d");
  auto r = run_case(s);
  auto t = r.run->snapshot();
  double dp = max_dev(t, "p", 4.0), du = max_dev(t, "u", 0.0);
  o.check(dp <= 1e-10 && du <= 1e-10, "isobaric |p-4| " + sci(dp) + " |u| " + sci(du));
  auto m = s;
  m.model = "ripa";
  m.flux = "lf";
  auto rm = run_case(m);
  double dm = max_dev(rm.run->snapshot(), "p", 4.0);
  o.check(dm > 1e-3, "moving-water |p-4| " + sci(dm));
  return o;
}

Outcome criterion7() { return equilibrium_runs({"euler-polytropic-2d", "euler-isentropic-2d"}, 1e-12); }

Outcome criterion8() {
  Outcome o = equilibrium_runs({"ripa-still-2d"}, 1e-11, 20);
  Outcome b = equilibrium_runs({"ripa-still-2d"}, 1e-11, 100);
  o.check(b.pass, b.detail);
  return o;
}

Outcome criterion9() {
  auto e = run_convergence(lookup_case("euler-accuracy-2d"), {10, 20, 40, 80});
  Outcome o = orders_within(e, {"rho", "rhou", "rhov", "E"}, 2.6, 3.3, "euler-2d");
  auto s = lookup_case("ripa-accuracy-2d");
  s.reference = "fine:200";  // capped study, see README
  auto r = run_convergence(s, {25, 50, 100});
  Outcome b = orders_within(r, {"h", "hu", "hv", "htheta"}, 2.6, 3.3, "ripa-2d");
  o.check(b.pass, b.detail);
  return o;
}

// Perturbation = snapshot of the run with amplitude A minus the same scheme
// with A = 0 at t = 0. The well-balanced run must stay within 10 A everywhere;
// the baseline without well-balancing must show background noise above A.
Outcome criterion10() {
  Outcome o;
  for (const char* n : {"euler-velocity-pulse", "euler-pressure-pulse-hydro", "euler-pressure-pulse-subsonic",
                        "euler-pressure-pulse-supersonic", "ripa-pulse-subcritical", "ripa-pulse-supercritical",
                        "ripa-pulse-transcritical"}) {
    auto s = lookup_case(n);
    const std::string var = s.model == "euler" ? "p" : "h";
    const double A = s.amplitude;
    auto z = s;
    z.amplitude = 0.0;
    z.t_final = 0.0;
    auto base = run_case(z).run->snapshot();
    double wb = max_diff(run_case(s).run->snapshot(), base, var);

    auto nz = z;
    nz.baseline_nwb = true;
    auto nbase = run_case(nz).run->snapshot();
    auto nt = nz;
    nt.t_final = s.t_final;
    double noise = max_diff(run_case(nt).run->snapshot(), nbase, var);
    o.check(wb <= 10 * A && noise > A, std::string(n) + " wb " + sci(wb) + " nwb " + sci(noise));
  }
  return o;
}

// Property checks (the unit suite covers them in more depth).
Outcome criterion11() {
  Outcome o;
  double worst = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    EulerModel<1> m(oracle::uniform(1.1, 2.0));
    double rho = std::exp(oracle::uniform(-2, 2)), p = std::exp(oracle::uniform(-2, 2));
    double c = std::sqrt(m.gamma() * p / rho), mach = std::exp(oracle::uniform(-4, 1.5));
    if (std::abs(mach - 1) < 1e-3) continue;
    auto U = m.from_primitive(rho, {mach * c}, p);
    double phi = oracle::uniform(-1, 1);
    auto r = m.classify(U, FlowRegime::Subsonic);
    auto back = m.to_cons(m.to_equil(U, phi), phi, r);
    worst = std::max(worst, (back - U).cwiseAbs().maxCoeff() / std::max(1.0, U.cwiseAbs().maxCoeff()));
  }
  o.check(worst <= 1e-12, "euler round trip " + sci(worst));

  worst = 0.0;
  double cubic = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    RipaModel<1> m(oracle::uniform(0.5, 10));
    double h = std::exp(oracle::uniform(-2, 2)), theta = oracle::uniform(0.2, 6);
    double fr = std::exp(oracle::uniform(-4, 1.5));
    if (std::abs(fr - 1) < 1e-3) continue;
    auto U = m.from_primitive(h, {fr * std::sqrt(m.g() * h * theta)}, theta);
    double b = oracle::uniform(-1, 1);
    auto V = m.to_equil(U, b);
    auto back = m.to_cons(V, b, m.classify(U, FlowRegime::Subsonic));
    worst = std::max(worst, (back - U).cwiseAbs().maxCoeff() / std::max(1.0, U.cwiseAbs().maxCoeff()));
    double m2 = U[1] * U[1];
    auto cr = m.cubic_roots(V[0], m2, theta, b);
    double a = m.g() * theta, Aa = V[0] - m.g() * b * theta;
    for (double r : {cr.h1, cr.h2, cr.h3})
      cubic = std::max(cubic, std::abs((a * r - Aa) * r * r + 0.5 * m2) / (Aa * Aa * Aa / (a * a)));
  }
  o.check(worst <= 1e-12, "ripa round trip " + sci(worst));
  o.check(cubic <= 1e-11, "cubic residual " + sci(cubic));

  bool delta_ok = true;
  for (int trial = 0; trial < 10000; ++trial) {
    double d = isobaric_delta(oracle::uniform(-5, 5), oracle::uniform(-5, 5));
    delta_ok = delta_ok && d >= 0.0 && d <= 1.0;
  }
  o.check(delta_ok, "delta in [0,1]");

  double cons = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    EulerModel<2> e(1.4);
    auto U = e.from_primitive(oracle::uniform(0.2, 3), {oracle::uniform(-2, 2), oracle::uniform(-2, 2)},
                              oracle::uniform(0.2, 3));
    RipaModel<2> r(9.812);
    auto W = r.from_primitive(oracle::uniform(0.2, 3), {oracle::uniform(-2, 2), oracle::uniform(-2, 2)},
                              oracle::uniform(0.2, 3));
    for (int d = 0; d < 2; ++d) {
      for (auto sch : {FluxScheme::LaxFriedrichsGlobal, FluxScheme::Roe, FluxScheme::IsobaricModifiedLF}) {
        auto F = e.flux(U, d);
        cons = std::max(cons, (numerical_flux(e, sch, U, U, Normal{d, 1.0}, 5.0) - F).norm() / (1 + F.norm()));
      }
      for (auto sch : {FluxScheme::LaxFriedrichsGlobal, FluxScheme::IsobaricModifiedLF}) {
        auto F = r.flux(W, d);
        cons = std::max(cons, (numerical_flux(r, sch, W, W, Normal{d, 1.0}, 9.0) - F).norm() / (1 + F.norm()));
      }
    }
  }
  o.check(cons <= 1e-13, "flux consistency " + sci(cons));

  // limiter and conservation on a small periodic Ripa problem
  {
    RipaModel<1> m(9.812);
    constexpr double pi = std::numbers::pi;
    auto disc = make_discretization(build_mesh_1d(0, 1, 20), 2);
    Potential<1> b{"cos", [](const Point<1>& x, const Point<1>&) { return 0.1 * std::cos(2 * pi * x[0]); },
                   [](const Point<1>& x, const Point<1>&) { return Point<1>{-0.2 * pi * std::sin(2 * pi * x[0])}; }};
    auto omega = std::make_shared<const OmegaField<1>>(disc, b, OmegaMode::Projected);
    BoundarySet<RipaModel<1>> bcs;
    for (auto& s : bcs) s.kind = BoundaryKind::Periodic;
    ResidualOperator<RipaModel<1>> op(m, disc, omega, bcs, FluxScheme::LaxFriedrichsGlobal);

    DGField<RipaModel<1>> V(disc);
    auto Vc = m.to_equil(m.from_primitive(1.0, {0.3}, 1.2), 0.0);
    for (int c = 0; c < disc->cells(); ++c)
      for (int i = 0; i < 3; ++i) V.block(c, i)[0] = Vc[i];
    const auto before = V.coeffs();
    TvbLimiter<RipaModel<1>> lim(m, omega, {}, {true});
    int troubled = lim.apply(V).troubled;
    o.check(troubled == 0 && V.coeffs() == before, "limiter identity on constants");

    auto U0 = [&](double x) {
      return m.from_primitive(1.0 + 0.2 * std::sin(2 * pi * x), {0.5}, 1.0 + 0.1 * std::cos(2 * pi * x));
    };
    for (int c = 0; c < disc->cells(); ++c)
      for (int i = 0; i < 3; ++i)
        disc->project(c, [&](const Point<1>& x) { return m.to_equil(U0(x[0]), omega->analytic(c, x))[i]; },
                      V.block(c, i));
    StepperOptions so;
    so.limiter.enabled = false;
    SspRk3<RipaModel<1>> rk(op, so);
    auto mass = [&] {
      std::vector<double> M, R;
      op.evaluate(V, 0.0, &M, R);
      double s = 0.0;
      for (int c = 0; c < disc->cells(); ++c) s += M[c * 3 * disc->modes()];
      return s;
    };
    double m0 = mass(), t = 0.0;
    for (int n = 0; n < 10; ++n) t += rk.step(V, t, 1.0);
    double rel = std::abs(mass() - m0) / m0;
    o.check(rel <= 1e-12, "periodic mass " + sci(rel));
  }

  double quad = 0.0;
  for (int n = 1; n <= 12; ++n) {
    auto q = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], p);
      quad = std::max(quad, std::abs(s - (p % 2 ? 0.0 : 2.0 / (p + 1))));
    }
  }
  o.check(quad <= 1e-14, "quadrature exactness " + sci(quad));
  return o;
}

const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                        criterion5, criterion6, criterion7, criterion8,
                                                        criterion9, criterion10, criterion11};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance runs"};
  int which = 0;
  app.add_option("--criterion", which, "criterion number (default: all)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (int k = 1; k <= 11; ++k) {
    if (which && k != which) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o.check(false, std::string("error: ") + e.what());
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s (%.1f s) %s\n", k, o.pass ? "PASS" : "FAIL", sec, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
