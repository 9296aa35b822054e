#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <wbdg/euler.hpp>
#include <wbdg/ripa.hpp>

#include "fixtures.hpp"

using namespace wbdg;
using fixture::Problem;

namespace {

constexpr double pi = std::numbers::pi;

template <class Model>
double mass(const Problem<Model>& P, const std::vector<double>& M) {
  const int nm = P.disc->modes();
  double s = 0.0;
  for (int c = 0; c < P.disc->cells(); ++c) s += M[(c * Model::nvars) * nm];
  return s;
}

Potential<1> cos_bottom() {
  return {"cos", [](const Point<1>& x, const Point<1>&) { return 0.1 * std::cos(2 * pi * x[0]); },
          [](const Point<1>& x, const Point<1>&) { return Point<1>{-0.2 * pi * std::sin(2 * pi * x[0])}; }};
}

}  // namespace

TEST(StageSolver, RecoversFieldFromItsMoments) {
  EulerModel<1> m(1.4);
  Problem<EulerModel<1>> P(m, build_mesh_1d(0, 1, 12), zero_potential<1>(), OmegaMode::Analytic,
                           BoundaryKind::Periodic);
  P.set([&](const Point<1>& x) {
    return m.from_primitive(1.0 + 0.4 * std::sin(2 * pi * x[0]), {0.5}, 1.0 + 0.2 * std::cos(2 * pi * x[0]));
  });
  std::vector<double> M, R;
  P.op->evaluate(*P.V, 0.0, &M, R);
  DGField<EulerModel<1>> W = *P.V;
  for (auto& a : W.coeffs()) a *= 1.02;  // perturbed initial guess
  StageSolver<EulerModel<1>> solver(m, P.omega);
  auto st = solver.solve(M, W);
  EXPECT_EQ(st.solves, 12);
  EXPECT_GT(st.iterations, 0);
  for (std::size_t k = 0; k < W.coeffs().size(); ++k)
    EXPECT_NEAR(W.coeffs()[k], P.V->coeffs()[k], 1e-11 * (1 + std::abs(P.V->coeffs()[k])));
}

TEST(StageSolver, RipaRecoversFieldOverBottom) {
  RipaModel<1> m(9.812);
  Problem<RipaModel<1>> P(m, build_mesh_1d(0, 1, 10), cos_bottom(), OmegaMode::Projected, BoundaryKind::Periodic);
  P.set([&](const Point<1>& x) { return m.from_primitive(1.0 + 0.1 * std::sin(2 * pi * x[0]), {0.3}, 1.5); });
  std::vector<double> M, R;
  P.op->evaluate(*P.V, 0.0, &M, R);
  DGField<RipaModel<1>> W = *P.V;
  for (int c = 0; c < W.cells(); ++c)
    for (int l = 1; l < W.modes(); ++l) W.block(c, 0)[l] = 0.0;
  StageSolver<RipaModel<1>> solver(m, P.omega);
  solver.solve(M, W);
  for (std::size_t k = 0; k < W.coeffs().size(); ++k)
    EXPECT_NEAR(W.coeffs()[k], P.V->coeffs()[k], 1e-11 * (1 + std::abs(P.V->coeffs()[k])));
}

TEST(SspRk3, ConstantStateIsPreserved) {
  EulerModel<2> m(1.4);
  Problem<EulerModel<2>> P(m, build_mesh_2d(0, 1, 5, 0, 1, 4), zero_potential<2>(), OmegaMode::Analytic,
                           BoundaryKind::Periodic);
  P.set([&](const Point<2>&) { return m.from_primitive(0.8, {0.3, 0.1}, 1.2); });
  const auto before = P.V->coeffs();
  SspRk3<EulerModel<2>> rk(*P.op);
  double t = 0.0;
  for (int n = 0; n < 3; ++n) t += rk.step(*P.V, t, 1.0);
  for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(P.V->coeffs()[k], before[k], 1e-13);
  EXPECT_EQ(rk.stats().steps, 3);
  EXPECT_EQ(rk.stats().dt_halvings, 0);
}

TEST(SspRk3, PeriodicMassIsConserved) {
  RipaModel<1> m(9.812);
  Problem<RipaModel<1>> P(m, build_mesh_1d(0, 1, 20), cos_bottom(), OmegaMode::Projected, BoundaryKind::Periodic);
  P.set([&](const Point<1>& x) {
    return m.from_primitive(1.0 + 0.2 * std::sin(2 * pi * x[0]), {0.5}, 1.0 + 0.1 * std::cos(2 * pi * x[0]));
  });
  StepperOptions opt;
  opt.limiter.enabled = false;  // the limiter keeps averages of V, not of U
  SspRk3<RipaModel<1>> rk(*P.op, opt);
  std::vector<double> M, R;
  P.op->evaluate(*P.V, 0.0, &M, R);
  const double m0 = mass(P, M);
  double t = 0.0;
  for (int n = 0; n < 10; ++n) t += rk.step(*P.V, t, 1.0);
  P.op->evaluate(*P.V, t, &M, R);
  EXPECT_NEAR(mass(P, M), m0, 1e-12 * m0);
}

TEST(SspRk3, StillWaterOverStepStaysAtRest) {
  RipaModel<1> m(9.812);
  Potential<1> b{"step",
                 [](const Point<1>& x, const Point<1>& sel) { return (x[0] == 0.5 ? sel[0] : x[0]) > 0.5 ? 0.3 : 0.0; },
                 [](const Point<1>&, const Point<1>&) { return Point<1>{0.0}; }};
  Problem<RipaModel<1>> P(m, build_mesh_1d(0, 1, 20), b, OmegaMode::Projected, BoundaryKind::Transmissive);
  P.set([&](const Point<1>& x) { return m.from_primitive(x[0] > 0.5 ? 0.7 : 1.0, {0.0}, 2.0); });
  const auto before = P.V->coeffs();
  SspRk3<RipaModel<1>> rk(*P.op);
  double t = 0.0;
  rk.advance(*P.V, t, 0.05);
  for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(P.V->coeffs()[k], before[k], 1e-12);
}

TEST(SspRk3, TimeStepFromWaveSpeed) {
  EulerModel<1> m(1.4);
  Problem<EulerModel<1>> P(m, build_mesh_1d(0, 2, 8), zero_potential<1>(), OmegaMode::Analytic,
                           BoundaryKind::Periodic);
  auto U = m.from_primitive(1.0, {0.5}, 1.0);
  P.set([&](const Point<1>&) { return U; });
  StepperOptions opt;
  opt.cfl = 0.2;
  SspRk3<EulerModel<1>> rk(*P.op, opt);
  double smax = 0.5 + std::sqrt(1.4);
  EXPECT_NEAR(rk.compute_dt(*P.V), 0.2 * 0.25 / smax, 1e-15);
  EXPECT_DOUBLE_EQ(rk.dt_from_speed(2.0), 0.2 * 0.25 / 2.0);
  EXPECT_THROW(rk.dt_from_speed(0.0), StateError);
  EXPECT_THROW(rk.dt_from_speed(std::nan("")), StateError);
}

TEST(SspRk3, AdvanceLandsOnFinalTime) {
  EulerModel<1> m(1.4);
  Problem<EulerModel<1>> P(m, build_mesh_1d(0, 1, 10), zero_potential<1>(), OmegaMode::Analytic,
                           BoundaryKind::Periodic);
  P.set([&](const Point<1>& x) { return m.from_primitive(1.0 + 0.1 * std::sin(2 * pi * x[0]), {1.0}, 1.0); });
  SspRk3<EulerModel<1>> rk(*P.op);
  double t = 0.0;
  int calls = 0;
  double last = -1.0;
  rk.advance(*P.V, t, 0.037, [&](const DGField<EulerModel<1>>&, double tt) {
    EXPECT_GT(tt, last);
    last = tt;
    ++calls;
  });
  EXPECT_EQ(t, 0.037);
  EXPECT_EQ(last, 0.037);
  EXPECT_EQ(calls, rk.stats().steps);
  EXPECT_GT(calls, 1);
}
