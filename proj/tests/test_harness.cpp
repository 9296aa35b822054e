#include <gtest/gtest.h>

#include <sstream>

#include <wbdg/wbdg.hpp>

using namespace wbdg;
using namespace wbdg::harness;

TEST(Config, CaseBaseWithOverrides) {
  auto s = parse_config("# comment line\ncase = euler-iseq-1d\n  nx = 40   # trailing\nt_final=0.5\n", lookup_case);
  auto base = lookup_case("euler-iseq-1d");
  EXPECT_EQ(s.name, "euler-iseq-1d");
  EXPECT_EQ(s.nx, 40);
  EXPECT_EQ(s.t_final, 0.5);
  EXPECT_EQ(s.profile, base.profile);
  EXPECT_EQ(s.omega, base.omega);
}

TEST(Config, CaseKeyAppliesBeforeOverridesInAnyOrder) {
  auto a = parse_config("nx = 33\ncase = euler-iseq-1d\n", lookup_case);
  EXPECT_EQ(a.nx, 33);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("case = euler-iseq-1d\nbogus_key = 1\n", lookup_case), ConfigError);
  EXPECT_THROW(parse_config("nx 20\n", lookup_case), ConfigError);
  EXPECT_THROW(parse_config("nx = twenty\n", lookup_case), ConfigError);
  EXPECT_THROW(parse_config("case = no-such-case\n", lookup_case), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/file.cfg", lookup_case), ConfigError);
}

TEST(Config, CanonicalTextRoundTrips) {
  for (const auto& e : catalog()) {
    auto s = parse_config(to_config(e.spec), lookup_case);
    EXPECT_EQ(to_config(s), to_config(e.spec)) << e.spec.name;
    EXPECT_EQ(spec_hash(s), spec_hash(e.spec));
  }
}

TEST(SpecHash, StableAndSensitive) {
  auto s = lookup_case("ripa-still-2d");
  auto h = spec_hash(s);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(spec_hash(lookup_case("ripa-still-2d")), h);
  s.nx += 1;
  EXPECT_NE(spec_hash(s), h);
  s = lookup_case("ripa-still-2d");
  s.cfl = 0.11;
  EXPECT_NE(spec_hash(s), h);
}

TEST(Catalog, KnownCasesAreValid) {
  for (const char* n : {"euler-iseq-1d", "euler-iseq-1d-quadratic", "euler-iseq-1d-sine", "euler-adiabatic-hydro",
                        "euler-adiabatic-subsonic", "euler-adiabatic-supersonic", "euler-stationary-shock",
                        "euler-accuracy-1d", "euler-accuracy-2d", "ripa-still-2d", "ripa-accuracy-2d",
                        "ripa-isobaric-1d", "ripa-pulse-transcritical", "ripa-moving-subcritical"})
    EXPECT_NE(find_case(n), nullptr) << n;
  for (const auto& e : catalog()) EXPECT_NO_THROW(validate(e.spec)) << e.spec.name;
  EXPECT_EQ(find_case("no-such-case"), nullptr);
  EXPECT_THROW(lookup_case("no-such-case"), ConfigError);
}

TEST(Validate, RejectsBadSpecs) {
  auto base = lookup_case("euler-iseq-1d");
  auto bad = [&](auto&& mutate) {
    auto s = base;
    mutate(s);
    EXPECT_THROW(validate(s), ConfigError);
  };
  bad([](CaseSpec& s) { s.model = "navier"; });
  bad([](CaseSpec& s) { s.cfl = 0.0; });
  bad([](CaseSpec& s) { s.nx = 0; });
  bad([](CaseSpec& s) { s.degree = 3; });
  bad([](CaseSpec& s) { s.profile = "nope"; });
  bad([](CaseSpec& s) { s.omega = "nope"; });
  bad([](CaseSpec& s) { s.flux = "hllc"; });
  bad([](CaseSpec& s) { s.bc[0] = "sticky"; });
  bad([](CaseSpec& s) { s.reference = "fine:10"; });
  bad([](CaseSpec& s) { s.reference = "guess"; });
}

TEST(Run, ShortEquilibriumRunStaysAtRest) {
  auto s = lookup_case("euler-iseq-1d");
  s.t_final = 0.01;
  s.nx = 20;
  auto r = run_case(s);
  ASSERT_TRUE(r.has_errors);
  EXPECT_LE(r.report.max_error(), 1e-11);
  EXPECT_EQ(r.run->time(), 0.01);
  EXPECT_GT(r.run->stats().steps, 0);
}

TEST(Run, SnapshotColumnsAndMetadata) {
  auto s = lookup_case("euler-iseq-1d");
  s.t_final = 0.0;
  s.nx = 4;
  auto r = run_case(s);
  auto t = r.run->snapshot();
  // x, 3 conservative, 3 equilibrium, p and u
  EXPECT_EQ(t.columns.size(), 9u);
  EXPECT_EQ(t.columns[0], "x");
  EXPECT_EQ(t.rows.size(), 4u * 5u);
  for (const auto& row : t.rows) EXPECT_EQ(row.size(), t.columns.size());

  std::ostringstream os;
  write_errors_csv(os, s, r.report);
  std::string text = os.str();
  EXPECT_EQ(text.rfind("# case: euler-iseq-1d\n", 0), 0u);
  EXPECT_NE(text.find("# spec_hash: " + spec_hash(s)), std::string::npos);
  EXPECT_NE(text.find("variable,L1,Linf\n"), std::string::npos);
}

TEST(Run, RipaSnapshotHasDerivedColumns) {
  auto s = lookup_case("ripa-still-2d");
  s.t_final = 0.0;
  s.nx = 2;
  s.ny = 2;
  auto r = run_case(s);
  auto t = r.run->snapshot();
  // x, y, 4 conservative, 4 equilibrium, p, u, v, eta
  EXPECT_EQ(t.columns.size(), 14u);
  EXPECT_GE(t.column("eta"), 0);
}

TEST(Convergence, PiecewiseConstantIsFirstOrder) {
  auto s = lookup_case("euler-accuracy-1d");
  s.degree = 0;
  s.cfl = 0.4;
  auto t = run_convergence(s, {40, 80});
  double o = t.order_of(1, "rho");
  EXPECT_GT(o, 0.7);
  EXPECT_LT(o, 1.3);
  EXPECT_TRUE(std::isnan(t.order[0][0]));
}

TEST(Convergence, RejectsBadMeshSequences) {
  auto s = lookup_case("euler-accuracy-1d");
  EXPECT_THROW(run_convergence(s, {20}), ConfigError);
  EXPECT_THROW(run_convergence(s, {20, 30}), ConfigError);
  EXPECT_THROW(run_convergence(lookup_case("euler-pressure-pulse-hydro"), {20, 40}), ConfigError);
}
