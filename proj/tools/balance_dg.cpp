// balance_dg: command line front end for the case catalog.
//
//   balance_dg list-cases
//   balance_dg show <case|config>
//   balance_dg run <case|config> [--nx N] [--ny N] [--tfinal T] [--flux lf|roe|isobaric]
//                  [--limiter-M X] [--baseline-nwb] [--out DIR]
//   balance_dg converge <case|config> --meshes 20,40,80,160 [--out DIR]
//   balance_dg wb-suite [--out DIR]
//
// Exit status: 0 success, 1 solver failure (or a wb-suite row failing), 2 usage
// or configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <wbdg/wbdg.hpp>

namespace h = wbdg::harness;

namespace {

struct Overrides {
  std::optional<int> nx, ny;
  std::optional<double> t_final, limiter_M;
  std::optional<std::string> flux;
  bool nwb = false;
};

h::CaseSpec resolve(const std::string& name_or_path) {
  if (h::find_case(name_or_path)) return h::lookup_case(name_or_path);
  if (std::filesystem::exists(name_or_path)) return h::load_config(name_or_path, h::lookup_case);
  throw wbdg::ConfigError("'" + name_or_path + "' is neither a catalog case nor a config file");
}

void apply(h::CaseSpec& s, const Overrides& o) {
  if (o.nx) s.nx = *o.nx;
  if (o.ny) s.ny = *o.ny;
  if (o.t_final) s.t_final = *o.t_final;
  if (o.limiter_M) s.limiter_M = *o.limiter_M;
  if (o.flux) s.flux = *o.flux;
  if (o.nwb) s.baseline_nwb = true;
}

void ensure_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw wbdg::ConfigError("cannot create output directory " + dir + ": " + ec.message());
}

void print_report(const h::CaseSpec& s, const h::ErrorReport& r) {
  std::printf("%-10s %-24s %-24s\n", "variable", "L1", "Linf");
  for (std::size_t i = 0; i < r.names.size(); ++i)
    std::printf("%-10s %-24.6e %-24.6e\n", r.names[i].c_str(), r.l1[i], r.linf[i]);
  if (s.threshold > 0.0)
    std::printf("max error %.3e, threshold %.1e: %s\n", r.max_error(), s.threshold,
                r.max_error() <= s.threshold ? "PASS" : "FAIL");
}

void print_stats(const h::CaseRun& run) {
  const auto& st = run.stats();
  std::printf("t = %.6g, %ld steps, %ld Newton iterations (max %d per solve), %ld dt halvings, "
              "%ld regime changes, %.2f s\n",
              run.time(), st.steps, st.newton_iterations, st.max_newton_iterations, st.dt_halvings,
              st.regime_changes, run.runtime());
}

int cmd_list() {
  for (const auto& e : h::catalog())
    std::printf("%-32s %s\n", e.spec.name.c_str(), e.description.c_str());
  return 0;
}

int cmd_show(const std::string& which) {
  std::cout << h::to_config(resolve(which));
  return 0;
}

int cmd_run(const std::string& which, const Overrides& o, const std::string& out) {
  h::CaseSpec s = resolve(which);
  apply(s, o);
  h::validate(s);
  ensure_dir(out);
  std::printf("case %s (%s%s), mesh %d", s.name.c_str(), s.model.c_str(),
              s.baseline_nwb ? ", baseline-nwb" : "", s.nx);
  if (s.dim == 2) std::printf(" x %d", s.cells_y());
  std::printf(", spec %s\n", h::spec_hash(s).c_str());
  h::RunResult r = h::run_case(s);
  print_stats(*r.run);
  if (r.has_errors) print_report(s, r.report);
  if (!out.empty())
    for (const auto& p : h::write_outputs(out, s, r)) std::printf("wrote %s\n", p.c_str());
  return 0;
}

std::vector<int> parse_meshes(const std::string& list) {
  std::vector<int> m;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) m.push_back(h::detail::parse_int("meshes", h::detail::trim(item)));
  return m;
}

int cmd_converge(const std::string& which, const Overrides& o, const std::string& meshes,
                 const std::string& out) {
  h::CaseSpec s = resolve(which);
  apply(s, o);
  h::validate(s);
  ensure_dir(out);
  h::ConvergenceTable t = h::run_convergence(s, parse_meshes(meshes));
  std::printf("%6s", "nx");
  for (const auto& n : t.names) std::printf("  %12s %6s", (n + " L1").c_str(), "order");
  std::printf("\n");
  for (std::size_t r = 0; r < t.meshes.size(); ++r) {
    std::printf("%6d", t.meshes[r]);
    for (std::size_t i = 0; i < t.names.size(); ++i) {
      if (r == 0) std::printf("  %12.4e %6s", t.l1[r][i], "-");
      else std::printf("  %12.4e %6.2f", t.l1[r][i], t.order[r][i]);
    }
    std::printf("\n");
  }
  for (const auto& w : t.warnings) std::printf("warning: %s\n", w.c_str());
  if (!out.empty()) {
    std::string path = out + "/" + s.name + "-convergence.csv";
    std::ofstream f(path);
    if (!f) throw wbdg::Error("cannot write " + path);
    h::write_convergence_csv(f, s, t);
    std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

int cmd_wb_suite(const std::string& out) {
  ensure_dir(out);
  int failed = 0;
  std::printf("%-32s %-8s %-12s %-10s %s\n", "case", "mesh", "max error", "threshold", "result");
  for (const auto& e : h::catalog()) {
    const h::CaseSpec& s = e.spec;
    if (!(s.threshold > 0.0)) continue;
    std::string mesh = std::to_string(s.nx) + (s.dim == 2 ? "x" + std::to_string(s.cells_y()) : "");
    try {
      h::RunResult r = h::run_case(s);
      double m = r.report.max_error();
      bool ok = m <= s.threshold;
      failed += !ok;
      std::printf("%-32s %-8s %-12.3e %-10.0e %s\n", s.name.c_str(), mesh.c_str(), m, s.threshold,
                  ok ? "PASS" : "FAIL");
      if (!out.empty()) h::write_outputs(out, s, r);
    } catch (const wbdg::Error& err) {
      ++failed;
      std::printf("%-32s %-8s %-12s %-10.0e FAIL (%s)\n", s.name.c_str(), mesh.c_str(), "-",
                  s.threshold, err.what());
    }
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Well-balanced DG solver for Euler with gravity and the Ripa model"};
  app.require_subcommand(1);

  std::string which, out, meshes;
  Overrides o;
  auto add_overrides = [&](CLI::App* c) {
    c->add_option("--nx", o.nx, "cells in x");
    c->add_option("--ny", o.ny, "cells in y (2D)");
    c->add_option("--tfinal", o.t_final, "final time");
    c->add_option("--flux", o.flux, "numerical flux")->check(CLI::IsMember({"lf", "roe", "isobaric"}));
    c->add_option("--limiter-M", o.limiter_M, "TVB constant M");
    c->add_flag("--baseline-nwb", o.nwb, "non-well-balanced baseline on conservative variables");
  };

  auto* list = app.add_subcommand("list-cases", "list the built-in cases");
  auto* show = app.add_subcommand("show", "print the full configuration of a case");
  show->add_option("case", which, "case name or config file")->required();
  auto* run = app.add_subcommand("run", "run one case and report errors");
  run->add_option("case", which, "case name or config file")->required();
  add_overrides(run);
  run->add_option("--out", out, "directory for CSV output");
  auto* conv = app.add_subcommand("converge", "convergence study over a mesh sequence");
  conv->add_option("case", which, "case name or config file")->required();
  conv->add_option("--meshes", meshes, "comma separated cell counts, each twice the previous")->required();
  add_overrides(conv);
  conv->add_option("--out", out, "directory for CSV output");
  auto* suite = app.add_subcommand("wb-suite", "run every equilibrium case against its threshold");
  suite->add_option("--out", out, "directory for CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*list) return cmd_list();
    if (*show) return cmd_show(which);
    if (*run) return cmd_run(which, o, out);
    if (*conv) return cmd_converge(which, o, meshes, out);
    if (*suite) return cmd_wb_suite(out);
  } catch (const wbdg::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
