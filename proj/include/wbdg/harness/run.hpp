#pragma once

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "../boundary.hpp"
#include "../conservative.hpp"
#include "../euler.hpp"
#include "../flux.hpp"
#include "../omega.hpp"
#include "../residual.hpp"
#include "../ripa.hpp"
#include "../stepper.hpp"
#include "case_spec.hpp"
#include "potentials.hpp"
#include "profiles.hpp"

namespace wbdg::harness {

using XY = std::array<double, 2>;
// Conservative state of a reference solution at a point (unused y in 1D).
using ReferenceFn = std::function<std::vector<double>(const XY&)>;

struct ErrorReport {
  std::vector<std::string> names;
  std::vector<double> l1, linf;
  int nx = 0, ny = 0;
  double time = 0.0;
  double runtime = 0.0;  // seconds of time stepping
  RunStats stats;

  int index(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw ContractError("no error entry named " + n);
  }
  double max_error() const {
    double m = 0.0;
    for (std::size_t i = 0; i < names.size(); ++i) m = std::max({m, l1[i], linf[i]});
    return m;
  }
};

// Point samples of the solution: one row per volume quadrature point, cells
// in mesh order, points in quadrature order.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& n) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == n) return static_cast<int>(i);
    throw ContractError("no column named " + n);
  }
};

class CaseRun {
 public:
  virtual ~CaseRun() = default;
  virtual const CaseSpec& spec() const = 0;
  virtual double time() const = 0;
  virtual const RunStats& stats() const = 0;
  virtual double runtime() const = 0;
  // Advances to spec().t_final.
  virtual void run() = 0;
  // Errors against the spec's reference; `fine` is required for fine:N.
  virtual ErrorReport errors(const ReferenceFn& fine = {}) = 0;
  virtual Table snapshot() = 0;
  virtual std::vector<double> sample(const XY& x) const = 0;
};

namespace detail {

template <int D>
Mesh<D> make_mesh(const CaseSpec& s) {
  if constexpr (D == 1) return build_mesh_1d(s.xmin, s.xmax, s.nx);
  else return build_mesh_2d(s.xmin, s.xmax, s.nx, s.ymin, s.ymax, s.cells_y());
}

template <int D>
Point<D> to_point(const XY& x) {
  Point<D> p;
  for (int d = 0; d < D; ++d) p[d] = x[d];
  return p;
}

template <class Physics>
Physics make_physics(const CaseSpec& s) {
  if constexpr (std::is_same_v<Physics, EulerModel<Physics::dim>>) return Physics(s.gamma);
  else return Physics(s.g);
}

template <class P>
Setup<P> make_setup(const CaseSpec& s, const P& phys, const Potential<P::dim>& pot) {
  if constexpr (std::is_same_v<P, EulerModel<P::dim>>) return euler_setup<P::dim>(s, phys, pot);
  else return ripa_setup<P::dim>(s, phys, pot);
}

}  // namespace detail

template <class Model>
class Simulation final : public CaseRun {
 public:
  static constexpr int dim = Model::dim;
  static constexpr int nvars = Model::nvars;
  using Physics = typename Model::Physics;
  using State = typename Model::State;
  using X = Point<dim>;
  // the moving-equilibrium models carry their own branch tags
  static constexpr bool tagged = std::is_same_v<Model, Physics>;

  Simulation(const CaseSpec& spec, Model model)
      : spec_(spec), model_(std::move(model)), phys_(model_.physics()),
        disc_(make_discretization(detail::make_mesh<dim>(spec), spec.degree)),
        omega_(std::make_shared<const OmegaField<dim>>(disc_, make_potential<dim>(spec.omega),
                                                        omega_mode(spec))),
        setup_(detail::make_setup(spec, phys_, omega_->potential())),
        op_(model_, disc_, omega_, boundaries(), parse_flux_scheme(spec.flux)),
        stepper_(op_, stepper_options(spec)), V_(disc_) {
    initialize();
  }

  const CaseSpec& spec() const override { return spec_; }
  double time() const override { return t_; }
  const RunStats& stats() const override { return stepper_.stats(); }
  double runtime() const override { return runtime_; }
  const DGField<Model>& field() const { return V_; }
  ResidualOperator<Model>& op() { return op_; }
  const OmegaField<dim>& omega() const { return *omega_; }

  static OmegaMode omega_mode(const CaseSpec& s) {
    if (s.omega_mode == "analytic") return OmegaMode::Analytic;
    if (s.omega_mode == "projected") return OmegaMode::Projected;
    return (s.model == "euler" || s.baseline_nwb) ? OmegaMode::Analytic : OmegaMode::Projected;
  }

  void run() override {
    auto start = std::chrono::steady_clock::now();
    try {
      stepper_.advance(V_, t_, spec_.t_final);
    } catch (const Error& e) {
      throw ConvergenceError("case " + spec_.name + ": " + e.what());
    }
    runtime_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  ErrorReport errors(const ReferenceFn& fine = {}) override {
    const std::string& ref = spec_.reference;
    if (ref == "none") throw ConfigError("case " + spec_.name + " has no reference solution");
    if (ref == "exact" && !setup_.exact)
      throw ConfigError("case " + spec_.name + ": profile has no exact solution");
    if (ref.rfind("fine:", 0) == 0 && !fine)
      throw ConfigError("case " + spec_.name + ": fine-grid reference not supplied");
    op_.evaluate_states(V_);

    ErrorReport r;
    r.names = report_names();
    const std::size_t nr = r.names.size();
    r.l1.assign(nr, 0.0);
    r.linf.assign(nr, 0.0);
    r.nx = spec_.nx;
    r.ny = spec_.cells_y();
    r.time = t_;
    r.runtime = runtime_;
    r.stats = stepper_.stats();

    const auto& D = *disc_;
    const double meas = D.mesh().cell_measure();
    for (int c = 0; c < D.cells(); ++c)
      for (int q = 0; q < D.vol_points(); ++q) {
        X x = D.vol_point(c, q);
        double ws = omega_->vol(c, q);
        const State& U = op_.vol_state(c, q);
        State Ur = reference_state(c, q, x, fine);
        auto a = report_values(U, ws), b = report_values(Ur, ws);
        double w = meas * D.vol_weight(q);
        for (std::size_t i = 0; i < nr; ++i) {
          double e = std::abs(a[i] - b[i]);
          r.l1[i] += w * e;
          r.linf[i] = std::max(r.linf[i], e);
        }
      }
    return r;
  }

  Table snapshot() override {
    op_.evaluate_states(V_);
    Table t;
    const char* axes[] = {"x", "y"};
    for (int d = 0; d < dim; ++d) t.columns.push_back(axes[d]);
    for (auto& n : Physics::cons_names()) t.columns.push_back(n);
    for (auto& n : Physics::equil_names()) t.columns.push_back(n);
    for (auto& n : Physics::derived_names()) t.columns.push_back(n);
    const auto& D = *disc_;
    for (int c = 0; c < D.cells(); ++c)
      for (int q = 0; q < D.vol_points(); ++q) {
        std::vector<double> row;
        X x = D.vol_point(c, q);
        for (int d = 0; d < dim; ++d) row.push_back(x[d]);
        const State& U = op_.vol_state(c, q);
        double ws = omega_->vol(c, q);
        for (int i = 0; i < nvars; ++i) row.push_back(U[i]);
        State V = phys_.to_equil(U, ws);
        for (int i = 0; i < nvars; ++i) row.push_back(V[i]);
        for (double v : phys_.derived(U, ws)) row.push_back(v);
        t.rows.push_back(std::move(row));
      }
    return t;
  }

  std::vector<double> sample(const XY& xy) const override {
    X x = detail::to_point<dim>(xy);
    int c = disc_->mesh().locate(x);
    State V = V_.eval_at(c, x);
    State U = model_.to_cons(V, omega_->at(c, x), V_.vol_regime(c, 0));
    return std::vector<double>(U.data(), U.data() + nvars);
  }

 private:
  static StepperOptions stepper_options(const CaseSpec& s) {
    StepperOptions o;
    o.cfl = s.cfl;
    o.limiter.enabled = s.limiter;
    o.limiter.M = s.limiter_M;
    return o;
  }

  BoundarySet<Model> boundaries() const {
    BoundarySet<Model> b;
    for (int i = 0; i < 2 * dim; ++i) {
      b[i].kind = parse_boundary_kind(spec_.bc[i]);
      if (setup_.ghost[i]) b[i].ghost = setup_.ghost[i];
      else if (setup_.exact) b[i].ghost = setup_.exact;
      else b[i].ghost = [f = setup_.initial](const X& x, double) { return f(x); };
      b[i].overrides = setup_.overrides[i];
      if (b[i].kind == BoundaryKind::CharacteristicInflowOutflow && b[i].overrides.empty())
        throw ConfigError("case " + spec_.name + ": profile '" + spec_.profile +
                          "' defines no inflow/outflow data for side " + std::to_string(i));
    }
    return b;
  }

  FlowRegime initial_regime(const X& x, const X& center) const {
    if (setup_.regime) return setup_.regime(x, center);
    return phys_.classify(setup_.initial(x), FlowRegime::Subsonic);
  }

  void initialize() {
    const auto& D = *disc_;
    const int nm = D.modes(), nq = D.vol_points();
    std::vector<State> Vq(nq);
    for (int c = 0; c < D.cells(); ++c) {
      X ctr = D.mesh().center(c);
      for (int q = 0; q < nq; ++q) {
        X x = D.vol_point(c, q);
        Vq[q] = model_.to_equil(setup_.initial(x), omega_->analytic(c, x));
        V_.vol_regime(c, q) = initial_regime(x, ctr);
      }
      for (int i = 0; i < nvars; ++i) {
        double* a = V_.block(c, i);
        for (int l = 0; l < nm; ++l) {
          double s = 0.0;
          for (int q = 0; q < nq; ++q) s += D.vol_weight(q) * Vq[q][i] * D.phi(q)[l];
          a[l] = s;
        }
      }
      for (int f = 0; f < D.faces(); ++f)
        for (int p = 0; p < D.face_points(); ++p)
          V_.face_regime(c, f, p) = initial_regime(D.face_point(c, f, p), ctr);
    }
  }

  std::vector<std::string> report_names() const {
    auto n = Physics::cons_names();
    for (auto& e : Physics::equil_names())
      if (std::find(n.begin(), n.end(), e) == n.end()) n.push_back(e);
    return n;
  }

  std::vector<double> report_values(const State& U, double w) const {
    std::vector<double> v(U.data(), U.data() + nvars);
    State V = phys_.to_equil(U, w);
    auto cn = Physics::cons_names(), en = Physics::equil_names();
    for (int i = 0; i < nvars; ++i)
      if (std::find(cn.begin(), cn.end(), en[i]) == cn.end()) v.push_back(V[i]);
    return v;
  }

  State reference_state(int c, int q, const X& x, const ReferenceFn& fine) const {
    if (spec_.reference.rfind("fine:", 0) == 0) {
      XY xy{};
      for (int d = 0; d < dim; ++d) xy[d] = x[d];
      auto u = fine(xy);
      State U;
      for (int i = 0; i < nvars; ++i) U[i] = u[i];
      return U;
    }
    State Ue = spec_.reference == "exact" ? setup_.exact(x, t_) : setup_.initial(x);
    if (omega_->mode() == OmegaMode::Analytic) return Ue;
    // the same equilibrium, expressed over the solver's potential
    FlowRegime r = tagged ? V_.vol_regime(c, q) : phys_.classify(Ue, FlowRegime::Subsonic);
    return phys_.to_cons(phys_.to_equil(Ue, omega_->analytic(c, x)), omega_->vol(c, q), r);
  }

  CaseSpec spec_;
  Model model_;
  Physics phys_;
  DiscretizationPtr<dim> disc_;
  OmegaPtr<dim> omega_;
  Setup<Physics> setup_;
  ResidualOperator<Model> op_;
  SspRk3<Model> stepper_;
  DGField<Model> V_;
  double t_ = 0.0;
  double runtime_ = 0.0;
};

namespace detail {

template <int D>
std::unique_ptr<CaseRun> make_run_dim(const CaseSpec& s) {
  if (s.model == "euler") {
    EulerModel<D> m(s.gamma);
    if (s.baseline_nwb) return std::make_unique<Simulation<ConservativeModel<EulerModel<D>>>>(s, ConservativeModel<EulerModel<D>>(m));
    return std::make_unique<Simulation<EulerModel<D>>>(s, m);
  }
  RipaModel<D> m(s.g);
  if (s.baseline_nwb) return std::make_unique<Simulation<ConservativeModel<RipaModel<D>>>>(s, ConservativeModel<RipaModel<D>>(m));
  if (s.model == "ripa-isobaric") return std::make_unique<Simulation<RipaIsobaricModel<D>>>(s, RipaIsobaricModel<D>(s.g));
  return std::make_unique<Simulation<RipaModel<D>>>(s, m);
}

}  // namespace detail

inline void validate(const CaseSpec& s) {
  validate_basic(s);
  if (!profile_exists(s)) throw ConfigError("case '" + s.name + "': unknown profile '" + s.profile + "'");
  const auto& pots = potential_names(s.dim);
  if (std::find(pots.begin(), pots.end(), s.omega) == pots.end())
    throw ConfigError("case '" + s.name + "': unknown potential '" + s.omega + "'");
  for (int i = 0; i < 2 * s.dim; ++i) parse_boundary_kind(s.bc[i]);
  parse_flux_scheme(s.flux);
  if (s.reference.rfind("fine:", 0) == 0) {
    int n = detail::parse_int("reference", s.reference.substr(5));
    if (n <= s.nx) throw ConfigError("case '" + s.name + "': fine reference must be finer than nx");
  }
}

// Builds (and projects the initial data of) a run; does not advance it.
inline std::unique_ptr<CaseRun> make_run(const CaseSpec& s) {
  validate(s);
  return s.dim == 1 ? detail::make_run_dim<1>(s) : detail::make_run_dim<2>(s);
}

inline int fine_cells(const CaseSpec& s) {
  return s.reference.rfind("fine:", 0) == 0 ? detail::parse_int("reference", s.reference.substr(5)) : 0;
}

// Spec of the self-reference run for a fine:N reference.
inline CaseSpec fine_spec(const CaseSpec& s) {
  CaseSpec f = s;
  int n = fine_cells(s);
  if (s.dim == 2) f.ny = s.ny > 0 ? static_cast<int>(std::lround(static_cast<double>(n) * s.ny / s.nx)) : 0;
  f.nx = n;
  f.reference = "none";
  f.outputs = "";
  return f;
}

// A run that has been advanced, with its reference (if any) attached.
struct RunResult {
  std::unique_ptr<CaseRun> run;
  std::shared_ptr<CaseRun> fine;  // fine-grid reference run, if used
  bool has_errors = false;
  ErrorReport report;
};

inline ReferenceFn reference_of(const std::shared_ptr<CaseRun>& fine) {
  if (!fine) return {};
  return [fine](const XY& x) { return fine->sample(x); };
}

// Runs the case; `fine` may supply an already computed fine-grid reference.
inline RunResult run_case(const CaseSpec& s, std::shared_ptr<CaseRun> fine = nullptr) {
  RunResult r;
  r.run = make_run(s);
  r.run->run();
  if (s.reference != "none") {
    if (fine_cells(s) > 0 && !fine) {
      fine = make_run(fine_spec(s));
      fine->run();
    }
    r.fine = fine;
    r.report = r.run->errors(reference_of(fine));
    r.has_errors = true;
  }
  return r;
}

// ---------------------------------------------------------------- convergence

struct ConvergenceTable {
  std::vector<std::string> names;
  std::vector<int> meshes;
  std::vector<std::vector<double>> l1;      // [row][variable]
  std::vector<std::vector<double>> order;   // [row][variable], NaN on the first row
  std::vector<std::string> warnings;        // non-monotone errors, flagged not fatal

  double order_of(int row, const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return order[row][i];
    throw ContractError("no variable named " + n);
  }
};

inline CaseSpec with_mesh(const CaseSpec& s, int n) {
  CaseSpec c = s;
  if (s.dim == 2 && s.ny > 0) c.ny = static_cast<int>(std::lround(static_cast<double>(n) * s.ny / s.nx));
  c.nx = n;
  return c;
}

inline ConvergenceTable run_convergence(const CaseSpec& s, const std::vector<int>& meshes) {
  if (meshes.size() < 2) throw ConfigError("convergence needs at least two meshes");
  for (std::size_t i = 1; i < meshes.size(); ++i)
    if (meshes[i] != 2 * meshes[i - 1]) throw ConfigError("meshes must refine by a factor of 2");
  if (s.reference == "none") throw ConfigError("case " + s.name + " has no reference solution");
  std::shared_ptr<CaseRun> fine;
  if (fine_cells(s) > 0) {
    if (fine_cells(s) <= meshes.back()) throw ConfigError("fine reference must be finer than every mesh");
    fine = make_run(fine_spec(s));
    fine->run();
  }
  ConvergenceTable t;
  for (int n : meshes) {
    RunResult r = run_case(with_mesh(s, n), fine);
    if (t.names.empty()) t.names = r.report.names;
    t.meshes.push_back(n);
    t.l1.push_back(r.report.l1);
    std::vector<double> o(t.names.size(), std::nan(""));
    if (t.l1.size() > 1) {
      const auto& prev = t.l1[t.l1.size() - 2];
      for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] = std::log2(prev[i] / r.report.l1[i]);
        if (!(r.report.l1[i] < prev[i]))
          t.warnings.push_back("non-monotone " + t.names[i] + " error at mesh " + std::to_string(n));
      }
    }
    t.order.push_back(o);
  }
  return t;
}

// ---------------------------------------------------------------- CSV output

namespace detail {

inline void write_metadata(std::ostream& os, const CaseSpec& s, double time) {
  os << "# case: " << s.name << "\n";
  os << "# spec_hash: " << spec_hash(s) << "\n";
  os << "# model: " << s.model << (s.baseline_nwb ? " (baseline-nwb)" : "") << "\n";
  os << "# mesh: " << s.nx;
  if (s.dim == 2) os << " x " << s.cells_y();
  os << "\n";
  if (s.model == "euler") os << "# gamma: " << fmt(s.gamma) << "\n";
  else os << "# g: " << fmt(s.g) << "\n";
  os << "# time: " << fmt(time) << "\n";
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  return f;
}

}  // namespace detail

inline void write_table_csv(std::ostream& os, const CaseSpec& s, double time, const Table& t) {
  detail::write_metadata(os, s, time);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::fmt(row[i]);
    os << "\n";
  }
}

inline void write_errors_csv(std::ostream& os, const CaseSpec& s, const ErrorReport& r) {
  detail::write_metadata(os, s, r.time);
  os << "# reference: " << s.reference << "\n";
  os << "# steps: " << r.stats.steps << "\n";
  os << "variable,L1,Linf\n";
  for (std::size_t i = 0; i < r.names.size(); ++i)
    os << r.names[i] << "," << detail::fmt(r.l1[i]) << "," << detail::fmt(r.linf[i]) << "\n";
}

inline void write_convergence_csv(std::ostream& os, const CaseSpec& s, const ConvergenceTable& t) {
  detail::write_metadata(os, s, s.t_final);
  os << "# reference: " << s.reference << "\n";
  os << "nx";
  for (const auto& n : t.names) os << "," << n << "_L1," << n << "_order";
  os << "\n";
  for (std::size_t r = 0; r < t.meshes.size(); ++r) {
    os << t.meshes[r];
    for (std::size_t i = 0; i < t.names.size(); ++i)
      os << "," << detail::fmt(t.l1[r][i]) << "," << (r ? detail::fmt(t.order[r][i]) : std::string(""));
    os << "\n";
  }
}

// Writes the outputs requested by the spec into `dir`; returns the paths.
inline std::vector<std::string> write_outputs(const std::string& dir, const CaseSpec& s, RunResult& r) {
  std::vector<std::string> paths;
  std::string base = dir + "/" + s.name + (s.baseline_nwb ? "-nwb" : "") + "-" + std::to_string(s.nx);
  if (wants_output(s, "errors") && r.has_errors) {
    auto f = detail::open_out(base + "-errors.csv");
    write_errors_csv(f, s, r.report);
    paths.push_back(base + "-errors.csv");
  }
  if (wants_output(s, "snapshot")) {
    auto f = detail::open_out(base + "-snapshot.csv");
    write_table_csv(f, s, r.run->time(), r.run->snapshot());
    paths.push_back(base + "-snapshot.csv");
  }
  return paths;
}

}  // namespace wbdg::harness
