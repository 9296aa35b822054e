#pragma once

#include <functional>
#include <memory>

#include <wbdg/limiter.hpp>
#include <wbdg/residual.hpp>
#include <wbdg/stepper.hpp>

namespace fixture {

using namespace wbdg;

// Operator, field and stepper for one model on one mesh, built directly from
// the library types (no case catalog).
template <class Model>
struct Problem {
  static constexpr int dim = Model::dim;
  using State = typename Model::State;
  using X = Point<dim>;

  Model model;
  DiscretizationPtr<dim> disc;
  OmegaPtr<dim> omega;
  std::unique_ptr<ResidualOperator<Model>> op;
  std::unique_ptr<DGField<Model>> V;

  Problem(Model m, const Mesh<dim>& mesh, Potential<dim> pot, OmegaMode mode, BoundaryKind bc,
          FluxScheme flux = FluxScheme::LaxFriedrichsGlobal, int degree = 2)
      : model(std::move(m)) {
    disc = make_discretization(mesh, degree);
    omega = std::make_shared<const OmegaField<dim>>(disc, std::move(pot), mode);
    BoundarySet<Model> bcs;
    for (auto& b : bcs) b.kind = bc;
    op = std::make_unique<ResidualOperator<Model>>(model, disc, omega, bcs, flux);
    V = std::make_unique<DGField<Model>>(disc);
  }

  // Projects the equilibrium variables of U0 (with the analytic potential)
  // and tags every point from U0.
  void set(const std::function<State(const X&)>& U0) {
    const auto& D = *disc;
    const auto& phys = model.physics();
    for (int c = 0; c < D.cells(); ++c) {
      for (int i = 0; i < Model::nvars; ++i)
        D.project(c, [&](const X& x) { return model.to_equil(U0(x), omega->analytic(c, x))[i]; },
                  V->block(c, i));
      for (int q = 0; q < D.vol_points(); ++q)
        V->vol_regime(c, q) = phys.classify(U0(D.vol_point(c, q)), FlowRegime::Subsonic);
      for (int f = 0; f < D.faces(); ++f)
        for (int p = 0; p < D.face_points(); ++p)
          V->face_regime(c, f, p) = phys.classify(U0(D.face_point(c, f, p)), FlowRegime::Subsonic);
    }
  }

  std::vector<double> residual(double t = 0.0, std::vector<double>* M = nullptr) {
    std::vector<double> R;
    op->evaluate(*V, t, M, R);
    return R;
  }
};

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace fixture
