#pragma once

#include <vector>

#include "discretization.hpp"
#include "regime.hpp"

namespace wbdg {

// Modal coefficients of the model's unknowns (equilibrium variables) on every
// cell, laid out [cell][component][mode], plus the branch tags and Newton
// warm-start densities at each volume and trace point.
template <class Model>
class DGField {
 public:
  static constexpr int dim = Model::dim;
  static constexpr int nvars = Model::nvars;
  using State = typename Model::State;

  explicit DGField(DiscretizationPtr<dim> disc) : disc_(std::move(disc)) {
    const auto& D = *disc_;
    coeffs_.assign(static_cast<std::size_t>(D.cells()) * nvars * D.modes(), 0.0);
    vol_regime_.assign(static_cast<std::size_t>(D.cells()) * D.vol_points(), FlowRegime::Subsonic);
    face_regime_.assign(static_cast<std::size_t>(D.cells()) * D.faces() * D.face_points(),
                        FlowRegime::Subsonic);
    vol_hint_.assign(vol_regime_.size(), 0.0);
    face_hint_.assign(face_regime_.size(), 0.0);
  }

  const Discretization<dim>& disc() const { return *disc_; }
  const DiscretizationPtr<dim>& disc_ptr() const { return disc_; }
  int cells() const { return disc_->cells(); }
  int modes() const { return disc_->modes(); }

  double* block(int cell, int var) { return &coeffs_[(cell * nvars + var) * modes()]; }
  const double* block(int cell, int var) const { return &coeffs_[(cell * nvars + var) * modes()]; }
  double* cell_data(int cell) { return &coeffs_[cell * nvars * modes()]; }
  const double* cell_data(int cell) const { return &coeffs_[cell * nvars * modes()]; }
  std::vector<double>& coeffs() { return coeffs_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  int vol_index(int cell, int q) const { return cell * disc_->vol_points() + q; }
  int face_index(int cell, int f, int p) const {
    return (cell * disc_->faces() + f) * disc_->face_points() + p;
  }
  FlowRegime& vol_regime(int cell, int q) { return vol_regime_[vol_index(cell, q)]; }
  FlowRegime vol_regime(int cell, int q) const { return vol_regime_[vol_index(cell, q)]; }
  FlowRegime& face_regime(int cell, int f, int p) { return face_regime_[face_index(cell, f, p)]; }
  FlowRegime face_regime(int cell, int f, int p) const {
    return face_regime_[face_index(cell, f, p)];
  }
  double& vol_hint(int cell, int q) { return vol_hint_[vol_index(cell, q)]; }
  double& face_hint(int cell, int f, int p) { return face_hint_[face_index(cell, f, p)]; }

  State eval_vol(int cell, int q) const {
    State v;
    for (int i = 0; i < nvars; ++i) v[i] = disc_->eval_vol(block(cell, i), q);
    return v;
  }
  State eval_face(int cell, int f, int p) const {
    State v;
    for (int i = 0; i < nvars; ++i) v[i] = disc_->eval_face(block(cell, i), f, p);
    return v;
  }
  State eval_at(int cell, const Point<dim>& x) const {
    auto xi = disc_->mesh().to_reference(cell, x);
    State v;
    for (int i = 0; i < nvars; ++i) v[i] = disc_->eval_ref(block(cell, i), xi);
    return v;
  }
  State average(int cell) const {
    State v;
    for (int i = 0; i < nvars; ++i) v[i] = block(cell, i)[0];
    return v;
  }

 private:
  DiscretizationPtr<dim> disc_;
  std::vector<double> coeffs_;
  std::vector<FlowRegime> vol_regime_, face_regime_;
  std::vector<double> vol_hint_, face_hint_;
};

}  // namespace wbdg
