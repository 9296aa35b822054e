#pragma once

#include <string>
#include <vector>

#include "basis.hpp"
#include "regime.hpp"

namespace wbdg {

// Runs the DG machinery directly on conservative variables (V = U). This is
// the classical, non-well-balanced scheme used as a comparison baseline.
template <class P>
class ConservativeModel {
 public:
  static constexpr int dim = P::dim;
  static constexpr int nvars = P::nvars;
  using Physics = P;
  using State = typename P::State;
  using Matrix = typename P::Matrix;

  static constexpr std::array<bool, nvars> direct = [] {
    std::array<bool, nvars> a{};
    a.fill(true);
    return a;
  }();
  static constexpr bool hydrostatic_reconstruction = false;

  explicit ConservativeModel(const P& physics) : phys_(physics) {}

  const Physics& physics() const { return phys_; }
  static std::string name() { return std::string(P::name()) + "-nwb"; }

  static std::vector<std::string> cons_names() { return P::cons_names(); }
  static std::vector<std::string> equil_names() { return P::cons_names(); }
  static std::vector<std::string> derived_names() { return P::derived_names(); }
  std::vector<double> derived(const State& U, double w) const { return phys_.derived(U, w); }

  void check(const State& U) const { phys_.check(U); }
  State flux(const State& U, int dir) const { return phys_.flux(U, dir); }
  State source(const State& U, const Point<dim>& grad) const { return phys_.source(U, grad); }
  double max_wave_speed(const State& U, int dir) const { return phys_.max_wave_speed(U, dir); }

  State to_equil(const State& U, double = 0.0) const { return U; }
  State to_cons(const State& V, double = 0.0, FlowRegime = FlowRegime::Subsonic,
                double* = nullptr) const {
    phys_.check(V);
    return V;
  }
  Matrix dcons_dequil(const State&, const State&, double) const { return Matrix::Identity(); }
  FlowRegime classify(const State& U, FlowRegime previous) const {
    return phys_.classify(U, previous);
  }
  Matrix eigenvectors(const State& U, int dir) const { return phys_.eigenvectors(U, dir); }
  std::array<double, nvars> eigenvalues(const State& U, int dir) const {
    return phys_.eigenvalues(U, dir);
  }

 private:
  P phys_;
};

}  // namespace wbdg
