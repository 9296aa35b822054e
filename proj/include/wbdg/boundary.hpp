#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "error.hpp"

namespace wbdg {

enum class BoundaryKind {
  Periodic,
  GhostFromFunction,
  SolidWall,
  Transmissive,
  Reflective,
  CharacteristicInflowOutflow
};

inline BoundaryKind parse_boundary_kind(const std::string& s) {
  if (s == "periodic") return BoundaryKind::Periodic;
  if (s == "exact" || s == "ghost") return BoundaryKind::GhostFromFunction;
  if (s == "wall") return BoundaryKind::SolidWall;
  if (s == "transmissive") return BoundaryKind::Transmissive;
  if (s == "reflective") return BoundaryKind::Reflective;
  if (s == "characteristic") return BoundaryKind::CharacteristicInflowOutflow;
  throw ConfigError("unknown boundary kind '" + s + "'");
}

inline std::string to_string(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::Periodic: return "periodic";
    case BoundaryKind::GhostFromFunction: return "exact";
    case BoundaryKind::SolidWall: return "wall";
    case BoundaryKind::Transmissive: return "transmissive";
    case BoundaryKind::Reflective: return "reflective";
    case BoundaryKind::CharacteristicInflowOutflow: return "characteristic";
  }
  return "?";
}

// Exterior data for one side of the domain, in conservative variables.
// For CharacteristicInflowOutflow, `overrides` replaces selected components of
// the interior trace; when component 0 (depth/density) is replaced, the last
// component is rescaled so its ratio to component 0 is kept.
template <int Dim, class State>
struct BoundarySpec {
  BoundaryKind kind = BoundaryKind::Transmissive;
  std::function<State(const Point<Dim>&, double)> ghost;
  std::vector<std::pair<int, double>> overrides;
};

template <class Spec, class State, class X>
State apply_boundary(const Spec& bc, const State& interior, const X& x, double t, int normal_dir) {
  State ext = interior;
  switch (bc.kind) {
    case BoundaryKind::Transmissive:
      break;
    case BoundaryKind::SolidWall:
    case BoundaryKind::Reflective:
      ext[1 + normal_dir] = -interior[1 + normal_dir];
      break;
    case BoundaryKind::GhostFromFunction:
      if (!bc.ghost) throw ConfigError("ghost boundary without a ghost function");
      ext = bc.ghost(x, t);
      break;
    case BoundaryKind::CharacteristicInflowOutflow: {
      double ratio = interior[State::RowsAtCompileTime - 1] / interior[0];
      for (auto [i, v] : bc.overrides) ext[i] = v;
      ext[State::RowsAtCompileTime - 1] = ratio * ext[0];
      break;
    }
    case BoundaryKind::Periodic:
      throw ContractError("periodic sides have no exterior trace");
  }
  return ext;
}

}  // namespace wbdg
