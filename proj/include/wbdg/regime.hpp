#pragma once

#include <cmath>
#include <string>

namespace wbdg {

// Branch tag for the equilibrium -> conservative transform. For the Ripa model
// Subsonic/Supersonic read as subcritical/supercritical (Froude number).
enum class FlowRegime : unsigned char { Subsonic, Supersonic, Sonic };

using FroudeRegime = FlowRegime;

inline constexpr double kSonicBand = 1e-8;

// Regime of a state with Mach (or Froude) number m; inside the sonic band the
// previous tag is kept.
inline FlowRegime classify_number(double m, FlowRegime previous) {
  if (std::abs(m - 1.0) <= kSonicBand) return previous;
  return m < 1.0 ? FlowRegime::Subsonic : FlowRegime::Supersonic;
}

inline std::string to_string(FlowRegime r) {
  switch (r) {
    case FlowRegime::Subsonic: return "subsonic";
    case FlowRegime::Supersonic: return "supersonic";
    case FlowRegime::Sonic: return "sonic";
  }
  return "?";
}

}  // namespace wbdg
