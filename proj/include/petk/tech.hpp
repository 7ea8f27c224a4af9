#pragma once

#include <map>

#include "petk/cell.hpp"

namespace petk {

enum class Mux2Variant { kAtomic8T, kCompositeGate };
enum class Mux4Variant { kThreeMux2, kGate36T };
enum class Or4Variant { kAtomic, kComposite };

// kLiteral evaluates the closed-form cost/delay expressions as written
// (piecewise branches applied at every width, wide mux as (x/y)*C(y)).
// kStructural evaluates the form that the netlist generators actually build.
enum class MuxModel { kLiteral, kStructural };

/// Technology parameters shared by the structural analyses and the
/// analytical model. Defaults are static CMOS with a 2:1 PMOS:NMOS ratio.
struct TechParams {
  double ratio = 2.0;
  std::map<CellKind, double> cost_overrides;
  Mux2Variant mux2 = Mux2Variant::kAtomic8T;
  Mux4Variant mux4 = Mux4Variant::kThreeMux2;
  Or4Variant or4 = Or4Variant::kAtomic;
  MuxModel mode = MuxModel::kLiteral;

  /// Transistor cost of an atomic cell. AND2, OR2 and OR4A derive from
  /// NAND2/NOR2/NOR4 plus an inverter unless overridden themselves.
  double cost(CellKind kind) const;
  double delay(CellKind kind) const { return normalized_delay(kind, ratio); }

  /// Throws SpecError when the ratio is below 1 or an override is negative.
  void validate() const;

  static TechParams structural() {
    TechParams t;
    t.mode = MuxModel::kStructural;
    return t;
  }
};

} // namespace petk
