#include "petk/cell.hpp"

#include <string>

#include "petk/error.hpp"
#include "petk/tech.hpp"

namespace petk {

std::optional<CellKind> parse_cell_kind(std::string_view name) {
  for (CellKind kind : kAllCellKinds) {
    if (to_string(kind) == name) return kind;
  }
  if (name == "OR4") return CellKind::kOr4;
  return std::nullopt;
}

double TechParams::cost(CellKind kind) const {
  if (auto it = cost_overrides.find(kind); it != cost_overrides.end()) return it->second;
  switch (kind) {
    case CellKind::kAnd2:
      return cost(CellKind::kNand2) + cost(CellKind::kNot);
    case CellKind::kOr2:
      return cost(CellKind::kNor2) + cost(CellKind::kNot);
    case CellKind::kOr4:
      return cost(CellKind::kNor4) + cost(CellKind::kNot);
    default:
      return cell_info(kind).transistors;
  }
}

void TechParams::validate() const {
  if (!(ratio >= 1.0)) {
    throw SpecError("PMOS:NMOS delay ratio must be at least 1, got " + std::to_string(ratio));
  }
  for (const auto& [kind, value] : cost_overrides) {
    if (value < 0) {
      throw SpecError("negative cost override for " + std::string(to_string(kind)));
    }
  }
}

} // namespace petk
