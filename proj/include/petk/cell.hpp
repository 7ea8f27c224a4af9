#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace petk {

// Atomic static-CMOS primitives. Everything wider (OR8 units, 4::1 muxes,
// OR trees) is a composite of these.
enum class CellKind : std::uint8_t {
  kNot,
  kNand2,
  kNand3,
  kNand4,
  kNor2,
  kNor4,
  kAnd2,
  kOr2,
  kOr4,  // atomic OR4: NOR4 followed by an inverter
  kMux2, // transistor-level 2::1 mux; inputs are (select, a, b)
};

inline constexpr std::size_t kCellKindCount = 10;

struct CellInfo {
  std::string_view name;
  int arity;
  int transistors;
  int nmos_crit; // series NMOS on the worst path through the cell
  int pmos_crit; // series PMOS on the worst path through the cell
};

inline constexpr std::array<CellInfo, kCellKindCount> kCellTable{{
    {"NOT", 1, 2, 0, 1},
    {"NAND2", 2, 4, 0, 1},
    {"NAND3", 3, 6, 3, 0},
    {"NAND4", 4, 8, 4, 0},
    {"NOR2", 2, 4, 0, 2},
    {"NOR4", 4, 8, 0, 4},
    {"AND2", 2, 6, 0, 2},
    {"OR2", 2, 6, 0, 3},
    {"OR4A", 4, 10, 0, 5},
    {"MUX2", 3, 8, 0, 2},
}};

inline constexpr std::array<CellKind, kCellKindCount> kAllCellKinds{
    CellKind::kNot,  CellKind::kNand2, CellKind::kNand3, CellKind::kNand4,
    CellKind::kNor2, CellKind::kNor4,  CellKind::kAnd2,  CellKind::kOr2,
    CellKind::kOr4,  CellKind::kMux2,
};

constexpr const CellInfo& cell_info(CellKind kind) {
  return kCellTable[static_cast<std::size_t>(kind)];
}

constexpr std::string_view to_string(CellKind kind) { return cell_info(kind).name; }

constexpr int arity(CellKind kind) { return cell_info(kind).arity; }

/// Normalized delay of one cell: NMOS count plus `ratio` times PMOS count.
constexpr double normalized_delay(CellKind kind, double ratio) {
  const auto& info = cell_info(kind);
  return info.nmos_crit + ratio * info.pmos_crit;
}

std::optional<CellKind> parse_cell_kind(std::string_view name);

} // namespace petk
