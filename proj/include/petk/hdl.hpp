#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "petk/netlist.hpp"

namespace petk::hdl {

enum class Dialect { kVhdl, kVerilog };

std::optional<Dialect> parse_dialect(std::string_view text);
/// ".vhd" or ".v".
std::string_view extension(Dialect dialect);

/// Structural HDL for a netlist: port `x` (inputs), `y` (index), optional
/// `valid`; one signal per net named n<id>; one assignment per cell.
/// Throws NetlistError when the netlist has no name.
std::string emit(const Netlist& netlist, Dialect dialect);

/// Writes <dir>/<unit name><extension> and returns the path.
std::filesystem::path emit_file(const Netlist& netlist, Dialect dialect,
                                const std::filesystem::path& dir);

} // namespace petk::hdl
