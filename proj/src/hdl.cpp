#include "petk/hdl.hpp"

#include <cctype>
#include <filesystem>
#include <sstream>

#include "petk/error.hpp"
#include "petk/io.hpp"

namespace petk::hdl {
namespace {

std::string net(NetId id) { return "n" + std::to_string(id); }

std::string join(const Cell& c, std::string_view op) {
  std::string out;
  for (NetId in : c.inputs()) out += (out.empty() ? "" : std::string(op)) + net(in);
  return out;
}

std::string vhdl_expr(const Cell& c) {
  switch (c.kind) {
    case CellKind::kNot: return "not " + net(c.ins[0]);
    case CellKind::kNand2:
    case CellKind::kNand3:
    case CellKind::kNand4: return "not (" + join(c, " and ") + ")";
    case CellKind::kNor2:
    case CellKind::kNor4: return "not (" + join(c, " or ") + ")";
    case CellKind::kAnd2: return join(c, " and ");
    case CellKind::kOr2:
    case CellKind::kOr4: return join(c, " or ");
    case CellKind::kMux2:
      return net(c.ins[2]) + " when " + net(c.ins[0]) + " = '1' else " + net(c.ins[1]);
  }
  return {};
}

std::string verilog_expr(const Cell& c) {
  switch (c.kind) {
    case CellKind::kNot: return "~" + net(c.ins[0]);
    case CellKind::kNand2:
    case CellKind::kNand3:
    case CellKind::kNand4: return "~(" + join(c, " & ") + ")";
    case CellKind::kNor2:
    case CellKind::kNor4: return "~(" + join(c, " | ") + ")";
    case CellKind::kAnd2: return join(c, " & ");
    case CellKind::kOr2:
    case CellKind::kOr4: return join(c, " | ");
    case CellKind::kMux2: return net(c.ins[0]) + " ? " + net(c.ins[2]) + " : " + net(c.ins[1]);
  }
  return {};
}

void check_name(const std::string& name) {
  if (name.empty()) throw NetlistError("HDL emission needs a named netlist");
  if (!std::isalpha(static_cast<unsigned char>(name.front()))) {
    throw NetlistError("unit name '" + name + "' must start with a letter");
  }
  for (char ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') {
      throw NetlistError("unit name '" + name + "' is not a valid identifier");
    }
  }
}

std::string emit_vhdl(const Netlist& nl) {
  const std::string& name = nl.name();
  const bool complement = nl.index_map() == IndexMap::kComplement;
  std::ostringstream os;
  os << "library ieee;\nuse ieee.std_logic_1164.all;\n\n";
  os << "entity " << name << " is\n  port (\n";
  os << "    x : in std_logic_vector(" << nl.input_width() - 1 << " downto 0);\n";
  os << "    y : out std_logic_vector(" << nl.output_width() - 1 << " downto 0)";
  if (nl.valid()) os << ";\n    valid : out std_logic";
  os << "\n  );\nend entity " << name << ";\n\n";
  os << "architecture structural of " << name << " is\n";
  for (std::size_t i = 0; i < nl.net_count(); ++i) os << "  signal " << net(i) << " : std_logic;\n";
  os << "begin\n";
  for (std::size_t i = 0; i < nl.inputs().size(); ++i) {
    os << "  " << net(nl.inputs()[i]) << " <= x(" << i << ");\n";
  }
  for (const Constant& c : nl.constants()) {
    os << "  " << net(c.net) << " <= '" << (c.value ? '1' : '0') << "';\n";
  }
  os << "  -- cells\n";
  for (const Cell& c : nl.cells()) os << "  " << net(c.out) << " <= " << vhdl_expr(c) << ";\n";
  os << "  -- ports\n";
  for (std::size_t i = 0; i < nl.outputs().size(); ++i) {
    os << "  y(" << i << ") <= " << (complement ? "not " : "") << net(nl.outputs()[i]) << ";\n";
  }
  if (nl.valid()) os << "  valid <= " << net(*nl.valid()) << ";\n";
  os << "end architecture structural;\n";
  return os.str();
}

std::string emit_verilog(const Netlist& nl) {
  const bool complement = nl.index_map() == IndexMap::kComplement;
  std::ostringstream os;
  os << "module " << nl.name() << " (\n";
  os << "  input  wire [" << nl.input_width() - 1 << ":0] x,\n";
  os << "  output wire [" << nl.output_width() - 1 << ":0] y";
  if (nl.valid()) os << ",\n  output wire valid";
  os << "\n);\n";
  for (std::size_t i = 0; i < nl.net_count(); ++i) os << "  wire " << net(i) << ";\n";
  for (std::size_t i = 0; i < nl.inputs().size(); ++i) {
    os << "  assign " << net(nl.inputs()[i]) << " = x[" << i << "];\n";
  }
  for (const Constant& c : nl.constants()) {
    os << "  assign " << net(c.net) << " = 1'b" << (c.value ? '1' : '0') << ";\n";
  }
  os << "  // cells\n";
  for (const Cell& c : nl.cells()) os << "  assign " << net(c.out) << " = " << verilog_expr(c) << ";\n";
  os << "  // ports\n";
  for (std::size_t i = 0; i < nl.outputs().size(); ++i) {
    os << "  assign y[" << i << "] = " << (complement ? "~" : "") << net(nl.outputs()[i]) << ";\n";
  }
  if (nl.valid()) os << "  assign valid = " << net(*nl.valid()) << ";\n";
  os << "endmodule\n";
  return os.str();
}

} // namespace

std::optional<Dialect> parse_dialect(std::string_view text) {
  if (text == "vhdl" || text == "VHDL") return Dialect::kVhdl;
  if (text == "verilog" || text == "VERILOG" || text == "v") return Dialect::kVerilog;
  return std::nullopt;
}

std::string_view extension(Dialect dialect) { return dialect == Dialect::kVhdl ? ".vhd" : ".v"; }

std::string emit(const Netlist& netlist, Dialect dialect) {
  check_name(netlist.name());
  return dialect == Dialect::kVhdl ? emit_vhdl(netlist) : emit_verilog(netlist);
}

std::filesystem::path emit_file(const Netlist& netlist, Dialect dialect,
                                const std::filesystem::path& dir) {
  auto path = dir / (netlist.name() + std::string(extension(dialect)));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  io::write_file(path, emit(netlist, dialect));
  return path;
}

} // namespace petk::hdl
