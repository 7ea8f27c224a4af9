#include "doctest.h"

#include <sstream>

#include "petk/arch.hpp"
#include "petk/hdl.hpp"
#include "petk/io.hpp"

using namespace petk;

namespace {

std::size_t count_between(const std::string& text, const std::string& begin, const std::string& end) {
  std::istringstream in(text);
  std::string line;
  bool inside = false;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line == begin) {
      inside = true;
    } else if (line == end) {
      inside = false;
    } else if (inside && !line.empty()) {
      ++count;
    }
  }
  return count;
}

} // namespace

TEST_CASE("one assignment per cell") {
  for (auto spec : {make_spec(Arch::kSlpeMux, 8), make_spec(Arch::kTree, 16), make_spec(Arch::kMlpeComposed, 64),
                    make_spec(Arch::kMlpeCascaded, 256, 3)}) {
    Netlist nl = generate(spec);
    CHECK(count_between(hdl::emit(nl, hdl::Dialect::kVhdl), "  -- cells", "  -- ports") ==
          nl.cells().size());
    CHECK(count_between(hdl::emit(nl, hdl::Dialect::kVerilog), "  // cells", "  // ports") ==
          nl.cells().size());
  }
}

TEST_CASE("goldens match") {
  for (auto spec : {make_spec(Arch::kSlpeMux, 8), make_spec(Arch::kTree, 16), make_spec(Arch::kMlpeComposed, 64)}) {
    Netlist nl = generate(spec);
    for (auto d : {hdl::Dialect::kVhdl, hdl::Dialect::kVerilog}) {
      std::string path = std::string(PETK_GOLDEN_DIR) + "/" + nl.name() + std::string(hdl::extension(d));
      CAPTURE(path);
      CHECK(hdl::emit(nl, d) == io::read_file(path));
    }
  }
}

TEST_CASE("emission is deterministic and dialect parsing") {
  Netlist nl = generate(make_spec(Arch::kRecursive, 64));
  CHECK(hdl::emit(nl, hdl::Dialect::kVerilog) == hdl::emit(generate(make_spec(Arch::kRecursive, 64)),
                                                           hdl::Dialect::kVerilog));
  CHECK(hdl::parse_dialect("vhdl") == hdl::Dialect::kVhdl);
  CHECK(hdl::parse_dialect("verilog") == hdl::Dialect::kVerilog);
  CHECK_FALSE(hdl::parse_dialect("chisel").has_value());
}
