#include "doctest.h"

#include "petk/circuit.hpp"
#include "petk/sim.hpp"

using namespace petk;

namespace {

// Independent reference: count the cells a hand-built OR tree would use.
int oracle_or_cost(std::size_t w) {
  if (w == 2) return 6;
  if (w == 4) return 10;
  if (w == 8) return 24;
  return static_cast<int>(w / 8) * 24 + oracle_or_cost(w / 8);
}

} // namespace

TEST_CASE("cell table constants") {
  CHECK(cell_info(CellKind::kNot).transistors == 2);
  CHECK(cell_info(CellKind::kNand2).transistors == 4);
  CHECK(cell_info(CellKind::kNor2).transistors == 4);
  CHECK(cell_info(CellKind::kNand3).transistors == 6);
  CHECK(cell_info(CellKind::kNand4).transistors == 8);
  CHECK(cell_info(CellKind::kNor4).transistors == 8);
  CHECK(cell_info(CellKind::kAnd2).transistors == 6);
  CHECK(cell_info(CellKind::kOr2).transistors == 6);
  CHECK(cell_info(CellKind::kOr4).transistors == 10);
  CHECK(cell_info(CellKind::kMux2).transistors == 8);
  TechParams t;
  for (CellKind k : kAllCellKinds) CHECK(t.cost(k) == cell_info(k).transistors);
}

TEST_CASE("cost overrides propagate to derived gates") {
  TechParams t;
  t.cost_overrides[CellKind::kNot] = 3;
  CHECK(t.cost(CellKind::kAnd2) == 7);
  CHECK(t.cost(CellKind::kOr2) == 7);
  CHECK(t.cost(CellKind::kOr4) == 11);
  t.cost_overrides[CellKind::kOr2] = 5;
  CHECK(t.cost(CellKind::kOr2) == 5);
  t.cost_overrides[CellKind::kNand2] = -1;
  CHECK_THROWS(t.validate());
}

TEST_CASE("OR tree structure") {
  auto or8 = circuit::build_or_tree(8);
  CHECK(or8.count(CellKind::kNor2) == 4);
  CHECK(or8.count(CellKind::kNand4) == 1);
  CHECK(transistor_count(or8) == 24);
  CHECK(longest_path(or8).total == 8);

  auto or2 = circuit::build_or_tree(2);
  CHECK(or2.cells().size() == 1);
  CHECK(transistor_count(or2) == 6);

  auto or32 = circuit::build_or_tree(32);
  CHECK(or32.count(CellKind::kNand4) == 4);
  CHECK(or32.count(CellKind::kOr4) == 1);
  CHECK(transistor_count(or32) == 106);
  CHECK(longest_path(or32).total == 18);

  for (std::size_t w = 2; w <= 4096; w *= 2) {
    auto nl = circuit::build_or_tree(w);
    CHECK(transistor_count(nl) == oracle_or_cost(w));
  }
  CHECK_THROWS(circuit::build_or_tree(12));
  CHECK_THROWS(circuit::build_or_tree(1));
}

TEST_CASE("OR tree is functionally an OR") {
  auto nl = circuit::build_or_tree(16);
  for (std::size_t i = 0; i < 16; ++i) {
    BitVector x(16);
    x.set(i);
    CHECK(evaluate(nl, x).outputs.get(0));
  }
  CHECK_FALSE(evaluate(nl, BitVector(16)).outputs.get(0));
}

TEST_CASE("single-bit mux trees") {
  CHECK(transistor_count(circuit::build_mux_single(2)) == 8);
  CHECK(transistor_count(circuit::build_mux_single(4)) == 24);
  CHECK(transistor_count(circuit::build_mux_single(8)) == 56);
  CHECK(circuit::build_mux_single(8).count(CellKind::kMux2) == 7);
  CHECK_THROWS(circuit::build_mux_single(6));

  // Every channel is reachable with its own select value.
  for (std::size_t c : {2u, 4u, 8u, 16u, 32u}) {
    auto nl = circuit::build_mux_single(c);
    int sel_bits = ilog2(c);
    for (std::size_t ch = 0; ch < c; ++ch) {
      BitVector x(c + sel_bits);
      x.set(ch);
      for (int b = 0; b < sel_bits; ++b) x.set(c + b, (ch >> b) & 1u);
      CHECK(evaluate(nl, x).outputs.get(0));
      x.set(ch, false);
      CHECK_FALSE(evaluate(nl, x).outputs.get(0));
    }
  }
}

TEST_CASE("wide mux") {
  auto m = circuit::build_mux_wide(4, 2);
  CHECK(m.count(CellKind::kMux2) == 2);
  CHECK(transistor_count(m) == 16);
  CHECK(transistor_count(circuit::build_mux_wide(64, 8)) == 448);
  auto big = circuit::build_mux_wide(2048, 32);
  CHECK(big.output_width() == 32);
  CHECK(big.input_width() == 2048 + 6);
  CHECK_THROWS(circuit::build_mux_wide(64, 7));
  CHECK_THROWS(circuit::build_mux_wide(8, 8));

  // Channel 2 of a 16::4 mux: data bits 8..11.
  auto nl = circuit::build_mux_wide(16, 4);
  BitVector x(16 + 2);
  x.set(9);
  x.set(11);
  x.set(16, false);
  x.set(17, true);
  auto r = evaluate(nl, x);
  CHECK(r.outputs == BitVector::from_u64(4, 0b1010));
}

TEST_CASE("mux-based SLPE") {
  auto s4 = circuit::build_slpe_mux(4);
  CHECK(s4.count(CellKind::kMux2) == 4);
  CHECK(transistor_count(s4) == 32);
  auto s8 = circuit::build_slpe_mux(8);
  CHECK(s8.count(CellKind::kMux2) == 16);
  CHECK(transistor_count(s8) == 128);
  CHECK(longest_path(s8).total == 24);
  CHECK(evaluate(s8, BitVector::from_u64(8, 0b00010110)).index == 4);
  CHECK_THROWS(circuit::build_slpe_mux(2));
  CHECK_THROWS(circuit::build_slpe_mux(12));

  // Stage count on the worst path is n - 2.
  for (std::size_t n = 4; n <= 256; n *= 2) {
    auto nl = circuit::build_slpe_mux(n);
    auto d = longest_path(nl);
    CHECK(d.path.size() == n - 2);
  }
}

TEST_CASE("gate-based SLPE") {
  CHECK(evaluate(circuit::build_slpe_gate(4), BitVector::from_u64(4, 0b0100)).index == 2);
  CHECK(evaluate(circuit::build_slpe_gate(8), BitVector::from_u64(8, 0x80)).index == 7);
  for (std::size_t n : {4u, 8u, 16u}) {
    auto g = circuit::build_slpe_gate(n);
    auto m = circuit::build_slpe_mux(n);
    for (const Cell& c : g.cells()) CHECK(arity(c.kind) <= 4);
    for (std::uint64_t x = 1; x < (std::uint64_t{1} << n); ++x) {
      auto in = BitVector::from_u64(n, x);
      REQUIRE(evaluate(g, in).index == evaluate(m, in).index);
    }
  }
  CHECK_THROWS(circuit::build_slpe_gate(32));
  CHECK_THROWS(circuit::build_slpe_gate(2));
}
