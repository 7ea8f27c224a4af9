#include "doctest.h"

#include "petk/arch.hpp"
#include "petk/circuit.hpp"
#include "petk/error.hpp"
#include "petk/sim.hpp"

using namespace petk;

TEST_CASE("bit vector") {
  const std::string hex = "0x2" + std::string(16, '0') + "1";
  auto v = BitVector::from_hex(70, hex);
  CHECK(v.get(0));
  CHECK(v.get(69));
  CHECK(v.msb_index() == 69);
  CHECK(v.to_hex() == hex);
  CHECK(BitVector(8).msb_index() == -1);
  CHECK_THROWS(BitVector::from_hex(4, "0x1f"));
  CHECK_THROWS(BitVector::from_hex(8, "xyz"));
}

TEST_CASE("evaluate SLPE") {
  auto nl = generate(make_spec(Arch::kSlpeMux, 8));
  auto r = evaluate(nl, BitVector::from_u64(8, 1));
  CHECK(r.index == 0);
  CHECK(r.valid == true);
  CHECK(evaluate(nl, BitVector(8)).valid == false);
  CHECK_THROWS(evaluate(nl, BitVector(9)));
}

TEST_CASE("batch evaluation matches single evaluation") {
  auto nl = generate(make_spec(Arch::kRecursive, 64));
  auto inputs = strategy_inputs(64, Strategy::random(7, 64));
  auto batch = evaluate_batch(nl, inputs);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto single = evaluate(nl, inputs[i]);
    CHECK(single.index == batch[i].index);
    CHECK(single.valid == batch[i].valid);
  }
}

TEST_CASE("longest path") {
  CHECK(longest_path(circuit::build_or_tree(8)).total == 8);
  CHECK(longest_path(circuit::build_slpe_mux(8)).total == 24);

  NetlistBuilder b("inv");
  NetId a = b.add_input();
  b.set_outputs({b.add(CellKind::kNot, {a})});
  auto inv = std::move(b).finish();
  TechParams r3;
  r3.ratio = 3;
  CHECK(longest_path(inv, r3).total == 3);
  TechParams bad;
  bad.ratio = 0.5;
  CHECK_THROWS_AS(longest_path(inv, bad), SpecError);

  // Path bookkeeping: totals are the sum of the listed cells.
  auto nl = build_2lpe(256);
  auto d = longest_path(nl);
  double sum = 0;
  for (const auto& pc : d.path) sum += pc.nmos + 2.0 * pc.pmos;
  CHECK(sum == d.total);
  REQUIRE(d.source);
  CHECK(*d.source < 256);
}

TEST_CASE("valid logic is excluded from delay unless requested") {
  auto nl = generate(make_spec(Arch::kMlpeComposed, 256, 2));
  auto plain = longest_path(build_2lpe(256));
  CHECK(longest_path(nl).total == plain.total);
  CHECK(longest_path(nl, {}, true).total >= plain.total);

  // Adding a cell never shortens the longest path.
  NetlistBuilder b = NetlistBuilder::extend(build_2lpe(64));
  std::vector<NetId> outs(b.outputs().begin(), b.outputs().end());
  outs[0] = b.add(CellKind::kNot, {outs[0]});
  b.set_outputs(outs);
  auto longer = std::move(b).finish();
  CHECK(longest_path(longer).total >= longest_path(build_2lpe(64)).total);
}

TEST_CASE("strategies") {
  CHECK(strategy_inputs(8, Strategy::exhaustive()).size() == 256);
  CHECK(strategy_inputs(100, Strategy::one_hot()).size() == 100);
  auto prefix = strategy_inputs(16, Strategy::prefix_ones());
  CHECK(prefix.size() == 16);
  CHECK(prefix.back().msb_index() == 15);
  CHECK(prefix.front().msb_index() == 0);
  auto r1 = strategy_inputs(300, Strategy::random(42, 500));
  auto r2 = strategy_inputs(300, Strategy::random(42, 500));
  CHECK(r1 == r2);
  CHECK(r1 != strategy_inputs(300, Strategy::random(43, 500)));
  for (const auto& v : r1) CHECK(v.any());
  CHECK_THROWS_AS(strategy_inputs(32, Strategy::exhaustive()), SpecError);
}

TEST_CASE("verification harness") {
  auto r = verify(make_spec(Arch::kTree, 16), Strategy::exhaustive());
  CHECK(r.tested == 65536);
  CHECK(r.ok());
  auto rec = verify(make_spec(Arch::kRecursive, 256), Strategy::one_hot());
  CHECK(rec.tested == 256);
  CHECK(rec.ok());

  auto off = verify(make_spec(Arch::kSlpeMux, 8), Strategy::exhaustive(),
                    [](const BitVector& x) { return x.msb_index() + 1; });
  CHECK(off.mismatch_count == 255);
  CHECK(off.mismatches.front().input_hex == "0x01");
  CHECK(off.mismatches.front().expected == 1);
  CHECK(off.mismatches.front().got == 0);

  EncoderSpec native = make_spec(Arch::kTree, 64);
  native.convention = OutputConvention::kNative;
  CHECK(verify(native, Strategy::random(1, 2000)).ok());
}
