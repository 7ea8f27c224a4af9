#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "petk/arch.hpp"
#include "petk/bits.hpp"
#include "petk/netlist.hpp"
#include "petk/tech.hpp"

namespace petk {

struct EvalResult {
  BitVector outputs; // raw output bits
  std::optional<bool> valid;
  /// Output value after the netlist's index map (the reported MSHB index).
  std::uint64_t index = 0;
};

EvalResult evaluate(const Netlist& netlist, const BitVector& input);

/// Evaluates up to 64 input vectors at once, one per bit lane.
std::vector<EvalResult> evaluate_batch(const Netlist& netlist, std::span<const BitVector> inputs);

struct PathCell {
  std::size_t cell; // index into netlist.cells()
  int nmos;
  int pmos;
  double normalized;
};

struct DelayReport {
  double total = 0;
  std::vector<PathCell> path; // source side first
  std::optional<NetId> source;
  std::optional<NetId> sink;
};

/// Exact worst-case input-to-output delay by dynamic programming over the
/// topological order. Valid-logic cells count as zero delay and the valid
/// output is not an endpoint unless `include_valid` is set.
DelayReport longest_path(const Netlist& netlist, const TechParams& tech = {},
                         bool include_valid = false);

enum class StrategyKind { kExhaustive, kOneHot, kPrefixOnes, kRandom };

struct Strategy {
  StrategyKind kind = StrategyKind::kRandom;
  std::uint64_t seed = 0;
  std::size_t count = 10000;

  std::string name() const;
  static Strategy exhaustive() { return {StrategyKind::kExhaustive, 0, 0}; }
  static Strategy one_hot() { return {StrategyKind::kOneHot, 0, 0}; }
  static Strategy prefix_ones() { return {StrategyKind::kPrefixOnes, 0, 0}; }
  static Strategy random(std::uint64_t seed, std::size_t count) {
    return {StrategyKind::kRandom, seed, count};
  }
};

std::optional<StrategyKind> parse_strategy(std::string_view text);

/// Input vectors for a strategy. Exhaustive (n <= 16) includes zero; the
/// random strategy yields nonzero vectors and is seed-deterministic.
std::vector<BitVector> strategy_inputs(std::size_t n, const Strategy& strategy);

struct Mismatch {
  std::string input_hex;
  long long expected; // -1 when the input is zero
  long long got;      // -1 when the circuit reports invalid
};

struct VerificationReport {
  EncoderSpec spec;
  std::string strategy;
  std::size_t tested = 0;
  std::size_t mismatch_count = 0;
  std::vector<Mismatch> mismatches; // first kMaxListed only

  static constexpr std::size_t kMaxListed = 256;
  bool ok() const { return mismatch_count == 0; }
};

/// Reference index for a nonzero input. Defaults to floor(log2 x).
using Oracle = std::function<long long(const BitVector&)>;

VerificationReport verify(const Netlist& netlist, const EncoderSpec& spec, const Strategy& strategy,
                          const Oracle& oracle = {});
VerificationReport verify(const EncoderSpec& spec, const Strategy& strategy,
                          const Oracle& oracle = {});

} // namespace petk
