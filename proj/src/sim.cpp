#include "petk/sim.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "petk/error.hpp"

namespace petk {
namespace {

std::uint64_t eval_cell(const Cell& c, const std::vector<std::uint64_t>& v) {
  auto in = [&](int i) { return v[c.ins[i]]; };
  switch (c.kind) {
    case CellKind::kNot: return ~in(0);
    case CellKind::kNand2: return ~(in(0) & in(1));
    case CellKind::kNand3: return ~(in(0) & in(1) & in(2));
    case CellKind::kNand4: return ~(in(0) & in(1) & in(2) & in(3));
    case CellKind::kNor2: return ~(in(0) | in(1));
    case CellKind::kNor4: return ~(in(0) | in(1) | in(2) | in(3));
    case CellKind::kAnd2: return in(0) & in(1);
    case CellKind::kOr2: return in(0) | in(1);
    case CellKind::kOr4: return in(0) | in(1) | in(2) | in(3);
    case CellKind::kMux2: return (in(0) & in(2)) | (~in(0) & in(1));
  }
  return 0;
}

std::uint64_t report_index(const Netlist& nl, std::uint64_t raw) {
  if (nl.index_map() == IndexMap::kComplement) {
    std::uint64_t mask = nl.output_width() >= 64 ? ~std::uint64_t{0}
                                                  : (std::uint64_t{1} << nl.output_width()) - 1;
    return ~raw & mask;
  }
  return raw;
}

} // namespace

std::vector<EvalResult> evaluate_batch(const Netlist& netlist, std::span<const BitVector> inputs) {
  if (inputs.size() > 64) throw SpecError("evaluate_batch handles at most 64 vectors");
  if (netlist.output_width() > 64) throw SpecError("outputs wider than 64 bits are not supported");
  std::vector<std::uint64_t> v(netlist.net_count(), 0);
  const auto pis = netlist.inputs();
  for (std::size_t lane = 0; lane < inputs.size(); ++lane) {
    if (inputs[lane].width() != pis.size()) {
      throw SpecError("input width " + std::to_string(inputs[lane].width()) +
                      " does not match netlist width " + std::to_string(pis.size()));
    }
    const auto& words = inputs[lane].words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
        v[pis[w * 64 + std::countr_zero(bits)]] |= std::uint64_t{1} << lane;
      }
    }
  }
  for (const Constant& c : netlist.constants()) v[c.net] = c.value ? ~std::uint64_t{0} : 0;
  for (const Cell& c : netlist.cells()) v[c.out] = eval_cell(c, v);

  std::vector<EvalResult> results(inputs.size());
  const auto pos = netlist.outputs();
  for (std::size_t lane = 0; lane < inputs.size(); ++lane) {
    EvalResult& r = results[lane];
    r.outputs = BitVector(pos.size());
    std::uint64_t raw = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      bool bit = (v[pos[i]] >> lane) & 1u;
      r.outputs.set(i, bit);
      raw |= static_cast<std::uint64_t>(bit) << i;
    }
    r.index = report_index(netlist, raw);
    if (auto valid = netlist.valid()) r.valid = ((v[*valid] >> lane) & 1u) != 0;
  }
  return results;
}

EvalResult evaluate(const Netlist& netlist, const BitVector& input) {
  return evaluate_batch(netlist, std::span<const BitVector>(&input, 1)).front();
}

DelayReport longest_path(const Netlist& netlist, const TechParams& tech, bool include_valid) {
  tech.validate();
  constexpr double kNever = -std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> arrival(netlist.net_count(), kNever);
  std::vector<std::size_t> driver(netlist.net_count(), kNone);
  std::vector<NetId> critical_in(netlist.net_count(), 0);
  for (NetId in : netlist.inputs()) arrival[in] = 0;

  const auto cells = netlist.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    double latest = kNever;
    NetId from = c.ins[0];
    for (NetId in : c.inputs()) {
      if (arrival[in] > latest) {
        latest = arrival[in];
        from = in;
      }
    }
    bool counted = include_valid || !c.has(kTagValidLogic);
    arrival[c.out] = latest == kNever ? kNever : latest + (counted ? tech.delay(c.kind) : 0.0);
    driver[c.out] = i;
    critical_in[c.out] = from;
  }

  std::vector<NetId> endpoints(netlist.outputs().begin(), netlist.outputs().end());
  if (include_valid && netlist.valid()) endpoints.push_back(*netlist.valid());
  DelayReport report;
  std::optional<NetId> sink;
  double best = kNever;
  for (NetId e : endpoints) {
    if (arrival[e] > best) {
      best = arrival[e];
      sink = e;
    }
  }
  if (!sink) return report;
  report.total = best;
  report.sink = sink;
  NetId net = *sink;
  while (driver[net] != kNone) {
    std::size_t i = driver[net];
    const Cell& c = cells[i];
    bool counted = include_valid || !c.has(kTagValidLogic);
    const CellInfo& info = cell_info(c.kind);
    report.path.push_back(counted ? PathCell{i, info.nmos_crit, info.pmos_crit, tech.delay(c.kind)}
                                  : PathCell{i, 0, 0, 0.0});
    net = critical_in[net];
  }
  std::reverse(report.path.begin(), report.path.end());
  report.source = net;
  return report;
}

std::string Strategy::name() const {
  switch (kind) {
    case StrategyKind::kExhaustive: return "exhaustive";
    case StrategyKind::kOneHot: return "one-hot";
    case StrategyKind::kPrefixOnes: return "prefix-ones";
    case StrategyKind::kRandom:
      return "random(seed=" + std::to_string(seed) + ",count=" + std::to_string(count) + ")";
  }
  return "?";
}

std::optional<StrategyKind> parse_strategy(std::string_view text) {
  if (text == "exhaustive") return StrategyKind::kExhaustive;
  if (text == "one-hot" || text == "onehot") return StrategyKind::kOneHot;
  if (text == "prefix-ones" || text == "prefix") return StrategyKind::kPrefixOnes;
  if (text == "random") return StrategyKind::kRandom;
  return std::nullopt;
}

std::vector<BitVector> strategy_inputs(std::size_t n, const Strategy& strategy) {
  std::vector<BitVector> out;
  switch (strategy.kind) {
    case StrategyKind::kExhaustive: {
      if (n > 16) throw SpecError("exhaustive verification is limited to n <= 16");
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) out.push_back(BitVector::from_u64(n, x));
      break;
    }
    case StrategyKind::kOneHot:
      for (std::size_t i = 0; i < n; ++i) {
        BitVector v(n);
        v.set(i);
        out.push_back(std::move(v));
      }
      break;
    case StrategyKind::kPrefixOnes:
      // The low j bits set, j = 1..n.
      for (std::size_t j = 1; j <= n; ++j) {
        BitVector v(n);
        for (std::size_t i = 0; i < j; ++i) v.set(i);
        out.push_back(std::move(v));
      }
      break;
    case StrategyKind::kRandom: {
      std::mt19937_64 rng(strategy.seed);
      std::uniform_int_distribution<std::size_t> top_dist(0, n - 1);
      out.reserve(strategy.count);
      while (out.size() < strategy.count) {
        BitVector v(n);
        for (auto& w : v.words()) w = rng();
        if (n % 64 != 0) v.words().back() &= (std::uint64_t{1} << (n % 64)) - 1;
        // Every other vector gets a random number of leading zeros so the
        // MSHB position is spread across the whole range.
        if (out.size() % 2 == 1) {
          std::size_t top = top_dist(rng);
          for (std::size_t i = top + 1; i < n; ++i) v.set(i, false);
          v.set(top);
        }
        if (v.any()) out.push_back(std::move(v));
      }
      break;
    }
  }
  return out;
}

VerificationReport verify(const Netlist& netlist, const EncoderSpec& spec, const Strategy& strategy,
                          const Oracle& oracle) {
  VerificationReport report;
  report.spec = spec;
  report.strategy = strategy.name();
  const std::size_t n = netlist.input_width();
  const bool native = spec.arch == Arch::kTree && spec.convention == OutputConvention::kNative;
  auto expected_of = [&](const BitVector& x) -> long long {
    if (!x.any()) return -1;
    long long idx = oracle ? oracle(x) : x.msb_index();
    return native ? static_cast<long long>(n) - 1 - idx : idx;
  };

  std::vector<BitVector> inputs = strategy_inputs(n, strategy);
  for (std::size_t base = 0; base < inputs.size(); base += 64) {
    std::size_t len = std::min<std::size_t>(64, inputs.size() - base);
    auto chunk = std::span<const BitVector>(inputs).subspan(base, len);
    auto results = evaluate_batch(netlist, chunk);
    for (std::size_t i = 0; i < len; ++i) {
      const BitVector& x = chunk[i];
      const EvalResult& r = results[i];
      long long expected = expected_of(x);
      bool bad;
      long long got;
      if (r.valid) {
        got = *r.valid ? static_cast<long long>(r.index) : -1;
        bad = got != expected;
      } else {
        got = static_cast<long long>(r.index);
        bad = expected >= 0 && got != expected;
      }
      ++report.tested;
      if (bad) {
        ++report.mismatch_count;
        if (report.mismatches.size() < VerificationReport::kMaxListed) {
          report.mismatches.push_back({x.to_hex(), expected, got});
        }
      }
    }
  }
  return report;
}

VerificationReport verify(const EncoderSpec& spec, const Strategy& strategy, const Oracle& oracle) {
  return verify(generate(spec), spec, strategy, oracle);
}

} // namespace petk
