#include "petk/circuit.hpp"

#include <string>

#include "petk/bits.hpp"
#include "petk/error.hpp"

namespace petk::circuit {
namespace {

NetId or8_unit(NetlistBuilder& b, std::span<const NetId> ins) {
  NetId pairs[4];
  for (int i = 0; i < 4; ++i) pairs[i] = b.add(CellKind::kNor2, {ins[2 * i], ins[2 * i + 1]});
  return b.add(CellKind::kNand4, pairs);
}

NetId or_tree_impl(NetlistBuilder& b, std::span<const NetId> ins) {
  switch (ins.size()) {
    case 2: return b.add(CellKind::kOr2, ins);
    case 4: return b.add(CellKind::kOr4, ins);
    case 8: return or8_unit(b, ins);
    default: break;
  }
  std::vector<NetId> units;
  units.reserve(ins.size() / 8);
  for (std::size_t i = 0; i < ins.size(); i += 8) units.push_back(or8_unit(b, ins.subspan(i, 8)));
  return or_tree_impl(b, units);
}

NetId mux_single_impl(NetlistBuilder& b, std::span<const NetId> data, std::span<const NetId> sel) {
  if (data.size() == 2) return b.mux2(sel[0], data[0], data[1]);
  auto mux4 = [&](std::span<const NetId> d) {
    NetId lo = b.mux2(sel[0], d[0], d[1]);
    NetId hi = b.mux2(sel[0], d[2], d[3]);
    return b.mux2(sel[1], lo, hi);
  };
  if (data.size() == 4) return mux4(data);
  std::vector<NetId> units;
  units.reserve(data.size() / 4);
  for (std::size_t i = 0; i < data.size(); i += 4) units.push_back(mux4(data.subspan(i, 4)));
  return mux_single_impl(b, units, sel.subspan(2));
}

void require_pow2(std::size_t x, std::size_t min, const char* what) {
  if (x < min || !is_pow2(x)) {
    throw SpecError(std::string(what) + " must be a power of two >= " + std::to_string(min) +
                    ", got " + std::to_string(x));
  }
}

} // namespace

NetId or_tree(NetlistBuilder& b, std::span<const NetId> ins) {
  require_pow2(ins.size(), 2, "OR tree width");
  auto scope = b.scope(kTagOrTree);
  return or_tree_impl(b, ins);
}

NetId or_reduce(NetlistBuilder& b, std::span<const NetId> ins) {
  if (ins.empty()) throw SpecError("OR reduction needs at least one input");
  std::vector<NetId> level(ins.begin(), ins.end());
  while (level.size() > 1) {
    std::vector<NetId> next;
    std::size_t i = 0;
    for (; i + 4 <= level.size(); i += 4) {
      next.push_back(b.add(CellKind::kOr4, {level[i], level[i + 1], level[i + 2], level[i + 3]}));
    }
    std::size_t rest = level.size() - i;
    if (rest == 1) {
      next.push_back(level[i]);
    } else if (rest >= 2) {
      NetId t = b.add(CellKind::kOr2, {level[i], level[i + 1]});
      if (rest == 3) t = b.add(CellKind::kOr2, {t, level[i + 2]});
      next.push_back(t);
    }
    level = std::move(next);
  }
  return level.front();
}

NetId mux_single(NetlistBuilder& b, std::span<const NetId> data, std::span<const NetId> select) {
  require_pow2(data.size(), 2, "mux channel count");
  if (select.size() != static_cast<std::size_t>(ilog2(data.size()))) {
    throw SpecError("mux select width must be log2(channels)");
  }
  auto scope = b.scope(kTagMux);
  return mux_single_impl(b, data, select);
}

std::vector<NetId> mux_wide(NetlistBuilder& b, std::span<const NetId> data,
                            std::size_t bits_per_channel, std::span<const NetId> select) {
  if (bits_per_channel == 0 || data.size() % bits_per_channel != 0) {
    throw SpecError("mux channel width must divide the total width");
  }
  std::size_t channels = data.size() / bits_per_channel;
  if (channels < 2) throw SpecError("wide mux needs at least two channels");
  std::vector<NetId> out;
  out.reserve(bits_per_channel);
  std::vector<NetId> column(channels);
  for (std::size_t bit = 0; bit < bits_per_channel; ++bit) {
    for (std::size_t c = 0; c < channels; ++c) column[c] = data[c * bits_per_channel + bit];
    out.push_back(mux_single(b, column, select));
  }
  return out;
}

std::vector<NetId> slpe_mux(NetlistBuilder& b, std::span<const NetId> ins) {
  const std::size_t n = ins.size();
  require_pow2(n, 2, "SLPE input length");
  auto scope = b.scope(kTagEncoder);
  std::vector<NetId> current{ins[1]};
  for (std::size_t p = 2; p < n; ++p) {
    std::size_t width = std::bit_width(p);
    std::vector<NetId> next(width);
    for (std::size_t j = 0; j < width; ++j) {
      NetId keep = j < current.size() ? current[j] : b.constant(false);
      next[j] = b.mux2(ins[p], keep, b.constant(((p >> j) & 1u) != 0));
    }
    current = std::move(next);
  }
  return current;
}

std::vector<NetId> slpe_gate(NetlistBuilder& b, std::span<const NetId> ins) {
  const std::size_t n = ins.size();
  if (n < 2 || n > 16 || !is_pow2(n)) {
    throw SpecError("gate-based SLPE supports power-of-two n in [2, 16], got " + std::to_string(n));
  }
  auto scope = b.scope(kTagEncoder);
  // term[p] is high when input p is the most significant set bit.
  std::vector<NetId> term(n);
  term[n - 1] = ins[n - 1];
  for (std::size_t p = 1; p + 1 < n; ++p) {
    NetId above = or_reduce(b, ins.subspan(p + 1));
    term[p] = b.add(CellKind::kAnd2, {ins[p], b.add(CellKind::kNot, {above})});
  }
  const int bits = ilog2(n);
  std::vector<NetId> out(bits);
  for (int j = 0; j < bits; ++j) {
    std::vector<NetId> sel;
    for (std::size_t p = 1; p < n; ++p) {
      if ((p >> j) & 1u) sel.push_back(term[p]);
    }
    out[j] = or_reduce(b, sel);
  }
  return out;
}

Netlist build_or_tree(std::size_t width) {
  require_pow2(width, 2, "OR tree width");
  NetlistBuilder b("or_tree_" + std::to_string(width));
  auto ins = b.add_inputs(width);
  b.set_outputs({or_tree(b, ins)});
  return std::move(b).finish();
}

Netlist build_mux_single(std::size_t channels) {
  require_pow2(channels, 2, "mux channel count");
  NetlistBuilder b("mux_" + std::to_string(channels) + "_1");
  auto data = b.add_inputs(channels);
  auto sel = b.add_inputs(ilog2(channels));
  b.set_outputs({mux_single(b, data, sel)});
  return std::move(b).finish();
}

Netlist build_mux_wide(std::size_t total_bits, std::size_t bits_per_channel) {
  if (bits_per_channel == 0 || total_bits % bits_per_channel != 0) {
    throw SpecError("mux channel width must divide the total width");
  }
  std::size_t channels = total_bits / bits_per_channel;
  require_pow2(channels, 2, "wide mux channel count");
  NetlistBuilder b("mux_" + std::to_string(total_bits) + "_" + std::to_string(bits_per_channel));
  auto data = b.add_inputs(total_bits);
  auto sel = b.add_inputs(ilog2(channels));
  b.set_outputs(mux_wide(b, data, bits_per_channel, sel));
  return std::move(b).finish();
}

Netlist build_slpe_mux(std::size_t n) {
  require_pow2(n, 4, "SLPE input length");
  NetlistBuilder b("slpe_mux_" + std::to_string(n));
  auto ins = b.add_inputs(n);
  b.set_outputs(slpe_mux(b, ins));
  return std::move(b).finish();
}

Netlist build_slpe_gate(std::size_t n) {
  if (n < 4 || n > 16 || !is_pow2(n)) {
    throw SpecError("gate-based SLPE supports power-of-two n in [4, 16], got " + std::to_string(n));
  }
  NetlistBuilder b("slpe_gate_" + std::to_string(n));
  auto ins = b.add_inputs(n);
  b.set_outputs(slpe_gate(b, ins));
  return std::move(b).finish();
}

} // namespace petk::circuit
