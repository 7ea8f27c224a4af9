#include "petk/arch.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "petk/bits.hpp"
#include "petk/circuit.hpp"
#include "petk/error.hpp"

namespace petk {
namespace {

using Nets = std::vector<NetId>;
using Encoder = std::function<Nets(NetlistBuilder&, std::span<const NetId>)>;

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

void require_pow2(std::size_t n, std::size_t min, std::string_view what) {
  if (n < min || !is_pow2(n)) {
    throw SpecError(std::string(what) + " requires a power-of-two n >= " + std::to_string(min) +
                    ", got " + std::to_string(n));
  }
}

bool composed_feasible(std::size_t n, int m) {
  if (n < 4) return false;
  if (m == 2) return true;
  auto s = detail::split_two_level(n);
  return composed_feasible(s.sizes[0], m - 1) && composed_feasible(s.sizes[1], m - 1);
}

std::optional<LevelSizing> try_size_cascaded(std::size_t n, int m) {
  int remaining = ilog2(n);
  LevelSizing s;
  for (int i = 1; i < m; ++i) {
    int levels_left = m - i + 1;
    int e = (remaining + levels_left - 1) / levels_left;
    if (e < 1) return std::nullopt;
    s.sizes.push_back(std::size_t{1} << e);
    remaining -= e;
  }
  if (remaining < 1) return std::nullopt;
  s.sizes.push_back(std::size_t{1} << remaining);
  return s;
}

bool cascaded_feasible(std::size_t n, int m) {
  if (m == 2) return composed_feasible(n, 2);
  auto s = try_size_cascaded(n, m);
  if (!s) return false;
  return cascaded_feasible(n / s->sizes.back(), m - 1);
}

// Shared two-level skeleton: OR slices -> coarse encoder -> wide mux ->
// fine encoder. `stage` receives the OR slice outputs.
Nets two_level(NetlistBuilder& b, std::span<const NetId> ins, std::size_t l1,
               const Encoder& coarse_enc, const Encoder& fine_enc, Nets* stage) {
  const std::size_t l2 = ins.size() / l1;
  Nets ors;
  ors.reserve(l1);
  for (std::size_t s = 0; s < l1; ++s) ors.push_back(circuit::or_tree(b, ins.subspan(s * l2, l2)));
  Nets coarse = coarse_enc(b, ors);
  Nets picked = circuit::mux_wide(b, ins, l2, coarse);
  Nets out = fine_enc(b, picked);
  out.insert(out.end(), coarse.begin(), coarse.end());
  if (stage) *stage = std::move(ors);
  return out;
}

Nets slpe(NetlistBuilder& b, std::span<const NetId> ins) { return circuit::slpe_mux(b, ins); }

Nets composed(NetlistBuilder& b, std::span<const NetId> ins, int m, Nets* stage) {
  auto s = detail::split_two_level(ins.size());
  if (m == 2) return two_level(b, ins, s.sizes[0], slpe, slpe, stage);
  Encoder sub = [m](NetlistBuilder& bb, std::span<const NetId> x) {
    return composed(bb, x, m - 1, nullptr);
  };
  return two_level(b, ins, s.sizes[0], sub, sub, stage);
}

Nets cascaded(NetlistBuilder& b, std::span<const NetId> ins, int m, Nets* stage) {
  if (m == 2) return composed(b, ins, 2, stage);
  const std::size_t lm = size_cascaded(ins.size(), m).sizes.back();
  Encoder inner = [m](NetlistBuilder& bb, std::span<const NetId> x) {
    return cascaded(bb, x, m - 1, nullptr);
  };
  return two_level(b, ins, ins.size() / lm, inner, slpe, stage);
}

struct WithValid {
  Nets out;
  NetId valid;
};

WithValid recursive(NetlistBuilder& b, std::span<const NetId> ins, std::size_t k) {
  const std::size_t n = ins.size();
  if (n <= k) {
    Nets out = slpe(b, ins);
    auto scope = b.scope(kTagValidLogic);
    return {std::move(out), circuit::or_tree(b, ins)};
  }
  const std::size_t sub_n = n / k;
  Nets sub_valid;
  Nets sub_out;
  for (std::size_t i = 0; i < k; ++i) {
    WithValid sub = recursive(b, ins.subspan(i * sub_n, sub_n), k);
    sub_valid.push_back(sub.valid);
    sub_out.insert(sub_out.end(), sub.out.begin(), sub.out.end());
  }
  Nets top = slpe(b, sub_valid);
  Nets out = circuit::mux_wide(b, sub_out, static_cast<std::size_t>(ilog2(sub_n)), top);
  out.insert(out.end(), top.begin(), top.end());
  NetId valid;
  {
    auto scope = b.scope(kTagValidLogic);
    valid = circuit::or_tree(b, sub_valid);
  }
  return {std::move(out), valid};
}

// Native tree: output counts leading zeros.
WithValid tree(NetlistBuilder& b, std::span<const NetId> ins) {
  const std::size_t n = ins.size();
  if (n == 2) {
    auto scope = b.scope(kTagEncoder);
    NetId out = b.add(CellKind::kNot, {ins[1]});
    return {{out}, b.add(CellKind::kOr2, {ins[1], ins[0]})};
  }
  WithValid lo = tree(b, ins.first(n / 2));
  WithValid hi = tree(b, ins.subspan(n / 2));
  Nets out;
  {
    auto scope = b.scope(kTagMux);
    for (std::size_t j = 0; j < lo.out.size(); ++j) out.push_back(b.mux2(hi.valid, lo.out[j], hi.out[j]));
  }
  auto scope = b.scope(kTagEncoder);
  out.push_back(b.add(CellKind::kNot, {hi.valid}));
  return {std::move(out), b.add(CellKind::kOr2, {hi.valid, lo.valid})};
}

Netlist finish_plain(NetlistBuilder&& b, Nets out, Nets stage) {
  b.set_outputs(std::move(out));
  b.set_valid_sources(std::move(stage));
  return std::move(b).finish();
}

void check_levels(int m) {
  if (m < 2 || m > 5) throw SpecError("level count m must be in [2, 5], got " + std::to_string(m));
}

} // namespace

std::string_view to_string(Arch arch) {
  switch (arch) {
    case Arch::kSlpeMux: return "SLPE_MUX";
    case Arch::kSlpeGate: return "SLPE_GATE";
    case Arch::kRecursive: return "RECURSIVE";
    case Arch::kTree: return "TREE";
    case Arch::kMlpeComposed: return "MLPE_COMPOSED";
    case Arch::kMlpeCascaded: return "MLPE_CASCADED";
  }
  return "?";
}

std::string_view to_string(ValidMethod method) {
  switch (method) {
    case ValidMethod::kStageOr: return "STAGE_OR";
    case ValidMethod::kLsbOr: return "LSB_OR";
    case ValidMethod::kNone: return "NONE";
  }
  return "?";
}

std::string_view to_string(OutputConvention convention) {
  return convention == OutputConvention::kStandard ? "STANDARD" : "NATIVE";
}

std::optional<ValidMethod> parse_valid_method(std::string_view text) {
  std::string t = lower(text);
  if (t == "stage_or" || t == "stage") return ValidMethod::kStageOr;
  if (t == "lsb_or" || t == "lsb") return ValidMethod::kLsbOr;
  if (t == "none") return ValidMethod::kNone;
  return std::nullopt;
}

std::optional<OutputConvention> parse_convention(std::string_view text) {
  std::string t = lower(text);
  if (t == "standard") return OutputConvention::kStandard;
  if (t == "native") return OutputConvention::kNative;
  return std::nullopt;
}

EncoderSpec make_spec(Arch arch, std::size_t n, int m) {
  EncoderSpec s;
  s.arch = arch;
  s.n = n;
  s.m = m;
  return s;
}

std::optional<EncoderSpec> parse_arch(std::string_view text) {
  std::string t = lower(text);
  EncoderSpec s;
  if (t == "slpe" || t == "slpe_mux") {
    s.arch = Arch::kSlpeMux;
  } else if (t == "slpe_gate" || t == "slpe_g") {
    s.arch = Arch::kSlpeGate;
  } else if (t == "rec" || t == "recursive") {
    s.arch = Arch::kRecursive;
  } else if (t == "tree") {
    s.arch = Arch::kTree;
  } else if (t == "2lpe") {
    s.arch = Arch::kMlpeComposed;
  } else if (t == "composed" || t == "mlpe_composed" || t == "mlpe_o") {
    s.arch = Arch::kMlpeComposed;
    s.m = 3;
  } else if (t == "cascaded" || t == "mlpe_cascaded" || t == "mlpe_a") {
    s.arch = Arch::kMlpeCascaded;
    s.m = 3;
  } else if (t.size() == 6 && t.substr(1, 4) == "lpe_" && t[0] >= '2' && t[0] <= '9' &&
             (t[5] == 'o' || t[5] == 'a')) {
    s.arch = t[5] == 'o' ? Arch::kMlpeComposed : Arch::kMlpeCascaded;
    s.m = t[0] - '0';
  } else {
    return std::nullopt;
  }
  return s;
}

std::string EncoderSpec::label() const {
  switch (arch) {
    case Arch::kSlpeMux: return "SLPE";
    case Arch::kSlpeGate: return "SLPE-G";
    case Arch::kRecursive: return k == 4 ? "Rec" : "Rec(k=" + std::to_string(k) + ")";
    case Arch::kTree: return "Tree";
    case Arch::kMlpeComposed:
    case Arch::kMlpeCascaded:
      if (m == 2) return "2LPE";
      return std::to_string(m) + "LPE-" + (arch == Arch::kMlpeComposed ? "O" : "A");
  }
  return "?";
}

std::string EncoderSpec::unit_name() const {
  std::string name = "pe_";
  switch (arch) {
    case Arch::kSlpeMux: name += "slpe_mux"; break;
    case Arch::kSlpeGate: name += "slpe_gate"; break;
    case Arch::kRecursive: name += "recursive"; break;
    case Arch::kTree: name += "tree"; break;
    case Arch::kMlpeComposed: name += m == 2 ? "2lpe" : "composed"; break;
    case Arch::kMlpeCascaded: name += m == 2 ? "2lpe" : "cascaded"; break;
  }
  name += "_" + std::to_string(n);
  if (is_mlpe() && m != 2) name += "_m" + std::to_string(m);
  if (arch == Arch::kRecursive && k != 4) name += "_k" + std::to_string(k);
  if (arch == Arch::kTree && convention == OutputConvention::kNative) name += "_native";
  return name;
}

std::optional<std::string> EncoderSpec::infeasibility() const {
  try {
    validate();
  } catch (const SpecError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

void EncoderSpec::validate() const {
  switch (arch) {
    case Arch::kSlpeMux:
      require_pow2(n, 4, "SLPE");
      break;
    case Arch::kSlpeGate:
      require_pow2(n, 4, "gate-based SLPE");
      if (n > 16) throw SpecError("gate-based SLPE supports n <= 16");
      break;
    case Arch::kRecursive:
      if (k < 2 || !is_pow2(static_cast<std::size_t>(k))) {
        throw SpecError("recursive k must be a power of two >= 2");
      }
      require_pow2(n, 2, "recursive PE");
      if (n <= static_cast<std::size_t>(k)) throw SpecError("recursive PE requires n > k");
      break;
    case Arch::kTree:
      require_pow2(n, 2, "tree PE");
      break;
    case Arch::kMlpeComposed:
    case Arch::kMlpeCascaded:
      check_levels(m);
      require_pow2(n, 16, label());
      if (!(arch == Arch::kMlpeComposed ? composed_feasible(n, m) : cascaded_feasible(n, m))) {
        throw SpecError(label() + " is infeasible at n=" + std::to_string(n) +
                        ": a sub-encoder would have fewer than 2 inputs");
      }
      break;
  }
  if ((arch == Arch::kTree || arch == Arch::kRecursive) && valid == ValidMethod::kLsbOr) {
    throw SpecError(label() + " produces its valid signal intrinsically; LSB_OR is not supported");
  }
  if (convention == OutputConvention::kNative && arch != Arch::kTree) {
    throw SpecError("NATIVE output convention applies to the tree PE only");
  }
}

std::size_t LevelSizing::product() const {
  std::size_t p = 1;
  for (std::size_t s : sizes) p *= s;
  return p;
}

LevelSizing detail::split_two_level(std::size_t n) {
  require_pow2(n, 4, "two-level sizing");
  int a = ilog2(n);
  int e1 = (a + 1) / 2;
  return LevelSizing{{std::size_t{1} << e1, std::size_t{1} << (a - e1)}};
}

LevelSizing size_two_level(std::size_t n) {
  require_pow2(n, 16, "two-level sizing");
  return detail::split_two_level(n);
}

LevelSizing size_cascaded(std::size_t n, int m) {
  if (m < 2) throw SpecError("cascaded sizing requires m >= 2");
  require_pow2(n, 4, "cascaded sizing");
  auto s = try_size_cascaded(n, m);
  if (!s) {
    throw SpecError("cascaded sizing infeasible for n=" + std::to_string(n) +
                    ", m=" + std::to_string(m));
  }
  return *s;
}

Netlist build_2lpe(std::size_t n) { return build_mlpe_composed(n, 2); }

Netlist build_mlpe_composed(std::size_t n, int m) {
  EncoderSpec spec = make_spec(Arch::kMlpeComposed, n, m);
  spec.validate();
  NetlistBuilder b(spec.unit_name());
  Nets ins = b.add_inputs(n);
  Nets stage;
  Nets out = composed(b, ins, m, &stage);
  return finish_plain(std::move(b), std::move(out), std::move(stage));
}

Netlist build_mlpe_cascaded(std::size_t n, int m) {
  EncoderSpec spec = make_spec(Arch::kMlpeCascaded, n, m);
  spec.validate();
  NetlistBuilder b(spec.unit_name());
  Nets ins = b.add_inputs(n);
  Nets stage;
  Nets out = cascaded(b, ins, m, &stage);
  return finish_plain(std::move(b), std::move(out), std::move(stage));
}

Netlist build_recursive(std::size_t n, int k) {
  EncoderSpec spec = make_spec(Arch::kRecursive, n);
  spec.k = k;
  spec.validate();
  NetlistBuilder b(spec.unit_name());
  Nets ins = b.add_inputs(n);
  WithValid r = recursive(b, ins, static_cast<std::size_t>(k));
  b.set_outputs(std::move(r.out));
  b.set_valid(r.valid);
  return std::move(b).finish();
}

Netlist build_tree(std::size_t n, OutputConvention convention) {
  EncoderSpec spec = make_spec(Arch::kTree, n);
  spec.convention = convention;
  spec.validate();
  NetlistBuilder b(spec.unit_name());
  Nets ins = b.add_inputs(n);
  WithValid t = tree(b, ins);
  b.set_outputs(std::move(t.out));
  b.set_valid(t.valid);
  if (convention == OutputConvention::kStandard) b.set_index_map(IndexMap::kComplement);
  return std::move(b).finish();
}

Netlist attach_valid(const Netlist& netlist, ValidMethod method) {
  if (netlist.valid()) throw SpecError("netlist '" + netlist.name() + "' already has a valid output");
  if (method == ValidMethod::kNone) return netlist;
  NetlistBuilder b = NetlistBuilder::extend(netlist);
  auto scope = b.scope(kTagValidLogic);
  NetId valid;
  if (method == ValidMethod::kStageOr) {
    std::span<const NetId> src =
        netlist.valid_sources().empty() ? netlist.inputs() : netlist.valid_sources();
    if (!is_pow2(src.size())) throw SpecError("stage OR needs a power-of-two source width");
    valid = src.size() == 1 ? src.front() : circuit::or_tree(b, src);
  } else {
    if (netlist.inputs().empty()) throw SpecError("LSB_OR valid needs at least one input");
    Nets terms{netlist.inputs().front()};
    terms.insert(terms.end(), netlist.outputs().begin(), netlist.outputs().end());
    valid = circuit::or_reduce(b, terms);
  }
  b.set_valid(valid);
  return std::move(b).finish();
}

Netlist generate(const EncoderSpec& spec) {
  spec.validate();
  Netlist base = [&] {
    switch (spec.arch) {
      case Arch::kSlpeMux: {
        NetlistBuilder b(spec.unit_name());
        Nets ins = b.add_inputs(spec.n);
        Nets out = circuit::slpe_mux(b, ins);
        return finish_plain(std::move(b), std::move(out), ins);
      }
      case Arch::kSlpeGate: {
        NetlistBuilder b(spec.unit_name());
        Nets ins = b.add_inputs(spec.n);
        Nets out = circuit::slpe_gate(b, ins);
        return finish_plain(std::move(b), std::move(out), ins);
      }
      case Arch::kRecursive: return build_recursive(spec.n, spec.k);
      case Arch::kTree: return build_tree(spec.n, spec.convention);
      case Arch::kMlpeComposed: return build_mlpe_composed(spec.n, spec.m);
      case Arch::kMlpeCascaded: return build_mlpe_cascaded(spec.n, spec.m);
    }
    throw SpecError("unknown architecture");
  }();

  if (spec.arch == Arch::kTree || spec.arch == Arch::kRecursive) {
    if (spec.valid == ValidMethod::kStageOr) return base;
    // Drop the exposed valid port; the OR logic stays since the data path
    // of these encoders depends on it.
    NetlistBuilder b = NetlistBuilder::extend(base);
    b.set_valid(std::nullopt);
    return std::move(b).finish();
  }
  return attach_valid(base, spec.valid);
}

} // namespace petk
