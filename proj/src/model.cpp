#include "petk/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "petk/bits.hpp"
#include "petk/error.hpp"

namespace petk::model {
namespace {

bool literal(const TechParams& t) { return t.mode == MuxModel::kLiteral; }

void require_width(double x, double min, const char* what) {
  if (!(x >= min) || !std::isfinite(x)) {
    throw SpecError(std::string(what) + " must be >= " + std::to_string(min));
  }
}

void require_pow2_width(double x, double min, const char* what) {
  require_width(x, min, what);
  if (x != std::floor(x) || !is_pow2(static_cast<std::uint64_t>(x))) {
    throw SpecError(std::string(what) + " must be a power of two in structural mode, got " +
                    std::to_string(x));
  }
}

int floor_log2(double x) { return static_cast<int>(std::floor(std::log2(x) + 1e-9)); }

LevelSizing split(std::size_t n) { return detail::split_two_level(n); }

CostBreakdown bd_slpe(double n, const TechParams& t) { return {0, 0, cost_slpe(n, t)}; }

CostBreakdown bd_2lpe(std::size_t n, const TechParams& t) {
  auto s = split(n);
  double l1 = static_cast<double>(s.sizes[0]), l2 = static_cast<double>(s.sizes[1]);
  return {l1 * cost_or(l2, t), cost_mux_wide(static_cast<double>(n), l2, t),
          cost_slpe(l1, t) + cost_slpe(l2, t)};
}

CostBreakdown bd_composed(std::size_t n, int m, const TechParams& t) {
  if (m == 2) return bd_2lpe(n, t);
  auto s = split(n);
  double l2 = static_cast<double>(s.sizes[1]);
  CostBreakdown b{static_cast<double>(s.sizes[0]) * cost_or(l2, t),
                  cost_mux_wide(static_cast<double>(n), l2, t), 0};
  b += bd_composed(s.sizes[0], m - 1, t);
  b += bd_composed(s.sizes[1], m - 1, t);
  return b;
}

CostBreakdown bd_cascaded(std::size_t n, int m, const TechParams& t) {
  if (m == 2) return bd_2lpe(n, t);
  std::size_t lm = size_cascaded(n, m).sizes.back();
  double slices = static_cast<double>(n / lm), w = static_cast<double>(lm);
  CostBreakdown b{slices * cost_or(w, t), cost_mux_wide(static_cast<double>(n), w, t),
                  cost_slpe(w, t)};
  b += bd_cascaded(n / lm, m - 1, t);
  return b;
}

CostBreakdown bd_recursive(double n, int k, const TechParams& t) {
  if (n <= k) return bd_slpe(n, t);
  double kk = k;
  CostBreakdown b{0, 0, cost_slpe(kk, t)};
  if (literal(t)) {
    double w = w_R(n, k);
    b.muxes = cost_mux_wide(kk * w, w, t);
  } else {
    b.muxes = std::log2(n / kk) * cost_mux_single(kk, t);
  }
  CostBreakdown sub = bd_recursive(n / kk, k, t);
  b.or_gates += kk * sub.or_gates;
  b.muxes += kk * sub.muxes;
  b.sub_encoders += kk * sub.sub_encoders;
  return b;
}

CostBreakdown bd_tree(double n, const TechParams& t) {
  double pe = t.cost(CellKind::kNot) + t.cost(CellKind::kOr2);
  if (n <= 2) return {0, 0, pe};
  CostBreakdown sub = bd_tree(n / 2, t);
  return {2 * sub.or_gates, (floor_log2(n) - 1) * cost_mux2(t) + 2 * sub.muxes,
          pe + 2 * sub.sub_encoders};
}

// Structural tree timing: data outputs and valid arrive at different times.
struct TreeTiming {
  double data;
  double valid;
};

TreeTiming tree_timing(double n, const TechParams& t) {
  if (n <= 2) return {t.delay(CellKind::kNot), t.delay(CellKind::kOr2)};
  TreeTiming sub = tree_timing(n / 2, t);
  double data = std::max(sub.valid + t.delay(CellKind::kNot),
                         std::max(sub.valid, sub.data) + delay_mux2(t));
  return {data, sub.valid + t.delay(CellKind::kOr2)};
}

} // namespace

double cost_mux2(const TechParams& t) {
  if (t.mux2 == Mux2Variant::kCompositeGate) return t.cost(CellKind::kNot) + 3 * t.cost(CellKind::kNand2);
  return t.cost(CellKind::kMux2);
}

double delay_mux2(const TechParams& t) {
  if (t.mux2 == Mux2Variant::kCompositeGate) return t.delay(CellKind::kNot) + 2 * t.delay(CellKind::kNand2);
  return t.delay(CellKind::kMux2);
}

double cost_mux4(const TechParams& t) {
  if (t.mux4 == Mux4Variant::kGate36T) {
    return 4 * t.cost(CellKind::kNand3) + t.cost(CellKind::kNand4) + 2 * t.cost(CellKind::kNot);
  }
  return 3 * cost_mux2(t);
}

double delay_mux4(const TechParams& t) {
  if (t.mux4 == Mux4Variant::kGate36T) {
    return t.delay(CellKind::kNot) + t.delay(CellKind::kNand3) + t.delay(CellKind::kNand4);
  }
  return 2 * delay_mux2(t);
}

double cost_or4(const TechParams& t) {
  if (t.or4 == Or4Variant::kComposite) return 2 * t.cost(CellKind::kNor2) + t.cost(CellKind::kNand2);
  return t.cost(CellKind::kOr4);
}

double delay_or4(const TechParams& t) {
  if (t.or4 == Or4Variant::kComposite) return t.delay(CellKind::kNor2) + t.delay(CellKind::kNand2);
  return t.delay(CellKind::kOr4);
}

double cost_or8u(const TechParams& t) { return 4 * t.cost(CellKind::kNor2) + t.cost(CellKind::kNand4); }

double delay_or8u(const TechParams& t) { return t.delay(CellKind::kNor2) + t.delay(CellKind::kNand4); }

double cost_or(double x, const TechParams& t) {
  if (literal(t)) {
    require_width(x, 1, "OR width");
    double q = x / 8;
    double units = q * cost_or8u(t);
    if (q <= 2) return t.cost(CellKind::kOr2) + units;
    if (q <= 4) return cost_or4(t) + units;
    if (q <= 8) return cost_or8u(t) + units;
    return cost_or(q, t) + units;
  }
  require_pow2_width(x, 2, "OR width");
  if (x == 2) return t.cost(CellKind::kOr2);
  if (x == 4) return cost_or4(t);
  if (x == 8) return cost_or8u(t);
  return (x / 8) * cost_or8u(t) + cost_or(x / 8, t);
}

double delay_or(double x, const TechParams& t) {
  if (literal(t)) {
    require_width(x, 1, "OR width");
    double q = x / 8;
    if (q <= 2) return t.delay(CellKind::kOr2) + delay_or8u(t);
    if (q <= 4) return delay_or4(t) + delay_or8u(t);
    if (q <= 8) return 2 * delay_or8u(t);
    return delay_or(q, t) + delay_or8u(t);
  }
  require_pow2_width(x, 2, "OR width");
  if (x == 2) return t.delay(CellKind::kOr2);
  if (x == 4) return delay_or4(t);
  if (x == 8) return delay_or8u(t);
  return delay_or8u(t) + delay_or(x / 8, t);
}

double cost_mux_single(double x, const TechParams& t) {
  if (literal(t)) {
    require_width(x, 1e-9, "mux width");
    double q = x / 4;
    double units = q * cost_mux4(t);
    if (q <= 2) return cost_mux2(t) + units;
    if (q <= 4) return cost_mux4(t) + units;
    return cost_mux_single(q, t) + units;
  }
  require_pow2_width(x, 2, "mux channel count");
  if (x == 2) return cost_mux2(t);
  if (x == 4) return cost_mux4(t);
  return (x / 4) * cost_mux4(t) + cost_mux_single(x / 4, t);
}

double delay_mux_single(double x, const TechParams& t) {
  if (literal(t)) {
    require_width(x, 1e-9, "mux width");
    double q = x / 4;
    if (q <= 2) return delay_mux2(t) + delay_mux4(t);
    if (q <= 4) return 2 * delay_mux4(t);
    return delay_mux_single(q, t) + delay_mux4(t);
  }
  require_pow2_width(x, 2, "mux channel count");
  if (x == 2) return delay_mux2(t);
  if (x == 4) return delay_mux4(t);
  return delay_mux4(t) + delay_mux_single(x / 4, t);
}

double cost_mux_wide(double x, double y, const TechParams& t) {
  require_width(y, 1e-9, "mux channel width");
  if (literal(t)) return x / y * cost_mux_single(y, t);
  if (std::fmod(x, y) != 0) throw SpecError("mux channel width must divide the total width");
  return y * cost_mux_single(x / y, t);
}

double delay_mux_wide(double x, double y, const TechParams& t) {
  require_width(y, 1e-9, "mux channel width");
  if (literal(t)) return delay_mux_single(y, t);
  if (std::fmod(x, y) != 0) throw SpecError("mux channel width must divide the total width");
  return delay_mux_single(x / y, t);
}

double slpe_mux_count(double n) {
  double count = 0;
  for (int i = 2; i <= floor_log2(n); ++i) count += i * std::ldexp(1.0, i - 1);
  return count;
}

double cost_slpe(double n, const TechParams& t) {
  if (literal(t)) {
    require_width(n, 1, "SLPE width");
  } else {
    require_pow2_width(n, 2, "SLPE width");
  }
  return slpe_mux_count(n) * t.cost(CellKind::kMux2);
}

double delay_slpe(double n, const TechParams& t) {
  if (literal(t)) {
    require_width(n, 1, "SLPE width");
  } else {
    require_pow2_width(n, 2, "SLPE width");
  }
  return std::max(0.0, n - 2) * delay_mux2(t);
}

int w_R(double x, int k) { return static_cast<int>(std::ceil(std::log2(x / k) - 1e-9)); }

double cost_recursive(double n, int k, const TechParams& t) {
  if (k < 2) throw SpecError("recursive k must be >= 2");
  if (!literal(t)) require_pow2_width(n, 2, "recursive PE width");
  return bd_recursive(n, k, t).total();
}

double delay_recursive(double n, int k, const TechParams& t) {
  if (k < 2) throw SpecError("recursive k must be >= 2");
  if (literal(t)) {
    if (n <= k) return delay_slpe(n, t);
    return delay_mux_single(w_R(n, k), t) + delay_recursive(n / k, k, t);
  }
  require_pow2_width(n, 2, "recursive PE width");
  if (n <= k) return delay_slpe(n, t);
  return std::max(delay_recursive(n / k, k, t), delay_slpe(k, t)) + delay_mux_single(k, t);
}

double cost_tree(double n, const TechParams& t) {
  require_width(n, 2, "tree PE width");
  return bd_tree(n, t).total();
}

double delay_tree(double n, const TechParams& t) {
  require_width(n, 2, "tree PE width");
  if (literal(t)) return n <= 2 ? t.delay(CellKind::kOr2) : delay_mux2(t) + delay_tree(n / 2, t);
  require_pow2_width(n, 2, "tree PE width");
  return tree_timing(n, t).data;
}

double cost_2lpe(std::size_t n, const TechParams& t) { return bd_2lpe(n, t).total(); }

double delay_2lpe(std::size_t n, const TechParams& t) {
  auto s = split(n);
  double l1 = static_cast<double>(s.sizes[0]), l2 = static_cast<double>(s.sizes[1]);
  double mux = literal(t) ? delay_mux_wide(static_cast<double>(n), l2, t) : delay_mux_single(l1, t);
  return delay_or(l2, t) + delay_slpe(l1, t) + mux + delay_slpe(l2, t);
}

double cost_mlpe_composed(std::size_t n, int m, const TechParams& t) {
  if (m < 2) throw SpecError("composed MLPE requires m >= 2");
  return bd_composed(n, m, t).total();
}

double delay_mlpe_composed(std::size_t n, int m, const TechParams& t) {
  if (m < 2) throw SpecError("composed MLPE requires m >= 2");
  if (m == 2) return delay_2lpe(n, t);
  auto s = split(n);
  double l1 = static_cast<double>(s.sizes[0]), l2 = static_cast<double>(s.sizes[1]);
  double mux = literal(t) ? delay_mux_wide(static_cast<double>(n), l2, t) : delay_mux_single(l1, t);
  return delay_or(l2, t) + delay_mlpe_composed(s.sizes[0], m - 1, t) + mux +
         delay_mlpe_composed(s.sizes[1], m - 1, t);
}

double cost_mlpe_cascaded(std::size_t n, int m, const TechParams& t) {
  if (m < 2) throw SpecError("cascaded MLPE requires m >= 2");
  return bd_cascaded(n, m, t).total();
}

double delay_mlpe_cascaded(std::size_t n, int m, const TechParams& t) {
  if (m < 2) throw SpecError("cascaded MLPE requires m >= 2");
  if (m == 2) return delay_2lpe(n, t);
  std::size_t lm = size_cascaded(n, m).sizes.back();
  double w = static_cast<double>(lm);
  double mux = literal(t) ? delay_mux_wide(static_cast<double>(n), w, t)
                          : delay_mux_single(static_cast<double>(n / lm), t);
  return delay_or(w, t) + mux + delay_slpe(w, t) + delay_mlpe_cascaded(n / lm, m - 1, t);
}

bool has_model(Arch arch) { return arch != Arch::kSlpeGate; }

CostReport cost_report(const EncoderSpec& spec, const TechParams& t) {
  t.validate();
  spec.validate();
  CostBreakdown b;
  double n = static_cast<double>(spec.n);
  switch (spec.arch) {
    case Arch::kSlpeMux: b = bd_slpe(n, t); break;
    case Arch::kSlpeGate: throw SpecError("the gate-based SLPE has no analytical model");
    case Arch::kRecursive: b = bd_recursive(n, spec.k, t); break;
    case Arch::kTree: b = bd_tree(n, t); break;
    case Arch::kMlpeComposed: b = bd_composed(spec.n, spec.m, t); break;
    case Arch::kMlpeCascaded: b = bd_cascaded(spec.n, spec.m, t); break;
  }
  return {b.total(), b};
}

double cost(const EncoderSpec& spec, const TechParams& t) { return cost_report(spec, t).total; }

double delay(const EncoderSpec& spec, const TechParams& t) {
  t.validate();
  spec.validate();
  double n = static_cast<double>(spec.n);
  switch (spec.arch) {
    case Arch::kSlpeMux: return delay_slpe(n, t);
    case Arch::kSlpeGate: throw SpecError("the gate-based SLPE has no analytical model");
    case Arch::kRecursive: return delay_recursive(n, spec.k, t);
    case Arch::kTree: return delay_tree(n, t);
    case Arch::kMlpeComposed: return delay_mlpe_composed(spec.n, spec.m, t);
    case Arch::kMlpeCascaded: return delay_mlpe_cascaded(spec.n, spec.m, t);
  }
  return 0;
}

std::uint64_t lut_normalized(std::int64_t luts, std::int64_t muxfx) {
  if (luts < 0 || muxfx < 0) throw SpecError("LUT and MUXFX counts must be nonnegative");
  return static_cast<std::uint64_t>(luts + (muxfx + 2) / 3);
}

double delay_adjusted(std::int64_t path_luts, std::int64_t path_muxfx) {
  if (path_luts < 0 || path_muxfx < 0) throw SpecError("path counts must be nonnegative");
  return static_cast<double>(path_luts) + static_cast<double>(path_muxfx) / 2.0;
}

} // namespace petk::model
