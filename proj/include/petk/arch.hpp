#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "petk/netlist.hpp"

namespace petk {

enum class Arch { kSlpeMux, kSlpeGate, kRecursive, kTree, kMlpeComposed, kMlpeCascaded };
enum class ValidMethod { kStageOr, kLsbOr, kNone };
enum class OutputConvention { kStandard, kNative };

std::string_view to_string(Arch arch);
std::string_view to_string(ValidMethod method);
std::string_view to_string(OutputConvention convention);
std::optional<ValidMethod> parse_valid_method(std::string_view text);
std::optional<OutputConvention> parse_convention(std::string_view text);

struct EncoderSpec {
  Arch arch = Arch::kSlpeMux;
  std::size_t n = 8;
  int m = 2; // MLPE level count; 2 is the two-level encoder
  int k = 4; // recursive division factor
  ValidMethod valid = ValidMethod::kStageOr;
  OutputConvention convention = OutputConvention::kStandard;

  bool is_mlpe() const { return arch == Arch::kMlpeComposed || arch == Arch::kMlpeCascaded; }
  /// Short display label: SLPE, SLPE-G, Rec, Tree, 2LPE, 3LPE-O, 4LPE-A, ...
  std::string label() const;
  /// HDL unit / netlist name, e.g. pe_cascaded_4096_m3.
  std::string unit_name() const;
  /// Throws SpecError when the spec cannot be built.
  void validate() const;
  /// Null when buildable, otherwise the reason it is not.
  std::optional<std::string> infeasibility() const;

  friend bool operator==(const EncoderSpec&, const EncoderSpec&) = default;
};

EncoderSpec make_spec(Arch arch, std::size_t n, int m = 2);

/// Parses an architecture name. Accepts the enum spellings (slpe_mux,
/// mlpe_cascaded, ...), short forms (slpe, rec, tree, 2lpe) and level
/// labels such as "3lpe-o" / "4LPE-A", which also set m.
std::optional<EncoderSpec> parse_arch(std::string_view text);

struct LevelSizing {
  std::vector<std::size_t> sizes; // L_1 .. L_m

  std::size_t product() const;
  friend bool operator==(const LevelSizing&, const LevelSizing&) = default;
};

/// [L1, L2] with L1 the smallest power of two >= sqrt(n). Requires n >= 16.
LevelSizing size_two_level(std::size_t n);

/// Unified sizes for an m-level cascade: L_i = 2^ceil(remaining / levels
/// left) in log2 terms, the last level takes the rest. Throws when any
/// level would drop below 2.
LevelSizing size_cascaded(std::size_t n, int m);

Netlist build_2lpe(std::size_t n);
Netlist build_mlpe_composed(std::size_t n, int m);
Netlist build_mlpe_cascaded(std::size_t n, int m);
Netlist build_recursive(std::size_t n, int k = 4);
Netlist build_tree(std::size_t n, OutputConvention convention = OutputConvention::kStandard);

/// Adds a valid output. STAGE_OR ORs the netlist's valid sources (the
/// primary inputs when none are recorded); LSB_OR ORs input 0 with every
/// output bit. Added cells carry the valid-logic tag.
Netlist attach_valid(const Netlist& netlist, ValidMethod method);

Netlist generate(const EncoderSpec& spec);

namespace detail {
/// Two-way split with the public n >= 16 floor relaxed to n >= 4; composed
/// encoders use it for their inner levels.
LevelSizing split_two_level(std::size_t n);
} // namespace detail

} // namespace petk
