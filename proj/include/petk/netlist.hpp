#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "petk/cell.hpp"
#include "petk/tech.hpp"

namespace petk {

using NetId = std::uint32_t;

// Cell labels. kValidLogic marks cells that only exist to produce the valid
// output; cost and delay reports leave them out by default. The remaining
// bits label the component a cell was built for (used for cost breakdowns).
enum Tag : std::uint8_t {
  kTagNone = 0,
  kTagValidLogic = 1u << 0,
  kTagOrTree = 1u << 1,
  kTagMux = 1u << 2,
  kTagEncoder = 1u << 3,
};
using TagSet = std::uint8_t;

inline constexpr TagSet kRoleMask = kTagOrTree | kTagMux | kTagEncoder;

std::vector<std::string_view> tag_names(TagSet tags);
std::optional<Tag> parse_tag(std::string_view name);

struct Cell {
  CellKind kind;
  std::array<NetId, 4> ins{};
  NetId out = 0;
  TagSet tags = kTagNone;

  std::span<const NetId> inputs() const {
    return {ins.data(), static_cast<std::size_t>(arity(kind))};
  }
  bool has(Tag tag) const { return (tags & tag) != 0; }
};

struct Constant {
  NetId net;
  bool value;
};

// How the primary output bits map to the reported MSHB index.
// kComplement reports (n - 1) - raw, i.e. the bitwise complement over
// log2(n) bits; used for encoders that natively count leading zeros.
enum class IndexMap { kDirect, kComplement };

/// Immutable gate-level netlist. Cells are stored in topological order and
/// every net has exactly one driver (a primary input, a constant, or a cell).
class Netlist {
 public:
  const std::string& name() const { return name_; }
  std::size_t net_count() const { return net_count_; }
  std::span<const Cell> cells() const { return cells_; }
  std::span<const NetId> inputs() const { return inputs_; }
  std::span<const NetId> outputs() const { return outputs_; }
  std::span<const Constant> constants() const { return constants_; }
  std::optional<NetId> valid() const { return valid_; }
  IndexMap index_map() const { return index_map_; }
  /// Nets whose OR equals the valid signal (e.g. the first-stage OR outputs
  /// of a multi-level encoder). Empty when unknown; the primary inputs are
  /// then the fallback.
  std::span<const NetId> valid_sources() const { return valid_sources_; }
  std::size_t input_width() const { return inputs_.size(); }
  std::size_t output_width() const { return outputs_.size(); }

  std::size_t count(CellKind kind) const;
  std::size_t count_tagged(Tag tag) const;

  /// Validates and topologically orders raw parts. Throws NetlistError on an
  /// undriven or multiply-driven net, an arity mismatch, or a cycle.
  static Netlist from_parts(std::string name, std::size_t net_count, std::vector<NetId> inputs,
                            std::vector<NetId> outputs, std::optional<NetId> valid,
                            std::vector<Constant> constants, std::vector<Cell> cells,
                            IndexMap index_map = IndexMap::kDirect);

 private:
  friend class NetlistBuilder;
  Netlist() = default;

  std::string name_;
  std::size_t net_count_ = 0;
  std::vector<Cell> cells_;
  std::vector<NetId> inputs_;
  std::vector<NetId> outputs_;
  std::vector<Constant> constants_;
  std::optional<NetId> valid_;
  IndexMap index_map_ = IndexMap::kDirect;
  std::vector<NetId> valid_sources_;
};

/// Incremental netlist construction. Cells can only consume nets that
/// already exist, so creation order is a topological order.
class NetlistBuilder {
 public:
  explicit NetlistBuilder(std::string name = {}) : name_(std::move(name)) {}

  /// Starts a builder holding a copy of an existing netlist.
  static NetlistBuilder extend(const Netlist& base);

  NetId add_input();
  std::vector<NetId> add_inputs(std::size_t count);
  NetId constant(bool value);

  NetId add(CellKind kind, std::span<const NetId> ins);
  NetId add(CellKind kind, std::initializer_list<NetId> ins) {
    return add(kind, std::span<const NetId>(ins.begin(), ins.size()));
  }
  /// select == 0 passes `a`, select == 1 passes `b`.
  NetId mux2(NetId select, NetId a, NetId b) { return add(CellKind::kMux2, {select, a, b}); }

  void set_name(std::string name) { name_ = std::move(name); }
  void set_outputs(std::vector<NetId> outputs) { outputs_ = std::move(outputs); }
  void set_valid(std::optional<NetId> net) { valid_ = net; }
  void set_index_map(IndexMap map) { index_map_ = map; }
  void set_valid_sources(std::vector<NetId> nets) { valid_sources_ = std::move(nets); }

  std::span<const NetId> inputs() const { return inputs_; }
  std::span<const NetId> outputs() const { return outputs_; }
  std::optional<NetId> valid() const { return valid_; }
  std::size_t cell_count() const { return cells_.size(); }

  /// RAII label scope. Role tags replace the enclosing role; the valid-logic
  /// tag is sticky for everything created inside it.
  class TagScope {
   public:
    TagScope(NetlistBuilder& builder, Tag tag);
    ~TagScope() { builder_.tags_ = saved_; }
    TagScope(const TagScope&) = delete;
    TagScope& operator=(const TagScope&) = delete;

   private:
    NetlistBuilder& builder_;
    TagSet saved_;
  };
  TagScope scope(Tag tag) { return TagScope(*this, tag); }

  Netlist finish() &&;

 private:
  NetId new_net() { return static_cast<NetId>(net_count_++); }

  std::string name_;
  std::size_t net_count_ = 0;
  std::vector<Cell> cells_;
  std::vector<NetId> inputs_;
  std::vector<NetId> outputs_;
  std::vector<Constant> constants_;
  std::optional<NetId> valid_;
  std::optional<NetId> tie_[2];
  IndexMap index_map_ = IndexMap::kDirect;
  std::vector<NetId> valid_sources_;
  TagSet tags_ = kTagNone;
};

/// Sum of cell costs under `tech`. Valid-logic cells are skipped unless
/// `include_valid` is set.
double transistor_count(const Netlist& netlist, const TechParams& tech = {},
                        bool include_valid = false);

/// Cost of cells carrying role `tag` (and not valid-logic unless requested).
double transistor_count_tagged(const Netlist& netlist, Tag tag, const TechParams& tech = {},
                               bool include_valid = false);

} // namespace petk
