#include "petk/netlist.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "petk/error.hpp"

namespace petk {

namespace {

constexpr std::array<std::pair<Tag, std::string_view>, 4> kTagNames{{
    {kTagValidLogic, "valid-logic"},
    {kTagOrTree, "or-tree"},
    {kTagMux, "mux"},
    {kTagEncoder, "encoder"},
}};

constexpr std::int64_t kUndriven = -1;
constexpr std::int64_t kDrivenByInput = -2;
constexpr std::int64_t kDrivenByConstant = -3;

std::string net_str(NetId id) { return "net " + std::to_string(id); }

} // namespace

std::vector<std::string_view> tag_names(TagSet tags) {
  std::vector<std::string_view> names;
  for (const auto& [tag, name] : kTagNames) {
    if (tags & tag) names.push_back(name);
  }
  return names;
}

std::optional<Tag> parse_tag(std::string_view name) {
  for (const auto& [tag, tag_name] : kTagNames) {
    if (tag_name == name) return tag;
  }
  return std::nullopt;
}

std::size_t Netlist::count(CellKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [kind](const Cell& c) { return c.kind == kind; }));
}

std::size_t Netlist::count_tagged(Tag tag) const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [tag](const Cell& c) { return c.has(tag); }));
}

Netlist Netlist::from_parts(std::string name, std::size_t net_count, std::vector<NetId> inputs,
                            std::vector<NetId> outputs, std::optional<NetId> valid,
                            std::vector<Constant> constants, std::vector<Cell> cells,
                            IndexMap index_map) {
  std::vector<std::int64_t> driver(net_count, kUndriven);
  auto claim = [&](NetId net, std::int64_t who) {
    if (net >= net_count) throw NetlistError(net_str(net) + " is out of range");
    if (driver[net] != kUndriven) throw NetlistError(net_str(net) + " has more than one driver");
    driver[net] = who;
  };
  for (NetId in : inputs) claim(in, kDrivenByInput);
  for (const Constant& c : constants) claim(c.net, kDrivenByConstant);
  for (std::size_t i = 0; i < cells.size(); ++i) claim(cells[i].out, static_cast<std::int64_t>(i));

  auto require_driven = [&](NetId net, const std::string& where) {
    if (net >= net_count || driver[net] == kUndriven) {
      throw NetlistError(net_str(net) + " used by " + where + " is undriven");
    }
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Cell& cell = cells[i];
    for (std::size_t k = static_cast<std::size_t>(arity(cell.kind)); k < cell.ins.size(); ++k) {
      cell.ins[k] = 0;
    }
    for (NetId in : cell.inputs()) require_driven(in, "cell " + std::to_string(i));
  }
  for (NetId out : outputs) require_driven(out, "primary output");
  if (valid) require_driven(*valid, "valid output");

  // Kahn's algorithm, always taking the lowest original index that is ready,
  // so an already-topological list comes back unchanged.
  std::vector<std::size_t> pending(cells.size(), 0);
  std::vector<std::vector<std::size_t>> fanout(net_count);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (NetId in : cells[i].inputs()) {
      if (driver[in] >= 0) {
        ++pending[i];
        fanout[in].push_back(i);
      }
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<Cell> ordered;
  ordered.reserve(cells.size());
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    ordered.push_back(cells[i]);
    for (std::size_t next : fanout[cells[i].out]) {
      if (--pending[next] == 0) ready.push(next);
    }
  }
  if (ordered.size() != cells.size()) throw NetlistError("netlist contains a combinational cycle");

  Netlist n;
  n.name_ = std::move(name);
  n.net_count_ = net_count;
  n.cells_ = std::move(ordered);
  n.inputs_ = std::move(inputs);
  n.outputs_ = std::move(outputs);
  n.constants_ = std::move(constants);
  n.valid_ = valid;
  n.index_map_ = index_map;
  return n;
}

NetlistBuilder NetlistBuilder::extend(const Netlist& base) {
  NetlistBuilder b(base.name());
  b.net_count_ = base.net_count();
  b.cells_.assign(base.cells().begin(), base.cells().end());
  b.inputs_.assign(base.inputs().begin(), base.inputs().end());
  b.outputs_.assign(base.outputs().begin(), base.outputs().end());
  b.constants_.assign(base.constants().begin(), base.constants().end());
  for (const Constant& c : b.constants_) b.tie_[c.value ? 1 : 0] = c.net;
  b.valid_ = base.valid();
  b.index_map_ = base.index_map();
  b.valid_sources_.assign(base.valid_sources().begin(), base.valid_sources().end());
  return b;
}

NetId NetlistBuilder::add_input() {
  NetId id = new_net();
  inputs_.push_back(id);
  return id;
}

std::vector<NetId> NetlistBuilder::add_inputs(std::size_t count) {
  std::vector<NetId> ids;
  ids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) ids.push_back(add_input());
  return ids;
}

NetId NetlistBuilder::constant(bool value) {
  auto& slot = tie_[value ? 1 : 0];
  if (!slot) {
    slot = new_net();
    constants_.push_back({*slot, value});
  }
  return *slot;
}

NetId NetlistBuilder::add(CellKind kind, std::span<const NetId> ins) {
  if (static_cast<int>(ins.size()) != arity(kind)) {
    throw NetlistError(std::string(to_string(kind)) + " expects " + std::to_string(arity(kind)) +
                       " inputs, got " + std::to_string(ins.size()));
  }
  Cell cell{kind, {}, 0, tags_};
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (ins[i] >= net_count_) throw NetlistError(net_str(ins[i]) + " does not exist yet");
    cell.ins[i] = ins[i];
  }
  cell.out = new_net();
  cells_.push_back(cell);
  return cell.out;
}

NetlistBuilder::TagScope::TagScope(NetlistBuilder& builder, Tag tag)
    : builder_(builder), saved_(builder.tags_) {
  if (tag == kTagValidLogic) {
    builder_.tags_ = static_cast<TagSet>(saved_ | kTagValidLogic);
  } else {
    builder_.tags_ = static_cast<TagSet>((saved_ & ~kRoleMask) | tag);
  }
}

Netlist NetlistBuilder::finish() && {
  Netlist n = Netlist::from_parts(std::move(name_), net_count_, std::move(inputs_),
                                  std::move(outputs_), valid_, std::move(constants_),
                                  std::move(cells_), index_map_);
  for (NetId net : valid_sources_) {
    if (net >= n.net_count()) throw NetlistError(net_str(net) + " is out of range");
  }
  n.valid_sources_ = std::move(valid_sources_);
  return n;
}

double transistor_count(const Netlist& netlist, const TechParams& tech, bool include_valid) {
  double total = 0;
  for (const Cell& cell : netlist.cells()) {
    if (!include_valid && cell.has(kTagValidLogic)) continue;
    total += tech.cost(cell.kind);
  }
  return total;
}

double transistor_count_tagged(const Netlist& netlist, Tag tag, const TechParams& tech,
                               bool include_valid) {
  double total = 0;
  for (const Cell& cell : netlist.cells()) {
    if (!cell.has(tag)) continue;
    if (!include_valid && cell.has(kTagValidLogic)) continue;
    total += tech.cost(cell.kind);
  }
  return total;
}

} // namespace petk
