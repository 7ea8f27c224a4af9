#include "petk/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "petk/error.hpp"

namespace petk::io {
namespace {

template <typename T>
T field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("field '") + key + "': " + e.what());
  }
}

} // namespace

std::string_view to_string(MuxModel mode) {
  return mode == MuxModel::kLiteral ? "literal" : "structural";
}

std::string format_number(double value) {
  if (std::isfinite(value) && value == std::round(value) && std::abs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  std::ostringstream os;
  os << std::setprecision(10) << value;
  return os.str();
}

Json netlist_to_json(const Netlist& nl) {
  Json doc;
  doc["name"] = nl.name();
  doc["inputs"] = std::vector<NetId>(nl.inputs().begin(), nl.inputs().end());
  doc["outputs"] = std::vector<NetId>(nl.outputs().begin(), nl.outputs().end());
  doc["valid"] = nl.valid() ? Json(*nl.valid()) : Json(nullptr);
  Json cells = Json::array();
  for (const Cell& c : nl.cells()) {
    Json cell;
    cell["kind"] = std::string(to_string(c.kind));
    cell["ins"] = std::vector<NetId>(c.inputs().begin(), c.inputs().end());
    cell["out"] = c.out;
    Json tags = Json::array();
    for (auto t : tag_names(c.tags)) tags.push_back(std::string(t));
    cell["tags"] = std::move(tags);
    cells.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cells);
  Json consts = Json::array();
  for (const Constant& c : nl.constants()) consts.push_back({{"net", c.net}, {"value", c.value ? 1 : 0}});
  doc["constants"] = std::move(consts);
  doc["index_map"] = nl.index_map() == IndexMap::kComplement ? "complement" : "direct";
  doc["valid_sources"] = std::vector<NetId>(nl.valid_sources().begin(), nl.valid_sources().end());
  return doc;
}

Netlist netlist_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw IoError("netlist JSON must be an object");
  auto inputs = field<std::vector<NetId>>(doc, "inputs");
  auto outputs = field<std::vector<NetId>>(doc, "outputs");
  std::optional<NetId> valid;
  if (doc.contains("valid") && !doc.at("valid").is_null()) valid = field<NetId>(doc, "valid");
  std::size_t max_net = 0;
  auto see = [&](NetId n) { max_net = std::max<std::size_t>(max_net, n + 1); };
  for (NetId n : inputs) see(n);
  for (NetId n : outputs) see(n);
  if (valid) see(*valid);

  std::vector<Cell> cells;
  if (!doc.contains("cells") || !doc.at("cells").is_array()) throw IoError("missing 'cells' array");
  for (const auto& jc : doc.at("cells")) {
    auto kind_name = field<std::string>(jc, "kind");
    auto kind = parse_cell_kind(kind_name);
    if (!kind) throw IoError("unknown cell kind '" + kind_name + "'");
    auto ins = field<std::vector<NetId>>(jc, "ins");
    if (static_cast<int>(ins.size()) != arity(*kind)) {
      throw IoError(kind_name + " cell needs " + std::to_string(arity(*kind)) + " inputs");
    }
    Cell c{*kind, {}, field<NetId>(jc, "out"), kTagNone};
    for (std::size_t i = 0; i < ins.size(); ++i) {
      c.ins[i] = ins[i];
      see(ins[i]);
    }
    see(c.out);
    if (jc.contains("tags")) {
      for (const auto& t : jc.at("tags")) {
        auto tag = parse_tag(t.get<std::string>());
        if (!tag) throw IoError("unknown tag '" + t.get<std::string>() + "'");
        c.tags = static_cast<TagSet>(c.tags | *tag);
      }
    }
    cells.push_back(c);
  }
  std::vector<Constant> constants;
  if (doc.contains("constants")) {
    for (const auto& jc : doc.at("constants")) {
      Constant c{field<NetId>(jc, "net"), field<int>(jc, "value") != 0};
      see(c.net);
      constants.push_back(c);
    }
  }
  IndexMap map = IndexMap::kDirect;
  if (doc.contains("index_map")) {
    auto m = field<std::string>(doc, "index_map");
    if (m == "complement") {
      map = IndexMap::kComplement;
    } else if (m != "direct") {
      throw IoError("unknown index_map '" + m + "'");
    }
  }
  Netlist base = Netlist::from_parts(doc.value("name", std::string{}), max_net, std::move(inputs),
                                     std::move(outputs), valid, std::move(constants),
                                     std::move(cells), map);
  if (!doc.contains("valid_sources")) return base;
  NetlistBuilder b = NetlistBuilder::extend(base);
  b.set_valid_sources(field<std::vector<NetId>>(doc, "valid_sources"));
  return std::move(b).finish();
}

Json spec_to_json(const EncoderSpec& s) {
  Json doc;
  doc["arch"] = std::string(to_string(s.arch));
  doc["n"] = s.n;
  if (s.is_mlpe()) doc["m"] = s.m;
  if (s.arch == Arch::kRecursive) doc["k"] = s.k;
  doc["valid"] = std::string(to_string(s.valid));
  doc["convention"] = std::string(to_string(s.convention));
  return doc;
}

EncoderSpec spec_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw IoError("spec JSON must be an object");
  auto arch_name = field<std::string>(doc, "arch");
  auto parsed = parse_arch(arch_name);
  if (!parsed) throw IoError("unknown arch '" + arch_name + "'");
  EncoderSpec s = *parsed;
  s.n = field<std::size_t>(doc, "n");
  if (doc.contains("m")) s.m = field<int>(doc, "m");
  if (doc.contains("k")) s.k = field<int>(doc, "k");
  if (doc.contains("valid")) {
    auto v = parse_valid_method(field<std::string>(doc, "valid"));
    if (!v) throw IoError("unknown valid method");
    s.valid = *v;
  }
  if (doc.contains("convention")) {
    auto c = parse_convention(field<std::string>(doc, "convention"));
    if (!c) throw IoError("unknown output convention");
    s.convention = *c;
  }
  return s;
}

Json report_to_json(const VerificationReport& r) {
  Json doc;
  doc["spec"] = spec_to_json(r.spec);
  doc["strategy"] = r.strategy;
  doc["tested"] = r.tested;
  doc["mismatch_count"] = r.mismatch_count;
  Json list = Json::array();
  for (const auto& m : r.mismatches) {
    list.push_back({{"input_hex", m.input_hex}, {"expected", m.expected}, {"got", m.got}});
  }
  doc["mismatches"] = std::move(list);
  return doc;
}

Json delay_to_json(const Netlist& nl, const DelayReport& r) {
  Json doc;
  doc["total"] = r.total;
  doc["source"] = r.source ? Json(*r.source) : Json(nullptr);
  doc["sink"] = r.sink ? Json(*r.sink) : Json(nullptr);
  Json path = Json::array();
  for (const auto& pc : r.path) {
    const Cell& c = nl.cells()[pc.cell];
    path.push_back({{"cell", pc.cell},
                    {"kind", std::string(to_string(c.kind))},
                    {"out", c.out},
                    {"nmos", pc.nmos},
                    {"pmos", pc.pmos},
                    {"normalized", pc.normalized}});
  }
  doc["path"] = std::move(path);
  return doc;
}

std::string sweep_csv(const analysis::SweepTable& table, MuxModel mode) {
  std::ostringstream os;
  os << "arch,n,m,mode,cost,delay,or_pct,mux_pct,pe_pct\n";
  os << std::fixed;
  for (const auto& r : table.rows) {
    int m = r.spec && r.spec->is_mlpe() ? r.spec->m : 1;
    os << r.label << ',' << r.n << ',' << m << ',' << to_string(mode) << ','
       << format_number(r.cost) << ',' << format_number(r.delay);
    if (r.report) {
      os << std::setprecision(2) << ',' << r.report->or_pct() << ',' << r.report->mux_pct() << ','
         << r.report->pe_pct();
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  return os.str();
}

std::string recommendations_csv(const std::vector<analysis::Recommendation>& recs) {
  std::ostringstream os;
  os << "n,size,winner,co_winners,metric\n";
  for (const auto& r : recs) {
    std::string co;
    for (const auto& c : r.co_winners) co += (co.empty() ? "" : "/") + c;
    os << r.n << ',' << r.n << ':' << ilog2(r.n) << ',' << r.winner << ',' << co << ','
       << format_number(r.metric) << '\n';
  }
  return os.str();
}

std::string scored_csv(const std::vector<analysis::Scored>& scored) {
  std::ostringstream os;
  os << "arch,n,cost,delay,rel_cost,rel_delay,rcdp\n" << std::fixed << std::setprecision(4);
  for (const auto& s : scored) {
    os << s.label << ',' << s.n << ',' << format_number(s.cost) << ',' << format_number(s.delay)
       << ',' << s.rel_cost << ',' << s.rel_delay << ',' << s.rcdp << '\n';
  }
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

} // namespace petk::io
