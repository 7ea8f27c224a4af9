#include "petk/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "petk/bits.hpp"
#include "petk/error.hpp"

namespace petk::analysis {
namespace {

constexpr std::string_view kFpgaHeader = "arch,n,luts,muxfx,ffs,path_luts,path_muxfx";

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(trim(f));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<std::int64_t> parse_count(const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

double metric_of(const Scored& s, Objective o) {
  switch (o) {
    case Objective::kComplexity: return s.cost;
    case Objective::kDelay: return s.delay;
    case Objective::kBalanced: return s.rcdp;
  }
  return 0;
}

} // namespace

std::vector<std::size_t> SweepTable::sizes() const {
  std::vector<std::size_t> ns;
  for (const auto& r : rows) {
    if (ns.empty() || ns.back() != r.n) ns.push_back(r.n);
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

std::vector<const SweepRow*> SweepTable::at(std::size_t n) const {
  std::vector<const SweepRow*> out;
  for (const auto& r : rows) {
    if (r.n == n) out.push_back(&r);
  }
  return out;
}

const SweepRow* SweepTable::find(std::string_view label, std::size_t n) const {
  for (const auto& r : rows) {
    if (r.n == n && r.label == label) return &r;
  }
  return nullptr;
}

double SweepTable::best_cost(std::size_t n) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto* r : at(n)) best = std::min(best, r->cost);
  return best;
}

double SweepTable::best_delay(std::size_t n) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto* r : at(n)) best = std::min(best, r->delay);
  return best;
}

std::vector<std::size_t> standard_grid() {
  std::vector<std::size_t> ns;
  for (int e = 6; e <= 18; ++e) ns.push_back(std::size_t{1} << e);
  return ns;
}

std::vector<EncoderSpec> default_candidates(bool include_five_level) {
  std::vector<EncoderSpec> c{
      make_spec(Arch::kSlpeMux, 0),         make_spec(Arch::kRecursive, 0),
      make_spec(Arch::kTree, 0),            make_spec(Arch::kMlpeComposed, 0, 2),
      make_spec(Arch::kMlpeComposed, 0, 3), make_spec(Arch::kMlpeCascaded, 0, 3),
      make_spec(Arch::kMlpeComposed, 0, 4), make_spec(Arch::kMlpeCascaded, 0, 4),
  };
  if (include_five_level) {
    c.push_back(make_spec(Arch::kMlpeComposed, 0, 5));
    c.push_back(make_spec(Arch::kMlpeCascaded, 0, 5));
  }
  return c;
}

SweepTable sweep(std::span<const EncoderSpec> candidates, std::span<const std::size_t> ns,
                 const TechParams& tech) {
  tech.validate();
  std::vector<std::size_t> sorted(ns.begin(), ns.end());
  std::sort(sorted.begin(), sorted.end());
  SweepTable table;
  for (std::size_t n : sorted) {
    for (EncoderSpec spec : candidates) {
      spec.n = n;
      if (auto why = spec.infeasibility()) {
        table.skipped.push_back({spec, *why});
        continue;
      }
      if (!model::has_model(spec.arch)) {
        table.skipped.push_back({spec, "no analytical model"});
        continue;
      }
      auto report = model::cost_report(spec, tech);
      table.rows.push_back({spec.label(), n, report.total, model::delay(spec, tech), spec, report});
    }
  }
  return table;
}

std::vector<Scored> rcdp(const SweepTable& table) {
  if (table.rows.empty()) throw SpecError("cannot score an empty table");
  std::map<std::size_t, std::pair<double, double>> best;
  for (std::size_t n : table.sizes()) best[n] = {table.best_cost(n), table.best_delay(n)};
  std::vector<Scored> out;
  out.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    auto [bc, bd] = best[r.n];
    Scored s{r.label, r.n, r.cost, r.delay, r.cost / bc, r.delay / bd, 0};
    s.rcdp = s.rel_cost * s.rel_delay;
    out.push_back(s);
  }
  return out;
}

std::optional<Objective> parse_objective(std::string_view text) {
  if (text == "complexity" || text == "cost") return Objective::kComplexity;
  if (text == "delay") return Objective::kDelay;
  if (text == "balanced" || text == "rcdp") return Objective::kBalanced;
  return std::nullopt;
}

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::kComplexity: return "complexity";
    case Objective::kDelay: return "delay";
    case Objective::kBalanced: return "balanced";
  }
  return "?";
}

std::vector<Recommendation> recommend(const SweepTable& table, Objective objective,
                                      double tie_tolerance) {
  if (tie_tolerance < 0) throw SpecError("tie tolerance must be nonnegative");
  std::vector<Recommendation> out;
  if (table.rows.empty()) return out;
  auto scored = rcdp(table);
  for (std::size_t n : table.sizes()) {
    const Scored* best = nullptr;
    for (const auto& s : scored) {
      if (s.n == n && (!best || metric_of(s, objective) < metric_of(*best, objective))) best = &s;
    }
    Recommendation rec{n, best->label, {}, metric_of(*best, objective)};
    for (const auto& s : scored) {
      if (s.n == n && metric_of(s, objective) <= rec.metric * (1 + tie_tolerance)) {
        rec.co_winners.push_back(s.label);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

FpgaIngest parse_fpga_csv(std::istream& in) {
  FpgaIngest result;
  std::string line;
  if (!std::getline(in, line)) throw IoError("FPGA CSV is empty");
  std::string header;
  for (const auto& f : split_csv(trim(line))) header += (header.empty() ? "" : ",") + f;
  if (header != kFpgaHeader) {
    throw IoError("FPGA CSV header must be '" + std::string(kFpgaHeader) + "', got '" + trim(line) + "'");
  }
  std::set<std::pair<std::string, std::size_t>> seen;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    if (trim(line).empty()) continue;
    auto where = "line " + std::to_string(lineno) + ": ";
    auto f = split_csv(trim(line));
    if (f.size() != 7) {
      result.diagnostics.push_back(where + "expected 7 fields, got " + std::to_string(f.size()));
      continue;
    }
    if (f[0].empty()) {
      result.diagnostics.push_back(where + "empty arch");
      continue;
    }
    std::int64_t v[6];
    bool ok = true;
    for (int i = 0; i < 6 && ok; ++i) {
      auto c = parse_count(f[i + 1]);
      if (!c || *c < 0) {
        result.diagnostics.push_back(where + "field '" + f[i + 1] + "' is not a nonnegative integer");
        ok = false;
      } else {
        v[i] = *c;
      }
    }
    if (!ok) continue;
    FpgaRecord r{f[0], static_cast<std::size_t>(v[0]), v[1], v[2], v[3], v[4], v[5]};
    if (!is_pow2(r.n) || r.n < 2) {
      result.diagnostics.push_back(where + "n=" + f[1] + " is not a power of two");
      continue;
    }
    if (!seen.insert({r.arch, r.n}).second) {
      result.diagnostics.push_back(where + "duplicate entry for " + r.arch + " n=" + std::to_string(r.n));
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

FpgaIngest ingest_fpga_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_fpga_csv(in);
}

std::vector<FpgaMetric> fpga_metrics(std::span<const FpgaRecord> records) {
  std::vector<FpgaMetric> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    out.push_back({r.arch, r.n, model::lut_normalized(r.luts, r.muxfx),
                   model::delay_adjusted(r.path_luts, r.path_muxfx), r.ffs});
  }
  return out;
}

SweepTable fpga_table(std::span<const FpgaMetric> metrics) {
  SweepTable t;
  for (const auto& m : metrics) {
    t.rows.push_back({m.arch, m.n, static_cast<double>(m.lut_n), m.adjusted_delay, std::nullopt,
                      std::nullopt});
  }
  std::stable_sort(t.rows.begin(), t.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.n < b.n; });
  return t;
}

std::vector<ShareRow> breakdown_check(const SweepTable& table, const ShareBands& bands) {
  std::vector<ShareRow> out;
  for (const auto& r : table.rows) {
    if (!r.report) continue;
    ShareRow s{r.label, r.n, r.report->or_pct(), r.report->mux_pct(), r.report->pe_pct(), {}};
    if (r.spec && r.spec->is_mlpe()) {
      if (s.mux_pct < bands.mux_lo || s.mux_pct > bands.mux_hi) s.flags.push_back("mux share");
      if (s.or_pct < bands.or_lo || s.or_pct > bands.or_hi) s.flags.push_back("or share");
      if (s.pe_pct >= bands.pe_max) s.flags.push_back("pe share");
    }
    out.push_back(std::move(s));
  }
  return out;
}

AsicTables asic_tables(const TechParams& tech, double tie_tolerance) {
  auto ns = standard_grid();
  auto cands = default_candidates();
  auto table = sweep(cands, ns, tech);
  return {ns, recommend(table, Objective::kComplexity, tie_tolerance),
          recommend(table, Objective::kDelay, tie_tolerance),
          recommend(table, Objective::kBalanced, tie_tolerance)};
}

} // namespace petk::analysis
