#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "petk/analysis.hpp"
#include "petk/arch.hpp"
#include "petk/error.hpp"
#include "petk/hdl.hpp"
#include "petk/io.hpp"
#include "petk/model.hpp"
#include "petk/sim.hpp"

using namespace petk;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitIo = 3;

struct MismatchExit {
  std::string message;
};

struct Options {
  // spec
  std::string arch;
  std::size_t n = 0;
  int m = 0;
  int k = 4;
  std::string valid = "stage_or";
  std::string convention = "standard";
  std::string spec_json;
  // tech
  double ratio = 2.0;
  std::string mode = "literal";
  std::string mux2 = "atomic";
  std::string mux4 = "three";
  std::string or4 = "atomic";
  std::vector<std::string> overrides;
  // run
  std::string format = "table";
  std::string out;
  std::string strategy = "random";
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  bool include_valid = false;
  std::string dialect = "vhdl";
  std::string out_dir;
  std::string objective = "complexity";
  double tie_tolerance = analysis::kDefaultTieTolerance;
  std::string tech_kind = "asic";
  std::string csv;
  std::vector<std::string> archs;
  std::vector<std::size_t> grid;
  bool five_level = false;
  bool strict = false;
};

EncoderSpec resolve_spec(const Options& o) {
  EncoderSpec s;
  if (!o.spec_json.empty()) {
    s = io::spec_from_json(nlohmann::json::parse(io::read_file(o.spec_json)));
  } else {
    if (o.arch.empty()) throw SpecError("--arch is required");
    auto parsed = parse_arch(o.arch);
    if (!parsed) throw SpecError("unknown architecture '" + o.arch + "'");
    s = *parsed;
    if (o.n == 0) throw SpecError("--n is required");
    s.n = o.n;
    if (o.m != 0) s.m = o.m;
    s.k = o.k;
    auto v = parse_valid_method(o.valid);
    if (!v) throw SpecError("unknown valid method '" + o.valid + "'");
    s.valid = *v;
    auto c = parse_convention(o.convention);
    if (!c) throw SpecError("unknown convention '" + o.convention + "'");
    s.convention = *c;
  }
  s.validate();
  return s;
}

TechParams resolve_tech(const Options& o) {
  TechParams t;
  t.ratio = o.ratio;
  if (o.mode == "literal") {
    t.mode = MuxModel::kLiteral;
  } else if (o.mode == "structural") {
    t.mode = MuxModel::kStructural;
  } else {
    throw SpecError("--mode must be literal or structural");
  }
  if (o.mux2 == "composite") {
    t.mux2 = Mux2Variant::kCompositeGate;
  } else if (o.mux2 != "atomic") {
    throw SpecError("--mux2 must be atomic or composite");
  }
  if (o.mux4 == "gate36") {
    t.mux4 = Mux4Variant::kGate36T;
  } else if (o.mux4 != "three") {
    throw SpecError("--mux4 must be three or gate36");
  }
  if (o.or4 == "composite") {
    t.or4 = Or4Variant::kComposite;
  } else if (o.or4 != "atomic") {
    throw SpecError("--or4 must be atomic or composite");
  }
  for (const auto& ov : o.overrides) {
    auto eq = ov.find('=');
    if (eq == std::string::npos) throw SpecError("cost override must be KIND=VALUE: " + ov);
    auto kind = parse_cell_kind(ov.substr(0, eq));
    if (!kind) throw SpecError("unknown cell kind in override: " + ov);
    try {
      t.cost_overrides[*kind] = std::stod(ov.substr(eq + 1));
    } catch (const std::exception&) {
      throw SpecError("bad override value: " + ov);
    }
  }
  t.validate();
  return t;
}

void emit_text(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    io::write_file(o.out, text);
  }
}

std::string table_text(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? " | " : "") << std::left << std::setw(static_cast<int>(w[i])) << r[i];
    }
    os << '\n';
  };
  line(header);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "-+-" : "") << std::string(w[i], '-');
  os << '\n';
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string size_label(std::size_t n) { return std::to_string(n) + ":" + std::to_string(ilog2(n)); }

std::string fmt2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::vector<std::size_t> resolve_grid(const Options& o) {
  if (o.grid.empty()) return analysis::standard_grid();
  for (std::size_t n : o.grid) {
    if (!is_pow2(n)) throw SpecError("grid value " + std::to_string(n) + " is not a power of two");
  }
  return o.grid;
}

std::vector<EncoderSpec> resolve_candidates(const Options& o) {
  if (o.archs.empty()) return analysis::default_candidates(o.five_level);
  std::vector<EncoderSpec> c;
  for (const auto& a : o.archs) {
    auto s = parse_arch(a);
    if (!s) throw SpecError("unknown architecture '" + a + "'");
    s->k = o.k;
    c.push_back(*s);
  }
  return c;
}

std::string winner_cell(const analysis::Recommendation& r) {
  std::string s = r.winner;
  std::string others;
  for (const auto& c : r.co_winners) {
    if (c != r.winner) others += (others.empty() ? "" : "/") + c;
  }
  if (!others.empty()) s += " (~" + others + ")";
  return s;
}

int cmd_generate(const Options& o) {
  auto nl = generate(resolve_spec(o));
  emit_text(o, io::netlist_to_json(nl).dump(2) + "\n");
  return 0;
}

int cmd_verify(const Options& o) {
  EncoderSpec spec = resolve_spec(o);
  auto nl = generate(spec);
  std::vector<Strategy> strategies;
  if (o.strategy == "all") {
    if (spec.n <= 16) strategies.push_back(Strategy::exhaustive());
    strategies.push_back(Strategy::one_hot());
    strategies.push_back(Strategy::prefix_ones());
    strategies.push_back(Strategy::random(o.seed, o.count));
  } else {
    auto kind = parse_strategy(o.strategy);
    if (!kind) throw SpecError("unknown strategy '" + o.strategy + "'");
    strategies.push_back({*kind, o.seed, o.count});
  }
  io::Json reports = io::Json::array();
  std::size_t bad = 0;
  std::ostringstream text;
  for (const auto& st : strategies) {
    auto r = verify(nl, spec, st);
    bad += r.mismatch_count;
    reports.push_back(io::report_to_json(r));
    text << spec.label() << " n=" << spec.n << " " << r.strategy << ": tested " << r.tested
         << ", mismatches " << r.mismatch_count << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(r.mismatches.size(), 10); ++i) {
      const auto& m = r.mismatches[i];
      text << "  " << m.input_hex << " expected " << m.expected << " got " << m.got << "\n";
    }
  }
  if (o.format == "json") {
    emit_text(o, (reports.size() == 1 ? reports[0] : reports).dump(2) + "\n");
  } else {
    emit_text(o, text.str());
  }
  if (bad) throw MismatchExit{std::to_string(bad) + " mismatches"};
  return 0;
}

int cmd_analyze(const Options& o) {
  TechParams tech = resolve_tech(o);
  auto cands = resolve_candidates(o);
  auto grid = resolve_grid(o);
  auto table = analysis::sweep(cands, grid, tech);
  for (const auto& s : table.skipped) {
    std::cerr << "skipped " << s.spec.label() << " n=" << s.spec.n << ": " << s.reason << "\n";
  }
  if (o.format == "csv") {
    emit_text(o, io::sweep_csv(table, tech.mode));
    return 0;
  }
  auto scored = analysis::rcdp(table);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    rows.push_back({r.label, size_label(r.n), io::format_number(r.cost), io::format_number(r.delay),
                    fmt2(scored[i].rel_cost), fmt2(scored[i].rel_delay), fmt2(scored[i].rcdp),
                    r.report ? fmt2(r.report->mux_pct()) : ""});
  }
  emit_text(o, table_text({"arch", "Size (bits)", "cost", "delay", "rel cost", "rel delay", "RCDP",
                           "mux %"},
                          rows));
  return 0;
}

analysis::SweepTable fpga_sweep(const Options& o) {
  if (o.csv.empty()) throw SpecError("--csv is required for FPGA data");
  auto ingest = analysis::ingest_fpga_csv(o.csv);
  for (const auto& d : ingest.diagnostics) std::cerr << o.csv << ": " << d << "\n";
  if (o.strict && !ingest.diagnostics.empty()) throw IoError("FPGA CSV has malformed rows");
  return analysis::fpga_table(analysis::fpga_metrics(ingest.records));
}

int cmd_recommend(const Options& o) {
  auto objective = analysis::parse_objective(o.objective);
  if (!objective) throw SpecError("unknown objective '" + o.objective + "'");
  analysis::SweepTable table;
  if (o.tech_kind == "asic") {
    auto cands = resolve_candidates(o);
    auto grid = resolve_grid(o);
    table = analysis::sweep(cands, grid, resolve_tech(o));
  } else if (o.tech_kind == "fpga") {
    table = fpga_sweep(o);
  } else {
    throw SpecError("--tech must be asic or fpga");
  }
  auto recs = analysis::recommend(table, *objective, o.tie_tolerance);
  if (o.format == "csv") {
    emit_text(o, io::recommendations_csv(recs));
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : recs) rows.push_back({size_label(r.n), winner_cell(r), io::format_number(r.metric)});
  emit_text(o, table_text({"Size (bits)", std::string(analysis::to_string(*objective)), "metric"}, rows));
  return 0;
}

// Structural (netlist) and analytical values side by side. In structural
// mode any difference is a failure.
int cmd_measure(const Options& o, bool want_cost) {
  EncoderSpec spec = resolve_spec(o);
  TechParams tech = resolve_tech(o);
  auto nl = generate(spec);
  double structural = want_cost ? transistor_count(nl, tech, o.include_valid)
                                : longest_path(nl, tech, o.include_valid).total;
  std::optional<double> analytical;
  if (model::has_model(spec.arch)) {
    analytical = want_cost ? model::cost(spec, tech) : model::delay(spec, tech);
  }
  const char* what = want_cost ? "cost" : "delay";
  if (o.format == "json") {
    io::Json doc;
    doc["spec"] = io::spec_to_json(spec);
    doc["mode"] = std::string(io::to_string(tech.mode));
    doc["metric"] = what;
    doc["structural"] = structural;
    doc["analytical"] = analytical ? io::Json(*analytical) : io::Json(nullptr);
    doc["include_valid"] = o.include_valid;
    if (!want_cost) doc["path"] = io::delay_to_json(nl, longest_path(nl, tech, o.include_valid));
    emit_text(o, doc.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << spec.label() << " n=" << spec.n << " " << what << " (" << io::to_string(tech.mode)
       << " model)\n";
    os << "  structural: " << io::format_number(structural) << (o.include_valid ? " (with valid)" : "")
       << "\n";
    os << "  analytical: " << (analytical ? io::format_number(*analytical) : "n/a") << "\n";
    emit_text(o, os.str());
  }
  if (tech.mode == MuxModel::kStructural && analytical && !o.include_valid && *analytical != structural) {
    throw MismatchExit{std::string(what) + ": structural " + io::format_number(structural) +
                       " != analytical " + io::format_number(*analytical)};
  }
  return 0;
}

int cmd_emit(const Options& o) {
  auto dialect = hdl::parse_dialect(o.dialect);
  if (!dialect) throw SpecError("--dialect must be vhdl or verilog");
  auto nl = generate(resolve_spec(o));
  if (!o.out_dir.empty()) {
    std::cout << hdl::emit_file(nl, *dialect, o.out_dir).string() << "\n";
  } else {
    emit_text(o, hdl::emit(nl, *dialect));
  }
  return 0;
}

int cmd_fpga(const Options& o) {
  auto table = fpga_sweep(o);
  if (table.rows.empty()) throw IoError("no usable FPGA records");
  auto scored = analysis::rcdp(table);
  if (o.format == "csv") {
    emit_text(o, io::scored_csv(scored));
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : scored) {
    rows.push_back({s.label, size_label(s.n), io::format_number(s.cost), io::format_number(s.delay),
                    fmt2(s.rel_cost), fmt2(s.rel_delay), fmt2(s.rcdp)});
  }
  emit_text(o, table_text({"arch", "Size (bits)", "LUT_N", "adj. delay", "rel cost", "rel delay", "RCDP"},
                          rows));
  return 0;
}

int cmd_tables(const Options& o) {
  auto t = analysis::asic_tables(resolve_tech(o), o.tie_tolerance);
  if (o.format == "csv") {
    std::ostringstream os;
    os << "objective,n,size,winner,co_winners\n";
    auto dump = [&](std::string_view name, const std::vector<analysis::Recommendation>& recs) {
      for (const auto& r : recs) {
        std::string co;
        for (const auto& c : r.co_winners) co += (co.empty() ? "" : "/") + c;
        os << name << ',' << r.n << ',' << size_label(r.n) << ',' << r.winner << ',' << co << '\n';
      }
    };
    dump("complexity", t.complexity);
    dump("delay", t.delay);
    dump("balanced", t.balanced);
    emit_text(o, os.str());
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < t.sizes.size(); ++i) {
    rows.push_back({size_label(t.sizes[i]), winner_cell(t.complexity[i]), winner_cell(t.delay[i]),
                    winner_cell(t.balanced[i])});
  }
  emit_text(o, table_text({"Size (bits)", "Lowest complexity", "Lowest delay", "Balanced (RCDP)"}, rows));
  return 0;
}

void add_spec_options(CLI::App* app, Options& o) {
  app->add_option("--arch", o.arch, "slpe, slpe_gate, rec, tree, 2lpe, 3lpe-o, 4lpe-a, ...");
  app->add_option("--n", o.n, "input length (power of two)");
  app->add_option("--m", o.m, "level count for multi-level encoders");
  app->add_option("--k", o.k, "recursive division factor")->capture_default_str();
  app->add_option("--valid", o.valid, "stage_or, lsb_or or none")->capture_default_str();
  app->add_option("--convention", o.convention, "standard or native (tree only)")->capture_default_str();
  app->add_option("--spec", o.spec_json, "read the encoder spec from a JSON file");
}

void add_tech_options(CLI::App* app, Options& o) {
  app->add_option("--r,--ratio", o.ratio, "PMOS:NMOS delay ratio")->capture_default_str();
  app->add_option("--mode", o.mode, "literal or structural")->capture_default_str();
  app->add_option("--mux2", o.mux2, "atomic or composite")->capture_default_str();
  app->add_option("--mux4", o.mux4, "three or gate36")->capture_default_str();
  app->add_option("--or4", o.or4, "atomic or composite")->capture_default_str();
  app->add_option("--cost-override", o.overrides, "KIND=transistors, repeatable");
}

void add_output_options(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "table, csv or json")->capture_default_str();
  app->add_option("--out", o.out, "write to a file instead of stdout");
}

void add_sweep_options(CLI::App* app, Options& o) {
  app->add_option("--archs", o.archs, "candidate architectures (default: all)");
  app->add_option("--grid", o.grid, "input lengths (default 2^6..2^18)");
  app->add_flag("--five-level", o.five_level, "include 5LPE candidates");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"petk: priority encoder generator, verifier and analyzer"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> run;

  auto* gen = app.add_subcommand("generate", "emit a netlist as JSON");
  add_spec_options(gen, o);
  add_output_options(gen, o);
  gen->callback([&] { run = [&] { return cmd_generate(o); }; });

  auto* ver = app.add_subcommand("verify", "simulate against the MSHB oracle");
  add_spec_options(ver, o);
  add_output_options(ver, o);
  ver->add_option("--strategy", o.strategy, "exhaustive, one-hot, prefix-ones, random or all")
      ->capture_default_str();
  ver->add_option("--count", o.count, "random vector count")->capture_default_str();
  ver->add_option("--seed", o.seed, "random seed")->capture_default_str();
  ver->callback([&] { run = [&] { return cmd_verify(o); }; });

  auto* ana = app.add_subcommand("analyze", "sweep the analytical model");
  add_tech_options(ana, o);
  add_output_options(ana, o);
  add_sweep_options(ana, o);
  ana->add_option("--k", o.k, "recursive division factor")->capture_default_str();
  ana->callback([&] { run = [&] { return cmd_analyze(o); }; });

  auto* rec = app.add_subcommand("recommend", "per-n winners for an objective");
  add_tech_options(rec, o);
  add_output_options(rec, o);
  add_sweep_options(rec, o);
  rec->add_option("--objective", o.objective, "complexity, delay or balanced")->capture_default_str();
  rec->add_option("--tie-tolerance", o.tie_tolerance, "relative co-winner band")->capture_default_str();
  rec->add_option("--tech", o.tech_kind, "asic or fpga")->capture_default_str();
  rec->add_option("--csv", o.csv, "FPGA synthesis CSV (with --tech fpga)");
  rec->add_flag("--strict", o.strict, "fail on malformed CSV rows");
  rec->callback([&] { run = [&] { return cmd_recommend(o); }; });

  for (bool want_cost : {false, true}) {
    auto* sub = app.add_subcommand(want_cost ? "cost" : "delay",
                                   want_cost ? "transistor count, structural and analytical"
                                             : "critical path, structural and analytical");
    add_spec_options(sub, o);
    add_tech_options(sub, o);
    add_output_options(sub, o);
    sub->add_flag("--include-valid", o.include_valid, "count valid-signal logic too");
    sub->callback([&, want_cost] { run = [&, want_cost] { return cmd_measure(o, want_cost); }; });
  }

  auto* emt = app.add_subcommand("emit", "structural VHDL or Verilog");
  add_spec_options(emt, o);
  emt->add_option("--dialect", o.dialect, "vhdl or verilog")->capture_default_str();
  emt->add_option("--out", o.out, "output file");
  emt->add_option("--out-dir", o.out_dir, "write <unit>.vhd / <unit>.v into this directory");
  emt->callback([&] { run = [&] { return cmd_emit(o); }; });

  auto* fp = app.add_subcommand("fpga", "normalize FPGA synthesis results");
  add_output_options(fp, o);
  fp->add_option("--csv", o.csv, "synthesis CSV")->required();
  fp->add_flag("--strict", o.strict, "fail on malformed rows");
  fp->callback([&] { run = [&] { return cmd_fpga(o); }; });

  auto* tab = app.add_subcommand("tables", "ASIC recommendation tables");
  add_tech_options(tab, o);
  add_output_options(tab, o);
  tab->add_option("--tie-tolerance", o.tie_tolerance, "relative co-winner band")->capture_default_str();
  tab->callback([&] { run = [&] { return cmd_tables(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    return run ? run() : kExitUsage;
  } catch (const MismatchExit& e) {
    std::cerr << "petk: " << e.message << "\n";
    return kExitMismatch;
  } catch (const SpecError& e) {
    std::cerr << "petk: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "petk: " << e.what() << "\n";
    return kExitIo;
  } catch (const NetlistError& e) {
    std::cerr << "petk: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "petk: JSON: " << e.what() << "\n";
    return kExitIo;
  }
}
