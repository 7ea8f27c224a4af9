// Acceptance suite: one PASS/FAIL line per criterion, with a short detail
// string. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "petk/analysis.hpp"
#include "petk/arch.hpp"
#include "petk/circuit.hpp"
#include "petk/hdl.hpp"
#include "petk/io.hpp"
#include "petk/model.hpp"
#include "petk/sim.hpp"

using namespace petk;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail.str("");
    pass = false;
    detail << why << "; ";
  }
};

void note(Outcome& o, const std::string& s) {
  if (o.pass) o.detail << s;
}

const std::vector<std::size_t> kGrid = analysis::standard_grid();

std::vector<EncoderSpec> all_specs(std::size_t n) {
  std::vector<EncoderSpec> v;
  v.push_back(make_spec(Arch::kSlpeMux, n));
  v.push_back(make_spec(Arch::kSlpeGate, n));
  v.push_back(make_spec(Arch::kTree, n));
  for (int k : {2, 4, 8}) {
    EncoderSpec r = make_spec(Arch::kRecursive, n);
    r.k = k;
    v.push_back(r);
  }
  for (int m = 2; m <= 5; ++m) {
    v.push_back(make_spec(Arch::kMlpeComposed, n, m));
    if (m > 2) v.push_back(make_spec(Arch::kMlpeCascaded, n, m));
  }
  std::erase_if(v, [](const EncoderSpec& s) { return s.infeasibility().has_value(); });
  return v;
}

std::string tag(const EncoderSpec& s) { return s.label() + "(" + std::to_string(s.n) + ")"; }

// floor(log2 x), computed from the hex text rather than the BitVector API.
long long oracle_mshb(const BitVector& x) {
  std::string h = x.to_hex().substr(2);
  std::size_t bits = h.size() * 4;
  for (std::size_t i = 0; i < h.size(); ++i) {
    int d = std::stoi(std::string(1, h[i]), nullptr, 16);
    for (int b = 3; b >= 0; --b) {
      if (d >> b & 1) return static_cast<long long>(bits - 1 - (i * 4 + 3 - b));
    }
  }
  return -1;
}

Outcome functional() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t designs = 0, vectors = 0;
  for (std::size_t n = 2; n <= 1024; n *= 2) {
    for (const auto& s : all_specs(n)) {
      Netlist nl = generate(s);
      std::vector<Strategy> st;
      if (n <= 16) {
        st.push_back(Strategy::exhaustive());
      } else {
        st = {Strategy::one_hot(), Strategy::prefix_ones(), Strategy::random(0, 10000)};
      }
      for (const auto& x : st) {
        auto r = verify(nl, s, x, oracle_mshb);
        vectors += r.tested;
        if (!r.ok()) o.fail(tag(s) + " " + r.strategy + ": " + std::to_string(r.mismatch_count) + " mismatches");
      }
      ++designs;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 300) o.fail("runtime " + std::to_string(secs) + " s over 300 s");
  note(o, std::to_string(designs) + " designs, " + std::to_string(vectors) + " vectors, " +
              io::format_number(std::round(secs * 10) / 10) + " s");
  return o;
}

Outcome constants() {
  Outcome o;
  TechParams t;
  if (model::cost_or8u(t) != 24) o.fail("OR8 unit cost " + io::format_number(model::cost_or8u(t)));
  TechParams g36;
  g36.mux4 = Mux4Variant::kGate36T;
  if (model::cost_mux4(g36) != 36) o.fail("gate-level 4:1 mux cost " + io::format_number(model::cost_mux4(g36)));
  if (model::cost_mux2(t) != 8) o.fail("atomic 2:1 mux cost " + io::format_number(model::cost_mux2(t)));
  struct Row {
    const char* name;
    double norm;
  };
  const Row table[] = {{"NOT", 2},  {"NAND2", 2}, {"NAND3", 3}, {"NAND4", 4}, {"NOR2", 4},
                       {"NOR4", 8}, {"AND2", 4},  {"OR2", 6},   {"OR4A", 10}};
  for (const auto& r : table) {
    auto k = parse_cell_kind(r.name);
    if (!k) {
      o.fail(std::string("no cell ") + r.name);
      continue;
    }
    if (t.delay(*k) != r.norm) o.fail(std::string(r.name) + " delay " + io::format_number(t.delay(*k)));
  }
  if (model::delay_or8u(t) != 8) o.fail("OR8U delay " + io::format_number(model::delay_or8u(t)));
  note(o, "OR8U=24, GATE_36T=36, MUX2=8, 10 delay rows");
  return o;
}

Outcome equivalence() {
  Outcome o;
  const TechParams st = TechParams::structural();
  std::size_t checked = 0;
  for (std::size_t n = 2; n <= 4096; n *= 2) {
    for (const auto& s : all_specs(n)) {
      if (!model::has_model(s.arch)) continue;
      Netlist nl = generate(s);
      double c = transistor_count(nl, st), d = longest_path(nl, st).total;
      double mc = model::cost(s, st), md = model::delay(s, st);
      if (c != mc) o.fail(tag(s) + " cost " + io::format_number(c) + " vs " + io::format_number(mc));
      if (d != md) o.fail(tag(s) + " delay " + io::format_number(d) + " vs " + io::format_number(md));
      ++checked;
    }
  }
  note(o, std::to_string(checked) + " designs, integer equality");
  return o;
}

Outcome sizing() {
  Outcome o;
  auto two = size_two_level(2048).sizes;
  if (two != std::vector<std::size_t>{64, 32}) o.fail("size_two_level(2048) wrong");
  auto c3 = size_cascaded(4096, 3).sizes;
  if (c3 != std::vector<std::size_t>{16, 16, 16}) o.fail("size_cascaded(4096,3) wrong");
  // Composed 4096/3: 64 slices of width 64 plus two 64-input two-level encoders.
  if (size_two_level(4096).sizes != std::vector<std::size_t>{64, 64}) o.fail("size_two_level(4096) wrong");
  Netlist top = build_mlpe_composed(4096, 3);
  double expect = 64 * transistor_count(circuit::build_or_tree(64)) +
                  transistor_count(circuit::build_mux_wide(4096, 64)) + 2 * transistor_count(build_2lpe(64));
  if (transistor_count(top) != expect) o.fail("composed 4096/3 is not 2 x 2LPE(64) plus top stage");
  if (build_2lpe(64).outputs().size() != 6) o.fail("2LPE(64) output width");
  note(o, "(64,32), (16,16,16), composed 4096/3 = top + 2 x 64:6 2LPE");
  return o;
}

Outcome recommendations() {
  Outcome o;
  const std::vector<std::string> complexity = {"2LPE",   "3LPE-O", "3LPE-O", "3LPE-O", "3LPE-O",
                                               "3LPE-O", "3LPE-O", "4LPE-O", "4LPE-O", "3LPE-A",
                                               "3LPE-A", "4LPE-O", "4LPE-O"};
  auto t = analysis::asic_tables();
  int exact = 0, co = 0;
  for (std::size_t i = 0; i < t.sizes.size(); ++i) {
    if (t.delay[i].winner != "Tree") o.fail("delay n=" + std::to_string(t.sizes[i]) + ": " + t.delay[i].winner);
    const auto& r = t.complexity[i];
    if (r.winner == complexity[i]) {
      ++exact;
    } else if (std::find(r.co_winners.begin(), r.co_winners.end(), complexity[i]) != r.co_winners.end()) {
      ++co;
    } else {
      o.fail("complexity n=" + std::to_string(t.sizes[i]) + ": " + r.winner + " vs " + complexity[i]);
    }
  }
  note(o, "delay 13/13 Tree; complexity " + std::to_string(exact) + "/13 exact, " + std::to_string(co) +
              " via 2% co-winners");
  return o;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", v);
  return buf;
}

Outcome quantitative() {
  Outcome o;
  std::ostringstream info;
  // (a) 3LPE for n >= 128, 4LPE-O for n >= 512, 4LPE-A for n >= 4096.
  struct Range {
    Arch arch;
    int m;
    std::size_t from;
  };
  double worst_a = -1e9;
  std::string worst_a_at;
  for (const Range& r : {Range{Arch::kMlpeComposed, 3, 128}, Range{Arch::kMlpeCascaded, 3, 128},
                         Range{Arch::kMlpeComposed, 4, 512}, Range{Arch::kMlpeCascaded, 4, 4096}}) {
    for (std::size_t n : kGrid) {
      if (n < r.from) continue;
      EncoderSpec s = make_spec(r.arch, n, r.m);
      if (s.infeasibility()) continue;
      double over = 100 * (model::cost(s) / model::cost_2lpe(n) - 1);
      if (over > worst_a) {
        worst_a = over;
        worst_a_at = tag(s);
      }
      if (over > 10) o.fail("(a) " + tag(s) + " " + pct(over) + " above 2LPE");
    }
  }
  info << "(a) worst " << worst_a_at << " " << pct(worst_a) << "; ";
  // (b), (c): recommended composed designs against the tree, n >= 512.
  double lo_b = 1e9, hi_b = -1e9, lo_c = 1e9, hi_c = -1e9;
  for (std::size_t n : kGrid) {
    if (n < 512) continue;
    std::vector<int> levels;
    if (n <= 8192) levels.push_back(3);
    if (n >= 8192) levels.push_back(4);
    for (int m : levels) {
      EncoderSpec s = make_spec(Arch::kMlpeComposed, n, m);
      double saving = 100 * (1 - model::cost(s) / model::cost_tree(n));
      double ratio = model::delay(s) / model::delay_tree(n);
      lo_b = std::min(lo_b, saving);
      hi_b = std::max(hi_b, saving);
      lo_c = std::min(lo_c, ratio);
      hi_c = std::max(hi_c, ratio);
      if (saving < 21 - 2 || saving > 28 + 2) o.fail("(b) " + tag(s) + " saving " + pct(saving));
      if (ratio < 3.4 - 0.2 || ratio > 4.4 + 0.2) o.fail("(c) " + tag(s) + " delay ratio " + std::to_string(ratio));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "(b) %.1f..%.1f%% below tree; (c) %.2f..%.2fx tree; ", lo_b, hi_b, lo_c, hi_c);
  info << buf;
  // (d) cascaded 5LPE against every m <= 4 multi-level encoder, n >= 2^12.
  int d_checked = 0;
  for (std::size_t n : kGrid) {
    if (n < 4096) continue;
    EncoderSpec five = make_spec(Arch::kMlpeCascaded, n, 5);
    if (five.infeasibility()) {
      o.fail("(d) 5LPE-A infeasible at " + std::to_string(n));
      continue;
    }
    double c5 = model::cost(five);
    for (int m = 2; m <= 4; ++m) {
      for (Arch a : {Arch::kMlpeComposed, Arch::kMlpeCascaded}) {
        if (m == 2 && a == Arch::kMlpeCascaded) continue;
        EncoderSpec s = make_spec(a, n, m);
        if (s.infeasibility()) continue;
        ++d_checked;
        if (!(c5 > model::cost(s))) o.fail("(d) 5LPE-A(" + std::to_string(n) + ") not above " + tag(s));
      }
    }
  }
  info << "(d) " << d_checked << " comparisons";
  if (o.pass) {
    o.detail << info.str();
  } else {
    o.detail << "| " << info.str();
  }
  return o;
}

Outcome fpga() {
  Outcome o;
  std::vector<analysis::FpgaRecord> recs = {{"SLPE", 512, 570, 18, 0, 170, 2}, {"3LPE-A", 512, 360, 36, 0, 9, 4}};
  auto m = analysis::fpga_metrics(recs);
  if (m[0].lut_n != 576) o.fail("LUT_N(SLPE,512) = " + std::to_string(m[0].lut_n));
  if (m[1].lut_n != 372) o.fail("LUT_N(3LPE-A,512) = " + std::to_string(m[1].lut_n));
  auto s = analysis::rcdp(analysis::fpga_table(m));
  double rel = s[0].rel_cost;
  if (std::abs(rel - 1.548) > 0.01) o.fail("relative complexity " + std::to_string(rel));
  for (std::int64_t luts : {0, 1, 63, 570, 100000}) {
    if (model::lut_normalized(luts, 0) != std::uint64_t(luts)) o.fail("muxfx=0 identity at " + std::to_string(luts));
  }
  if (model::lut_normalized(10, 1) != 11 || model::lut_normalized(10, 3) != 11 || model::lut_normalized(10, 4) != 12) {
    o.fail("ceil(muxfx/3) rounding");
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "576 / 372 = %.4f", rel);
  note(o, buf);
  return o;
}

Outcome growth() {
  Outcome o;
  for (std::size_t n = 4; n <= (1u << 18); n *= 2) {
    if (model::delay_slpe(n) != 4.0 * (n - 2)) o.fail("delay_slpe(" + std::to_string(n) + ")");
    if (n <= (1u << 17) && model::delay_tree(2 * n) - model::delay_tree(n) != 4) {
      o.fail("delay_tree step at " + std::to_string(n));
    }
  }
  std::size_t series = 0;
  for (const TechParams& t : {TechParams{}, TechParams::structural()}) {
    std::vector<std::pair<std::string, std::function<double(std::size_t)>>> fns = {
        {"or", [&](std::size_t n) { return model::cost_or(n, t); }},
        {"mux1", [&](std::size_t n) { return model::cost_mux_single(n, t); }},
    };
    for (const auto& [name, f] : fns) {
      double prev = -1;
      for (std::size_t n = 2; n <= (1u << 18); n *= 2) {
        double c = f(n);
        if (c < prev) o.fail(name + " not monotone at " + std::to_string(n));
        prev = c;
      }
      ++series;
    }
    std::vector<EncoderSpec> archs = {make_spec(Arch::kSlpeMux, 4), make_spec(Arch::kTree, 4),
                                      make_spec(Arch::kRecursive, 4)};
    for (int m = 2; m <= 5; ++m) {
      archs.push_back(make_spec(Arch::kMlpeComposed, 4, m));
      if (m > 2) archs.push_back(make_spec(Arch::kMlpeCascaded, 4, m));
    }
    for (EncoderSpec s : archs) {
      double prev = -1;
      for (std::size_t n = 4; n <= (1u << 18); n *= 2) {
        s.n = n;
        if (s.infeasibility()) continue;
        double c = model::cost(s, t);
        if (c < prev) o.fail(tag(s) + " cost not monotone");
        prev = c;
      }
      ++series;
    }
  }
  note(o, "SLPE 4(n-2) exact, tree step 4, " + std::to_string(series) + " cost series monotone");
  return o;
}

Outcome goldens() {
  Outcome o;
  int files = 0;
  for (auto s : {make_spec(Arch::kSlpeMux, 8), make_spec(Arch::kTree, 16), make_spec(Arch::kMlpeComposed, 64)}) {
    Netlist nl = generate(s);
    for (auto d : {hdl::Dialect::kVhdl, hdl::Dialect::kVerilog}) {
      std::string text = hdl::emit(nl, d);
      std::string path = std::string(PETK_GOLDEN_DIR) + "/" + nl.name() + std::string(hdl::extension(d));
      std::string golden;
      try {
        golden = io::read_file(path);
      } catch (const std::exception& e) {
        o.fail(e.what());
        continue;
      }
      if (text != golden) o.fail(path + " differs");
      std::string marker = d == hdl::Dialect::kVhdl ? "  -- cells" : "  // cells";
      std::string end = d == hdl::Dialect::kVhdl ? "  -- ports" : "  // ports";
      auto a = text.find(marker + "\n"), b = text.find(end + "\n");
      std::size_t lines = 0;
      for (std::size_t i = a + marker.size() + 1; i < b; ++i) lines += text[i] == '\n';
      if (lines != nl.cells().size()) o.fail(path + ": " + std::to_string(lines) + " assignments for " +
                                             std::to_string(nl.cells().size()) + " cells");
      ++files;
    }
  }
  note(o, std::to_string(files) + " files byte-identical, assignments = cells");
  return o;
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"functional correctness", functional},
      {"component constants", constants},
      {"structural-analytical equivalence", equivalence},
      {"sizing", sizing},
      {"ASIC recommendations", recommendations},
      {"quantitative claims", quantitative},
      {"FPGA metrics", fpga},
      {"growth shape", growth},
      {"HDL goldens", goldens},
  };
  int failed = 0, id = 0;
  for (const auto& c : criteria) {
    ++id;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed ? 1 : 0;
}
