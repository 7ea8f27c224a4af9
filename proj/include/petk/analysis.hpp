#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "petk/arch.hpp"
#include "petk/model.hpp"
#include "petk/tech.hpp"

namespace petk::analysis {

struct SweepRow {
  std::string label;
  std::size_t n = 0;
  double cost = 0;
  double delay = 0;
  std::optional<EncoderSpec> spec;           // null for ingested FPGA rows
  std::optional<model::CostReport> report;   // ASIC rows only
};

struct Skipped {
  EncoderSpec spec;
  std::string reason;
};

/// Rows are ordered by n, then by candidate order.
struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<Skipped> skipped;

  std::vector<std::size_t> sizes() const;
  std::vector<const SweepRow*> at(std::size_t n) const;
  const SweepRow* find(std::string_view label, std::size_t n) const;
  double best_cost(std::size_t n) const;
  double best_delay(std::size_t n) const;
};

/// n = 2^6 .. 2^18.
std::vector<std::size_t> standard_grid();

/// SLPE, Rec, Tree, 2LPE, 3LPE-O, 3LPE-A, 4LPE-O, 4LPE-A and optionally the
/// five-level encoders. The n field of each spec is a placeholder.
std::vector<EncoderSpec> default_candidates(bool include_five_level = false);

/// Evaluates every candidate at every n with the analytical model.
/// Infeasible combinations land in `skipped`.
SweepTable sweep(std::span<const EncoderSpec> candidates, std::span<const std::size_t> ns,
                 const TechParams& tech = {});

struct Scored {
  std::string label;
  std::size_t n = 0;
  double cost = 0;
  double delay = 0;
  double rel_cost = 0;  // cost / best cost at n
  double rel_delay = 0; // delay / best delay at n
  double rcdp = 0;      // rel_cost * rel_delay
};

/// Relative complexity-delay product per row. Throws SpecError on an empty table.
std::vector<Scored> rcdp(const SweepTable& table);

enum class Objective { kComplexity, kDelay, kBalanced };
std::optional<Objective> parse_objective(std::string_view text);
std::string_view to_string(Objective objective);

struct Recommendation {
  std::size_t n = 0;
  std::string winner;
  std::vector<std::string> co_winners; // includes the winner
  double metric = 0;
};

inline constexpr double kDefaultTieTolerance = 0.02;

/// Strict argmin of the objective per n (first candidate wins exact ties);
/// every row within `tie_tolerance` (relative) of the minimum is a co-winner.
std::vector<Recommendation> recommend(const SweepTable& table, Objective objective,
                                      double tie_tolerance = kDefaultTieTolerance);

struct FpgaRecord {
  std::string arch;
  std::size_t n = 0;
  std::int64_t luts = 0;
  std::int64_t muxfx = 0;
  std::int64_t ffs = 0;
  std::int64_t path_luts = 0;
  std::int64_t path_muxfx = 0;
};

struct FpgaIngest {
  std::vector<FpgaRecord> records;
  std::vector<std::string> diagnostics; // "line N: message"
};

/// Reads `arch,n,luts,muxfx,ffs,path_luts,path_muxfx`. A wrong header or an
/// unreadable file throws IoError; bad rows and duplicate (arch, n) pairs
/// become diagnostics.
FpgaIngest parse_fpga_csv(std::istream& in);
FpgaIngest ingest_fpga_csv(const std::filesystem::path& path);

struct FpgaMetric {
  std::string arch;
  std::size_t n = 0;
  std::uint64_t lut_n = 0;
  double adjusted_delay = 0;
  std::int64_t ffs = 0;
};

std::vector<FpgaMetric> fpga_metrics(std::span<const FpgaRecord> records);
/// Sweep table with LUT_N as the cost and adjusted delay as the delay.
SweepTable fpga_table(std::span<const FpgaMetric> metrics);

struct ShareBands {
  double mux_lo = 60, mux_hi = 75;
  double or_lo = 20, or_hi = 35;
  double pe_max = 5;
};

struct ShareRow {
  std::string label;
  std::size_t n = 0;
  double or_pct = 0;
  double mux_pct = 0;
  double pe_pct = 0;
  std::vector<std::string> flags; // empty when inside every band
};

/// Component shares for every row with a cost breakdown. Band checks apply
/// to multi-level encoder rows only.
std::vector<ShareRow> breakdown_check(const SweepTable& table, const ShareBands& bands = {});

struct AsicTables {
  std::vector<std::size_t> sizes;
  std::vector<Recommendation> complexity;
  std::vector<Recommendation> delay;
  std::vector<Recommendation> balanced;
};

/// ASIC recommendation columns over the standard grid (2^6..2^18) with the default candidates.
AsicTables asic_tables(const TechParams& tech = {}, double tie_tolerance = kDefaultTieTolerance);

} // namespace petk::analysis
