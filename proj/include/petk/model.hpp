#pragma once

#include <cstdint>

#include "petk/arch.hpp"
#include "petk/tech.hpp"

// Closed-form cost (transistors) and delay (normalized transistors).
// Every function follows `tech.mode`: kLiteral evaluates the closed-form
// piecewise equations at every width, kStructural describes what the
// generators in petk/arch.hpp build.
namespace petk::model {

struct CostBreakdown {
  double or_gates = 0;
  double muxes = 0;
  double sub_encoders = 0;

  double total() const { return or_gates + muxes + sub_encoders; }
  CostBreakdown& operator+=(const CostBreakdown& o) {
    or_gates += o.or_gates;
    muxes += o.muxes;
    sub_encoders += o.sub_encoders;
    return *this;
  }
};

struct CostReport {
  double total = 0;
  CostBreakdown breakdown;

  // Shares in percent; zero for an empty report.
  double or_pct() const { return pct(breakdown.or_gates); }
  double mux_pct() const { return pct(breakdown.muxes); }
  double pe_pct() const { return pct(breakdown.sub_encoders); }

 private:
  double pct(double part) const { return total > 0 ? 100.0 * part / total : 0.0; }
};

// Component primitives.
double cost_mux2(const TechParams& tech = {});
double delay_mux2(const TechParams& tech = {});
double cost_mux4(const TechParams& tech = {});
double delay_mux4(const TechParams& tech = {});
double cost_or4(const TechParams& tech = {});
double delay_or4(const TechParams& tech = {});
double cost_or8u(const TechParams& tech = {});
double delay_or8u(const TechParams& tech = {});

double cost_or(double x, const TechParams& tech = {});
double delay_or(double x, const TechParams& tech = {});
double cost_mux_single(double x, const TechParams& tech = {});
double delay_mux_single(double x, const TechParams& tech = {});
double cost_mux_wide(double x, double y, const TechParams& tech = {});
double delay_mux_wide(double x, double y, const TechParams& tech = {});

/// Number of single-bit 2:1 muxes in an n-input mux-chain encoder.
double slpe_mux_count(double n);
double cost_slpe(double n, const TechParams& tech = {});
double delay_slpe(double n, const TechParams& tech = {});

/// Mux select width of one recursion level: ceil(log2(x / k)).
int w_R(double x, int k = 4);
double cost_recursive(double n, int k = 4, const TechParams& tech = {});
double delay_recursive(double n, int k = 4, const TechParams& tech = {});

double cost_tree(double n, const TechParams& tech = {});
double delay_tree(double n, const TechParams& tech = {});

double cost_2lpe(std::size_t n, const TechParams& tech = {});
double delay_2lpe(std::size_t n, const TechParams& tech = {});
double cost_mlpe_composed(std::size_t n, int m, const TechParams& tech = {});
double delay_mlpe_composed(std::size_t n, int m, const TechParams& tech = {});
double cost_mlpe_cascaded(std::size_t n, int m, const TechParams& tech = {});
double delay_mlpe_cascaded(std::size_t n, int m, const TechParams& tech = {});

/// Cost of any modeled architecture with its component breakdown. The
/// gate-based SLPE has no analytical model and raises SpecError.
CostReport cost_report(const EncoderSpec& spec, const TechParams& tech = {});
double cost(const EncoderSpec& spec, const TechParams& tech = {});
double delay(const EncoderSpec& spec, const TechParams& tech = {});
bool has_model(Arch arch);

/// FPGA normalization: LUTs plus one LUT per three MUXFX primitives.
std::uint64_t lut_normalized(std::int64_t luts, std::int64_t muxfx);
/// Critical path in LUT levels with each MUXFX counted as half a LUT.
double delay_adjusted(std::int64_t path_luts, std::int64_t path_muxfx);

} // namespace petk::model
