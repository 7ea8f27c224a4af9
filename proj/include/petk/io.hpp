#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "petk/analysis.hpp"
#include "petk/arch.hpp"
#include "petk/netlist.hpp"
#include "petk/sim.hpp"

namespace petk::io {

using Json = nlohmann::ordered_json;

Json netlist_to_json(const Netlist& netlist);
/// Throws IoError on a schema violation and NetlistError on an invalid graph.
Netlist netlist_from_json(const nlohmann::json& doc);

Json spec_to_json(const EncoderSpec& spec);
EncoderSpec spec_from_json(const nlohmann::json& doc);

Json report_to_json(const VerificationReport& report);
Json delay_to_json(const Netlist& netlist, const DelayReport& report);

/// One row per sweep entry: arch,n,m,mode,cost,delay,or_pct,mux_pct,pe_pct.
std::string sweep_csv(const analysis::SweepTable& table, MuxModel mode);
std::string recommendations_csv(const std::vector<analysis::Recommendation>& recs);
std::string scored_csv(const std::vector<analysis::Scored>& scored);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

std::string_view to_string(MuxModel mode);
std::string format_number(double value);

} // namespace petk::io
