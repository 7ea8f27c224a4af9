#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "petk/netlist.hpp"

// Builders for the composite components every encoder is assembled from.
// The `build_*` functions return standalone fragments; the lower-case
// helpers splice the same structure into an existing builder.
namespace petk::circuit {

/// OR tree over a power-of-two number of nets. Widths 2/4/8 map to OR2,
/// OR4A and one OR8 unit (four NOR2 into a NAND4); wider trees use a leaf
/// layer of OR8 units followed by a tree over the unit outputs.
NetId or_tree(NetlistBuilder& b, std::span<const NetId> ins);

/// OR of an arbitrary number (>= 1) of nets using OR4A/OR2 cells.
NetId or_reduce(NetlistBuilder& b, std::span<const NetId> ins);

/// Single-bit mux over a power-of-two number of channels. `select` holds
/// log2(channels) bits, LSB first; the LSB drives the leaf layer.
NetId mux_single(NetlistBuilder& b, std::span<const NetId> data, std::span<const NetId> select);

/// `bits_per_channel` parallel single-bit muxes. Channel c occupies
/// data[c * bits_per_channel .. (c + 1) * bits_per_channel).
std::vector<NetId> mux_wide(NetlistBuilder& b, std::span<const NetId> data,
                            std::size_t bits_per_channel, std::span<const NetId> select);

/// Mux-chain single-level encoder. For n == 2 the output is input 1 and no
/// cells are created.
std::vector<NetId> slpe_mux(NetlistBuilder& b, std::span<const NetId> ins);

/// Sum-of-products single-level encoder (n in [2, 16]).
std::vector<NetId> slpe_gate(NetlistBuilder& b, std::span<const NetId> ins);

Netlist build_or_tree(std::size_t width);
/// Inputs: channel data first, then the select bits.
Netlist build_mux_single(std::size_t channels);
/// Inputs: x data bits, then log2(x / y) select bits.
Netlist build_mux_wide(std::size_t total_bits, std::size_t bits_per_channel);
Netlist build_slpe_mux(std::size_t n);
Netlist build_slpe_gate(std::size_t n);

} // namespace petk::circuit
