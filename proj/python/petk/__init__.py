"""Priority encoder generator, verifier and analyzer."""

from ._core import (
    EncoderSpec,
    IoError,
    Netlist,
    NetlistError,
    SpecError,
    cost,
    delay,
    generate,
    ingest_fpga_csv,
    lut_normalized,
    netlist_from_json,
    recommend,
    size_cascaded,
    size_two_level,
    spec,
    verify,
)

__all__ = [
    "EncoderSpec",
    "IoError",
    "Netlist",
    "NetlistError",
    "SpecError",
    "cost",
    "delay",
    "generate",
    "ingest_fpga_csv",
    "lut_normalized",
    "netlist_from_json",
    "recommend",
    "size_cascaded",
    "size_two_level",
    "spec",
    "verify",
]
