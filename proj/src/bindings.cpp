#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "petk/analysis.hpp"
#include "petk/arch.hpp"
#include "petk/error.hpp"
#include "petk/hdl.hpp"
#include "petk/io.hpp"
#include "petk/model.hpp"
#include "petk/sim.hpp"

namespace py = pybind11;
using namespace petk;

namespace {

EncoderSpec spec_from(const std::string& arch, std::size_t n, std::optional<int> m, int k,
                      const std::string& valid, const std::string& convention) {
  auto s = parse_arch(arch);
  if (!s) throw SpecError("unknown architecture '" + arch + "'");
  s->n = n;
  if (m) s->m = *m;
  s->k = k;
  auto v = parse_valid_method(valid);
  if (!v) throw SpecError("unknown valid method '" + valid + "'");
  s->valid = *v;
  auto c = parse_convention(convention);
  if (!c) throw SpecError("unknown convention '" + convention + "'");
  s->convention = *c;
  s->validate();
  return *s;
}

TechParams tech_from(const std::string& mode, double ratio) {
  TechParams t;
  t.ratio = ratio;
  if (mode == "structural") {
    t.mode = MuxModel::kStructural;
  } else if (mode != "literal") {
    throw SpecError("mode must be literal or structural");
  }
  t.validate();
  return t;
}

BitVector to_bits(const py::int_& x, std::size_t width) {
  if (x < py::int_(0)) throw SpecError("input must be nonnegative");
  auto hex = py::module_::import("builtins").attr("hex")(x).cast<std::string>();
  return BitVector::from_hex(width, hex);
}

py::object parse_json(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Priority encoder generator, verifier and analyzer";

  py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<NetlistError>(m, "NetlistError", PyExc_RuntimeError);

  py::class_<EncoderSpec>(m, "EncoderSpec")
      .def_property_readonly("arch", [](const EncoderSpec& s) { return std::string(to_string(s.arch)); })
      .def_readonly("n", &EncoderSpec::n)
      .def_readonly("m", &EncoderSpec::m)
      .def_readonly("k", &EncoderSpec::k)
      .def_property_readonly("label", &EncoderSpec::label)
      .def_property_readonly("unit_name", &EncoderSpec::unit_name)
      .def("__repr__", [](const EncoderSpec& s) {
        return "EncoderSpec(" + s.label() + ", n=" + std::to_string(s.n) + ")";
      });

  m.def("spec", &spec_from, py::arg("arch"), py::arg("n"), py::arg("m") = py::none(), py::arg("k") = 4,
        py::arg("valid") = "stage_or", py::arg("convention") = "standard");

  py::class_<Netlist>(m, "Netlist")
      .def_property_readonly("name", &Netlist::name)
      .def_property_readonly("input_width", &Netlist::input_width)
      .def_property_readonly("output_width", &Netlist::output_width)
      .def_property_readonly("cell_count", [](const Netlist& nl) { return nl.cells().size(); })
      .def_property_readonly("has_valid", [](const Netlist& nl) { return nl.valid().has_value(); })
      .def("count", [](const Netlist& nl, const std::string& kind) {
        auto k = parse_cell_kind(kind);
        if (!k) throw SpecError("unknown cell kind '" + kind + "'");
        return nl.count(*k);
      })
      .def("to_json", [](const Netlist& nl) { return parse_json(io::netlist_to_json(nl)); })
      .def("transistors", [](const Netlist& nl, bool include_valid) { return transistor_count(nl, {}, include_valid); },
           py::arg("include_valid") = false)
      .def("delay", [](const Netlist& nl, double ratio, bool include_valid) {
        TechParams t;
        t.ratio = ratio;
        return longest_path(nl, t, include_valid).total;
      }, py::arg("ratio") = 2.0, py::arg("include_valid") = false)
      .def("evaluate", [](const Netlist& nl, const py::int_& x) {
        auto r = evaluate(nl, to_bits(x, nl.input_width()));
        return py::make_tuple(r.index, r.valid ? py::cast(*r.valid) : py::none());
      })
      .def("emit", [](const Netlist& nl, const std::string& dialect) {
        auto d = hdl::parse_dialect(dialect);
        if (!d) throw SpecError("dialect must be vhdl or verilog");
        return hdl::emit(nl, *d);
      }, py::arg("dialect") = "verilog");

  m.def("generate", &generate, py::arg("spec"));
  m.def("netlist_from_json", [](const py::object& doc) {
    auto text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
    return io::netlist_from_json(nlohmann::json::parse(text));
  });

  m.def("verify", [](const EncoderSpec& spec, const std::string& strategy, std::size_t count, std::uint64_t seed) {
    auto kind = parse_strategy(strategy);
    if (!kind) throw SpecError("unknown strategy '" + strategy + "'");
    return parse_json(io::report_to_json(verify(spec, {*kind, seed, count})));
  }, py::arg("spec"), py::arg("strategy") = "random", py::arg("count") = 10000, py::arg("seed") = 0);

  m.def("cost", [](const EncoderSpec& s, const std::string& mode, double ratio) {
    return model::cost(s, tech_from(mode, ratio));
  }, py::arg("spec"), py::arg("mode") = "literal", py::arg("ratio") = 2.0);
  m.def("delay", [](const EncoderSpec& s, const std::string& mode, double ratio) {
    return model::delay(s, tech_from(mode, ratio));
  }, py::arg("spec"), py::arg("mode") = "literal", py::arg("ratio") = 2.0);

  m.def("size_two_level", [](std::size_t n) { return size_two_level(n).sizes; });
  m.def("size_cascaded", [](std::size_t n, int levels) { return size_cascaded(n, levels).sizes; });

  m.def("recommend", [](const std::string& objective, std::vector<std::size_t> ns, const std::string& mode,
                        double tie_tolerance) {
    auto o = analysis::parse_objective(objective);
    if (!o) throw SpecError("unknown objective '" + objective + "'");
    if (ns.empty()) ns = analysis::standard_grid();
    auto cands = analysis::default_candidates();
    auto table = analysis::sweep(cands, ns, tech_from(mode, 2.0));
    py::list out;
    for (const auto& r : analysis::recommend(table, *o, tie_tolerance)) {
      py::dict d;
      d["n"] = r.n;
      d["winner"] = r.winner;
      d["co_winners"] = r.co_winners;
      d["metric"] = r.metric;
      out.append(d);
    }
    return out;
  }, py::arg("objective") = "complexity", py::arg("ns") = std::vector<std::size_t>{},
     py::arg("mode") = "literal", py::arg("tie_tolerance") = analysis::kDefaultTieTolerance);

  m.def("lut_normalized", &model::lut_normalized, py::arg("luts"), py::arg("muxfx"));
  m.def("ingest_fpga_csv", [](const std::filesystem::path& path) {
    auto ing = analysis::ingest_fpga_csv(path);
    py::list rows;
    for (const auto& s : analysis::fpga_metrics(ing.records)) {
      py::dict d;
      d["arch"] = s.arch;
      d["n"] = s.n;
      d["lut_n"] = s.lut_n;
      d["adjusted_delay"] = s.adjusted_delay;
      rows.append(d);
    }
    return py::make_tuple(rows, ing.diagnostics);
  });
}
