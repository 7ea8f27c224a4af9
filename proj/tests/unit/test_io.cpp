#include "doctest.h"

#include <filesystem>

#include "petk/arch.hpp"
#include "petk/error.hpp"
#include "petk/io.hpp"
#include "petk/sim.hpp"

using namespace petk;

TEST_CASE("netlist JSON round trip") {
  for (auto spec : {make_spec(Arch::kSlpeMux, 16), make_spec(Arch::kTree, 32), make_spec(Arch::kMlpeComposed, 64),
                    make_spec(Arch::kRecursive, 64), make_spec(Arch::kMlpeComposed, 256, 3)}) {
    Netlist a = generate(spec);
    auto doc = io::netlist_to_json(a);
    Netlist b = io::netlist_from_json(doc);
    CHECK(io::netlist_to_json(b) == doc);
    CHECK(b.cells().size() == a.cells().size());
    CHECK(transistor_count(b) == transistor_count(a));
    CHECK(longest_path(b, {}).total == longest_path(a, {}).total);
    // Simulated behavior survives the round trip.
    auto r = verify(b, spec, Strategy::random(3, 200));
    CHECK(r.ok());
  }
}

TEST_CASE("netlist JSON is deterministic") {
  auto spec = make_spec(Arch::kMlpeCascaded, 512, 3);
  CHECK(io::netlist_to_json(generate(spec)).dump() == io::netlist_to_json(generate(spec)).dump());
}

TEST_CASE("malformed netlist JSON is rejected") {
  auto doc = io::netlist_to_json(generate(make_spec(Arch::kSlpeMux, 8)));
  auto missing = doc;
  missing.erase("cells");
  CHECK_THROWS(io::netlist_from_json(missing));
  auto bad_kind = doc;
  bad_kind["cells"][0]["kind"] = "XOR9";
  CHECK_THROWS(io::netlist_from_json(bad_kind));
  auto dangling = doc;
  dangling["cells"][0]["ins"][0] = 100000;
  CHECK_THROWS(io::netlist_from_json(dangling));
}

TEST_CASE("spec JSON round trip") {
  EncoderSpec s = make_spec(Arch::kMlpeComposed, 4096, 3);
  s.valid = ValidMethod::kNone;
  EncoderSpec t = io::spec_from_json(io::spec_to_json(s));
  CHECK(t.arch == s.arch);
  CHECK(t.n == s.n);
  CHECK(t.m == s.m);
  CHECK(t.valid == s.valid);
  CHECK(t.convention == s.convention);
}

TEST_CASE("verification report JSON") {
  auto spec = make_spec(Arch::kTree, 8);
  auto r = verify(spec, Strategy::exhaustive());
  auto j = io::report_to_json(r);
  CHECK(j["tested"] == 256);
  CHECK(j["mismatch_count"] == 0);
  CHECK(j["mismatches"].empty());
}

TEST_CASE("number formatting and file IO") {
  CHECK(io::format_number(24) == "24");
  CHECK(io::format_number(2.5) == "2.5");
  auto path = std::filesystem::temp_directory_path() / "petk_io_test.txt";
  io::write_file(path, "abc\n");
  CHECK(io::read_file(path) == "abc\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_file(path), IoError);
}
