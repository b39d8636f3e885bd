#include "doctest.h"
#include "helpers.hpp"

#include "torsionlab/checks.hpp"
#include "torsionlab/growthlab.hpp"
#include "torsionlab/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace torsionlab;
using testutil::P;
namespace fs = std::filesystem;

namespace {

const char* kFigureEight = "gens: x y\nrho: x -> t, y -> t\nrel: x^-1 y x y^-1 x y x^-1 y^-1 x y^-1\n";

ExperimentConfig config(const std::string& text) { return ExperimentConfig::from_json(Json::parse(text)); }

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("torsionlab_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("json forms round trip") {
  LaurentPoly f = P("3*t1^-2*t2 - t2^4 + 7");
  CHECK(poly_from_json(poly_to_json(f)) == f);
  CHECK(poly_from_json(Json("t^2 - t + 1")) == P("t^2 - t + 1"));
  CHECK(poly_from_json(Json(5), 2) == P("5", 2));

  PolyMatrix m = PolyMatrix::from_rows({{P("t1 - 1", 2), P("2", 2)}, {P("t2", 2), P("0", 2)}}, 2);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK(matrix_from_json(Json::parse(R"({"entries": [["t1 - 2", "t2 + 3"]]})")).nvars() == 2);
  CHECK_THROWS(matrix_from_json(Json::parse(R"({"entries": [["t", "1"], ["t"]]})")));
  CHECK_THROWS(matrix_from_json(Json::parse(R"([1, 2])")));

  Subgroup g(2, {{2, 1}, {-1, 3}});
  Subgroup back = subgroup_from_json(subgroup_to_json(g));
  CHECK(back.gens() == g.gens());
  // rows of the JSON matrix are coordinates; columns are generators
  CHECK(subgroup_to_json(g) == Json::parse("[[2, -1], [1, 3]]"));
  CHECK(Json::parse(g.describe()) == subgroup_to_json(g));
}

TEST_CASE("config validation") {
  CHECK_THROWS(config(R"({"module": {}, "sequence": {"type": "cyclic", "to": 3}})"));
  CHECK_THROWS(config(R"({"module": {"poly": "t - 2", "presentation_text": "x"}, "sequence": {"type": "cyclic", "to": 3}})"));
  CHECK_THROWS(config(R"({"module": {"poly": "t - 2"}, "sequence": {"type": "spiral"}})"));
  CHECK_THROWS(config(R"({"module": {"poly": "t - 2"}, "sequence": {"type": "cyclic", "from": 5, "to": 3}})"));
  CHECK_THROWS(config(R"({"module": {"poly": "1 + t1 + t2"}, "sequence": {"type": "gamma_sj", "kappa": [1, 1], "s": [2]}})"));
  CHECK_THROWS(run(config(R"({"module": {"poly": "1 + t1 + t2"}, "sequence": {"type": "cyclic", "to": 3}})")));
}

TEST_CASE("R/(t - 2), l = 1..20") {
  ExperimentReport r = run(config(R"({"module": {"poly": "t - 2"}, "sequence": {"type": "cyclic", "from": 1, "to": 20}})"));
  CHECK(r.delta == "t - 2");
  CHECK(r.target.method == "jensen");
  REQUIRE(r.samples.size() == 20);
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto l = static_cast<double>(i + 1);
    CHECK(r.samples[i].sample.growth_stat == doctest::Approx(std::log(std::pow(2.0, l) - 1) / l));
  }
  CHECK(r.final_gap < 0.01);
}

TEST_CASE("free module has zero growth") {
  ExperimentReport r = run(config(R"({"module": {"matrix": {"nvars": 2, "rows": 0, "cols": 2, "entries": []}},
                                      "sequence": {"type": "diagonal", "from": 1, "to": 5}})"));
  CHECK(r.target.value == 0);
  for (const auto& s : r.samples) {
    CHECK(s.sample.growth_stat == 0);
    CHECK(s.sample.betti == 2 * s.sample.index);
  }
}

TEST_CASE("figure-eight branched run with oracle notes") {
  ExperimentConfig c = config(R"({"module": {"presentation_text": "", "branched": true}, "sequence": {"type": "cyclic", "from": 1, "to": 40}})");
  c.presentation_text = kFigureEight;
  ExperimentReport r = run(c);
  CHECK(r.delta == "t^2 - 3*t + 1");
  REQUIRE(r.samples.size() == 40);
  for (const auto& s : r.samples) {
    if (s.sample.index == 1) continue;
    CHECK(s.oracle_note == "agrees");
  }
  CHECK(std::abs(r.samples.back().sample.growth_stat - 0.962424) < 0.05);
}

TEST_CASE("sequences") {
  auto diag = build_sequence(config(R"({"module": {"poly": "t1"}, "sequence": {"type": "diagonal", "from": 2, "to": 6, "step": 2}})").sequence, 2);
  REQUIRE(diag.size() == 3);
  CHECK(FinAbGroup(diag[2]).order() == 36);

  auto sj = build_sequence(config(R"({"module": {"poly": "t1"}, "sequence": {"type": "gamma_sj", "kappa": [1, 1], "s": [2, 3], "j_factor": 2}})").sequence, 2);
  REQUIRE(sj.size() == 2);
  for (std::size_t i = 0; i < sj.size(); ++i) CHECK(FinAbGroup(sj[i]).invariant_factors().size() == 1);

  auto ex = build_sequence(config(R"({"module": {"poly": "t1"}, "sequence": {"type": "explicit", "subgroups": [[[2, 0], [0, 3]], [[1, 1], [-1, 1]]]}})").sequence, 2);
  REQUIRE(ex.size() == 2);
  CHECK(FinAbGroup(ex[0]).order() == 6);
  CHECK(FinAbGroup(ex[1]).order() == 2);
}

TEST_CASE("reports are deterministic, ordered, and persisted") {
  const fs::path out = scratch_dir("report");
  const std::string text = R"({"module": {"poly": "3 + t1 + t2"},
    "sequence": {"type": "explicit", "subgroups": [[[4, 0], [0, 4]], [[2, 0], [0, 2]], [[3, 0], [0, 3]]]},
    "mahler": {"method": "quadrature", "samples": 20000}, "seed": 9, "jobs": 3, "output": ")" + out.string() + "\"}";
  ExperimentConfig c = config(text);
  ExperimentReport a = run(c);
  c.jobs = 1;
  c.output_dir.clear();
  ExperimentReport b = run(c);
  CHECK(a.to_json(false) == b.to_json(false));
  std::vector<std::size_t> idx;
  for (const auto& s : a.samples) idx.push_back(s.sample.index);
  CHECK(idx == std::vector<std::size_t>{4, 9, 16});
  CHECK(a.samples[0].sample.torsion_order == 45);

  std::ifstream csv(out / "samples.csv");
  std::string header, line;
  std::getline(csv, header);
  CHECK(header == GrowthSample::csv_header());
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 3);
  Json report = read_json_file((out / "report.json").string());
  CHECK(report["samples"].size() == 3);
  CHECK(report["target"]["method"] == "quadrature");
  CHECK(report["metadata"].contains("timings"));
  CHECK(report["final_gap"].get<double>() == doctest::Approx(a.final_gap));
  fs::remove_all(out);
}

TEST_CASE("size guard applies to runs") {
  ExperimentConfig c = config(R"({"module": {"poly": "3 + t1 + t2"}, "sequence": {"type": "diagonal", "from": 71, "to": 71}})");
  CHECK_THROWS_AS(run(c), std::length_error);
}

TEST_CASE("property batteries") {
  CheckOptions o;
  o.cases = 200;
  for (const auto& r : run_all_checks(o)) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.cases >= 200);
    CHECK(r.passed());
  }
}
