#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lwr/runner.hpp"

using namespace lwr;
using nlohmann::json;

namespace {

json base_config() {
  return json{
      {"schema_version", 1},
      {"model",
       {{"v0", 1.0},
        {"dim", 1},
        {"spectral",
         {{"type", "atoms"},
          {"atoms", json::array({{{"direction", {1.0}}, {"prob", 0.5}},
                                 {{"direction", {-1.0}}, {"prob", 0.5}}})}}},
        {"coupling", {{"type", "equal_rests"}, {"wait", {{"index", 0.5}}}}},
        {"kind", {{"order", "wait_first"}, {"with_rests", true}}}}},
      {"scaling", {{"n", 100.0}}},
      {"ensemble_size", 50},
      {"time_grid", {0.5, 1.0}},
      {"seed", 12345},
      {"output_path", ""},
      {"threads", 1},
      {"epsilon", 0.005},
  };
}

struct CsvRow {
  std::size_t path;
  double t;
  std::vector<double> x;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    CsvRow row;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    row.path = std::stoul(field);
    std::getline(fields, field, ',');
    row.t = std::stod(field);
    while (std::getline(fields, field, ',')) {
      row.x.push_back(std::stod(field));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("config json round trip is the identity") {
  const RunConfig c1 = parse_config(base_config());
  const json j2 = config_to_json(c1);
  const RunConfig c2 = parse_config(j2);
  CHECK(config_to_json(c2) == j2);

  json with_extras = base_config();
  with_extras["scaling"] = {{"n", 100.0}};
  with_extras["ladder"] = {10.0, 100.0};
  const json j3 = config_to_json(parse_config(with_extras));
  CHECK(config_to_json(parse_config(j3)) == j3);
  CHECK(j3.at("scaling").at("time_exponent").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("config errors name the offending field") {
  json missing_seed = base_config();
  missing_seed.erase("seed");
  CHECK_THROWS_WITH_AS(parse_config(missing_seed), "config: field 'seed': missing",
                       std::invalid_argument);

  json bad_type = base_config();
  bad_type["model"]["coupling"]["type"] = "sometimes";
  try {
    parse_config(bad_type);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("model.coupling.type") != std::string::npos);
  }

  json equal_indices = base_config();
  equal_indices["model"]["coupling"] = {{"type", "independent_rests"},
                                        {"wait", {{"index", 0.5}}},
                                        {"rest", {{"index", 0.5}}}};
  try {
    parse_config(equal_indices);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("model.coupling") != std::string::npos);
  }

  json bad_grid = base_config();
  bad_grid["time_grid"] = {1.0, 1.0};
  try {
    validate_config(parse_config(bad_grid));
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("time_grid") != std::string::npos);
  }
}

TEST_CASE("mismatched scaling exponents are rejected") {
  json bad = base_config();
  // Equal rests demand time exponent 1/index = 2.
  bad["scaling"] = {{"n", 100.0}, {"time_exponent", 1.25}};
  const RunConfig config = parse_config(bad);
  CHECK_THROWS_AS(validate_config(config), std::invalid_argument);

  const ValidateResult result = run_validate(config);
  CHECK(!result.passed);
  const json report = json::parse(result.report);
  CHECK(report.at("passed") == false);
  bool found = false;
  for (const json& check : report.at("checks")) {
    if (check.at("name") == "config_consistency") {
      found = true;
      CHECK(check.at("pass") == false);
    }
  }
  CHECK(found);
}

TEST_CASE("simulate output matches the walk invariants") {
  json j = base_config();
  j["model"]["spectral"] = {{"type", "atoms"},
                            {"atoms", json::array({{{"direction", {1.0}}, {"prob", 1.0}}})}};
  j["ensemble_size"] = 200;
  const RunConfig wait_config = parse_config(j);
  j["model"]["kind"]["order"] = "jump_first";
  const RunConfig jump_config = parse_config(j);

  const std::vector<CsvRow> wait_rows = parse_csv(run_simulate(wait_config));
  const std::vector<CsvRow> jump_rows = parse_csv(run_simulate(jump_config));
  REQUIRE(wait_rows.size() == 400);
  REQUIRE(jump_rows.size() == 400);
  for (std::size_t r = 0; r < wait_rows.size(); ++r) {
    // All directions point up, so positions are nonnegative; with equal
    // rests the wait-first value is capped by t/2, and the jump-first
    // value dominates the wait-first one by the in-flight jump.
    CHECK(wait_rows[r].path == jump_rows[r].path);
    CHECK(wait_rows[r].t == jump_rows[r].t);
    CHECK(wait_rows[r].x[0] >= 0.0);
    CHECK(wait_rows[r].x[0] <= wait_rows[r].t / 2.0 * (1.0 + 1e-12));
    CHECK(jump_rows[r].x[0] > wait_rows[r].x[0]);
  }
}

TEST_CASE("simulate and limit output is byte deterministic") {
  json j = base_config();
  const RunConfig serial = parse_config(j);
  j["threads"] = 8;
  const RunConfig parallel = parse_config(j);

  const std::string sim = run_simulate(serial);
  CHECK(run_simulate(serial) == sim);
  CHECK(run_simulate(parallel) == sim);

  const std::string lim = run_limit(serial);
  CHECK(run_limit(serial) == lim);
  CHECK(run_limit(parallel) == lim);
  CHECK(sim != lim);
}

TEST_CASE("different seeds give different ensembles") {
  json j = base_config();
  const std::string a = run_simulate(parse_config(j));
  j["seed"] = 54321;
  const std::string b = run_simulate(parse_config(j));
  CHECK(a != b);
}

TEST_CASE("converge report shape") {
  json j = base_config();
  j["ensemble_size"] = 200;
  j["time_grid"] = {1.0};
  j["ladder"] = {16.0};
  const RunConfig config = parse_config(j);
  const std::string text = run_converge(config);
  CHECK(run_converge(config) == text);

  const json report = json::parse(text);
  CHECK(report.at("type") == "converge");
  CHECK(report.at("entries").size() == 1);
  const json& entry = report.at("entries")[0];
  CHECK(entry.at("n") == 16.0);
  CHECK(entry.at("ks_wait_first").get<double>() >= 0.0);
  CHECK(entry.at("ks_wait_first").get<double>() <= 1.0);
  CHECK(entry.at("ks_jump_first").get<double>() <= 1.0);
  // A single rung carries no monotonicity summary.
  CHECK(!report.contains("ks_non_increasing_within_slack"));

  json no_ladder = base_config();
  CHECK_THROWS_AS(run_converge(parse_config(no_ladder)), std::invalid_argument);
}

TEST_CASE("validate passes on a consistent configuration") {
  const RunConfig config = parse_config(base_config());
  const ValidateResult result = run_validate(config);
  const json report = json::parse(result.report);
  for (const json& check : report.at("checks")) {
    INFO(check.dump());
    CHECK(check.at("pass") == true);
  }
  CHECK(result.passed);
}
