#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiment.hpp"

using namespace zeno;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kSmall = R"({
  "name": "small",
  "code": {"generators": ["ZZI", "IZZ"]},
  "bath": {"dim": 2},
  "hamiltonian": {"terms": [
    {"system": "XII", "bath": [[0, 1], [1, 0]], "coefficient": 0.1},
    {"system": "III", "bath": [[1, 0], [0, -1]], "coefficient": 0.05}
  ]},
  "initial_state": {"logical": [[0.8, 0], [0, 0.6]]},
  "protocol": ["group", "generators"],
  "sweep": {"tau": [1.0], "M": [1, 4], "epsilon": [1, "inf"]}
})";

std::string schema_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(kSmall);
  CHECK(cfg.generators.size() == 2);
  CHECK(cfg.bath_dim == 2);
  CHECK(cfg.terms.size() == 2);
  CHECK(cfg.protocols.size() == 2);
  CHECK(cfg.Ms == std::vector<std::uint64_t>{1, 4});
  CHECK(std::isinf(cfg.epsilons[1]));
  CHECK(cfg.logical_pure);
  CHECK(cfg.hash.size() == 16);
  CHECK(parse_config(kSmall).hash == cfg.hash);
}

TEST_CASE("schema errors name the field") {
  json j = json::parse(kSmall);
  j["sweep"]["M"] = json::array();
  CHECK(schema_path(j.dump()) == "sweep.M");
  j = json::parse(kSmall);
  j["extra"] = 1;
  CHECK(schema_path(j.dump()) == "extra");
  j = json::parse(kSmall);
  j["hamiltonian"]["terms"][0]["bath"][1][0] = "x";
  CHECK(schema_path(j.dump()) == "hamiltonian.terms[0].bath[1][0]");
  j = json::parse(kSmall);
  j["code"]["generators"] = {"ZZI", "XII"};
  CHECK(schema_path(j.dump()) == "code.generators");
  j = json::parse(kSmall);
  j["sweep"]["epsilon"] = {0};
  CHECK(schema_path(j.dump()) == "sweep.epsilon[0]");
  CHECK(schema_path("{not json") == "$");
}

TEST_CASE("io error for a missing file") {
  try {
    load_config("/nonexistent/config.json");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}

TEST_CASE("sweep rows, ordering and bound dominance") {
  const auto cfg = parse_config(kSmall);
  RunOptions one;
  const auto a = run_experiment(cfg, one);
  REQUIRE(a.rows.size() == 8);
  CHECK(a.rows[0].variant == Protocol::group);
  CHECK(a.rows[1].M == 4);
  CHECK(a.rows[4].variant == Protocol::generators);
  CHECK(a.violations() == 0);
  for (const auto& r : a.rows) CHECK(r.D_sim <= r.D_bound + 1e-9);

  RunOptions four;
  four.jobs = 4;
  const auto b = run_experiment(cfg, four);
  CHECK(report_csv(a) == report_csv(b));
  CHECK(report_json(a) == report_json(b));
}

TEST_CASE("mixed logical states are out of hypothesis") {
  json j = json::parse(kSmall);
  j["initial_state"] = {{"logical_density", {{0.5, 0}, {0, 0.5}}}};
  const auto report = run_experiment(parse_config(j.dump()), RunOptions{});
  CHECK(report.out_of_hypothesis() == report.rows.size());
  CHECK(report.violations() == 0);
}

TEST_CASE("bounds-only runs leave D_sim empty") {
  RunOptions opts;
  opts.simulate = false;
  const auto report = run_experiment(parse_config(kSmall), opts);
  CHECK(std::isnan(report.rows[0].D_sim));
  CHECK(report_csv(report).find(",nan,") != std::string::npos);
}

TEST_CASE("CSV header and JSON field names match the golden files") {
  const auto report = run_experiment(parse_config(kSmall), RunOptions{});
  const std::string csv = report_csv(report);
  const std::string header = csv.substr(0, csv.find('\n') + 1);
  CHECK(header == read_file(ZENO_GOLDEN_DIR "/sweep_header.csv"));

  const json doc = json::parse(report_json(report));
  std::string keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys += it.key() + "\n";
  keys += "--\n";
  for (auto it = doc["rows"][0].begin(); it != doc["rows"][0].end(); ++it) keys += it.key() + "\n";
  keys += "--\n";
  for (auto it = doc["rows"][0]["bound"].begin(); it != doc["rows"][0]["bound"].end(); ++it)
    keys += it.key() + "\n";
  CHECK(keys == read_file(ZENO_GOLDEN_DIR "/report_keys.txt"));
}

TEST_CASE("bundled config runs cleanly") {
  const auto cfg = load_config(ZENO_CONFIG_DIR "/bitflip3.json");
  RunOptions opts;
  opts.jobs = 2;
  const auto report = run_experiment(cfg, opts);
  CHECK(report.rows.size() == 28);
  CHECK(report.violations() == 0);
  const auto dir = std::filesystem::temp_directory_path() / "zeno_unit_out";
  write_report(report, cfg, dir.string());
  CHECK(std::filesystem::exists(dir / "sweep.csv"));
  CHECK(std::filesystem::exists(dir / "report.json"));
}
