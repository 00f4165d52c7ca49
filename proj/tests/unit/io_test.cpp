#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "wahba/io.hpp"
#include "wahba/simulate.hpp"

using namespace wahba;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("observation file round-trips byte-for-byte") {
  Rng rng(71);
  SimConfig<double> cfg;
  cfg.n_pairs = 4;
  cfg.noise_sigma = 0.02;
  cfg.seed = 123;
  const auto [set, meta] = generate_set(random_unit_quaternion<double>(rng), cfg);

  const std::string text = observation_file_text(set);
  const auto parsed = observation_set_from_json(nlohmann::json::parse(text));
  CHECK(observation_file_text(parsed) == text);

  const auto path = temp_file("wahba_io_roundtrip.json");
  write_observation_file(path.string(), set);
  const auto reread = read_observation_file(path.string());
  CHECK(observation_file_text(reread) == text);
  std::filesystem::remove(path);
}

TEST_CASE("parse errors carry line information") {
  const auto path = temp_file("wahba_io_malformed.json");
  {
    std::ofstream out(path);
    out << "{\n  \"pairs\": [\n    {broken\n";
  }
  try {
    read_observation_file(path.string());
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_observation_file("/nonexistent/path/obs.json"), std::runtime_error);
}

TEST_CASE("validation failures") {
  const auto parse = [](const char* text) {
    return observation_set_from_json(nlohmann::json::parse(text));
  };
  // zero body vector
  CHECK_THROWS_AS(
      parse(R"({"pairs":[{"body":[0,0,0],"reference":[0,0,1],"weight":1.0}]})"),
      std::invalid_argument);
  // non-unit beyond 1e-6
  CHECK_THROWS_AS(
      parse(R"({"pairs":[{"body":[0,0,1.001],"reference":[0,0,1],"weight":1.0}]})"),
      std::invalid_argument);
  // non-positive weight
  CHECK_THROWS_AS(
      parse(R"({"pairs":[{"body":[0,0,1],"reference":[0,0,1],"weight":0.0}]})"),
      std::invalid_argument);
  // empty set
  CHECK_THROWS_AS(parse(R"({"pairs":[]})"), std::invalid_argument);
  // structural problems
  CHECK_THROWS_AS(parse(R"({"pairs":[{"body":[0,0,1],"weight":1.0}]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse(R"({"nope":1})"), std::invalid_argument);
}

TEST_CASE("ingestion renormalizes weights and near-unit vectors") {
  const auto set = observation_set_from_json(nlohmann::json::parse(
      R"({"pairs":[{"body":[0,0,1],"reference":[1,0,0],"weight":2.0},
                   {"body":[0,1,0],"reference":[0,0,1],"weight":2.0}]})"));
  CHECK(set[0].weight == 0.5);
  CHECK(set[1].weight == 0.5);

  const double near = 1.0 + 1e-7;
  nlohmann::json j = {{"pairs",
                       {{{"body", {0.0, 0.0, near}},
                         {"reference", {0.0, 0.0, 1.0}},
                         {"weight", 1.0}}}}};
  const auto renorm = observation_set_from_json(j);
  CHECK(std::abs(renorm[0].body.norm() - 1.0) <= 1e-15);
}

TEST_CASE("trace CSV format") {
  std::vector<IterationRecord<double>> trace;
  trace.push_back({0, Vec4d(1, 0, 0, 0), 0.5, 0.25, 0.1});
  trace.push_back({1, Vec4d(0.1, 0.2, 0.3, 1.0 / 3.0), 1e-300, 0.0, -3.0});
  const std::string csv = trace_csv(trace);

  CHECK(csv.rfind("iter,loss,grad_norm,q0,q1,q2,q3,min_eig\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 rows

  // 17 significant digits round-trip doubles exactly.
  const auto second_row = csv.substr(csv.find("\n1,") + 1);
  double iter, loss;
  char comma;
  std::istringstream row(second_row);
  row >> iter >> comma >> loss;
  CHECK(loss == 1e-300);
  CHECK(std::stod(format_g17(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(format_g17(0.1)) == 0.1);
}

}  // TEST_SUITE
