// On-disk formats: observation-set JSON files and iteration-trace CSV.
// Emitted files are deterministic; parsing an emitted observation file and
// re-emitting it reproduces the bytes exactly.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wahba/observations.hpp"
#include "wahba/optimize.hpp"

namespace wahba {

/// 17 significant digits: enough to round-trip any double through text.
inline std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline nlohmann::json observation_json(const ObservationSet<double>& set) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : set) {
    pairs.push_back({{"body", {p.body(0), p.body(1), p.body(2)}},
                     {"reference", {p.reference(0), p.reference(1), p.reference(2)}},
                     {"weight", p.weight}});
  }
  return {{"pairs", pairs}};
}

inline ObservationSet<double> observation_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) {
    throw std::invalid_argument("observation file: expected an object with a \"pairs\" array");
  }
  std::vector<ObservationPair<double>> pairs;
  for (const auto& jp : j["pairs"]) {
    const auto vec3 = [&jp](const char* key) {
      if (!jp.contains(key) || !jp[key].is_array() || jp[key].size() != 3) {
        throw std::invalid_argument(std::string("observation file: each pair needs a 3-element \"") +
                                    key + "\" array");
      }
      return Vec3<double>(jp[key][0].get<double>(), jp[key][1].get<double>(),
                          jp[key][2].get<double>());
    };
    if (!jp.contains("weight") || !jp["weight"].is_number()) {
      throw std::invalid_argument("observation file: each pair needs a numeric \"weight\"");
    }
    pairs.push_back(
        ObservationPair<double>::make(vec3("body"), vec3("reference"), jp["weight"].get<double>()));
  }
  return ObservationSet<double>(std::move(pairs));
}

/// Parses a file; JSON syntax errors surface with the line/column reported
/// by the parser.
inline ObservationSet<double> read_observation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open observation file: " + path);
  }
  return observation_set_from_json(nlohmann::json::parse(in));
}

inline std::string observation_file_text(const ObservationSet<double>& set) {
  return observation_json(set).dump(2) + "\n";
}

inline void write_observation_file(const std::string& path, const ObservationSet<double>& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write observation file: " + path);
  }
  out << observation_file_text(set);
}

inline std::string trace_csv(const std::vector<IterationRecord<double>>& trace) {
  std::ostringstream out;
  out << "iter,loss,grad_norm,q0,q1,q2,q3,min_eig\n";
  for (const auto& r : trace) {
    out << r.index << ',' << format_g17(r.loss) << ',' << format_g17(r.grad_norm) << ','
        << format_g17(r.q(0)) << ',' << format_g17(r.q(1)) << ',' << format_g17(r.q(2)) << ','
        << format_g17(r.q(3)) << ',' << format_g17(r.min_hessian_eig) << '\n';
  }
  return out.str();
}

inline void write_trace_csv(const std::string& path,
                            const std::vector<IterationRecord<double>>& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write trace file: " + path);
  }
  out << trace_csv(trace);
}

}  // namespace wahba
