// Command-line front end: solve, hessian, sweep, simulate, verify.
//
// Exit codes: 0 success (and, for solve, convergence), 1 input/usage error,
// 2 non-convergence.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "verify.hpp"
#include "wahba/davenport.hpp"
#include "wahba/io.hpp"
#include "wahba/optimize.hpp"
#include "wahba/simulate.hpp"
#include "wahba/spectral.hpp"

namespace {

using namespace wahba;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << text;
}

nlohmann::json quat_json(const Vec4d& q) { return {q(0), q(1), q(2), q(3)}; }

struct SolveArgs {
  std::string input;
  std::string method = "lma";
  std::vector<std::string> q0_tokens{"random"};
  bool normalize_steps = true;
  std::uint64_t seed = 0;
  std::string output;
  std::string trace_path;
};

int run_solve(const SolveArgs& args) {
  const auto set = read_observation_file(args.input);
  const auto oracle = solve_davenport(set);

  nlohmann::json out;
  out["davenport_q"] = quat_json(oracle.quaternion.vec());
  out["davenport_lambda"] = oracle.lambda_max;

  std::vector<IterationRecord<double>> trace;
  int exit_code = 0;

  if (args.method == "davenport") {
    const Vec4d q = oracle.quaternion.vec();
    out["final_q"] = quat_json(q);
    out["final_loss"] = loss_total(set, q);
    out["converged"] = true;
    out["termination_reason"] = "davenport";
    out["agreement_angle_rad"] = 0.0;
    trace.push_back({0, q, loss_total(set, q), gradient(set, q).norm(),
                     eig_sym4(hessian_total(set, q)).eigenvalues(3)});
  } else {
    Vec4d q0;
    if (args.q0_tokens.size() == 1 && args.q0_tokens[0] == "random") {
      Rng rng(args.seed);
      q0 = random_unit_quaternion<double>(rng).vec();
    } else if (args.q0_tokens.size() == 4) {
      for (int i = 0; i < 4; ++i) q0(i) = std::stod(args.q0_tokens[static_cast<size_t>(i)]);
    } else {
      throw std::invalid_argument("--q0 expects \"random\" or four reals");
    }

    OptimizerConfig<double> cfg;
    cfg.method = args.method == "gda"   ? Method::Gda
                 : args.method == "gna" ? Method::Gna
                                        : Method::Lma;
    cfg.normalize_each_step = args.normalize_steps;
    const auto res = solve(set, q0, cfg);

    out["final_q"] = quat_json(res.final_q);
    out["final_loss"] = res.final_loss;
    out["converged"] = res.converged;
    out["termination_reason"] = to_string(res.reason);
    if (res.final_q.allFinite() && res.final_q.norm() > 1e-12) {
      out["agreement_angle_rad"] = rotation_angle(normalize(res.final_q), oracle.quaternion);
    } else {
      out["agreement_angle_rad"] = nullptr;
    }
    trace = res.trace;
    exit_code = res.converged ? 0 : 2;
  }

  write_text(args.output, out.dump(2) + "\n");
  if (!args.trace_path.empty()) write_trace_csv(args.trace_path, trace);
  return exit_code;
}

struct HessianArgs {
  std::string input;
  std::vector<double> quat;
};

int run_hessian(const HessianArgs& args) {
  const auto set = read_observation_file(args.input);
  const Vec4d q(args.quat[0], args.quat[1], args.quat[2], args.quat[3]);
  const Spectrum<double> s = eig_sym4(hessian_total(set, q));
  const auto rep = analyze(set, q);

  std::ostringstream out;
  char buf[64];
  const auto f15 = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.15f", x);
    return std::string(buf);
  };
  out << "{\n  \"eigenvalues\": [" << f15(s.eigenvalues(0)) << ", " << f15(s.eigenvalues(1))
      << ", " << f15(s.eigenvalues(2)) << ", " << f15(s.eigenvalues(3)) << "],\n";
  out << "  \"classification\": \"" << to_string(rep.classification) << "\",\n";
  out << "  \"lower_bound\": " << f15(rep.lower_bound) << ",\n";
  out << "  \"upper_bound\": " << f15(rep.upper_bound) << ",\n";
  out << "  \"margin_lower\": " << f15(rep.min_eig - rep.lower_bound) << ",\n";
  out << "  \"margin_upper\": " << f15(rep.upper_bound - rep.max_eig) << ",\n";
  out << "  \"bound_satisfied\": " << (rep.bound_satisfied ? "true" : "false") << ",\n";
  out << "  \"rank_estimate\": " << rep.rank_estimate << "\n}\n";
  std::cout << out.str();
  return 0;
}

struct SweepArgs {
  std::string input;
  int samples = 1000;
  std::vector<double> norm_range{0.5, 2.0};
  std::uint64_t seed = 0;
  std::string output;
};

int run_sweep(const SweepArgs& args) {
  if (args.samples < 1) throw std::invalid_argument("--samples must be >= 1");
  const double lo = args.norm_range[0], hi = args.norm_range[1];
  if (!(lo >= 0.0) || !(hi >= lo)) {
    throw std::invalid_argument("--norm-range expects 0 <= min <= max");
  }
  const auto set = read_observation_file(args.input);

  Rng rng(args.seed);
  std::uniform_real_distribution<double> norm_dist(lo, hi);
  std::ostringstream csv;
  csv << "norm,min_eig,max_eig,class\n";
  int n_ge1 = 0, n_ge1_psd = 0;
  for (int i = 0; i < args.samples; ++i) {
    const double n = norm_dist(rng);
    const Vec4d q = n * random_unit_quaternion<double>(rng).vec();
    const auto rep = analyze(set, q);
    csv << format_g17(n) << ',' << format_g17(rep.min_eig) << ',' << format_g17(rep.max_eig)
        << ',' << to_string(rep.classification) << '\n';
    if (n >= 1.0) {
      ++n_ge1;
      if (rep.classification == Classification::PositiveDefinite ||
          rep.classification == Classification::PositiveSemidefinite) {
        ++n_ge1_psd;
      }
    }
  }
  write_text(args.output, csv.str());
  if (n_ge1 > 0) {
    std::fprintf(stderr, "# psd fraction for norm >= 1: %.6f (%d/%d)\n",
                 static_cast<double>(n_ge1_psd) / n_ge1, n_ge1_psd, n_ge1);
  } else {
    std::fprintf(stderr, "# no samples with norm >= 1\n");
  }
  return 0;
}

struct SimulateArgs {
  int pairs = 3;
  double noise = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> weights;
  std::string output;
};

int run_simulate(const SimulateArgs& args) {
  if (args.pairs < 1) throw std::invalid_argument("--pairs must be >= 1");
  if (!(args.noise >= 0.0)) throw std::invalid_argument("--noise must be >= 0");

  Rng truth_rng(substream_seed(args.seed, 0));
  const auto truth = random_unit_quaternion<double>(truth_rng);

  SimConfig<double> cfg;
  cfg.n_pairs = args.pairs;
  cfg.noise_sigma = args.noise;
  cfg.weights = args.weights;
  cfg.seed = substream_seed(args.seed, 1);
  const auto [set, meta] = generate_set(truth, cfg);

  write_observation_file(args.output, set);
  nlohmann::json sidecar{{"truth", quat_json(meta.truth)},
                         {"seed", args.seed},
                         {"n_pairs", args.pairs},
                         {"noise_sigma", args.noise}};
  write_text(args.output + ".meta.json", sidecar.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attitude determination from weighted vector observations"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd =
      app.add_subcommand("solve", "Estimate the attitude quaternion for an observation file");
  solve_cmd->add_option("input", solve_args.input, "Observation JSON file")->required();
  solve_cmd->add_option("--method", solve_args.method, "Solver")
      ->check(CLI::IsMember({"lma", "gna", "gda", "davenport"}))
      ->capture_default_str();
  solve_cmd->add_option("--q0", solve_args.q0_tokens,
                        "Initial quaternion: \"random\" or four reals (q0 q1 q2 q3)")
      ->expected(1, 4);
  solve_cmd->add_flag("--normalize,!--no-normalize", solve_args.normalize_steps,
                      "Renormalize the quaternion after every step (default on)");
  solve_cmd->add_option("--seed", solve_args.seed, "Seed for the random start");
  solve_cmd->add_option("--output", solve_args.output, "Result JSON path (default stdout)");
  solve_cmd->add_option("--trace", solve_args.trace_path, "Write the iteration trace CSV here");

  HessianArgs hessian_args;
  auto* hessian_cmd =
      app.add_subcommand("hessian", "Eigenvalues, classification and bounds at a quaternion");
  hessian_cmd->add_option("input", hessian_args.input, "Observation JSON file")->required();
  hessian_cmd->add_option("--quat", hessian_args.quat, "Quaternion q0 q1 q2 q3")
      ->required()
      ->expected(4);

  SweepArgs sweep_args;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Sample quaternion norms and report Hessian definiteness");
  sweep_cmd->add_option("input", sweep_args.input, "Observation JSON file")->required();
  sweep_cmd->add_option("--samples", sweep_args.samples, "Number of samples")
      ->capture_default_str();
  sweep_cmd->add_option("--norm-range", sweep_args.norm_range, "Quaternion norm range: min max")
      ->expected(2);
  sweep_cmd->add_option("--seed", sweep_args.seed, "RNG seed");
  sweep_cmd->add_option("--output", sweep_args.output, "CSV path (default stdout)");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic observation file");
  sim_cmd->add_option("output", sim_args.output, "Observation JSON path to write")->required();
  sim_cmd->add_option("--pairs", sim_args.pairs, "Number of observation pairs")
      ->capture_default_str();
  sim_cmd->add_option("--noise", sim_args.noise, "Per-axis noise sigma")->capture_default_str();
  sim_cmd->add_option("--seed", sim_args.seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("--weights", sim_args.weights, "Custom positive weights (one per pair)");

  bool ha_alt = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "Reproduce the reference results and identity checks");
  verify_cmd->add_flag("--ha-alt", ha_alt,
                       "Assemble H_A from the sign-flipped entry table (diagnostic; the "
                       "trace-identity check is expected to fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (hessian_cmd->parsed()) return run_hessian(hessian_args);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (verify_cmd->parsed()) return wahba_verify::run_verify(ha_alt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
