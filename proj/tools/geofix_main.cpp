#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "geofix/errors.hpp"
#include "geofix/runner.hpp"

namespace {

using geofix::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("GEOFIX_SEED");
  if (env == nullptr || *env == '\0') return std::nullopt;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw geofix::ConfigError("GEOFIX_SEED must be an unsigned integer");
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw geofix::ConfigError("cannot open file: " + path);
  return json::parse(in);
}

int cmd_check(const std::string& space_spec, const std::string& props, int n, std::uint64_t seed,
              const std::string& out_path) {
  geofix::Space space = geofix::parse_space_spec(space_spec);
  auto properties = geofix::parse_property_list(props);
  if (auto env = env_seed_override()) seed = *env;
  auto reports = geofix::run_checks(space, properties, n, seed);
  json out = json::array();
  bool all_pass = true;
  for (const auto& rep : reports) {
    all_pass = all_pass && rep.passed;
    std::cout << (rep.passed ? "PASS " : "FAIL ") << geofix::property_name(rep.property)
              << "  max_violation=" << rep.max_violation << "  tol=" << rep.tolerance
              << "  n=" << rep.samples_tested << "\n";
    out.push_back(geofix::check_report_to_json(rep));
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw geofix::ConfigError("cannot write report file: " + out_path);
    f << geofix::canonical_dump(out) << "\n";
  }
  return all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  json payload = load_json_file(config_path);
  geofix::RunConfig cfg = geofix::parse_run_config(payload, env_seed_override());
  geofix::RunOutcome outcome = geofix::execute_run(cfg);
  geofix::write_run_outputs(outcome, out_dir);
  for (const auto& cert : outcome.certificates) {
    std::cout << (cert.passes ? "PASS " : "FAIL ") << geofix::rate_formula_name(cert.formula)
              << "  eps=" << cert.epsilon << "  bound=" << cert.bound.str() << "  observed=";
    if (cert.observed_index) {
      std::cout << *cert.observed_index;
    } else {
      std::cout << "not-reached";
    }
    std::cout << "\n";
  }
  std::cout << "digest " << outcome.digest << "\n";
  return outcome.certificates_pass ? kExitPass : kExitCheckFailure;
}

int cmd_rate(const std::string& formula_name, double eps, double b, double lambda,
             std::vector<double> lambdas, std::vector<double> alphas, const std::string& modulus) {
  auto formula = geofix::parse_rate_formula(formula_name);
  if (!formula) throw geofix::ConfigError("unknown formula: " + formula_name);
  geofix::RateInputs inputs;
  inputs.epsilon = eps;
  inputs.b = b;
  switch (*formula) {
    case geofix::RateFormula::Averaged:
    case geofix::RateFormula::Firmly:
      inputs.lambdas = {lambda};
      break;
    case geofix::RateFormula::AlternatingProjection:
      break;
    case geofix::RateFormula::Parallel:
    case geofix::RateFormula::ParallelRefined: {
      inputs.lambdas = std::move(lambdas);
      inputs.alphas = std::move(alphas);
      if (modulus == "cat0") {
        inputs.modulus = geofix::cat0_modulus();
        inputs.modulus_tilde = geofix::cat0_modulus_tilde();
      } else if (modulus.rfind("lp:", 0) == 0) {
        double p = std::stod(modulus.substr(3));
        inputs.modulus = geofix::lp_modulus(p);
        inputs.modulus_tilde = geofix::lp_modulus_tilde(p);
      } else {
        throw geofix::ConfigError("unknown modulus spec: " + modulus + " (use cat0 or lp:<p>)");
      }
      break;
    }
  }
  std::cout << geofix::rate_bound(inputs, *formula).str() << "\n";
  return kExitPass;
}

int cmd_center(const std::string& config_path, double step, const std::string& out_dir) {
  json payload = load_json_file(config_path);
  geofix::RunConfig cfg = geofix::parse_run_config(payload, env_seed_override());
  geofix::RunOutcome outcome = geofix::execute_run(cfg);
  auto tail = geofix::trace_tail(outcome.trace);
  geofix::CenterSearch search;
  search.step = step;
  auto center = geofix::asymptotic_center(cfg.space, tail, search);
  json out{{"center", geofix::point_to_json(center.center)},
           {"radius", center.radius},
           {"tail_size", tail.size()},
           {"config_digest", outcome.digest}};
  std::cout << geofix::canonical_dump(out) << "\n";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / "center.json", std::ios::binary);
    f << geofix::canonical_dump(out) << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic fixed-point toolkit"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run property checks on a model space");
  std::string check_space;
  std::string check_props;
  int check_n = 10000;
  std::uint64_t check_seed = 20260808;
  std::string check_out = "reports.json";
  check->add_option("--space", check_space, "space spec (euclidean:<dim>|disk|lp:<p>:<dim>|tree:<file>)")
      ->required();
  check->add_option("--props", check_props, "comma-separated properties (or w-axioms, all)")->required();
  check->add_option("-n,--samples", check_n, "samples per property");
  check->add_option("--seed", check_seed, "sampler seed");
  check->add_option("--out", check_out, "report JSON path");

  auto* run = app.add_subcommand("run", "execute a configured iteration and certify it");
  std::string run_config;
  std::string run_out = ".";
  run->add_option("--config", run_config, "run config JSON")->required();
  run->add_option("--out", run_out, "output directory");

  auto* rate = app.add_subcommand("rate", "evaluate a regularity-rate bound");
  std::string rate_formula;
  double rate_eps = 0.0;
  double rate_b = 0.0;
  double rate_lambda = 0.5;
  std::vector<double> rate_lambdas;
  std::vector<double> rate_alphas;
  std::string rate_modulus = "cat0";
  rate->add_option("formula", rate_formula, "ap|averaged|firmly|parallel|parallel-refined")->required();
  rate->add_option("--eps", rate_eps, "target gap")->required();
  rate->add_option("--b", rate_b, "distance/diameter bound")->required();
  rate->add_option("--lambda", rate_lambda, "averaging parameter (averaged/firmly)");
  rate->add_option("--lambdas", rate_lambdas, "per-retraction lambdas (parallel)");
  rate->add_option("--alphas", rate_alphas, "weights (parallel)");
  rate->add_option("--modulus", rate_modulus, "cat0 or lp:<p> (parallel)");

  auto* center = app.add_subcommand("center", "asymptotic center of a run's tail");
  std::string center_config;
  double center_step = 1e-3;
  std::string center_out;
  center->add_option("--config", center_config, "run config JSON")->required();
  center->add_option("--step", center_step, "grid step");
  center->add_option("--out", center_out, "optional output directory");

  try {
    app.parse(argc, argv);
    if (check->parsed()) return cmd_check(check_space, check_props, check_n, check_seed, check_out);
    if (run->parsed()) return cmd_run(run_config, run_out);
    if (rate->parsed()) {
      return cmd_rate(rate_formula, rate_eps, rate_b, rate_lambda, rate_lambdas, rate_alphas,
                      rate_modulus);
    }
    if (center->parsed()) return cmd_center(center_config, center_step, center_out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const geofix::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const geofix::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
