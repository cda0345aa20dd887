#include "geofix/runner.hpp"

#include <cmath>
#include <fstream>

#include "geofix/errors.hpp"

namespace geofix {

namespace {

RateFormula default_formula(const RunConfig& cfg) {
  if (cfg.scheme == "ap") return RateFormula::AlternatingProjection;
  if (cfg.scheme == "parallel") return RateFormula::Parallel;
  throw ConfigError("picard runs need an explicit rate formula to certify");
}

ModulusTilde tilde_for_space(const Space& space) {
  if (space.kind() == SpaceKind::Lp) return lp_modulus_tilde(space.p_exponent());
  return cat0_modulus_tilde();
}

}  // namespace

RunConfig parse_run_config(const json& j, std::optional<std::uint64_t> seed_override) {
  RunConfig cfg;
  try {
    cfg.raw = j;
    if (seed_override) cfg.raw["seed"] = *seed_override;
    cfg.space = space_from_json(cfg.raw.at("space"));
    cfg.scheme = cfg.raw.value("scheme", std::string("picard"));
    if (cfg.scheme != "picard" && cfg.scheme != "ap" && cfg.scheme != "parallel") {
      throw ConfigError("unknown scheme: " + cfg.scheme);
    }
    if (cfg.raw.contains("sets")) {
      for (const auto& s : cfg.raw.at("sets")) {
        ConvexSet set = set_from_json(cfg.space, s);
        validate_set(cfg.space, set);
        cfg.sets.push_back(std::move(set));
      }
    }
    if (cfg.raw.contains("mapping")) {
      cfg.mapping = mapping_from_json(cfg.space, cfg.raw.at("mapping"));
      validate_mapping(cfg.space, *cfg.mapping);
    }
    cfg.x0 = point_from_json(cfg.raw.at("x0"));
    cfg.space.require_point(cfg.x0);
    if (cfg.raw.contains("eps")) cfg.eps = cfg.raw.at("eps").get<std::vector<double>>();
    for (double e : cfg.eps) {
      if (!(e > 0.0)) throw ConfigError("eps entries must be positive");
    }
    cfg.n_max = cfg.raw.value("n_max", std::int64_t{1000});
    if (cfg.n_max < 1) throw ConfigError("n_max must be at least 1");
    cfg.eps_stop = cfg.raw.value("eps_stop", 0.0);
    if (!(cfg.eps_stop >= 0.0)) throw ConfigError("eps_stop must be nonnegative");
    cfg.point_cap = cfg.raw.value("point_cap", std::size_t{10000});
    cfg.seed = cfg.raw.value("seed", std::uint64_t{0});
    if (cfg.raw.contains("b")) cfg.b = cfg.raw.at("b").get<double>();
    if (cfg.raw.contains("common_point")) {
      cfg.common_point = point_from_json(cfg.raw.at("common_point"));
      cfg.space.require_point(*cfg.common_point);
    }
    if (cfg.raw.contains("lambdas")) cfg.lambdas = cfg.raw.at("lambdas").get<std::vector<double>>();
    if (cfg.raw.contains("weights")) cfg.weights = cfg.raw.at("weights").get<std::vector<double>>();
    if (cfg.raw.contains("formula")) {
      auto f = parse_rate_formula(cfg.raw.at("formula").get<std::string>());
      if (!f) throw ConfigError("unknown formula: " + cfg.raw.at("formula").get<std::string>());
      cfg.formula = *f;
    }
    cfg.rate_lambda = cfg.raw.value("rate_lambda", 0.5);
    cfg.gamma = cfg.raw.value("gamma", 0.0);

    // cross-field validation
    if (cfg.scheme == "picard" && !cfg.mapping) throw ConfigError("picard scheme needs a mapping");
    if (cfg.scheme == "ap" && cfg.sets.size() != 2) {
      throw ConfigError("ap scheme needs exactly two sets");
    }
    if (cfg.scheme == "parallel") {
      if (cfg.sets.size() < 2) throw ConfigError("parallel scheme needs at least two sets");
      if (cfg.lambdas.size() != cfg.sets.size() || cfg.weights.size() != cfg.sets.size()) {
        throw ConfigError("parallel scheme needs one lambda and one weight per set");
      }
      double sum = 0.0;
      for (double w : cfg.weights) sum += w;
      if (std::abs(sum - 1.0) > 1e-12) throw ConfigError("parallel weights must sum to 1");
      for (double l : cfg.lambdas) {
        if (!(l > 0.0 && l < 1.0)) throw ConfigError("parallel lambdas must lie in (0, 1)");
      }
    }
    if (cfg.common_point && cfg.b) {
      double d = cfg.space.distance(cfg.x0, *cfg.common_point);
      if (*cfg.b < d - 1e-12) {
        throw ConfigError("b must dominate the distance from x0 to the common point");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return cfg;
}

RunOutcome execute_run(const RunConfig& cfg) {
  RunOutcome out;
  out.digest = digest_hex(cfg.raw);

  if (cfg.scheme == "ap") {
    out.trace = alternating_projections(cfg.space, cfg.sets[0], cfg.sets[1], cfg.x0, cfg.n_max,
                                        cfg.eps_stop, cfg.point_cap);
  } else if (cfg.scheme == "parallel") {
    std::vector<Mapping> retractions;
    retractions.reserve(cfg.sets.size());
    for (const auto& s : cfg.sets) retractions.push_back(projection_map(s));
    Mapping composite = composite_map(std::move(retractions), cfg.lambdas, cfg.weights);
    out.trace = picard_orbit(cfg.space, composite, cfg.x0, cfg.n_max, cfg.eps_stop, cfg.point_cap);
  } else {
    out.trace = picard_orbit(cfg.space, *cfg.mapping, cfg.x0, cfg.n_max, cfg.eps_stop, cfg.point_cap);
  }
  out.trace.config_digest = out.digest;

  // certificates per requested eps
  if (!cfg.eps.empty()) {
    double b = 0.0;
    if (cfg.b) {
      b = *cfg.b;
    } else if (cfg.common_point) {
      b = cfg.space.distance(cfg.x0, *cfg.common_point);
    } else {
      throw ConfigError("certification needs b or a common_point");
    }
    if (!(b > 0.0)) b = cfg.space.tol();  // x0 already a common point: any positive bound works
    RateFormula formula = cfg.formula ? *cfg.formula : default_formula(cfg);
    RateInputs inputs;
    inputs.b = b;
    inputs.gamma = cfg.gamma;
    if (formula == RateFormula::Parallel || formula == RateFormula::ParallelRefined) {
      inputs.lambdas = cfg.lambdas;
      inputs.alphas = cfg.weights;
      inputs.modulus = cfg.space.modulus();
      inputs.modulus_tilde = tilde_for_space(cfg.space);
    } else {
      inputs.lambdas = {cfg.rate_lambda};
    }
    for (double eps : cfg.eps) {
      inputs.epsilon = eps;
      RegularityCertificate cert = certify(out.trace, inputs, formula);
      out.certificates_pass = out.certificates_pass && cert.passes;
      out.certificates.push_back(std::move(cert));
    }
  }

  // orbit diagnostics
  const double tol = cfg.space.tol();
  json reports;
  auto mono = gaps_monotone(out.trace, tol);
  reports["gap_monotonicity"] = json{{"holds", mono.holds},
                                     {"worst_violation", mono.worst_violation},
                                     {"checks", mono.checks}};
  if (cfg.common_point) {
    auto fej = fejer_descent(cfg.space, out.trace, *cfg.common_point, tol);
    reports["fejer_descent"] = json{{"holds", fej.holds},
                                    {"worst_violation", fej.worst_violation},
                                    {"checks", fej.checks}};
    if (cfg.scheme == "ap") {
      auto quad = quadratic_projection_descent(cfg.space, out.trace, *cfg.common_point, tol);
      reports["projection_quadratic_descent"] = json{{"holds", quad.holds},
                                                     {"worst_violation", quad.worst_violation},
                                                     {"checks", quad.checks}};
    }
  }
  reports["minimal_displacement_estimate"] = minimal_displacement_estimate(out.trace);
  out.reports = std::move(reports);
  return out;
}

void write_run_outputs(const RunOutcome& outcome, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& data) {
    std::ofstream f(out_dir / name, std::ios::binary);
    if (!f) throw ConfigError(std::string("cannot write output file: ") + name);
    f << data;
  };
  json trace_json = trace_to_json(outcome.trace);
  json certs = json::array();
  for (const auto& c : outcome.certificates) certs.push_back(certificate_to_json(c));
  trace_json["certificates"] = certs;
  json reports = outcome.reports;
  reports["config_digest"] = outcome.digest;

  write("trace.csv", trace_to_csv(outcome.trace));
  write("trace.json", canonical_dump(trace_json) + "\n");
  write("certificates.json", canonical_dump(certs) + "\n");
  write("reports.json", canonical_dump(reports) + "\n");
}

}  // namespace geofix
