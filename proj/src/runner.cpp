#include "holointerp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "holointerp/analytic.hpp"
#include "holointerp/strip.hpp"
#include "parallel.hpp"

namespace holointerp {

namespace {

using nlohmann::json;

constexpr double kEmbedSlack = 1e-14;

template <class Fn>
auto field(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(name, e.what());
  }
}

double positive_number(const json& j, const std::string& name, double fallback) {
  if (!j.contains(name)) return fallback;
  return field(name, [&] {
    const auto& v = j.at(name);
    if (!v.is_number()) throw ConfigError(name, "must be a number");
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(name, "must be positive");
    return x;
  });
}

std::size_t count_field(const json& j, const std::string& name,
                        std::size_t fallback) {
  if (!j.contains(name)) return fallback;
  const auto& v = j.at(name);
  if (!v.is_number_integer()) throw ConfigError(name, "must be an integer");
  const auto n = v.get<long long>();
  if (n < 1) throw ConfigError(name, "must be at least 1, got " + std::to_string(n));
  return static_cast<std::size_t>(n);
}

std::uint64_t seed_value(const json& v, const std::string& name) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::uint64_t>(v.get<long long>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      std::size_t pos = 0;
      const auto x = std::stoull(s, &pos, 0);
      if (pos == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(name, "must be an unsigned 64-bit integer");
}

Suite suite_from_string(const std::string& s) {
  for (auto v : {Suite::lemma, Suite::theorem1, Suite::strip_witness,
                 Suite::cauchy_diagnostics, Suite::all}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("suite", "unknown suite '" + s + "'");
}

Provenance provenance_from_string(const std::string& s) {
  for (auto v : {Provenance::oracle, Provenance::declared, Provenance::empirical}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("constants.source", "unknown constants source '" + s + "'");
}

bool wants(Suite selected, Suite s) { return selected == Suite::all || selected == s; }

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CVector scaled(CVector v, double s) {
  for (auto& z : v) z *= s;
  return v;
}

struct Constants {
  double c0;
  double c1;
  Provenance provenance;
};

Constants apply_scale(Constants c, const ConstantsConfig& cfg) {
  c.c0 *= cfg.scale0;
  c.c1 *= cfg.scale1;
  return c;
}

Sampler main_sampler(const RunConfig& cfg) {
  return Sampler({cfg.samples, cfg.seed, true, cfg.include_pairs});
}

Constants ball_constants(const RunConfig& cfg) {
  const auto& cc = cfg.constants;
  if (cc.source == Provenance::declared) {
    return apply_scale({*cc.c0, *cc.c1, Provenance::declared}, cc);
  }
  if (cc.source == Provenance::oracle) {
    if (auto oc = cfg.map.oracle_constants(cfg.couple_e, cfg.couple_h, cfg.radius)) {
      return apply_scale({oc->c0, oc->c1, Provenance::oracle}, cc);
    }
  }
  const AnalyticMap probe =
      cfg.map.to_analytic_map(cfg.couple_e, cfg.couple_h, cfg.radius, EndpointConstants{});
  Sampler sampler({cc.budget, cfg.seed, true, false});
  const auto est = estimate_constants(probe, cfg.couple_e, cfg.couple_h, cfg.radius,
                                      sampler, sampler.size(cfg.couple_e.dim()));
  return apply_scale({est.c0, est.c1, Provenance::empirical}, cc);
}

Constants homogeneous_constants(const RunConfig& cfg) {
  const auto& cc = cfg.constants;
  if (cc.source == Provenance::declared) {
    return apply_scale({*cc.m0, *cc.m1, Provenance::declared}, cc);
  }
  if (cc.source == Provenance::oracle) {
    if (auto hc = cfg.map.homogeneous_constants(cfg.couple_e, cfg.couple_h)) {
      return apply_scale({hc->c0, hc->c1, Provenance::oracle}, cc);
    }
  }
  const AnalyticMap probe =
      cfg.map.to_analytic_map(cfg.couple_e, cfg.couple_h, cfg.radius, EndpointConstants{});
  Sampler sampler({cc.budget, cfg.seed, true, false});
  const auto est = estimate_homogeneous_constants(
      probe, cfg.couple_e, cfg.couple_h, *cfg.map.homogeneous_degree(), sampler,
      sampler.size(cfg.couple_e.dim()));
  return apply_scale({est.c0, est.c1, Provenance::empirical}, cc);
}

json constants_json(const Constants& c) {
  return {{"c0", c.c0}, {"c1", c.c1}, {"provenance", to_string(c.provenance)}};
}

struct SuiteOutput {
  VerificationReport report;
  std::vector<std::pair<double, double>> bounds;
  json constants;
};

SuiteOutput run_lemma(const RunConfig& cfg, int workers) {
  const Constants m = homogeneous_constants(cfg);
  const AnalyticMap map = cfg.map.to_analytic_map(cfg.couple_e, cfg.couple_h, cfg.radius,
                                                  EndpointConstants{m.c0, m.c1});
  SuiteOutput out;
  out.report = verify_lemma(map, cfg.couple_e, cfg.couple_h, m.c0, m.c1, cfg.theta_grid,
                            main_sampler(cfg), {cfg.tolerance, m.provenance, workers});
  for (double t : cfg.theta_grid) {
    out.bounds.emplace_back(
        t, lemma_bound({m.c0, m.c1, cfg.radius, std::nullopt, t, map.homogeneous_degree()}));
  }
  out.constants = constants_json(m);
  return out;
}

SuiteOutput run_theorem1(const RunConfig& cfg, int workers) {
  const Constants c = ball_constants(cfg);
  const AnalyticMap map = cfg.map.to_analytic_map(cfg.couple_e, cfg.couple_h, cfg.radius,
                                                  EndpointConstants{c.c0, c.c1});
  BoundSpec spec{c.c0, c.c1, cfg.radius, cfg.inner_radius, 0.0, std::nullopt};
  SuiteOutput out;
  out.report = verify_theorem1(map, cfg.couple_e, cfg.couple_h, spec, cfg.theta_grid,
                               main_sampler(cfg), {cfg.tolerance, c.provenance, workers});
  for (double t : cfg.theta_grid) {
    spec.theta = t;
    out.bounds.emplace_back(t, theorem1_bound(spec));
  }
  out.constants = constants_json(c);
  return out;
}

SuiteOutput run_strip_witness(const RunConfig& cfg, int workers) {
  const auto& e = cfg.couple_e;
  const Sampler sampler = main_sampler(cfg);
  const std::size_t per_theta = sampler.size(e.dim());
  SuiteOutput out;
  auto& report = out.report;
  report.suite = "strip_witness";
  report.tolerance = cfg.strip_tolerance;
  report.two_sided = true;
  report.provenance = Provenance::oracle;
  report.rows.resize(cfg.theta_grid.size() * per_theta);
  detail::parallel_for(report.rows.size(), workers, [&](std::size_t i) {
    const std::size_t ti = i / per_theta;
    const std::size_t id = i % per_theta;
    const double theta = cfg.theta_grid[ti];
    auto d = sampler.draw(e.dim(), ti, id);
    const CVector x = scaled(std::move(d.direction), d.radius_fraction);
    const StripFunction f = optimal_strip_function(e, theta, x);
    ReportRow& row = report.rows[i];
    row.theta = theta;
    row.sample_id = static_cast<std::int64_t>(id);
    row.lhs_norm = f_space_norm(f, e, cfg.strip_t_samples);
    row.rhs_bound = theta_norm(e, theta, x);
    row.ratio = row.lhs_norm / row.rhs_bound;
  });
  report.finalize();
  for (double t : cfg.theta_grid) out.bounds.emplace_back(t, 1.0);
  out.constants = json::object();
  return out;
}

std::vector<SuiteOutput> run_cauchy(const RunConfig& cfg, int workers) {
  const Constants c = ball_constants(cfg);
  const AnalyticMap map = cfg.map.to_analytic_map(cfg.couple_e, cfg.couple_h, cfg.radius,
                                                  EndpointConstants{c.c0, c.c1});
  const auto& e = cfg.couple_e;
  const auto& h = cfg.couple_h;
  const int max_n = cfg.cauchy_max_degree;
  const int nodes = default_node_count(max_n);
  const Sampler sampler({cfg.cauchy_samples, cfg.seed, true, false});
  const std::size_t count = sampler.size(e.dim());
  const double radius = cfg.radius;
  const std::size_t per_sample = static_cast<std::size_t>(max_n) + 1;

  SuiteOutput bound_out;
  SuiteOutput rho_out;
  auto& bound = bound_out.report;
  auto& rho = rho_out.report;
  bound.suite = "cauchy_component_bound";
  bound.provenance = c.provenance;
  bound.rows.resize(count * per_sample * 2);
  rho.suite = "cauchy_rho_independence";
  rho.provenance = Provenance::oracle;
  rho.tolerance = 0.0;
  rho.rows.resize(count * static_cast<std::size_t>(max_n));
  std::vector<double> alias_rel(count, 0.0);

  detail::parallel_for(count, workers, [&](std::size_t s) {
    auto d = sampler.draw(e.dim(), 0, s);
    const double size = std::max(e.norm0(d.direction), e.norm1(d.direction));
    const CVector x = scaled(std::move(d.direction), d.radius_fraction * radius / (2.0 * size));
    const double x0 = e.norm0(x);
    const double x1 = e.norm1(x);
    const double contour = radius / (2.0 * std::max(x0, x1));
    const auto parts = extract_components(map, e, x, max_n, contour, nodes);
    for (int n = 0; n <= max_n; ++n) {
      const auto& p = parts[static_cast<std::size_t>(n)];
      for (int side = 0; side < 2; ++side) {
        const double cside = side == 0 ? c.c0 : c.c1;
        const double xn = side == 0 ? x0 : x1;
        ReportRow& row = bound.rows[(s * per_sample + static_cast<std::size_t>(n)) * 2 +
                                    static_cast<std::size_t>(side)];
        row.theta = side;
        row.sample_id = static_cast<std::int64_t>(s);
        row.degree = n;
        row.lhs_norm = h.endpoint_norm(side, p.value);
        row.rhs_bound = cside * std::pow(radius, 1.0 - n) * std::pow(xn, n);
        row.ratio = row.rhs_bound > 0.0 ? row.lhs_norm / row.rhs_bound
                                        : (row.lhs_norm == 0.0 ? 0.0 : HUGE_VAL);
        const double alias = side == 0 ? p.alias_bound : p.alias_bound_h1;
        if (row.rhs_bound > 0.0) alias_rel[s] = std::max(alias_rel[s], alias / row.rhs_bound);
      }
    }
    const std::vector<double> rhos{0.1 * radius / x0, 0.3 * radius / x0, 0.5 * radius / x0};
    for (int n = 1; n <= max_n; ++n) {
      const auto check = rho_independence_check(map, e, h, x, n, rhos, nodes);
      ReportRow& row = rho.rows[s * static_cast<std::size_t>(max_n) + static_cast<std::size_t>(n - 1)];
      row.theta = 0.0;
      row.sample_id = static_cast<std::int64_t>(s);
      row.degree = n;
      row.lhs_norm = check.max_deviation;
      row.rhs_bound = check.allowed;
      row.ratio = check.allowed > 0.0 ? check.max_deviation / check.allowed : 0.0;
    }
  });
  bound.tolerance = kExtractedTolerance + *std::max_element(alias_rel.begin(), alias_rel.end());
  bound.finalize();
  rho.finalize();
  bound_out.constants = constants_json(c);
  rho_out.constants = json::object();
  for (int side = 0; side < 2; ++side) bound_out.bounds.emplace_back(side, 1.0);
  rho_out.bounds.emplace_back(0.0, 1.0);
  std::vector<SuiteOutput> out;
  out.push_back(std::move(bound_out));
  out.push_back(std::move(rho_out));
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string to_string(Suite s) {
  switch (s) {
    case Suite::lemma: return "lemma";
    case Suite::theorem1: return "theorem1";
    case Suite::strip_witness: return "strip_witness";
    case Suite::cauchy_diagnostics: return "cauchy_diagnostics";
    case Suite::all: return "all";
  }
  return "unknown";
}

RunConfig parse_config(const json& j, const ConfigOverrides& overrides) {
  if (!j.is_object()) throw ConfigError("<root>", "configuration must be a JSON object");
  if (!j.contains("couple_e")) throw ConfigError("couple_e", "required");
  if (!j.contains("map")) throw ConfigError("map", "required");

  const WeightedCouple couple_e = field("couple_e", [&] { return couple_from_json(j.at("couple_e")); });
  const WeightedCouple couple_h = j.contains("couple_h")
      ? field("couple_h", [&] { return couple_from_json(j.at("couple_h")); })
      : couple_e;
  const OracleMap map = field("map", [&] { return OracleMap::from_json(j.at("map"), couple_e.dim()); });
  if (map.out_dim() != couple_h.dim()) {
    throw ConfigError("couple_h", "dimension " + std::to_string(couple_h.dim()) +
                                      " does not match the map output dimension " +
                                      std::to_string(map.out_dim()));
  }

  RunConfig cfg{.couple_e = couple_e, .couple_h = couple_h, .map = map};
  cfg.radius = positive_number(j, "radius", 1.0);
  cfg.inner_radius = positive_number(j, "inner_radius", cfg.radius / 2.0);
  if (!(cfg.inner_radius < cfg.radius)) {
    throw ConfigError("inner_radius", "must be smaller than radius");
  }
  if (j.contains("suite")) {
    cfg.suite = field("suite", [&] { return suite_from_string(j.at("suite").get<std::string>()); });
  }
  if (j.contains("theta_grid")) {
    const auto& g = j.at("theta_grid");
    if (!g.is_array() || g.empty()) throw ConfigError("theta_grid", "must be a nonempty array");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string name = "theta_grid[" + std::to_string(i) + "]";
      if (!g[i].is_number()) throw ConfigError(name, "must be a number");
      const double t = g[i].get<double>();
      if (!(t >= 0.0 && t <= 1.0)) {
        throw ConfigError(name, "theta = " + format_double(t) + " outside [0, 1]");
      }
      cfg.theta_grid.push_back(t);
    }
  } else {
    cfg.theta_grid = default_theta_grid();
  }
  cfg.samples = count_field(j, "samples", cfg.samples);
  if (overrides.seed) {
    cfg.seed = *overrides.seed;
  } else if (j.contains("seed")) {
    cfg.seed = seed_value(j.at("seed"), "seed");
  } else if (overrides.fallback_seed) {
    cfg.seed = *overrides.fallback_seed;
  }
  cfg.tolerance = positive_number(j, "tolerance", cfg.tolerance);
  if (overrides.output) {
    cfg.output = *overrides.output;
  } else if (j.contains("output")) {
    cfg.output = field("output", [&] { return j.at("output").get<std::string>(); });
  }
  if (j.contains("include_pairs")) {
    cfg.include_pairs = field("include_pairs", [&] { return j.at("include_pairs").get<bool>(); });
  }

  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    if (!c.is_object()) throw ConfigError("constants", "must be an object");
    auto& cc = cfg.constants;
    if (c.contains("source")) {
      cc.source = provenance_from_string(
          field("constants.source", [&] { return c.at("source").get<std::string>(); }));
    }
    const auto opt = [&](const char* key) -> std::optional<double> {
      if (!c.contains(key)) return std::nullopt;
      return positive_number(c, key, 0.0);
    };
    cc.c0 = opt("c0");
    cc.c1 = opt("c1");
    cc.m0 = opt("m0");
    cc.m1 = opt("m1");
    cc.scale0 = field("constants.scale0", [&] { return positive_number(c, "scale0", 1.0); });
    cc.scale1 = field("constants.scale1", [&] { return positive_number(c, "scale1", 1.0); });
    cc.budget = field("constants.budget", [&] { return count_field(c, "budget", cc.budget); });
  }
  if (j.contains("cauchy")) {
    const auto& c = j.at("cauchy");
    cfg.cauchy_max_degree = static_cast<int>(
        field("cauchy.max_degree", [&] { return count_field(c, "max_degree", 8); }));
    cfg.cauchy_samples =
        field("cauchy.samples", [&] { return count_field(c, "samples", cfg.cauchy_samples); });
  }
  if (j.contains("strip")) {
    const auto& s = j.at("strip");
    cfg.strip_t_samples = static_cast<int>(
        field("strip.t_samples", [&] { return count_field(s, "t_samples", 5); }));
    cfg.strip_tolerance =
        field("strip.tolerance", [&] { return positive_number(s, "tolerance", 1e-10); });
  }

  // Cross-field checks for the suites that will run.
  const auto& cc = cfg.constants;
  const bool homogeneous = map.homogeneous_degree().has_value();
  if (cfg.suite == Suite::lemma && !homogeneous) {
    throw ConfigError("map", "the lemma suite needs a homogeneous map kind");
  }
  if (cc.source == Provenance::declared) {
    if (wants(cfg.suite, Suite::lemma) && homogeneous && !(cc.m0 && cc.m1)) {
      throw ConfigError("constants", "declared constants need m0 and m1 for the lemma suite");
    }
    if ((wants(cfg.suite, Suite::theorem1) || wants(cfg.suite, Suite::cauchy_diagnostics)) &&
        !(cc.c0 && cc.c1)) {
      throw ConfigError("constants", "declared constants need c0 and c1");
    }
  }
  if (wants(cfg.suite, Suite::theorem1) &&
      couple_e.embed_const() > 1.0 + kEmbedSlack) {
    throw ConfigError("couple_e", "embedding constant " + format_double(couple_e.embed_const()) +
                                      " exceeds 1; set \"normalize\": true");
  }
  if (cc.source == Provenance::oracle &&
      (wants(cfg.suite, Suite::theorem1) || wants(cfg.suite, Suite::cauchy_diagnostics))) {
    field("map", [&] { return map.oracle_constants(couple_e, couple_h, cfg.radius); });
  }

  cfg.resolved = {
      {"couple_e", couple_to_json(cfg.couple_e)},
      {"couple_h", couple_to_json(cfg.couple_h)},
      {"map", cfg.map.to_json()},
      {"radius", cfg.radius},
      {"inner_radius", cfg.inner_radius},
      {"suite", to_string(cfg.suite)},
      {"theta_grid", cfg.theta_grid},
      {"samples", cfg.samples},
      {"seed", cfg.seed},
      {"tolerance", cfg.tolerance},
      {"include_pairs", cfg.include_pairs},
      {"constants",
       {{"source", to_string(cc.source)},
        {"c0", cc.c0 ? json(*cc.c0) : json(nullptr)},
        {"c1", cc.c1 ? json(*cc.c1) : json(nullptr)},
        {"m0", cc.m0 ? json(*cc.m0) : json(nullptr)},
        {"m1", cc.m1 ? json(*cc.m1) : json(nullptr)},
        {"scale0", cc.scale0},
        {"scale1", cc.scale1},
        {"budget", cc.budget}}},
      {"cauchy", {{"max_degree", cfg.cauchy_max_degree}, {"samples", cfg.cauchy_samples}}},
      {"strip", {{"t_samples", cfg.strip_t_samples}, {"tolerance", cfg.strip_tolerance}}},
  };
  return cfg;
}

RunResult run(const RunConfig& cfg, int workers) {
  std::vector<SuiteOutput> outputs;
  const bool homogeneous = cfg.map.homogeneous_degree().has_value();
  if (wants(cfg.suite, Suite::lemma) && homogeneous) outputs.push_back(run_lemma(cfg, workers));
  if (wants(cfg.suite, Suite::theorem1)) outputs.push_back(run_theorem1(cfg, workers));
  if (wants(cfg.suite, Suite::strip_witness)) outputs.push_back(run_strip_witness(cfg, workers));
  if (wants(cfg.suite, Suite::cauchy_diagnostics)) {
    for (auto& o : run_cauchy(cfg, workers)) outputs.push_back(std::move(o));
  }

  RunResult result;
  result.config_hash = fnv1a_hex(cfg.resolved.dump());
  for (auto& o : outputs) {
    if (!o.report.advisory() && !o.report.pass) result.status = 1;
    result.reports.push_back(std::move(o.report));
    result.theta_bounds.push_back(std::move(o.bounds));
    result.constants.push_back(std::move(o.constants));
  }
  return result;
}

json report_json(const RunConfig& cfg, const RunResult& result) {
  json suites = json::array();
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    json rows = json::array();
    for (const auto& row : r.rows) {
      rows.push_back({row.theta, row.sample_id, row.degree, row.lhs_norm, row.rhs_bound, row.ratio});
    }
    suites.push_back({
        {"suite", r.suite},
        {"verdict", r.advisory() ? "advisory" : (r.pass ? "pass" : "fail")},
        {"worst_ratio", r.worst_ratio},
        {"min_ratio", r.min_ratio},
        {"tolerance", r.tolerance},
        {"two_sided", r.two_sided},
        {"provenance", to_string(r.provenance)},
        {"constants", result.constants[i]},
        {"row_count", r.rows.size()},
        {"rows", std::move(rows)},
    });
  }
  return {
      {"schema", "report/v1"},
      {"config", cfg.resolved},
      {"config_hash", result.config_hash},
      {"status", result.status},
      {"row_fields", {"theta", "sample_id", "degree", "lhs_norm", "rhs_bound", "ratio"}},
      {"suites", std::move(suites)},
  };
}

std::string rows_csv(const RunResult& result) {
  std::string out = "suite,theta,sample_id,degree,lhs_norm,rhs_bound,ratio\n";
  char buf[192];
  for (const auto& r : result.reports) {
    for (const auto& row : r.rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%lld,%d,%.17g,%.17g,%.17g\n", row.theta,
                    static_cast<long long>(row.sample_id), row.degree, row.lhs_norm,
                    row.rhs_bound, row.ratio);
      out += r.suite;
      out += ',';
      out += buf;
    }
  }
  return out;
}

std::string plot_csv(const RunResult& result) {
  std::string out = "suite,theta,ratio_max,bound\n";
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    std::map<double, double> worst;
    for (const auto& row : r.rows) {
      auto [it, inserted] = worst.emplace(row.theta, row.ratio);
      if (!inserted) it->second = std::max(it->second, row.ratio);
    }
    std::map<double, double> bounds(result.theta_bounds[i].begin(), result.theta_bounds[i].end());
    for (const auto& [theta, ratio] : worst) {
      const auto b = bounds.find(theta);
      out += r.suite + "," + format_double(theta) + "," + format_double(ratio) + "," +
             (b == bounds.end() ? std::string("") : format_double(b->second)) + "\n";
    }
  }
  return out;
}

void write_outputs(const RunConfig& cfg, const RunResult& result) {
  const auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  };
  write(cfg.output + ".report.json", report_json(cfg, result).dump(1) + "\n");
  write(cfg.output + ".rows.csv", rows_csv(result));
  write(cfg.output + ".plot.csv", plot_csv(result));
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Verify interpolation bounds for analytic maps on weighted sequence couples"};
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::optional<std::string> output;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--seed", seed, "Seed (overrides the config and HOLOINTERP_SEED)");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--output", output, "Output path prefix");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ConfigOverrides overrides;
  overrides.seed = seed;
  overrides.output = output;
  if (const char* env = std::getenv("HOLOINTERP_SEED")) {
    try {
      overrides.fallback_seed = seed_value(json(std::string(env)), "HOLOINTERP_SEED");
    } catch (const ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  std::optional<RunConfig> cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("--config", "cannot open '" + config_path + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
    }
    cfg = parse_config(j, overrides);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  RunResult result;
  try {
    result = run(*cfg, workers);
    write_outputs(*cfg, result);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& r : result.reports) {
    std::printf("%-26s %-8s worst_ratio=%.12g tolerance=%.3g provenance=%s rows=%zu\n",
                r.suite.c_str(), r.advisory() ? "ADVISORY" : (r.pass ? "PASS" : "FAIL"),
                r.worst_ratio, r.tolerance, to_string(r.provenance).c_str(), r.rows.size());
  }
  const char* prefix = cfg->output.c_str();
  std::printf("status %d; wrote %s.report.json, %s.rows.csv, %s.plot.csv\n", result.status,
              prefix, prefix, prefix);
  return result.status;
}

}  // namespace holointerp
