// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Sizes follow the defaults: dimension 64, 10^4 samples, the
// default theta grid.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "holointerp/analytic.hpp"
#include "holointerp/interpolate.hpp"
#include "holointerp/spaces.hpp"
#include "holointerp/strip.hpp"
#include "holointerp/testmaps.hpp"
#include "support/generators.hpp"

namespace {

using namespace holointerp;
using holointerp::testing::Gen;
using holointerp::testing::max_abs_diff;
using holointerp::testing::rel_diff;

constexpr std::size_t kDim = 64;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

CVector scaled(CVector v, double s) {
  for (auto& z : v) z *= s;
  return v;
}

// Sobolev-type couple at the default dimension.
WeightedCouple sobolev_couple(double s0, double s1) {
  return WeightedCouple(sobolev_weights(kDim, s0), sobolev_weights(kDim, s1));
}

Outcome endpoint_exactness() {
  Gen gen(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = gen.couple(1 + gen.index(kDim));
    const auto x = gen.vector(c.dim());
    worst = std::max(worst, rel_diff(theta_norm(c, 0.0, x), c.norm0(x)));
    worst = std::max(worst, rel_diff(theta_norm(c, 1.0, x), c.norm1(x)));
  }
  return {worst <= 1e-14, fmt("max relative deviation %.3g over 1000 couples", worst)};
}

Outcome closed_form_certification() {
  Gen gen(102);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto c = gen.couple(kDim);
    auto x = gen.vector(kDim);
    if (euclidean_norm(x) == 0.0) x[0] = 1.0;
    const double theta = gen.uniform(0.0, 1.0);
    const auto f = optimal_strip_function(c, theta, x);
    worst = std::max(worst, rel_diff(f_space_norm(f, c), theta_norm(c, theta, x)));
  }
  return {worst <= 1e-10, fmt("max relative gap %.3g over 1000 (couple, theta, x)", worst)};
}

Outcome log_convexity() {
  Gen gen(103);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto c = gen.couple(kDim);
    const auto x = gen.vector(kDim);
    const double theta = gen.uniform(0.0, 1.0);
    const double rhs = std::pow(c.norm0(x), 1.0 - theta) * std::pow(c.norm1(x), theta);
    worst = std::max(worst, theta_norm(c, theta, x) / rhs);
  }
  return {worst <= 1.0 + 1e-12, fmt("max ||x||_theta / geometric mean = %.17g", worst)};
}

Outcome cauchy_exactness() {
  Gen gen(104);
  const auto e = sobolev_couple(0, 0);
  double coeff_err = 0.0;
  bool rho_ok = true;
  double rho_worst = 0.0;
  int checks = 0;
  for (int d = 1; d <= 6; ++d) {
    std::vector<OracleMap> maps{OracleMap::diagonal_monomial(d, gen.weights(kDim, 0.5, 2.0))};
    if (d == 1) maps.push_back(OracleMap::diagonal_linear(gen.weights(kDim, 0.5, 2.0)));
    if (d == 2) {
      CVector a(kDim), b(kDim);
      for (auto& z : a) z = gen.complex_gauss();
      for (auto& z : b) z = gen.complex_gauss();
      maps.push_back(OracleMap::rank_one_quadratic(a, b));
    }
    for (const auto& m : maps) {
      const auto am = m.to_analytic_map(e, e, 1.0);
      for (int s = 0; s < 20; ++s) {
        auto h = gen.vector(kDim);
        h = scaled(h, gen.uniform(0.1, 0.9) / e.norm0(h));
        const double hn = e.norm0(h);
        const auto parts = extract_components(am, e, h, d, 1.0, d + 1);
        for (int n = 0; n <= d; ++n) {
          const auto known = m.known_component(h, n);
          coeff_err = std::max(coeff_err, max_abs_diff(parts[static_cast<std::size_t>(n)].value, known) /
                                              (1.0 + euclidean_norm(known)));
        }
        const std::vector<double> rhos{0.1 / hn, 0.3 / hn, 0.5 / hn};
        for (int n = 0; n <= d; ++n) {
          const auto r = rho_independence_check(am, e, e, h, n, rhos, d + 1);
          rho_ok = rho_ok && r.consistent;
          if (r.allowed > 0) rho_worst = std::max(rho_worst, r.max_deviation / r.allowed);
          ++checks;
        }
      }
    }
  }
  // Non-polynomial map: rho-independence holds only up to aliasing.
  std::vector<double> scales(kDim, 2.0);
  const auto geo = OracleMap::componentwise_geometric(scales).to_analytic_map(e, e, 1.0);
  for (int s = 0; s < 50; ++s) {
    auto h = gen.vector(kDim);
    h = scaled(h, gen.uniform(0.1, 0.9) / e.norm0(h));
    const double hn = e.norm0(h);
    const std::vector<double> rhos{0.1 / hn, 0.3 / hn, 0.5 / hn};
    for (int n = 0; n <= 8; ++n) {
      const auto r = rho_independence_check(geo, e, e, h, n, rhos, default_node_count(n));
      rho_ok = rho_ok && r.consistent;
      if (r.allowed > 0) rho_worst = std::max(rho_worst, r.max_deviation / r.allowed);
      ++checks;
    }
  }
  return {coeff_err <= 1e-11 && rho_ok,
          fmt2("max coefficient error %.3g; rho deviation / allowance <= %.3g", coeff_err,
               rho_worst) +
              " over " + std::to_string(checks) + " checks"};
}

Outcome component_estimate() {
  Gen gen(105);
  const auto e = sobolev_couple(0, 1);
  const auto h = sobolev_couple(0, 0.5);
  const double radius = 1.0;
  CVector a(kDim), b(kDim);
  for (auto& z : a) z = gen.complex_gauss();
  for (auto& z : b) z = gen.complex_gauss();
  std::vector<double> scales(kDim);
  for (std::size_t k = 0; k < kDim; ++k) scales[k] = 1.5;
  const std::vector<OracleMap> maps{
      OracleMap::diagonal_linear(gen.weights(kDim, 0.2, 5.0)),
      OracleMap::diagonal_monomial(2, gen.weights(kDim, 0.2, 5.0)),
      OracleMap::diagonal_monomial(5, gen.weights(kDim, 0.2, 5.0)),
      OracleMap::rank_one_quadratic(a, b),
      OracleMap::componentwise_geometric(scales)};
  double worst = 0.0;
  std::string worst_at;
  for (const auto& m : maps) {
    const auto am = m.to_analytic_map(e, h, radius);
    for (int n = 0; n <= 8; ++n) {
      std::vector<CVector> samples;
      samples.reserve(1000);
      for (int s = 0; s < 1000; ++s) {
        CVector x = s < static_cast<int>(kDim) ? basis_vector(kDim, static_cast<std::size_t>(s))
                                               : gen.vector(kDim);
        if (euclidean_norm(x) == 0.0) x[0] = 1.0;
        const double size = std::max(e.norm0(x), e.norm1(x));
        samples.push_back(scaled(std::move(x), gen.uniform(0.05, 0.99) * radius / size));
      }
      const HomogeneousComponent p(am, e, n);
      const auto bound = component_norm_bound(p, h, samples);
      if (bound.worst_ratio() > worst) {
        worst = bound.worst_ratio();
        worst_at = to_string(m.kind()) + " n=" + std::to_string(n);
      }
    }
  }
  return {worst <= 1.0 + 1e-6,
          fmt("worst ||P_n(h)|| / (C R^(1-n) ||h||^n) = %.12g", worst) + " at " + worst_at +
              "; 5 maps x 9 degrees x 1000 samples"};
}

Outcome lemma_bound_suite() {
  Gen gen(106);
  const auto e = sobolev_couple(0, 1);
  const auto h = sobolev_couple(0, 0.5);
  const auto grid = default_theta_grid();
  const Sampler sampler({.random_count = 10000, .seed = 106});
  double worst_pass = 0.0;
  bool all_pass = true;
  bool sensitivity = true;
  std::string sens_detail;
  for (int p : {2, 3}) {
    const auto m = OracleMap::diagonal_monomial(p, gen.weights(kDim, 0.2, 5.0));
    const auto k = *m.homogeneous_constants(e, h);
    const auto am = m.to_analytic_map(e, h, 1.0);
    const auto ok = verify_lemma(am, e, h, k.c0, k.c1, grid, sampler, {kExactTolerance, Provenance::oracle, 4});
    all_pass = all_pass && ok.pass;
    worst_pass = std::max(worst_pass, ok.worst_ratio);
    const auto bad = verify_lemma(am, e, h, k.c0 / 2, k.c1, grid, sampler, {kExactTolerance, Provenance::oracle, 4});
    std::map<double, double> by_theta;
    for (const auto& row : bad.rows) by_theta[row.theta] = std::max(by_theta[row.theta], row.ratio);
    bool witnessed = false;
    for (const auto& [theta, w] : by_theta) {
      if (theta < 1.0 && w >= std::pow(2.0, 1.0 - theta) - 1e-6) witnessed = true;
    }
    sensitivity = sensitivity && !bad.pass && witnessed;
    sens_detail += " p=" + std::to_string(p) + fmt(": halved worst %.6g", bad.worst_ratio);
  }
  return {all_pass && sensitivity,
          fmt("oracle worst ratio %.17g;", worst_pass) + sens_detail};
}

Outcome theorem1_suite() {
  // Normalized couple: w0 = 1 <= w1 = (1 + k^2)^(1/2).
  const auto e = normalize_couple(sobolev_couple(0, 1)).couple;
  const auto h = sobolev_couple(0, 1);
  const double R = 1.0;
  const double r = 0.5;
  const auto grid = default_theta_grid();
  const Sampler sampler({.random_count = 10000, .seed = 107});

  std::vector<double> scales(kDim, 2.0);
  const auto geo = OracleMap::componentwise_geometric(scales);
  const auto c = *geo.oracle_constants(e, h, R);
  // Brute force: sup over the polar grid of |x| <= R / w_k per coordinate.
  double brute0 = 0.0, brute1 = 0.0;
  for (int side = 0; side < 2; ++side) {
    const auto& w = side == 0 ? e.w0() : e.w1();
    const auto& v = side == 0 ? h.w0() : h.w1();
    double best = 0.0;
    for (std::size_t k = 0; k < kDim; ++k) {
      for (int i = 1; i <= 100; ++i) {
        const double rad = R / w[k] * i / 100.0;
        for (int j = 0; j < 32; ++j) {
          const Complex x = std::polar(rad, 2.0 * std::numbers::pi * j / 32.0);
          best = std::max(best, v[k] * std::abs(x / (1.0 - x / scales[k])) / (w[k] * rad));
        }
      }
    }
    (side == 0 ? brute0 : brute1) = best;
  }
  const bool certified = rel_diff(c.c0, brute0) <= 1e-12 && rel_diff(c.c1, brute1) <= 1e-12;
  const auto geo_report = verify_theorem1(geo.to_analytic_map(e, h, R), e, h, {c.c0, c.c1, R, r},
                                          grid, sampler, {kExactTolerance, Provenance::oracle, 4});

  Gen gen(107);
  const auto lin = OracleMap::diagonal_linear(gen.weights(kDim, 0.2, 5.0));
  const auto lc = *lin.oracle_constants(e, h, R);
  const auto lin_report = verify_theorem1(lin.to_analytic_map(e, h, R), e, h, {lc.c0, lc.c1, R, r},
                                          grid, sampler, {kExactTolerance, Provenance::oracle, 4});
  const bool pass = certified && geo_report.pass && geo_report.worst_ratio <= 1.0 &&
                    lin_report.pass && lin_report.worst_ratio <= 0.5 * (1 + 1e-12);
  return {pass, std::string("constants match brute force: ") + (certified ? "yes" : "no") +
                    fmt("; geometric worst %.12g", geo_report.worst_ratio) +
                    fmt("; linear worst %.12g (<= 0.5)", lin_report.worst_ratio)};
}

Outcome series_tail() {
  const auto e = sobolev_couple(0, 1);
  const double R = 1.0;
  std::vector<double> scales(kDim, 1.5);
  const auto geo = OracleMap::componentwise_geometric(scales);
  const auto am = geo.to_analytic_map(e, e, R);
  Gen gen(108);
  bool pass = true;
  std::string detail;
  for (int cap : {2, 5, 10}) {
    double worst_obs = 0.0;
    const double bound = am.c0() * R * std::pow(0.5, cap + 1) / (1.0 - 0.5);
    for (int s = 0; s < 200; ++s) {
      CVector hv = s < static_cast<int>(kDim) ? basis_vector(kDim, static_cast<std::size_t>(s))
                                              : gen.vector(kDim);
      if (euclidean_norm(hv) == 0.0) hv[0] = 1.0;
      hv = scaled(std::move(hv), 0.5 * R / e.norm0(hv));
      const auto res = truncated_series(am, e, hv, cap);
      CVector diff = am(hv);
      for (std::size_t k = 0; k < kDim; ++k) diff[k] -= res.value[k];
      const double obs = e.norm0(diff);
      worst_obs = std::max(worst_obs, obs);
      pass = pass && obs <= bound + res.alias_bound && std::abs(res.tail_bound - bound) <= 1e-12 * bound;
    }
    detail += " N=" + std::to_string(cap) + fmt2(": observed %.4g vs bound %.4g;", worst_obs, bound);
  }
  return {pass, detail.substr(1)};
}

Outcome g_construction() {
  Gen gen(109);
  const auto e = sobolev_couple(0, 1);
  const auto h = sobolev_couple(0, 0.5);
  CVector a(kDim), b(kDim);
  for (auto& z : a) z = gen.complex_gauss();
  for (auto& z : b) z = gen.complex_gauss();
  const std::vector<OracleMap> maps{
      OracleMap::diagonal_linear(gen.weights(kDim, 0.2, 5.0)),
      OracleMap::diagonal_monomial(2, gen.weights(kDim, 0.2, 5.0)),
      OracleMap::diagonal_monomial(3, gen.weights(kDim, 0.2, 5.0)),
      OracleMap::rank_one_quadratic(a, b)};
  const auto t = symmetric_t_grid(201);
  double worst = 0.0;
  for (const auto& m : maps) {
    const auto k = *m.homogeneous_constants(e, h);
    const auto am = m.to_analytic_map(e, h, 1.0);
    for (int s = 0; s < 50; ++s) {
      CVector x = s < 10 ? m.maximizer(e, h, s % 2, 0.5) : gen.vector(kDim);
      if (euclidean_norm(x) == 0.0) x[0] = 1.0;
      const auto f = optimal_strip_function(e, gen.uniform(0.0, 1.0), x);
      const auto g = lemma_comparison_function(f, am, k.c0, k.c1);
      worst = std::max(worst, boundary_inequalities(g, e, h, t).worst_ratio());
    }
  }
  return {worst <= 1.0 + 1e-12,
          fmt("worst boundary ratio %.17g over 4 maps x 50 functions x 201 t-samples", worst)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("holointerp_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string config = std::string(HOLOINTERP_CONFIG_DIR) + "/all.json";
  std::vector<std::string> csv;
  for (int workers : {1, 4}) {
    const std::string prefix = (dir / ("w" + std::to_string(workers))).string();
    const std::string cmd = std::string(HOLOINTERP_CLI_PATH) + " --config " + config +
                            " --seed 424242 --workers " + std::to_string(workers) +
                            " --output " + prefix + " > " + prefix + ".log 2>&1";
    const int raw = std::system(cmd.c_str());
    const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    if (status != 0) {
      fs::remove_all(dir);
      return {false, "cli exited with status " + std::to_string(status)};
    }
    csv.push_back(slurp(prefix + ".rows.csv"));
  }
  fs::remove_all(dir);
  std::size_t rows = 0;
  for (char ch : csv[0]) rows += ch == '\n';
  return {!csv[0].empty() && csv[0] == csv[1],
          std::string(csv[0] == csv[1] ? "byte-identical" : "different") + " rows.csv at 1 and 4 workers (" +
              std::to_string(rows - 1) + " rows, " + std::to_string(csv[0].size()) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"endpoint exactness", endpoint_exactness},
      {"closed-form certification", closed_form_certification},
      {"log-convexity", log_convexity},
      {"Cauchy extraction exactness", cauchy_exactness},
      {"component estimate", component_estimate},
      {"lemma bound", lemma_bound_suite},
      {"theorem 1 bound", theorem1_suite},
      {"series tail soundness", series_tail},
      {"g-construction", g_construction},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %2zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
