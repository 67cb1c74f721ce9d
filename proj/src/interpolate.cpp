#include "holointerp/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "parallel.hpp"

namespace holointerp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("theta grid must not be empty");
  for (double t : grid) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw InvalidArgument("theta grid value " + std::to_string(t) +
                            " outside [0, 1]");
    }
  }
}

void check_shapes(const AnalyticMap& map, const WeightedCouple& e,
                  const WeightedCouple& h) {
  if (e.dim() != map.in_dim() || h.dim() != map.out_dim()) {
    throw InvalidArgument("couple dimensions do not match map '" + map.name() +
                          "'");
  }
}

CVector scaled(CVector v, double s) {
  for (auto& z : v) z *= s;
  return v;
}

struct ThetaPair {
  ThetaNorm e;
  ThetaNorm h;
};

std::vector<ThetaPair> theta_norms(const WeightedCouple& e,
                                   const WeightedCouple& h,
                                   std::span<const double> grid) {
  std::vector<ThetaPair> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back({theta_weights(e, t), theta_weights(h, t)});
  return out;
}

double safe_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  grid.push_back(1.0 / 3.0);
  grid.push_back(0.5);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double lemma_bound(const BoundSpec& spec) {
  if (!spec.degree) throw InvalidArgument("lemma bound needs a degree");
  if (!(spec.theta >= 0.0 && spec.theta <= 1.0)) {
    throw InvalidArgument("theta must lie in [0, 1]");
  }
  if (!(spec.c0 > 0.0) || !(spec.c1 > 0.0)) {
    throw InvalidArgument("bound constants must be positive");
  }
  return std::pow(spec.c0, 1.0 - spec.theta) * std::pow(spec.c1, spec.theta);
}

double theorem1_bound(const BoundSpec& spec) {
  if (!spec.inner_radius) throw InvalidArgument("theorem bound needs r");
  const double r = *spec.inner_radius;
  const double big_r = spec.radius;
  if (!(r > 0.0 && r < big_r)) {
    throw InvalidArgument("need 0 < r < R, got r = " + std::to_string(r) +
                          ", R = " + std::to_string(big_r));
  }
  if (!(spec.theta >= 0.0 && spec.theta <= 1.0)) {
    throw InvalidArgument("theta must lie in [0, 1]");
  }
  if (!(spec.c0 > 0.0) || !(spec.c1 > 0.0)) {
    throw InvalidArgument("bound constants must be positive");
  }
  return std::pow(spec.c0, 1.0 - spec.theta) * std::pow(spec.c1, spec.theta) *
         big_r / (big_r - r);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::declared: return "declared";
    case Provenance::empirical: return "empirical";
  }
  return "unknown";
}

void VerificationReport::finalize() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     if (a.theta != b.theta) return a.theta < b.theta;
                     if (a.sample_id != b.sample_id) return a.sample_id < b.sample_id;
                     return a.degree < b.degree;
                   });
  worst_ratio = 0.0;
  min_ratio = rows.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    worst_ratio = std::max(worst_ratio, r.ratio);
    min_ratio = std::min(min_ratio, r.ratio);
  }
  pass = worst_ratio <= 1.0 + tolerance &&
         (!two_sided || min_ratio >= 1.0 - tolerance);
}

Sampler::Sampler(SamplerOptions options) : opts_(options) {}

std::size_t Sampler::deterministic_count(std::size_t dim) const {
  std::size_t n = 0;
  if (opts_.include_basis) n += dim;
  if (opts_.include_pairs) n += dim * (dim - 1) / 2;
  return n;
}

std::size_t Sampler::size(std::size_t dim) const {
  return deterministic_count(dim) + opts_.random_count;
}

Sampler::Draw Sampler::draw(std::size_t dim, std::size_t theta_index,
                            std::size_t id) const {
  if (id >= size(dim)) throw InvalidArgument("sample id out of range");
  std::size_t rest = id;
  if (opts_.include_basis) {
    if (rest < dim) return {basis_vector(dim, rest), 1.0};
    rest -= dim;
  }
  if (opts_.include_pairs) {
    const std::size_t pairs = dim * (dim - 1) / 2;
    if (rest < pairs) {
      std::size_t i = 0;
      std::size_t row = dim - 1;
      while (rest >= row) {
        rest -= row;
        ++i;
        --row;
      }
      CVector v(dim);
      v[i] = 1.0;
      v[i + 1 + rest] = 1.0;
      return {std::move(v), 1.0};
    }
    rest -= pairs;
  }
  std::uint64_t s = splitmix64(opts_.seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(theta_index));
  s = splitmix64(s ^ static_cast<std::uint64_t>(id));
  std::mt19937_64 rng(s);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Draw d;
  d.direction.resize(dim);
  for (auto& z : d.direction) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = Complex{re, im};
  }
  d.radius_fraction = 1.0 - unif(rng);
  return d;
}

VerificationReport verify_lemma(const AnalyticMap& map,
                                const WeightedCouple& e_couple,
                                const WeightedCouple& h_couple, double m0,
                                double m1, std::span<const double> theta_grid,
                                const Sampler& sampler, SweepOptions options) {
  check_grid(theta_grid);
  check_shapes(map, e_couple, h_couple);
  if (!map.homogeneous_degree()) {
    throw InvalidArgument("map '" + map.name() + "' is not flagged homogeneous");
  }
  const int k = *map.homogeneous_degree();
  const auto norms = theta_norms(e_couple, h_couple, theta_grid);
  const std::size_t per_theta = sampler.size(e_couple.dim());

  VerificationReport report;
  report.suite = "lemma";
  report.tolerance = options.tolerance;
  report.provenance = options.provenance;
  report.rows.resize(theta_grid.size() * per_theta);

  detail::parallel_for(report.rows.size(), options.workers, [&](std::size_t i) {
    const std::size_t ti = i / per_theta;
    const std::size_t id = i % per_theta;
    const double theta = theta_grid[ti];
    auto d = sampler.draw(e_couple.dim(), ti, id);
    const double size =
        std::max(e_couple.norm0(d.direction), e_couple.norm1(d.direction));
    const CVector x =
        scaled(std::move(d.direction), d.radius_fraction * map.radius() / (2.0 * size));
    const double bound = lemma_bound({m0, m1, map.radius(), std::nullopt, theta, k});
    ReportRow& row = report.rows[i];
    row.theta = theta;
    row.sample_id = static_cast<std::int64_t>(id);
    row.degree = k;
    row.lhs_norm = norms[ti].h(map(x));
    row.rhs_bound = bound * std::pow(norms[ti].e(x), k);
    row.ratio = safe_ratio(row.lhs_norm, row.rhs_bound);
  });
  report.finalize();
  return report;
}

VerificationReport verify_lemma(const HomogeneousComponent& component,
                                const WeightedCouple& h_couple, double m0,
                                double m1, std::span<const double> theta_grid,
                                const Sampler& sampler, SweepOptions options) {
  check_grid(theta_grid);
  const auto& map = component.map();
  const auto& e_couple = component.e_couple();
  check_shapes(map, e_couple, h_couple);
  const int k = component.degree();
  const auto norms = theta_norms(e_couple, h_couple, theta_grid);
  const std::size_t per_theta = sampler.size(e_couple.dim());

  VerificationReport report;
  report.suite = "lemma";
  report.provenance = options.provenance;
  report.rows.resize(theta_grid.size() * per_theta);
  std::vector<double> alias_rel(report.rows.size(), 0.0);

  detail::parallel_for(report.rows.size(), options.workers, [&](std::size_t i) {
    const std::size_t ti = i / per_theta;
    const std::size_t id = i % per_theta;
    const double theta = theta_grid[ti];
    auto d = sampler.draw(e_couple.dim(), ti, id);
    const double size =
        std::max(e_couple.norm0(d.direction), e_couple.norm1(d.direction));
    const CVector x =
        scaled(std::move(d.direction), d.radius_fraction * map.radius() / (2.0 * size));
    const Extraction ex = component.extract(x);
    const double bound = lemma_bound({m0, m1, map.radius(), std::nullopt, theta, k});
    ReportRow& row = report.rows[i];
    row.theta = theta;
    row.sample_id = static_cast<std::int64_t>(id);
    row.degree = k;
    row.lhs_norm = norms[ti].h(ex.value);
    row.rhs_bound = bound * std::pow(norms[ti].e(x), k);
    row.ratio = safe_ratio(row.lhs_norm, row.rhs_bound);
    // Aliased remainder y: ||y||_theta <= ||y||_0^(1-theta) ||y||_1^theta.
    const double alias = std::pow(ex.alias_bound, 1.0 - theta) *
                         std::pow(ex.alias_bound_h1, theta);
    alias_rel[i] = safe_ratio(alias, row.rhs_bound);
  });
  report.tolerance =
      options.tolerance + *std::max_element(alias_rel.begin(), alias_rel.end());
  report.finalize();
  return report;
}

VerificationReport verify_theorem1(const AnalyticMap& map,
                                   const WeightedCouple& e_couple,
                                   const WeightedCouple& h_couple,
                                   const BoundSpec& spec,
                                   std::span<const double> theta_grid,
                                   const Sampler& sampler,
                                   SweepOptions options) {
  check_grid(theta_grid);
  check_shapes(map, e_couple, h_couple);
  if (!spec.inner_radius) throw InvalidArgument("theorem sweep needs r");
  const double r = *spec.inner_radius;
  if (!(r > 0.0 && r < spec.radius)) {
    throw InvalidArgument("need 0 < r < R, got r = " + std::to_string(r) +
                          ", R = " + std::to_string(spec.radius));
  }
  const auto norms = theta_norms(e_couple, h_couple, theta_grid);
  const std::size_t per_theta = sampler.size(e_couple.dim());

  VerificationReport report;
  report.suite = "theorem1";
  report.tolerance = options.tolerance;
  report.provenance = options.provenance;
  report.rows.resize(theta_grid.size() * per_theta);

  detail::parallel_for(report.rows.size(), options.workers, [&](std::size_t i) {
    const std::size_t ti = i / per_theta;
    const std::size_t id = i % per_theta;
    BoundSpec at = spec;
    at.theta = theta_grid[ti];
    auto d = sampler.draw(e_couple.dim(), ti, id);
    const double dir_norm = norms[ti].e(d.direction);
    const CVector x = scaled(std::move(d.direction), d.radius_fraction * r / dir_norm);
    const double xn = norms[ti].e(x);
    if (xn > r * (1.0 + 1e-12)) {
      throw DomainError("sample outside B_theta(0, r): ||x||_theta = " +
                        std::to_string(xn));
    }
    if (!(e_couple.norm0(x) < map.radius())) {
      throw DomainError("sample leaves the domain ball of map '" + map.name() +
                        "'; is the E couple normalized?");
    }
    ReportRow& row = report.rows[i];
    row.theta = at.theta;
    row.sample_id = static_cast<std::int64_t>(id);
    row.lhs_norm = norms[ti].h(map(x));
    row.rhs_bound = theorem1_bound(at) * xn;
    row.ratio = safe_ratio(row.lhs_norm, row.rhs_bound);
  });
  report.finalize();
  return report;
}

EstimatedConstants estimate_constants(const AnalyticMap& map,
                                      const WeightedCouple& e_couple,
                                      const WeightedCouple& h_couple,
                                      double radius, const Sampler& sampler,
                                      std::size_t budget) {
  check_shapes(map, e_couple, h_couple);
  if (budget < 1) throw InvalidArgument("estimation budget must be at least 1");
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  const std::size_t n = std::min(budget, sampler.size(e_couple.dim()));
  EstimatedConstants out;
  for (int side = 0; side < 2; ++side) {
    double best = 0.0;
    for (std::size_t id = 0; id < n; ++id) {
      auto d = sampler.draw(e_couple.dim(), static_cast<std::size_t>(side), id);
      const double dn = e_couple.endpoint_norm(side, d.direction);
      const CVector x = scaled(std::move(d.direction), d.radius_fraction * radius / dn);
      if (e_couple.norm0(x) > map.radius()) continue;
      const double xn = e_couple.endpoint_norm(side, x);
      best = std::max(best, h_couple.endpoint_norm(side, map(x)) / xn);
    }
    (side == 0 ? out.c0 : out.c1) = best;
  }
  return out;
}

EstimatedConstants estimate_homogeneous_constants(
    const AnalyticMap& map, const WeightedCouple& e_couple,
    const WeightedCouple& h_couple, int degree, const Sampler& sampler,
    std::size_t budget) {
  check_shapes(map, e_couple, h_couple);
  if (budget < 1) throw InvalidArgument("estimation budget must be at least 1");
  const std::size_t n = std::min(budget, sampler.size(e_couple.dim()));
  EstimatedConstants out;
  for (int side = 0; side < 2; ++side) {
    double best = 0.0;
    for (std::size_t id = 0; id < n; ++id) {
      auto d = sampler.draw(e_couple.dim(), static_cast<std::size_t>(side), id);
      const double size =
          std::max(e_couple.norm0(d.direction), e_couple.norm1(d.direction));
      const CVector x = scaled(std::move(d.direction), map.radius() / (2.0 * size));
      const double xn = e_couple.endpoint_norm(side, x);
      best = std::max(best, h_couple.endpoint_norm(side, map(x)) /
                                std::pow(xn, degree));
    }
    (side == 0 ? out.c0 : out.c1) = best;
  }
  return out;
}

}  // namespace holointerp
