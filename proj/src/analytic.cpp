#include "holointerp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace holointerp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// C R (||h||/R)^n q^M / (1 - q^M) with q = rho ||h|| / R.
double alias_tail(double c, double radius, double hnorm, int n, double rho,
                  int nodes) {
  const double q = rho * hnorm / radius;
  if (!(q < 1.0)) return kInf;
  if (hnorm == 0.0) return 0.0;
  const double qm = std::pow(q, nodes);
  return c * radius * std::pow(hnorm / radius, n) * qm / (1.0 - qm);
}

std::vector<Complex> roots_of_unity(int nodes) {
  std::vector<Complex> w(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    w[static_cast<std::size_t>(j)] =
        std::polar(1.0, 2.0 * std::numbers::pi * j / nodes);
  }
  return w;
}

}  // namespace

AnalyticMap::AnalyticMap(Evaluator evaluate, std::size_t in_dim,
                         std::size_t out_dim, Options options)
    : evaluate_(std::move(evaluate)),
      in_dim_(in_dim),
      out_dim_(out_dim),
      opts_(std::move(options)),
      serialize_(std::make_shared<std::mutex>()) {
  if (!evaluate_) throw InvalidArgument("analytic map needs an evaluator");
  if (in_dim_ == 0 || out_dim_ == 0) {
    throw InvalidArgument("analytic map dimensions must be positive");
  }
  if (!(opts_.radius > 0.0) || !std::isfinite(opts_.radius)) {
    throw InvalidArgument("analytic map radius must be positive and finite");
  }
  if (!(opts_.c0 >= 0.0) || !(opts_.c1 >= 0.0)) {
    throw InvalidArgument("analytic map constants must be nonnegative");
  }
  if (opts_.homogeneous_degree && *opts_.homogeneous_degree < 0) {
    throw InvalidArgument("homogeneous degree must be nonnegative");
  }
  if (opts_.maps_zero_to_zero) {
    const CVector zero(in_dim_);
    const double at_zero = euclidean_norm((*this)(zero));
    if (at_zero > 1e-12) {
      throw HypothesisViolation("map '" + opts_.name +
                                "' is flagged Phi(0) = 0 but |Phi(0)| = " +
                                std::to_string(at_zero));
    }
  }
}

CVector AnalyticMap::operator()(CSpan x) const {
  if (x.size() != in_dim_) {
    throw InvalidArgument("map '" + opts_.name + "' expects dimension " +
                          std::to_string(in_dim_) + ", got " +
                          std::to_string(x.size()));
  }
  CVector y;
  if (opts_.reentrant) {
    y = evaluate_(x);
  } else {
    std::lock_guard lock(*serialize_);
    y = evaluate_(x);
  }
  if (y.size() != out_dim_) {
    throw InvalidArgument("map '" + opts_.name + "' returned dimension " +
                          std::to_string(y.size()) + ", declared " +
                          std::to_string(out_dim_));
  }
  return y;
}

AnalyticMap AnalyticMap::with_constants(double c0, double c1) const {
  AnalyticMap copy = *this;
  if (!(c0 >= 0.0) || !(c1 >= 0.0)) {
    throw InvalidArgument("analytic map constants must be nonnegative");
  }
  copy.opts_.c0 = c0;
  copy.opts_.c1 = c1;
  return copy;
}

AnalyticMap AnalyticMap::linear_combination(Complex alpha, const AnalyticMap& f,
                                            Complex beta, const AnalyticMap& g) {
  if (f.in_dim() != g.in_dim() || f.out_dim() != g.out_dim()) {
    throw InvalidArgument("linear combination of maps with different shapes");
  }
  Options opts;
  opts.radius = std::min(f.radius(), g.radius());
  opts.c0 = std::abs(alpha) * f.c0() + std::abs(beta) * g.c0();
  opts.c1 = std::abs(alpha) * f.c1() + std::abs(beta) * g.c1();
  opts.maps_zero_to_zero = f.maps_zero_to_zero() && g.maps_zero_to_zero();
  opts.reentrant = f.reentrant() && g.reentrant();
  if (f.homogeneous_degree() == g.homogeneous_degree()) {
    opts.homogeneous_degree = f.homogeneous_degree();
  }
  opts.name = "combination(" + f.name() + "," + g.name() + ")";
  auto eval = [alpha, beta, f, g](CSpan x) {
    CVector a = f(x);
    const CVector b = g(x);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = alpha * a[k] + beta * b[k];
    return a;
  };
  return AnalyticMap(std::move(eval), f.in_dim(), f.out_dim(), std::move(opts));
}

int default_node_count(int degree, double alias_factor, double tol) {
  const double extra = std::ceil(std::log(tol) / std::log(alias_factor));
  return std::max(16, degree + 1 + static_cast<int>(extra));
}

double default_contour_radius(const AnalyticMap& map,
                              const WeightedCouple& e_couple, CSpan h) {
  const double hn = e_couple.norm0(h);
  return hn == 0.0 ? 1.0 : map.radius() / (2.0 * hn);
}

std::vector<Extraction> extract_components(const AnalyticMap& map,
                                           const WeightedCouple& e_couple,
                                           CSpan h, int max_degree, double rho,
                                           int nodes) {
  if (max_degree < 0) throw InvalidArgument("degree must be nonnegative");
  if (nodes <= max_degree) {
    throw InvalidArgument("node count " + std::to_string(nodes) +
                          " cannot resolve degree " +
                          std::to_string(max_degree) + " (need nodes > n)");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw InvalidArgument("contour radius must be positive");
  }
  if (h.size() != map.in_dim() || e_couple.dim() != map.in_dim()) {
    throw InvalidArgument("dimension mismatch between h, couple, and map");
  }
  const double h0 = e_couple.norm0(h);
  const double h1 = e_couple.norm1(h);
  if (!(rho * h0 < map.radius())) {
    throw DomainError("contour |xi| = " + std::to_string(rho) +
                      " leaves the domain ball: rho*||h||_0 = " +
                      std::to_string(rho * h0) + " >= R = " +
                      std::to_string(map.radius()));
  }

  const auto omega = roots_of_unity(nodes);
  const std::size_t out = map.out_dim();
  std::vector<CVector> samples(static_cast<std::size_t>(nodes));
  CVector point(h.size());
  double max_sample = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const Complex xi = rho * omega[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < h.size(); ++k) point[k] = xi * h[k];
    samples[static_cast<std::size_t>(j)] = map(point);
    max_sample = std::max(max_sample,
                          euclidean_norm(samples[static_cast<std::size_t>(j)]));
  }

  std::vector<Extraction> result;
  result.reserve(static_cast<std::size_t>(max_degree) + 1);
  for (int n = 0; n <= max_degree; ++n) {
    Extraction ex;
    ex.degree = n;
    ex.contour_radius = rho;
    ex.nodes = nodes;
    ex.value.assign(out, Complex{0.0, 0.0});
    for (int j = 0; j < nodes; ++j) {
      // omega^{-jn}, indexed exactly modulo nodes.
      const auto idx = static_cast<std::size_t>(
          (nodes - static_cast<long long>(j) * n % nodes) % nodes);
      const Complex w = omega[idx];
      const auto& s = samples[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < out; ++k) ex.value[k] += s[k] * w;
    }
    const double scale = 1.0 / (nodes * std::pow(rho, n));
    for (auto& v : ex.value) v *= scale;
    ex.sample_scale = max_sample / std::pow(rho, n);
    ex.alias_bound = alias_tail(map.c0(), map.radius(), h0, n, rho, nodes);
    ex.alias_bound_h1 = alias_tail(map.c1(), map.radius(), h1, n, rho, nodes);

    if (n == 0 && map.maps_zero_to_zero()) {
      const double p0 = euclidean_norm(ex.value);
      const double slack = 1e-12 * (1.0 + max_sample);
      if (p0 > ex.alias_bound + slack) {
        throw HypothesisViolation(
            "map '" + map.name() + "' is flagged Phi(0) = 0 but its extracted "
            "degree-0 component has norm " + std::to_string(p0) +
            ", above the alias bound " + std::to_string(ex.alias_bound));
      }
      std::fill(ex.value.begin(), ex.value.end(), Complex{0.0, 0.0});
    }
    result.push_back(std::move(ex));
  }
  return result;
}

Extraction extract_component(const AnalyticMap& map,
                             const WeightedCouple& e_couple, CSpan h, int n,
                             double rho, int nodes) {
  if (n < 0) throw InvalidArgument("degree must be nonnegative");
  if (nodes <= n) {
    throw InvalidArgument("node count " + std::to_string(nodes) +
                          " cannot resolve degree " + std::to_string(n) +
                          " (need nodes > n)");
  }
  // Only degree n is needed; extract_components computes the lower ones too,
  // which is cheap next to the map evaluations.
  auto all = extract_components(map, e_couple, h, n, rho, nodes);
  return std::move(all.back());
}

Extraction extract_component(const AnalyticMap& map,
                             const WeightedCouple& e_couple, CSpan h, int n) {
  return extract_component(map, e_couple, h, n,
                           default_contour_radius(map, e_couple, h),
                           default_node_count(n));
}

HomogeneousComponent::HomogeneousComponent(AnalyticMap map,
                                           WeightedCouple e_couple, int degree,
                                           std::optional<int> node_count,
                                           std::optional<double> contour_radius)
    : map_(std::move(map)),
      e_(std::move(e_couple)),
      degree_(degree),
      nodes_(node_count.value_or(default_node_count(degree))),
      rho_(contour_radius) {
  if (degree_ < 0) throw InvalidArgument("degree must be nonnegative");
  if (nodes_ <= degree_) {
    throw InvalidArgument("node count must exceed the degree");
  }
  if (e_.dim() != map_.in_dim()) {
    throw InvalidArgument("couple dimension does not match the map");
  }
}

Extraction HomogeneousComponent::extract(CSpan h) const {
  double rho = 1.0;
  if (rho_) {
    rho = *rho_;
  } else {
    const double hn = std::max(e_.norm0(h), e_.norm1(h));
    if (hn > 0.0) rho = map_.radius() / (2.0 * hn);
  }
  return extract_component(map_, e_, h, degree_, rho, nodes_);
}

RhoIndependence rho_independence_check(const AnalyticMap& map,
                                       const WeightedCouple& e_couple,
                                       const WeightedCouple& h_couple, CSpan h,
                                       int n, std::span<const double> rhos,
                                       int nodes) {
  if (h_couple.dim() != map.out_dim()) {
    throw InvalidArgument("target couple dimension does not match the map");
  }
  std::vector<Extraction> ex;
  ex.reserve(rhos.size());
  double scale = 0.0;
  for (double rho : rhos) {
    ex.push_back(extract_component(map, e_couple, h, n, rho, nodes));
    scale = std::max(scale, h_couple.norm0(ex.back().value));
  }
  double max_v0 = 0.0;
  for (double v : h_couple.w0()) max_v0 = std::max(max_v0, v);
  const double eps = std::numeric_limits<double>::epsilon();
  RhoIndependence out;
  for (std::size_t a = 0; a < ex.size(); ++a) {
    for (std::size_t b = a + 1; b < ex.size(); ++b) {
      CVector diff = ex[a].value;
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= ex[b].value[k];
      const double dev = h_couple.norm0(diff);
      const double rounding =
          1e-11 * (1.0 + scale) +
          1e3 * eps * max_v0 * (ex[a].sample_scale + ex[b].sample_scale);
      const double allowed = ex[a].alias_bound + ex[b].alias_bound + rounding;
      if (dev > out.max_deviation) out.max_deviation = dev;
      out.allowed = std::max(out.allowed, allowed);
      if (dev > allowed) out.consistent = false;
    }
  }
  return out;
}

ComponentBound component_norm_bound(const HomogeneousComponent& component,
                                    const WeightedCouple& h_couple,
                                    std::span<const CVector> samples) {
  const auto& map = component.map();
  const auto& e = component.e_couple();
  const int n = component.degree();
  if (h_couple.dim() != map.out_dim()) {
    throw InvalidArgument("target couple dimension does not match the map");
  }
  const double radius = map.radius();
  ComponentBound out;
  for (const auto& h : samples) {
    const double h0 = e.norm0(h);
    const double h1 = e.norm1(h);
    if (h0 == 0.0) throw InvalidArgument("component bound needs h != 0");
    if (!(h0 < radius)) {
      throw DomainError("sample outside the domain ball: ||h||_0 = " +
                        std::to_string(h0));
    }
    const Extraction ex = component.extract(h);
    const double rad = std::pow(radius, 1.0 - n);
    const double bound0 = map.c0() * rad * std::pow(h0, n);
    const double bound1 = map.c1() * rad * std::pow(h1, n);
    const double p0 = h_couple.norm0(ex.value);
    const double p1 = h_couple.norm1(ex.value);
    const auto ratio = [](double p, double bound) {
      if (bound > 0.0) return p / bound;
      return p == 0.0 ? 0.0 : kInf;
    };
    out.worst_ratio0 = std::max(out.worst_ratio0, ratio(p0, bound0));
    out.worst_ratio1 = std::max(out.worst_ratio1, ratio(p1, bound1));
    if (bound0 > 0.0) {
      out.max_relative_alias =
          std::max(out.max_relative_alias, ex.alias_bound / bound0);
    }
    if (bound1 > 0.0) {
      out.max_relative_alias =
          std::max(out.max_relative_alias, ex.alias_bound_h1 / bound1);
    }
  }
  return out;
}

SeriesResult truncated_series(const AnalyticMap& map,
                              const WeightedCouple& e_couple, CSpan h,
                              int degree_cap, std::optional<int> nodes) {
  if (degree_cap < 0) throw InvalidArgument("degree cap must be nonnegative");
  const double h0 = e_couple.norm0(h);
  const double radius = map.radius();
  if (!(h0 < radius)) {
    throw DomainError("series needs ||h||_0 < R; got " + std::to_string(h0));
  }
  SeriesResult out;
  out.nodes = nodes.value_or(default_node_count(degree_cap));
  if (h0 == 0.0) {
    out.value.assign(map.out_dim(), Complex{0.0, 0.0});
    return out;
  }
  const double rho = radius / (2.0 * h0);
  const auto parts =
      extract_components(map, e_couple, h, degree_cap, rho, out.nodes);
  out.value.assign(map.out_dim(), Complex{0.0, 0.0});
  for (const auto& p : parts) {
    for (std::size_t k = 0; k < out.value.size(); ++k) out.value[k] += p.value[k];
    out.alias_bound += p.alias_bound;
  }
  const double s = h0 / radius;
  out.tail_bound = map.c0() * radius * std::pow(s, degree_cap + 1) / (1.0 - s);
  return out;
}

}  // namespace holointerp
