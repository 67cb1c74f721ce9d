#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "holointerp/spaces.hpp"
#include "holointerp/types.hpp"

namespace holointerp {

inline constexpr double kDefaultAliasTolerance = 1e-12;

/// A black-box analytic map Phi: C^N -> C^M on the E_0 ball of radius R,
/// together with its declared endpoint constants
///   ||Phi(x)||_{H_0} <= c0 ||x||_{E_0}  on B_0(0, R),
///   ||Phi(x)||_{H_1} <= c1 ||x||_{E_1}  on B_1(0, R).
///
/// The evaluator must accept complex arguments. Maps given by a real formula
/// are to be wrapped by the caller through the analytic continuation of that
/// formula; analyticity itself is a declared contract and is not verified.
///
/// Unless `reentrant` is set, calls to the evaluator are serialized across
/// threads sharing the map.
class AnalyticMap {
 public:
  using Evaluator = std::function<CVector(CSpan)>;

  struct Options {
    double radius = 1.0;
    double c0 = 0.0;
    double c1 = 0.0;
    bool maps_zero_to_zero = true;
    bool reentrant = false;
    std::optional<int> homogeneous_degree;
    std::string name = "user";
  };

  AnalyticMap(Evaluator evaluate, std::size_t in_dim, std::size_t out_dim,
              Options options);

  CVector operator()(CSpan x) const;

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  double radius() const { return opts_.radius; }
  double c0() const { return opts_.c0; }
  double c1() const { return opts_.c1; }
  bool maps_zero_to_zero() const { return opts_.maps_zero_to_zero; }
  bool reentrant() const { return opts_.reentrant; }
  std::optional<int> homogeneous_degree() const {
    return opts_.homogeneous_degree;
  }
  const std::string& name() const { return opts_.name; }
  const Options& options() const { return opts_; }

  /// Same evaluator, different declared constants.
  AnalyticMap with_constants(double c0, double c1) const;

  /// alpha * f + beta * g, on the smaller of the two balls. The constants
  /// are the triangle-inequality bounds |alpha| c_f + |beta| c_g.
  static AnalyticMap linear_combination(Complex alpha, const AnalyticMap& f,
                                        Complex beta, const AnalyticMap& g);

 private:
  Evaluator evaluate_;
  std::size_t in_dim_;
  std::size_t out_dim_;
  Options opts_;
  std::shared_ptr<std::mutex> serialize_;
};

/// Result of a discretized Cauchy extraction of P_n(h).
///
/// The trapezoidal sum over `nodes` roots of unity on |xi| = rho equals
///   sum_{m >= 0} P_{n + m nodes}(h) rho^(m nodes)
/// exactly, so the distance to the true P_n(h) is bounded by the geometric
/// tail recorded in `alias_bound` (H_0 norm) and `alias_bound_h1` (H_1 norm;
/// infinite when the contour leaves the E_1 ball).
struct Extraction {
  int degree = 0;
  CVector value;
  double contour_radius = 0.0;
  int nodes = 0;
  double alias_bound = 0.0;
  double alias_bound_h1 = 0.0;
  /// max_j |Phi(xi_j h)| / rho^n (Euclidean); rounding in `value` is a
  /// small multiple of machine epsilon times this.
  double sample_scale = 0.0;
};

/// max(16, n + 1 + ceil(log(tol) / log(alias_factor)))
int default_node_count(int degree, double alias_factor = 0.5,
                       double tol = kDefaultAliasTolerance);

/// R / (2 ||h||_0); one for h = 0.
double default_contour_radius(const AnalyticMap& map,
                              const WeightedCouple& e_couple, CSpan h);

Extraction extract_component(const AnalyticMap& map,
                             const WeightedCouple& e_couple, CSpan h, int n,
                             double rho, int nodes);

/// Extraction with the default contour radius and node count.
Extraction extract_component(const AnalyticMap& map,
                             const WeightedCouple& e_couple, CSpan h, int n);

/// All components of degree 0..max_degree from a single set of contour
/// samples.
std::vector<Extraction> extract_components(const AnalyticMap& map,
                                           const WeightedCouple& e_couple,
                                           CSpan h, int max_degree, double rho,
                                           int nodes);

/// The degree-n homogeneous component of a map, realized by contour
/// extraction on demand.
class HomogeneousComponent {
 public:
  /// Without an explicit contour radius each evaluation uses
  /// R / (2 max(||h||_0, ||h||_1)), keeping the contour inside both balls.
  HomogeneousComponent(AnalyticMap map, WeightedCouple e_couple, int degree,
                       std::optional<int> node_count = std::nullopt,
                       std::optional<double> contour_radius = std::nullopt);

  Extraction extract(CSpan h) const;
  CVector operator()(CSpan h) const { return extract(h).value; }

  int degree() const { return degree_; }
  int node_count() const { return nodes_; }
  std::optional<double> contour_radius() const { return rho_; }
  const AnalyticMap& map() const { return map_; }
  const WeightedCouple& e_couple() const { return e_; }

 private:
  AnalyticMap map_;
  WeightedCouple e_;
  int degree_;
  int nodes_;
  std::optional<double> rho_;
};

struct RhoIndependence {
  double max_deviation = 0.0;  // H_0 norm, worst pair
  double allowed = 0.0;        // combined alias bounds plus slack, worst pair
  bool consistent = true;      // every pair within its own allowance
};

RhoIndependence rho_independence_check(const AnalyticMap& map,
                                       const WeightedCouple& e_couple,
                                       const WeightedCouple& h_couple, CSpan h,
                                       int n, std::span<const double> rhos,
                                       int nodes);

struct ComponentBound {
  double worst_ratio0 = 0.0;
  double worst_ratio1 = 0.0;
  double worst_ratio() const { return std::max(worst_ratio0, worst_ratio1); }
  /// Largest alias bound relative to the estimate it is compared with.
  double max_relative_alias = 0.0;
};

/// Worst ||P_n(h)||_{H_i} / (C_i R^(1-n) ||h||^n_{E_i}) over the samples.
ComponentBound component_norm_bound(const HomogeneousComponent& component,
                                    const WeightedCouple& h_couple,
                                    std::span<const CVector> samples);

struct SeriesResult {
  CVector value;
  /// C_0 R (||h||_0/R)^(cap+1) / (1 - ||h||_0/R)
  double tail_bound = 0.0;
  double alias_bound = 0.0;  // summed over extracted degrees
  int nodes = 0;
};

/// Partial sum of P_0(h) + ... + P_cap(h) with its certified H_0 error bound
/// tail_bound + alias_bound.
SeriesResult truncated_series(const AnalyticMap& map,
                              const WeightedCouple& e_couple, CSpan h,
                              int degree_cap,
                              std::optional<int> nodes = std::nullopt);

}  // namespace holointerp
