#pragma once

#include <functional>
#include <vector>

#include "holointerp/analytic.hpp"
#include "holointerp/spaces.hpp"
#include "holointerp/types.hpp"

namespace holointerp {

/// A vector-valued function on the closed strip 0 <= Re z <= 1.
using StripEvaluable = std::function<CVector(Complex)>;

inline constexpr double kDefaultTHalfWidth = 10.0;
inline constexpr int kDefaultTSamples = 201;

/// Symmetric grid of `count` points on [-half_width, half_width]. An odd
/// count always contains t = 0; a single point is t = 0.
std::vector<double> symmetric_t_grid(int count = kDefaultTSamples,
                                     double half_width = kDefaultTHalfWidth);

/// f(z)_k = x_k r_k^(z - theta) exp(delta (z - theta)^2).
///
/// With delta = 0 the moduli |f(it)_k| and |f(1+it)_k| do not depend on t.
/// A positive delta makes f vanish along both boundary lines as |t| grows,
/// which is what membership in the strip space formally requires; it
/// changes the line suprema only through the factor exp(delta Re(z-theta)^2).
class StripFunction {
 public:
  StripFunction(double anchor_theta, CVector target, std::vector<double> ratios,
                double reg_delta = 0.0);

  CVector operator()(Complex z) const;

  double anchor_theta() const { return theta_; }
  const CVector& target() const { return target_; }
  const std::vector<double>& ratios() const { return ratios_; }
  double reg_delta() const { return delta_; }

  StripFunction scaled(Complex lambda) const;
  StripFunction with_delta(double delta) const;

 private:
  double theta_;
  CVector target_;
  std::vector<double> ratios_;
  std::vector<double> log_ratios_;
  double delta_;
};

struct LineSuprema {
  double line0 = 0.0;  // sup_t ||f(it)||_{X_0}
  double line1 = 0.0;  // sup_t ||f(1+it)||_{X_1}
  double norm() const { return std::max(line0, line1); }
};

LineSuprema line_suprema(const StripEvaluable& f, const WeightedCouple& couple,
                         std::span<const double> t_grid);

/// max{ sup_t ||f(it)||_0, sup_t ||f(1+it)||_1 } over a symmetric t grid.
double f_space_norm(const StripEvaluable& f, const WeightedCouple& couple,
                    int t_samples = kDefaultTSamples);
double f_space_norm(const StripFunction& f, const WeightedCouple& couple,
                    int t_samples = kDefaultTSamples);

/// The minimizer of the strip-space norm among functions with f(theta) = x:
/// ratios r_k = w0_k / w1_k. Its norm equals theta_norm(couple, theta, x).
StripFunction optimal_strip_function(const WeightedCouple& couple,
                                     double theta, CSpan x,
                                     double reg_delta = 0.0);

/// g(z) = m0^(z-1) m1^(-z) Phi(f(z)) for a homogeneous map Phi of degree k.
class ComparisonFunction {
 public:
  ComparisonFunction(StripFunction f, AnalyticMap map, double m0, double m1);

  CVector operator()(Complex z) const;

  int degree() const { return degree_; }
  const StripFunction& strip_function() const { return f_; }
  const AnalyticMap& map() const { return map_; }

 private:
  StripFunction f_;
  AnalyticMap map_;
  double log_m0_;
  double log_m1_;
  int degree_;
};

ComparisonFunction lemma_comparison_function(const StripFunction& f,
                                             const AnalyticMap& map, double m0,
                                             double m1);

struct BoundaryCheck {
  /// max_t ||g(it)||_{H_0} / ||f(it)||_{E_0}^k
  double worst_ratio0 = 0.0;
  /// max_t ||g(1+it)||_{H_1} / ||f(1+it)||_{E_1}^k
  double worst_ratio1 = 0.0;
  double worst_ratio() const { return std::max(worst_ratio0, worst_ratio1); }
};

BoundaryCheck boundary_inequalities(const ComparisonFunction& g,
                                    const WeightedCouple& e_couple,
                                    const WeightedCouple& h_couple,
                                    std::span<const double> t_grid);

/// Three-lines check: max over theta, t of
///   ||g(theta + it)||_theta / (M(0)^(1-theta) M(1)^theta)
/// where M(j) is the sampled supremum on line Re z = j and the interior
/// norm is that of the interpolation space at theta. Scalar functions use a
/// one-dimensional couple with unit weights.
double three_lines_check(const StripEvaluable& g, const WeightedCouple& couple,
                         std::span<const double> theta_grid,
                         std::span<const double> t_grid);

}  // namespace holointerp
