#include "holointerp/strip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace holointerp {

std::vector<double> symmetric_t_grid(int count, double half_width) {
  if (count < 1) throw InvalidArgument("t grid needs at least one sample");
  if (count == 1) return {0.0};
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    t[static_cast<std::size_t>(i)] =
        -half_width + 2.0 * half_width * i / (count - 1);
  }
  if (count % 2 == 1) t[static_cast<std::size_t>(count / 2)] = 0.0;
  return t;
}

StripFunction::StripFunction(double anchor_theta, CVector target,
                             std::vector<double> ratios, double reg_delta)
    : theta_(anchor_theta),
      target_(std::move(target)),
      ratios_(std::move(ratios)),
      delta_(reg_delta) {
  if (!(theta_ >= 0.0 && theta_ <= 1.0)) {
    throw InvalidArgument("anchor theta must lie in [0, 1]");
  }
  if (target_.size() != ratios_.size()) {
    throw InvalidArgument("target and ratios must have equal length");
  }
  if (!(delta_ >= 0.0)) throw InvalidArgument("reg_delta must be nonnegative");
  log_ratios_.reserve(ratios_.size());
  for (double r : ratios_) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw InvalidArgument("strip ratios must be positive and finite");
    }
    log_ratios_.push_back(std::log(r));
  }
}

CVector StripFunction::operator()(Complex z) const {
  const Complex s = z - theta_;
  const Complex reg = delta_ == 0.0 ? Complex{1.0, 0.0} : std::exp(delta_ * s * s);
  CVector out(target_.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = target_[k] * std::exp(s * log_ratios_[k]) * reg;
  }
  return out;
}

StripFunction StripFunction::scaled(Complex lambda) const {
  CVector t = target_;
  for (auto& v : t) v *= lambda;
  return StripFunction(theta_, std::move(t), ratios_, delta_);
}

StripFunction StripFunction::with_delta(double delta) const {
  return StripFunction(theta_, target_, ratios_, delta);
}

LineSuprema line_suprema(const StripEvaluable& f, const WeightedCouple& couple,
                         std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidArgument("t grid must not be empty");
  LineSuprema s;
  for (double t : t_grid) {
    s.line0 = std::max(s.line0, couple.norm0(f(Complex{0.0, t})));
    s.line1 = std::max(s.line1, couple.norm1(f(Complex{1.0, t})));
  }
  return s;
}

double f_space_norm(const StripEvaluable& f, const WeightedCouple& couple,
                    int t_samples) {
  const auto grid = symmetric_t_grid(t_samples);
  return line_suprema(f, couple, grid).norm();
}

double f_space_norm(const StripFunction& f, const WeightedCouple& couple,
                    int t_samples) {
  if (f.target().size() != couple.dim()) {
    throw InvalidArgument("strip function dimension does not match couple");
  }
  return f_space_norm(StripEvaluable([&f](Complex z) { return f(z); }), couple,
                      t_samples);
}

StripFunction optimal_strip_function(const WeightedCouple& couple,
                                     double theta, CSpan x, double reg_delta) {
  if (x.size() != couple.dim()) {
    throw InvalidArgument("dimension mismatch between x and couple");
  }
  if (euclidean_norm(x) == 0.0) {
    throw InvalidArgument("optimal strip function needs a nonzero target");
  }
  std::vector<double> ratios(couple.dim());
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    ratios[k] = couple.w0()[k] / couple.w1()[k];
  }
  return StripFunction(theta, CVector(x.begin(), x.end()), std::move(ratios),
                       reg_delta);
}

ComparisonFunction::ComparisonFunction(StripFunction f, AnalyticMap map,
                                       double m0, double m1)
    : f_(std::move(f)), map_(std::move(map)), log_m0_(0.0), log_m1_(0.0),
      degree_(0) {
  if (!(m0 > 0.0) || !(m1 > 0.0)) {
    throw InvalidArgument("comparison constants m0, m1 must be positive");
  }
  if (!map_.homogeneous_degree()) {
    throw InvalidArgument("map '" + map_.name() +
                          "' is not flagged homogeneous");
  }
  if (map_.in_dim() != f_.target().size()) {
    throw InvalidArgument("strip function dimension does not match the map");
  }
  log_m0_ = std::log(m0);
  log_m1_ = std::log(m1);
  degree_ = *map_.homogeneous_degree();
}

CVector ComparisonFunction::operator()(Complex z) const {
  CVector y = map_(f_(z));
  const Complex factor = std::exp((z - 1.0) * log_m0_ - z * log_m1_);
  for (auto& v : y) v *= factor;
  return y;
}

ComparisonFunction lemma_comparison_function(const StripFunction& f,
                                             const AnalyticMap& map, double m0,
                                             double m1) {
  return ComparisonFunction(f, map, m0, m1);
}

BoundaryCheck boundary_inequalities(const ComparisonFunction& g,
                                    const WeightedCouple& e_couple,
                                    const WeightedCouple& h_couple,
                                    std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidArgument("t grid must not be empty");
  const int k = g.degree();
  const auto ratio = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  BoundaryCheck out;
  for (double t : t_grid) {
    const Complex z0{0.0, t};
    const Complex z1{1.0, t};
    const double f0 = std::pow(e_couple.norm0(g.strip_function()(z0)), k);
    const double f1 = std::pow(e_couple.norm1(g.strip_function()(z1)), k);
    out.worst_ratio0 = std::max(out.worst_ratio0, ratio(h_couple.norm0(g(z0)), f0));
    out.worst_ratio1 = std::max(out.worst_ratio1, ratio(h_couple.norm1(g(z1)), f1));
  }
  return out;
}

double three_lines_check(const StripEvaluable& g, const WeightedCouple& couple,
                         std::span<const double> theta_grid,
                         std::span<const double> t_grid) {
  if (theta_grid.empty() || t_grid.empty()) {
    throw InvalidArgument("three-lines check needs nonempty grids");
  }
  const LineSuprema m = line_suprema(g, couple, t_grid);
  double worst = 0.0;
  for (double theta : theta_grid) {
    const ThetaNorm norm = theta_weights(couple, theta);
    const double bound = std::pow(m.line0, 1.0 - theta) * std::pow(m.line1, theta);
    for (double t : t_grid) {
      const double v = norm(g(Complex{theta, t}));
      if (bound > 0.0) {
        worst = std::max(worst, v / bound);
      } else if (v > 0.0) {
        return std::numeric_limits<double>::infinity();
      }
    }
  }
  return worst;
}

}  // namespace holointerp
