#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "holointerp/types.hpp"

namespace holointerp {

inline constexpr std::size_t kDefaultDimension = 64;
inline constexpr double kDefaultNormTolerance = 1e-12;

/// A pair of diagonal weighted-l2 norms on C^N:
///   ||x||_0^2 = sum_k w0_k^2 |x_k|^2,   ||x||_1^2 = sum_k w1_k^2 |x_k|^2.
///
/// Every intermediate complex-interpolation norm of such a couple is again
/// diagonal, with weights w0_k^(1-theta) * w1_k^theta. Instances are
/// immutable once constructed.
class WeightedCouple {
 public:
  WeightedCouple(std::vector<double> w0, std::vector<double> w1);

  std::size_t dim() const { return w0_.size(); }
  const std::vector<double>& w0() const { return w0_; }
  const std::vector<double>& w1() const { return w1_; }

  /// Smallest C with ||x||_0 <= C ||x||_1, i.e. max_k w0_k / w1_k.
  double embed_const() const { return embed_const_; }

  double norm0(CSpan x) const;
  double norm1(CSpan x) const;
  /// Endpoint norm, side 0 or 1.
  double endpoint_norm(int side, CSpan x) const;

  bool operator==(const WeightedCouple&) const = default;

 private:
  std::vector<double> w0_;
  std::vector<double> w1_;
  double embed_const_;
};

/// Diagonal weights of the interpolation space at a fixed theta.
struct ThetaNorm {
  double theta;
  std::vector<double> weights;

  double operator()(CSpan x) const;
};

ThetaNorm theta_weights(const WeightedCouple& couple, double theta);

/// ||x||_theta for the couple. Endpoints use the endpoint weights verbatim.
double theta_norm(const WeightedCouple& couple, double theta, CSpan x);

struct NormalizedCouple {
  WeightedCouple couple;
  /// Factor applied to w1 (the original embedding constant).
  double factor;
};

/// Rescales w1 by the embedding constant so that ||x||_0 <= ||x||_1 holds
/// with constant exactly one. Constants measured against the rescaled E_1
/// norm must be divided by `factor` to return to the original norm.
NormalizedCouple normalize_couple(const WeightedCouple& couple);

struct InequalityRow {
  double theta;
  double ratio;  // ||x||_theta / (||x||_0^(1-theta) ||x||_1^theta)
  bool holds;
};

/// Checks ||x||_theta <= ||x||_0^(1-theta) ||x||_1^theta (1 + tol) on a grid.
std::vector<InequalityRow> interpolation_inequality_check(
    const WeightedCouple& couple, CSpan x, std::span<const double> theta_grid,
    double tol = kDefaultNormTolerance);

// Weight generators addressable by name.

std::vector<double> constant_weights(std::size_t dim, double value);
/// w_k = base * ratio^k
std::vector<double> geometric_weights(std::size_t dim, double base,
                                      double ratio);
/// w_k = (1 + k^2)^(s/2)
std::vector<double> sobolev_weights(std::size_t dim, double s);

/// Builds a weight sequence from {"generator": name, ...params} or a plain
/// array of numbers.
std::vector<double> weights_from_json(const nlohmann::json& j,
                                      std::size_t dim);

/// {"dim": N, "w0": [...], "w1": [...]}; w0/w1 may also be generator
/// objects. An optional "normalize": true applies normalize_couple.
WeightedCouple couple_from_json(const nlohmann::json& j);
nlohmann::json couple_to_json(const WeightedCouple& couple);

}  // namespace holointerp
