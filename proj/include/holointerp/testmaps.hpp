#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "holointerp/analytic.hpp"
#include "holointerp/spaces.hpp"
#include "holointerp/types.hpp"

namespace holointerp {

enum class OracleKind {
  diagonal_linear,
  diagonal_monomial,
  rank_one_quadratic,
  componentwise_geometric,
  cauchy_convolution_truncated,
};

std::string to_string(OracleKind kind);
OracleKind oracle_kind_from_string(const std::string& name);

/// Endpoint constants: C_0, C_1 (ball form) or M_0, M_1 (homogeneous form).
struct EndpointConstants {
  double c0 = 0.0;
  double c1 = 0.0;
};

/// Built-in maps whose endpoint constants are known in closed form.
///
///   diagonal_linear           Phi(x)_k = a_k x_k
///   diagonal_monomial         Phi(x)_k = c_k x_k^p
///   rank_one_quadratic        Phi(x)   = (sum_k a_k x_k)^2 b
///   componentwise_geometric   Phi(x)_k = x_k / (1 - x_k / s_k)
///   cauchy_convolution_truncated
///                             Phi(x)_k = sum_{i+j=k} x_i x_j, k < N
///
/// The last kind has no closed-form constant.
class OracleMap {
 public:
  static OracleMap diagonal_linear(std::vector<double> entries);
  static OracleMap diagonal_monomial(int power, std::vector<double> coeffs);
  static OracleMap rank_one_quadratic(CVector a, CVector b);
  static OracleMap componentwise_geometric(std::vector<double> scales);
  static OracleMap cauchy_convolution_truncated(std::size_t dim);

  /// {"kind": name, ...params}; `dim` sizes defaulted parameter arrays.
  static OracleMap from_json(const nlohmann::json& j, std::size_t dim);
  nlohmann::json to_json() const;

  OracleKind kind() const { return kind_; }
  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  std::optional<int> homogeneous_degree() const;
  /// Highest nonzero homogeneous degree for polynomial kinds.
  std::optional<int> polynomial_degree() const;
  bool has_oracle() const {
    return kind_ != OracleKind::cauchy_convolution_truncated;
  }

  CVector operator()(CSpan x) const;

  /// C_i(R) = sup over B_i(0,R) of ||Phi(x)||_{H_i} / ||x||_{E_i}.
  std::optional<EndpointConstants> oracle_constants(
      const WeightedCouple& e_couple, const WeightedCouple& h_couple,
      double radius) const;

  /// M_i = sup ||Phi(x)||_{H_i} / ||x||_{E_i}^k for homogeneous kinds.
  std::optional<EndpointConstants> homogeneous_constants(
      const WeightedCouple& e_couple, const WeightedCouple& h_couple) const;

  /// A point of the closed E_side ball of radius R at which the ball
  /// constant of that side is attained.
  CVector maximizer(const WeightedCouple& e_couple,
                    const WeightedCouple& h_couple, int side,
                    double radius) const;

  /// Exact P_n(h).
  CVector known_component(CSpan h, int n) const;

  /// Wraps the map with ball constants at `radius` (oracle ones unless
  /// `constants` is given).
  AnalyticMap to_analytic_map(
      const WeightedCouple& e_couple, const WeightedCouple& h_couple,
      double radius,
      std::optional<EndpointConstants> constants = std::nullopt) const;

 private:
  OracleMap(OracleKind kind, std::size_t in_dim, std::size_t out_dim);
  void check_couples(const WeightedCouple& e, const WeightedCouple& h) const;

  OracleKind kind_;
  std::size_t in_dim_;
  std::size_t out_dim_;
  int power_ = 1;
  std::vector<double> coeffs_;  // entries, monomial coefficients, or scales
  CVector a_;
  CVector b_;
};

}  // namespace holointerp
