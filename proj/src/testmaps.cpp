#include "holointerp/testmaps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

namespace holointerp {

namespace {

const std::vector<double>& side_weights(const WeightedCouple& c, int side) {
  return side == 0 ? c.w0() : c.w1();
}

CVector complex_array(const nlohmann::json& j) {
  CVector out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (v.is_array()) {
      out.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    } else {
      out.emplace_back(v.get<double>(), 0.0);
    }
  }
  return out;
}

nlohmann::json complex_to_json(const CVector& v) {
  auto arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

std::vector<double> real_params(const nlohmann::json& j, const char* key,
                                std::size_t dim, double fallback) {
  if (!j.contains(key)) return std::vector<double>(dim, fallback);
  const auto& p = j.at(key);
  if (p.is_number()) return std::vector<double>(dim, p.get<double>());
  return weights_from_json(p, dim);
}

}  // namespace

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::diagonal_linear: return "diagonal_linear";
    case OracleKind::diagonal_monomial: return "diagonal_monomial";
    case OracleKind::rank_one_quadratic: return "rank_one_quadratic";
    case OracleKind::componentwise_geometric: return "componentwise_geometric";
    case OracleKind::cauchy_convolution_truncated:
      return "cauchy_convolution_truncated";
  }
  return "unknown";
}

OracleKind oracle_kind_from_string(const std::string& name) {
  for (auto k : {OracleKind::diagonal_linear, OracleKind::diagonal_monomial,
                 OracleKind::rank_one_quadratic,
                 OracleKind::componentwise_geometric,
                 OracleKind::cauchy_convolution_truncated}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown map kind '" + name + "'");
}

OracleMap::OracleMap(OracleKind kind, std::size_t in_dim, std::size_t out_dim)
    : kind_(kind), in_dim_(in_dim), out_dim_(out_dim) {
  if (in_dim_ == 0 || out_dim_ == 0) {
    throw InvalidArgument("map dimensions must be positive");
  }
}

OracleMap OracleMap::diagonal_linear(std::vector<double> entries) {
  OracleMap m(OracleKind::diagonal_linear, entries.size(), entries.size());
  m.coeffs_ = std::move(entries);
  return m;
}

OracleMap OracleMap::diagonal_monomial(int power, std::vector<double> coeffs) {
  if (power < 1) throw InvalidArgument("monomial power must be at least 1");
  OracleMap m(OracleKind::diagonal_monomial, coeffs.size(), coeffs.size());
  m.power_ = power;
  m.coeffs_ = std::move(coeffs);
  return m;
}

OracleMap OracleMap::rank_one_quadratic(CVector a, CVector b) {
  OracleMap m(OracleKind::rank_one_quadratic, a.size(), b.size());
  m.power_ = 2;
  m.a_ = std::move(a);
  m.b_ = std::move(b);
  return m;
}

OracleMap OracleMap::componentwise_geometric(std::vector<double> scales) {
  for (double s : scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("geometric scales must be positive and finite");
    }
  }
  OracleMap m(OracleKind::componentwise_geometric, scales.size(), scales.size());
  m.coeffs_ = std::move(scales);
  return m;
}

OracleMap OracleMap::cauchy_convolution_truncated(std::size_t dim) {
  OracleMap m(OracleKind::cauchy_convolution_truncated, dim, dim);
  m.power_ = 2;
  return m;
}

OracleMap OracleMap::from_json(const nlohmann::json& j, std::size_t dim) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InvalidArgument("map descriptor needs a \"kind\" field");
  }
  switch (oracle_kind_from_string(j.at("kind").get<std::string>())) {
    case OracleKind::diagonal_linear:
      return diagonal_linear(real_params(j, "entries", dim, 1.0));
    case OracleKind::diagonal_monomial:
      return diagonal_monomial(j.value("power", 2),
                               real_params(j, "coeffs", dim, 1.0));
    case OracleKind::rank_one_quadratic: {
      CVector a = j.contains("a") ? complex_array(j.at("a"))
                                  : CVector(dim, Complex{1.0, 0.0});
      CVector b = j.contains("b") ? complex_array(j.at("b"))
                                  : basis_vector(dim, 0);
      if (a.size() != dim) throw InvalidArgument("rank_one_quadratic: a must have length dim");
      return rank_one_quadratic(std::move(a), std::move(b));
    }
    case OracleKind::componentwise_geometric:
      return componentwise_geometric(real_params(j, "scales", dim, 2.0));
    case OracleKind::cauchy_convolution_truncated:
      return cauchy_convolution_truncated(dim);
  }
  throw InvalidArgument("unhandled map kind");
}

nlohmann::json OracleMap::to_json() const {
  nlohmann::json j{{"kind", to_string(kind_)}};
  switch (kind_) {
    case OracleKind::diagonal_linear: j["entries"] = coeffs_; break;
    case OracleKind::diagonal_monomial:
      j["power"] = power_;
      j["coeffs"] = coeffs_;
      break;
    case OracleKind::rank_one_quadratic:
      j["a"] = complex_to_json(a_);
      j["b"] = complex_to_json(b_);
      break;
    case OracleKind::componentwise_geometric: j["scales"] = coeffs_; break;
    case OracleKind::cauchy_convolution_truncated: j["dim"] = in_dim_; break;
  }
  return j;
}

std::optional<int> OracleMap::homogeneous_degree() const {
  switch (kind_) {
    case OracleKind::diagonal_linear: return 1;
    case OracleKind::diagonal_monomial: return power_;
    case OracleKind::rank_one_quadratic:
    case OracleKind::cauchy_convolution_truncated: return 2;
    case OracleKind::componentwise_geometric: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> OracleMap::polynomial_degree() const {
  return homogeneous_degree();
}

CVector OracleMap::operator()(CSpan x) const {
  if (x.size() != in_dim_) {
    throw InvalidArgument(to_string(kind_) + ": expected dimension " +
                          std::to_string(in_dim_));
  }
  CVector y(out_dim_);
  switch (kind_) {
    case OracleKind::diagonal_linear:
      for (std::size_t k = 0; k < y.size(); ++k) y[k] = coeffs_[k] * x[k];
      break;
    case OracleKind::diagonal_monomial:
      for (std::size_t k = 0; k < y.size(); ++k) {
        Complex p = x[k];
        for (int i = 1; i < power_; ++i) p *= x[k];
        y[k] = coeffs_[k] * p;
      }
      break;
    case OracleKind::rank_one_quadratic: {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < x.size(); ++k) s += a_[k] * x[k];
      const Complex s2 = s * s;
      for (std::size_t k = 0; k < y.size(); ++k) y[k] = s2 * b_[k];
      break;
    }
    case OracleKind::componentwise_geometric:
      for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] = x[k] / (1.0 - x[k] / coeffs_[k]);
      }
      break;
    case OracleKind::cauchy_convolution_truncated:
      for (std::size_t k = 0; k < y.size(); ++k) {
        Complex s{0.0, 0.0};
        for (std::size_t i = 0; i <= k; ++i) s += x[i] * x[k - i];
        y[k] = s;
      }
      break;
  }
  return y;
}

void OracleMap::check_couples(const WeightedCouple& e,
                              const WeightedCouple& h) const {
  if (e.dim() != in_dim_ || h.dim() != out_dim_) {
    throw InvalidArgument(to_string(kind_) + ": couple dimensions (" +
                          std::to_string(e.dim()) + ", " +
                          std::to_string(h.dim()) + ") do not match map (" +
                          std::to_string(in_dim_) + ", " +
                          std::to_string(out_dim_) + ")");
  }
}

std::optional<EndpointConstants> OracleMap::homogeneous_constants(
    const WeightedCouple& e, const WeightedCouple& h) const {
  check_couples(e, h);
  EndpointConstants out;
  for (int side = 0; side < 2; ++side) {
    const auto& w = side_weights(e, side);
    const auto& v = side_weights(h, side);
    double m = 0.0;
    switch (kind_) {
      case OracleKind::diagonal_linear:
      case OracleKind::diagonal_monomial:
        // Sum of y_k^p is at most (sum y_k)^p, so the sup sits on a basis ray.
        for (std::size_t k = 0; k < in_dim_; ++k) {
          m = std::max(m, std::abs(coeffs_[k]) * v[k] /
                              std::pow(w[k], power_));
        }
        break;
      case OracleKind::rank_one_quadratic: {
        // Dual norm of x -> sum a_k x_k is (sum |a_k|^2 / w_k^2)^(1/2).
        double dual2 = 0.0;
        for (std::size_t k = 0; k < in_dim_; ++k) {
          dual2 += std::norm(a_[k]) / (w[k] * w[k]);
        }
        m = h.endpoint_norm(side, b_) * dual2;
        break;
      }
      case OracleKind::componentwise_geometric:
      case OracleKind::cauchy_convolution_truncated:
        return std::nullopt;
    }
    (side == 0 ? out.c0 : out.c1) = m;
  }
  return out;
}

std::optional<EndpointConstants> OracleMap::oracle_constants(
    const WeightedCouple& e, const WeightedCouple& h, double radius) const {
  check_couples(e, h);
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  if (kind_ == OracleKind::cauchy_convolution_truncated) return std::nullopt;
  if (kind_ != OracleKind::componentwise_geometric) {
    auto m = *homogeneous_constants(e, h);
    const double scale = std::pow(radius, power_ - 1);
    return EndpointConstants{m.c0 * scale, m.c1 * scale};
  }
  // |x_k| <= R / w_k on the ball and |1 - x_k/s_k| >= 1 - |x_k|/s_k, with
  // equality on the positive real basis ray at the boundary.
  EndpointConstants out;
  for (int side = 0; side < 2; ++side) {
    const auto& w = side_weights(e, side);
    const auto& v = side_weights(h, side);
    double c = 0.0;
    for (std::size_t k = 0; k < in_dim_; ++k) {
      const double reach = radius / (w[k] * coeffs_[k]);
      if (!(reach < 1.0)) {
        throw DomainError("componentwise_geometric: coordinate " +
                          std::to_string(k) + " pole inside the E_" +
                          std::to_string(side) + " ball of radius " +
                          std::to_string(radius));
      }
      c = std::max(c, v[k] / (w[k] * (1.0 - reach)));
    }
    (side == 0 ? out.c0 : out.c1) = c;
  }
  return out;
}

CVector OracleMap::maximizer(const WeightedCouple& e, const WeightedCouple& h,
                             int side, double radius) const {
  check_couples(e, h);
  const auto& w = side_weights(e, side);
  const auto& v = side_weights(h, side);
  if (kind_ == OracleKind::rank_one_quadratic) {
    CVector x(in_dim_);
    for (std::size_t k = 0; k < in_dim_; ++k) x[k] = std::conj(a_[k]) / (w[k] * w[k]);
    const double n = e.endpoint_norm(side, x);
    if (n == 0.0) throw InvalidArgument("rank_one_quadratic: a is zero");
    for (auto& z : x) z *= radius / n;
    return x;
  }
  if (kind_ == OracleKind::cauchy_convolution_truncated) {
    throw InvalidArgument("cauchy_convolution_truncated has no known maximizer");
  }
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t k = 0; k < in_dim_; ++k) {
    double val = 0.0;
    if (kind_ == OracleKind::componentwise_geometric) {
      val = v[k] / (w[k] * (1.0 - radius / (w[k] * coeffs_[k])));
    } else {
      val = std::abs(coeffs_[k]) * v[k] / std::pow(w[k], power_);
    }
    if (val > best_val) {
      best_val = val;
      best = k;
    }
  }
  return basis_vector(in_dim_, best, radius / w[best]);
}

CVector OracleMap::known_component(CSpan h, int n) const {
  if (n < 0) throw InvalidArgument("degree must be nonnegative");
  if (kind_ == OracleKind::componentwise_geometric) {
    CVector out(out_dim_);
    if (n == 0) return out;
    for (std::size_t k = 0; k < out_dim_; ++k) {
      Complex p = h[k];
      for (int i = 1; i < n; ++i) p *= h[k] / coeffs_[k];
      out[k] = p;
    }
    return out;
  }
  if (homogeneous_degree() == n) return (*this)(h);
  return CVector(out_dim_);
}

AnalyticMap OracleMap::to_analytic_map(
    const WeightedCouple& e, const WeightedCouple& h, double radius,
    std::optional<EndpointConstants> constants) const {
  check_couples(e, h);
  if (!constants) constants = oracle_constants(e, h, radius);
  if (!constants) {
    throw InvalidArgument(to_string(kind_) +
                          " has no closed-form constants; supply estimates");
  }
  AnalyticMap::Options opts;
  opts.radius = radius;
  opts.c0 = constants->c0;
  opts.c1 = constants->c1;
  opts.maps_zero_to_zero = true;
  opts.reentrant = true;
  opts.homogeneous_degree = homogeneous_degree();
  opts.name = to_string(kind_);
  OracleMap self = *this;
  return AnalyticMap([self](CSpan x) { return self(x); }, in_dim_, out_dim_,
                     std::move(opts));
}

}  // namespace holointerp
