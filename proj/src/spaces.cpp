#include "holointerp/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

namespace holointerp {

namespace {

double weighted_norm(const std::vector<double>& w, CSpan x) {
  if (x.size() != w.size()) {
    throw InvalidArgument("dimension mismatch: vector has " +
                          std::to_string(x.size()) + " entries, couple has " +
                          std::to_string(w.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double a = w[k] * std::abs(x[k]);
    sum += a * a;
  }
  return std::sqrt(sum);
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw InvalidArgument("theta must lie in [0, 1], got " +
                          std::to_string(theta));
  }
}

void check_weights(const std::vector<double>& w, const char* name) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!(std::isfinite(w[k]) && w[k] > 0.0)) {
      throw InvalidArgument(std::string(name) + "[" + std::to_string(k) +
                            "] must be finite and strictly positive");
    }
  }
}

}  // namespace

double euclidean_norm(CSpan x) {
  double sum = 0.0;
  for (const auto& v : x) sum += std::norm(v);
  return std::sqrt(sum);
}

CVector basis_vector(std::size_t dim, std::size_t k, Complex scale) {
  CVector e(dim, Complex{0.0, 0.0});
  e.at(k) = scale;
  return e;
}

WeightedCouple::WeightedCouple(std::vector<double> w0, std::vector<double> w1)
    : w0_(std::move(w0)), w1_(std::move(w1)), embed_const_(0.0) {
  if (w0_.empty()) throw InvalidArgument("couple dimension must be positive");
  if (w0_.size() != w1_.size()) {
    throw InvalidArgument("w0 and w1 must have equal length");
  }
  check_weights(w0_, "w0");
  check_weights(w1_, "w1");
  for (std::size_t k = 0; k < w0_.size(); ++k) {
    embed_const_ = std::max(embed_const_, w0_[k] / w1_[k]);
  }
}

double WeightedCouple::norm0(CSpan x) const { return weighted_norm(w0_, x); }
double WeightedCouple::norm1(CSpan x) const { return weighted_norm(w1_, x); }

double WeightedCouple::endpoint_norm(int side, CSpan x) const {
  return side == 0 ? norm0(x) : norm1(x);
}

double ThetaNorm::operator()(CSpan x) const { return weighted_norm(weights, x); }

ThetaNorm theta_weights(const WeightedCouple& couple, double theta) {
  check_theta(theta);
  if (theta == 0.0) return {theta, couple.w0()};
  if (theta == 1.0) return {theta, couple.w1()};
  std::vector<double> w(couple.dim());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::pow(couple.w0()[k], 1.0 - theta) *
           std::pow(couple.w1()[k], theta);
  }
  return {theta, std::move(w)};
}

double theta_norm(const WeightedCouple& couple, double theta, CSpan x) {
  check_theta(theta);
  if (theta == 0.0) return couple.norm0(x);
  if (theta == 1.0) return couple.norm1(x);
  return theta_weights(couple, theta)(x);
}

NormalizedCouple normalize_couple(const WeightedCouple& couple) {
  const double c = couple.embed_const();
  // Rescaling leaves c within a few ulps of 1; treat that as normalized.
  if (std::abs(c - 1.0) <= 1e-14) return {couple, 1.0};
  std::vector<double> w1 = couple.w1();
  for (auto& w : w1) w *= c;
  return {WeightedCouple(couple.w0(), std::move(w1)), c};
}

std::vector<InequalityRow> interpolation_inequality_check(
    const WeightedCouple& couple, CSpan x, std::span<const double> theta_grid,
    double tol) {
  const double n0 = couple.norm0(x);
  const double n1 = couple.norm1(x);
  if (n0 == 0.0) {
    throw InvalidArgument("interpolation inequality undefined for x = 0");
  }
  std::vector<InequalityRow> rows;
  rows.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    const double lhs = theta_norm(couple, theta, x);
    const double rhs = std::pow(n0, 1.0 - theta) * std::pow(n1, theta);
    const double ratio = lhs / rhs;
    rows.push_back({theta, ratio, ratio <= 1.0 + tol});
  }
  return rows;
}

std::vector<double> constant_weights(std::size_t dim, double value) {
  return std::vector<double>(dim, value);
}

std::vector<double> geometric_weights(std::size_t dim, double base,
                                      double ratio) {
  std::vector<double> w(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    w[k] = base * std::pow(ratio, static_cast<double>(k));
  }
  return w;
}

std::vector<double> sobolev_weights(std::size_t dim, double s) {
  std::vector<double> w(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double kk = static_cast<double>(k);
    w[k] = std::pow(1.0 + kk * kk, s / 2.0);
  }
  return w;
}

std::vector<double> weights_from_json(const nlohmann::json& j,
                                      std::size_t dim) {
  if (j.is_array()) {
    auto w = j.get<std::vector<double>>();
    if (w.size() != dim) {
      throw InvalidArgument("weight array has " + std::to_string(w.size()) +
                            " entries, expected " + std::to_string(dim));
    }
    return w;
  }
  if (!j.is_object() || !j.contains("generator")) {
    throw InvalidArgument("weights must be an array or a generator object");
  }
  const auto name = j.at("generator").get<std::string>();
  if (name == "constant") return constant_weights(dim, j.value("value", 1.0));
  if (name == "geometric") {
    return geometric_weights(dim, j.value("base", 1.0), j.at("ratio").get<double>());
  }
  if (name == "sobolev") return sobolev_weights(dim, j.at("s").get<double>());
  throw InvalidArgument("unknown weight generator '" + name + "'");
}

WeightedCouple couple_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidArgument("couple must be a JSON object");
  std::size_t dim = 0;
  if (j.contains("dim")) {
    const auto d = j.at("dim").get<long long>();
    if (d < 1) throw InvalidArgument("dim must be positive");
    dim = static_cast<std::size_t>(d);
  } else if (j.contains("w0") && j.at("w0").is_array()) {
    dim = j.at("w0").size();
  } else {
    dim = kDefaultDimension;
  }
  WeightedCouple couple(weights_from_json(j.at("w0"), dim),
                        weights_from_json(j.at("w1"), dim));
  if (j.value("normalize", false)) return normalize_couple(couple).couple;
  return couple;
}

nlohmann::json couple_to_json(const WeightedCouple& couple) {
  return {{"dim", couple.dim()}, {"w0", couple.w0()}, {"w1", couple.w1()}};
}

}  // namespace holointerp
