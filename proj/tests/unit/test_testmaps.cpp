#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "holointerp/analytic.hpp"
#include "holointerp/testmaps.hpp"
#include "support/generators.hpp"

namespace holointerp {
namespace {

using testing::Gen;
using testing::max_abs_diff;
using testing::rel_diff;

std::vector<OracleMap> homogeneous_catalog(Gen& gen, std::size_t dim) {
  CVector a(dim), b(dim);
  for (auto& z : a) z = gen.complex_gauss();
  for (auto& z : b) z = gen.complex_gauss();
  return {OracleMap::diagonal_linear(gen.weights(dim, 0.1, 10.0)),
          OracleMap::diagonal_monomial(2, gen.weights(dim, 0.1, 10.0)),
          OracleMap::diagonal_monomial(3, gen.weights(dim, 0.1, 10.0)),
          OracleMap::rank_one_quadratic(a, b)};
}

double sample_ratio(const OracleMap& m, const WeightedCouple& e,
                    const WeightedCouple& h, int side, CSpan x, int k) {
  return h.endpoint_norm(side, m(x)) / std::pow(e.endpoint_norm(side, x), k);
}

TEST(OracleConstants, DiagonalLinearIsMaxEntry) {
  const WeightedCouple c({1, 2, 3}, {4, 5, 6});
  const auto m = OracleMap::diagonal_linear({0.5, -3.0, 2.0});
  const auto k = *m.oracle_constants(c, c, 1.7);
  EXPECT_DOUBLE_EQ(k.c0, 3.0);
  EXPECT_DOUBLE_EQ(k.c1, 3.0);
}

TEST(OracleConstants, MonomialExample) {
  const WeightedCouple e({1, 2}, {1, 2});
  const WeightedCouple h({1, 8}, {1, 8});
  const auto m = OracleMap::diagonal_monomial(2, {1.0, 1.0});
  const auto k = *m.homogeneous_constants(e, h);
  EXPECT_DOUBLE_EQ(k.c0, 2.0);
  EXPECT_DOUBLE_EQ(k.c1, 2.0);
  // Ball form carries R^(p-1).
  const auto b = *m.oracle_constants(e, h, 0.5);
  EXPECT_DOUBLE_EQ(b.c0, 1.0);
}

TEST(OracleConstants, GeometricAgainstScalarGridSearch) {
  // Brute force over a polar grid of the complex disk |x| <= R / w for each
  // coordinate of a one-dimensional slice.
  Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 4;
    const auto e = gen.couple(dim);
    const auto h = gen.couple(dim);
    const double radius = gen.uniform(0.2, 3.0);
    std::vector<double> scales(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      scales[k] = radius / std::min(e.w0()[k], e.w1()[k]) * gen.uniform(1.1, 5.0);
    }
    const auto m = OracleMap::componentwise_geometric(scales);
    const auto c = *m.oracle_constants(e, h, radius);
    for (int side = 0; side < 2; ++side) {
      const auto& w = side == 0 ? e.w0() : e.w1();
      const auto& v = side == 0 ? h.w0() : h.w1();
      double best = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double reach = radius / w[k];
        for (int i = 1; i <= 200; ++i) {
          const double r = reach * i / 200.0;
          for (int j = 0; j < 64; ++j) {
            const Complex x = std::polar(r, 2.0 * std::numbers::pi * j / 64.0);
            best = std::max(best, v[k] * std::abs(x / (1.0 - x / scales[k])) / (w[k] * r));
          }
        }
      }
      EXPECT_LE(rel_diff(side == 0 ? c.c0 : c.c1, best), 1e-12);
    }
  }
}

TEST(OracleConstants, GeometricRejectsPoleInBall) {
  const WeightedCouple c({1, 1}, {1, 1});
  const auto m = OracleMap::componentwise_geometric({1.0, 3.0});
  EXPECT_THROW(m.oracle_constants(c, c, 1.0), DomainError);
  EXPECT_NO_THROW(m.oracle_constants(c, c, 0.9));
}

TEST(OracleConstants, DimensionMismatch) {
  const WeightedCouple c({1, 1}, {1, 1});
  const auto m = OracleMap::diagonal_linear({1, 1, 1});
  EXPECT_THROW(m.oracle_constants(c, c, 1.0), InvalidArgument);
}

TEST(OracleConstants, SupremumSoundness) {
  Gen gen(5);
  const std::size_t dim = 6;
  const auto e = gen.couple(dim);
  const auto h = gen.couple(dim);
  for (const auto& m : homogeneous_catalog(gen, dim)) {
    const auto k = *m.homogeneous_constants(e, h);
    const int p = *m.homogeneous_degree();
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const auto x = gen.vector(dim);
      if (euclidean_norm(x) == 0.0) continue;
      worst = std::max(worst, sample_ratio(m, e, h, 0, x, p) / k.c0);
      worst = std::max(worst, sample_ratio(m, e, h, 1, x, p) / k.c1);
    }
    EXPECT_LE(worst, 1.0 + 1e-12) << to_string(m.kind());
  }
  std::vector<double> scales(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    scales[k] = 2.0 / std::min(e.w0()[k], e.w1()[k]);
  }
  const auto geo = OracleMap::componentwise_geometric(scales);
  const auto c = *geo.oracle_constants(e, h, 1.0);
  for (int i = 0; i < 10000; ++i) {
    auto x = gen.vector(dim);
    const int side = i % 2;
    const double n = e.endpoint_norm(side, x);
    if (n == 0.0) continue;
    for (auto& z : x) z *= gen.uniform(0.0, 1.0) / n;
    if (euclidean_norm(x) == 0.0) continue;
    EXPECT_LE(sample_ratio(geo, e, h, side, x, 1), (side == 0 ? c.c0 : c.c1) * (1 + 1e-12));
  }
}

TEST(OracleConstants, MaximizerIsTight) {
  Gen gen(7);
  const std::size_t dim = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = gen.couple(dim);
    const auto h = gen.couple(dim);
    const double radius = gen.uniform(0.5, 2.0);
    auto maps = homogeneous_catalog(gen, dim);
    std::vector<double> scales(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      scales[k] = radius / std::min(e.w0()[k], e.w1()[k]) * gen.uniform(1.1, 3.0);
    }
    maps.push_back(OracleMap::componentwise_geometric(scales));
    for (const auto& m : maps) {
      const auto c = *m.oracle_constants(e, h, radius);
      for (int side = 0; side < 2; ++side) {
        const auto x = m.maximizer(e, h, side, radius);
        EXPECT_LE(std::abs(e.endpoint_norm(side, x) - radius), 1e-12 * radius);
        const double got = sample_ratio(m, e, h, side, x, 1);
        EXPECT_LE(rel_diff(got, side == 0 ? c.c0 : c.c1), 1e-9) << to_string(m.kind());
      }
    }
  }
}

TEST(OracleMap, Homogeneity) {
  Gen gen(11);
  for (const auto& m : homogeneous_catalog(gen, 5)) {
    const int p = *m.homogeneous_degree();
    for (int i = 0; i < 100; ++i) {
      const auto x = gen.vector(5);
      const Complex lambda = gen.complex_gauss();
      CVector lx = x;
      for (auto& z : lx) z *= lambda;
      auto expect = m(x);
      for (auto& z : expect) z *= std::pow(lambda, p);
      const double scale = 1.0 + euclidean_norm(expect);
      EXPECT_LE(max_abs_diff(m(lx), expect), 1e-12 * scale);
    }
  }
}

TEST(OracleMap, KnownComponentsMatchExtraction) {
  Gen gen(13);
  const std::size_t dim = 5;
  const WeightedCouple e(constant_weights(dim, 1.0), constant_weights(dim, 1.0));
  auto maps = homogeneous_catalog(gen, dim);
  maps.push_back(OracleMap::diagonal_monomial(6, gen.weights(dim, 0.5, 2.0)));
  for (const auto& m : maps) {
    const auto am = m.to_analytic_map(e, e, 1.0);
    const int p = *m.polynomial_degree();
    auto h = gen.vector(dim);
    const double hn = e.norm0(h);
    for (auto& z : h) z *= 0.5 / hn;
    for (int n = 0; n <= p; ++n) {
      const auto ex = extract_component(am, e, h, n, 1.0, p + 1);
      const auto known = m.known_component(h, n);
      EXPECT_LE(max_abs_diff(ex.value, known), 1e-11 * (1.0 + euclidean_norm(known)))
          << to_string(m.kind()) << " n=" << n;
    }
  }
  const auto geo = OracleMap::componentwise_geometric(constant_weights(dim, 2.0));
  const auto ag = geo.to_analytic_map(e, e, 1.0);
  auto h = gen.vector(dim);
  const double hn = e.norm0(h);
  for (auto& z : h) z *= 0.5 / hn;
  for (int n = 0; n <= 8; ++n) {
    const auto ex = extract_component(ag, e, h, n);
    EXPECT_LE(max_abs_diff(ex.value, geo.known_component(h, n)), ex.alias_bound + 1e-13);
  }
}

TEST(OracleMap, JsonRoundTrip) {
  const auto j = nlohmann::json::parse(R"({"kind": "rank_one_quadratic",
      "a": [[1, 2], 3], "b": [0, [0, 1]]})");
  const auto m = OracleMap::from_json(j, 2);
  EXPECT_EQ(m.kind(), OracleKind::rank_one_quadratic);
  EXPECT_EQ(m(CVector{1.0, 0.0}), (CVector{0.0, Complex(-3.0, 4.0) * Complex(0, 1)}));
  const auto again = OracleMap::from_json(m.to_json(), 2);
  EXPECT_EQ(again.to_json(), m.to_json());

  const auto d = OracleMap::from_json(nlohmann::json{{"kind", "diagonal_monomial"}}, 3);
  EXPECT_EQ(d.homogeneous_degree(), 2);
  EXPECT_EQ(d.in_dim(), 3u);
  const auto g = OracleMap::from_json(nlohmann::json{{"kind", "componentwise_geometric"}}, 3);
  EXPECT_EQ(g.homogeneous_degree(), std::nullopt);
  EXPECT_THROW(OracleMap::from_json(nlohmann::json{{"kind", "nope"}}, 3), InvalidArgument);
  EXPECT_THROW(OracleMap::from_json(nlohmann::json::object(), 3), InvalidArgument);
}

TEST(OracleMap, ConvolutionHasNoOracle) {
  const auto m = OracleMap::cauchy_convolution_truncated(4);
  const WeightedCouple c(constant_weights(4, 1.0), constant_weights(4, 1.0));
  EXPECT_FALSE(m.has_oracle());
  EXPECT_EQ(m.oracle_constants(c, c, 1.0), std::nullopt);
  EXPECT_THROW(m.to_analytic_map(c, c, 1.0), InvalidArgument);
  EXPECT_NO_THROW(m.to_analytic_map(c, c, 1.0, EndpointConstants{1.0, 1.0}));
  // (1 + 2t)^2 truncated at degree 3.
  EXPECT_EQ(m(CVector{1.0, 2.0, 0.0, 0.0}), (CVector{1.0, 4.0, 4.0, 0.0}));
}

}  // namespace
}  // namespace holointerp
