#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holointerp/analytic.hpp"
#include "holointerp/spaces.hpp"
#include "holointerp/types.hpp"

namespace holointerp {

inline constexpr double kExactTolerance = 1e-9;
inline constexpr double kExtractedTolerance = 1e-6;

/// {0, 0.1, ..., 1} together with 1/3 and 1/2, sorted and deduplicated.
std::vector<double> default_theta_grid();

struct BoundSpec {
  double c0 = 1.0;
  double c1 = 1.0;
  double radius = 1.0;
  std::optional<double> inner_radius;
  double theta = 0.0;
  std::optional<int> degree;
};

/// c0^(1-theta) c1^theta; requires a degree (homogeneous case).
double lemma_bound(const BoundSpec& spec);

/// c0^(1-theta) c1^theta R / (R - r); requires 0 < r < R.
double theorem1_bound(const BoundSpec& spec);

enum class Provenance { oracle, declared, empirical };
std::string to_string(Provenance p);

struct ReportRow {
  double theta = 0.0;
  std::int64_t sample_id = 0;
  int degree = -1;  // -1 when the row has no degree
  double lhs_norm = 0.0;
  double rhs_bound = 0.0;
  double ratio = 0.0;
};

/// Rows of one verification sweep, sorted by (theta, sample_id, degree).
///
/// pass <=> worst_ratio <= 1 + tolerance (and, for two-sided equality
/// checks, min_ratio >= 1 - tolerance). Reports built on empirically
/// estimated constants are advisory and never gate a run.
struct VerificationReport {
  std::string suite;
  std::vector<ReportRow> rows;
  double worst_ratio = 0.0;
  double min_ratio = 0.0;
  double tolerance = kExactTolerance;
  bool two_sided = false;
  bool pass = true;
  Provenance provenance = Provenance::oracle;

  bool advisory() const { return provenance == Provenance::empirical; }
  /// Sorts the rows and recomputes worst_ratio, min_ratio, and pass.
  void finalize();
};

struct SamplerOptions {
  std::size_t random_count = 10000;
  std::uint64_t seed = 0;
  bool include_basis = true;
  bool include_pairs = true;
};

/// Seeded sample directions for verification sweeps.
///
/// Ids [0, N) are basis vectors, the next N(N-1)/2 are pairwise sums of
/// basis vectors, and the rest are i.i.d. complex Gaussian directions. Each
/// random sample draws from a generator seeded by (seed, theta index, id),
/// so a sample does not depend on which worker produces it.
class Sampler {
 public:
  explicit Sampler(SamplerOptions options = {});

  std::size_t deterministic_count(std::size_t dim) const;
  std::size_t size(std::size_t dim) const;

  struct Draw {
    CVector direction;
    /// Fraction of the target radius, uniform in (0, 1]; one for the
    /// deterministic samples.
    double radius_fraction = 1.0;
  };
  Draw draw(std::size_t dim, std::size_t theta_index, std::size_t id) const;

  const SamplerOptions& options() const { return opts_; }

 private:
  SamplerOptions opts_;
};

struct SweepOptions {
  double tolerance = kExactTolerance;
  Provenance provenance = Provenance::oracle;
  int workers = 1;
};

/// Ratios ||Phi(x)||_{H_theta} / (m0^(1-theta) m1^theta ||x||_{E_theta}^k)
/// for a homogeneous map of degree k.
VerificationReport verify_lemma(const AnalyticMap& map,
                                const WeightedCouple& e_couple,
                                const WeightedCouple& h_couple, double m0,
                                double m1, std::span<const double> theta_grid,
                                const Sampler& sampler,
                                SweepOptions options = {});

/// Lemma sweep for an extracted component. The tolerance is widened by the
/// largest relative alias bound met in the sweep.
VerificationReport verify_lemma(
    const HomogeneousComponent& component, const WeightedCouple& h_couple,
    double m0, double m1, std::span<const double> theta_grid,
    const Sampler& sampler,
    SweepOptions options = {kExtractedTolerance, Provenance::oracle, 1});

/// Ratios ||Phi(x)||_{H_theta} / (theorem1_bound * ||x||_{E_theta}) for x in
/// the E_theta ball of radius spec.inner_radius.
VerificationReport verify_theorem1(const AnalyticMap& map,
                                   const WeightedCouple& e_couple,
                                   const WeightedCouple& h_couple,
                                   const BoundSpec& spec,
                                   std::span<const double> theta_grid,
                                   const Sampler& sampler,
                                   SweepOptions options = {});

struct EstimatedConstants {
  double c0 = 0.0;
  double c1 = 0.0;
  Provenance provenance = Provenance::empirical;
};

/// Sampled sup of ||Phi(x)||_{H_i} / ||x||_{E_i} over the E_i ball of the
/// given radius. A lower estimate of the true constants.
EstimatedConstants estimate_constants(const AnalyticMap& map,
                                      const WeightedCouple& e_couple,
                                      const WeightedCouple& h_couple,
                                      double radius, const Sampler& sampler,
                                      std::size_t budget);

/// Same, for the homogeneous constants sup ||Phi(x)||_{H_i} / ||x||^k.
EstimatedConstants estimate_homogeneous_constants(
    const AnalyticMap& map, const WeightedCouple& e_couple,
    const WeightedCouple& h_couple, int degree, const Sampler& sampler,
    std::size_t budget);

}  // namespace holointerp
