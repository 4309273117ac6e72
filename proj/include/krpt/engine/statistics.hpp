#ifndef KRPT_ENGINE_STATISTICS_HPP
#define KRPT_ENGINE_STATISTICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "krpt/engine/particles.hpp"
#include "krpt/engine/run.hpp"

namespace krpt::engine {

/// Across-system mean and standard error of one covariance estimate.
struct CovarianceEstimate {
  double lag = 0.0;  ///< effective lag (Dirac lags are rounded to whole bins)
  double auto_mean = 0.0;
  double auto_se = 0.0;
  double cross_mean = 0.0;
  double cross_se = 0.0;
};

struct CovarianceResult {
  double resolution = 0.0;  ///< sampling grid spacing
  std::vector<CovarianceEstimate> lags;
};

inline constexpr std::size_t kMinCovarianceEnsemble = 50;

/**
 * @brief Spatial auto- and cross-covariance of the concentration fields.
 *
 * The estimate treats the domain as periodic whatever the system boundary;
 * it is meant for initial, independent uniform positions.
 * Gaussian systems: the periodized kernel field is evaluated on a grid of
 * spacing <= l_G / 4 and at the lagged points. Dirac systems: masses are binned
 * into cells of width Omega / N. Per system the estimate is the spatial average
 * of C'(x) C'(x + lag) with C' measured from the exact mean N m / Omega; the
 * autocovariance averages A and B, the cross-covariance averages AB and BA.
 * Needs at least 50 systems (InsufficientEnsemble) of dimension one
 * (UnsupportedDimension) with a Dirac or fixed Gaussian kernel.
 */
CovarianceResult empirical_autocovariance(std::span<const ParticleSystem> systems,
                                          std::span<const double> lags);

/**
 * @brief Number of contiguous single-species runs along the first coordinate.
 *
 * On a periodic domain the runs at both ends join when they share a species. Returns 0 for an empty snapshot.
 */
std::size_t count_species_blocks(const Snapshot& snapshot);

}  // namespace krpt::engine

#endif  // KRPT_ENGINE_STATISTICS_HPP
