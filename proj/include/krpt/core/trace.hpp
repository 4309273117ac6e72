#ifndef KRPT_CORE_TRACE_HPP
#define KRPT_CORE_TRACE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace krpt {

/// Domain-averaged concentration over time, with ensemble spread.
struct ConcentrationTrace {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> stddev;  ///< across realizations; all zero for a single run

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
};

/// n points log-spaced over [first, last], both ends included.
std::vector<double> log_time_grid(double first, double last, std::size_t n);

/// n points evenly spaced over [first, last].
std::vector<double> linear_time_grid(double first, double last, std::size_t n);

/**
 * @brief Maps requested times onto whole time steps (nearest, at least 1).
 *
 * Returns strictly increasing step indices; requests collapsing onto the same
 * step are merged. Times beyond max_step are dropped.
 */
std::vector<std::size_t> snap_to_steps(std::span<const double> times, double dt,
                                       std::size_t max_step);

/// Throws InvalidTimeGrid unless `times` is non-empty, finite, >= 0 and strictly increasing.
void require_time_grid(std::span<const double> times);

/// Order-independent mean and sample standard deviation (n - 1) per time point.
ConcentrationTrace reduce_ensemble(std::span<const ConcentrationTrace> realizations);

/// Largest |a.mean - b.mean| over the shared grid. Grids must match.
double max_abs_difference(const ConcentrationTrace& a, const ConcentrationTrace& b);

}  // namespace krpt

#endif  // KRPT_CORE_TRACE_HPP
