#include "krpt/core/trace.hpp"

#include <algorithm>
#include <cmath>

#include "krpt/core/errors.hpp"

namespace krpt {

std::vector<double> log_time_grid(double first, double last, std::size_t n) {
  if (!(first > 0.0) || !(last >= first) || n == 0) {
    throw Error(ErrorCode::InvalidTimeGrid, "log grid needs 0 < first <= last and n >= 1");
  }
  if (n == 1) return {last};
  std::vector<double> grid(n);
  const double a = std::log10(first);
  const double b = std::log10(last);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  grid.front() = first;
  grid.back() = last;
  return grid;
}

std::vector<double> linear_time_grid(double first, double last, std::size_t n) {
  if (!(last >= first) || n == 0) {
    throw Error(ErrorCode::InvalidTimeGrid, "linear grid needs first <= last and n >= 1");
  }
  if (n == 1) return {last};
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  grid.back() = last;
  return grid;
}

std::vector<std::size_t> snap_to_steps(std::span<const double> times, double dt,
                                       std::size_t max_step) {
  std::vector<std::size_t> steps;
  steps.reserve(times.size());
  for (double t : times) {
    const double k = std::max(1.0, std::round(t / dt));
    const auto step = static_cast<std::size_t>(k);
    if (step > max_step) continue;
    if (steps.empty() || step > steps.back()) steps.push_back(step);
  }
  return steps;
}

void require_time_grid(std::span<const double> times) {
  if (times.empty()) throw Error(ErrorCode::EmptyTimeGrid, "time grid is empty");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw Error(ErrorCode::InvalidTimeGrid, "time grid entries must be finite and >= 0");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorCode::InvalidTimeGrid, "time grid must be strictly increasing");
    }
  }
}

ConcentrationTrace reduce_ensemble(std::span<const ConcentrationTrace> realizations) {
  if (realizations.empty()) {
    throw Error(ErrorCode::InsufficientEnsemble, "cannot reduce an empty ensemble");
  }
  const auto& first = realizations.front();
  for (const auto& r : realizations) {
    if (r.times != first.times || r.mean.size() != first.times.size()) {
      throw Error(ErrorCode::InvalidTimeGrid, "realizations were recorded on different grids");
    }
  }

  const std::size_t n = realizations.size();
  ConcentrationTrace out;
  out.times = first.times;
  out.mean.resize(first.size());
  out.stddev.resize(first.size());
  std::vector<double> values(n);
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t r = 0; r < n; ++r) values[r] = realizations[r].mean[i];
    // Sorting first makes the floating-point reduction independent of realization order.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    out.mean[i] = mean;
    out.stddev[i] = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  }
  return out;
}

double max_abs_difference(const ConcentrationTrace& a, const ConcentrationTrace& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::InvalidTimeGrid, "traces have different lengths");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.mean[i] - b.mean[i]));
  return worst;
}

}  // namespace krpt
