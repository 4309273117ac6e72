#include "krpt/engine/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "krpt/core/errors.hpp"

namespace krpt::engine {

namespace {

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double standard_error() const {
    const double m = mean();
    const double var = (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
};

// Field of a Gaussian-kernel population, periodized over enough images.
class GaussianField {
 public:
  GaussianField(const Population& p, double width, double side)
      : p_(p), side_(side), inv_two_var_(1.0 / (2.0 * width * width)),
        norm_(1.0 / std::sqrt(2.0 * std::numbers::pi * width * width)),
        images_(static_cast<int>(std::ceil(8.0 * width / side))) {}

  double operator()(double x) const {
    double c = 0.0;
    for (std::size_t j = 0; j < p_.size(); ++j) {
      const double d0 = x - p_.positions[j];
      double k = 0.0;
      for (int n = -images_; n <= images_; ++n) {
        const double d = d0 + n * side_;
        k += std::exp(-d * d * inv_two_var_);
      }
      c += p_.masses[j] * k;
    }
    return norm_ * c;
  }

 private:
  const Population& p_;
  double side_;
  double inv_two_var_;
  double norm_;
  int images_;
};

std::vector<double> binned(const Population& p, std::size_t bins, double side) {
  std::vector<double> c(bins, 0.0);
  const double h = side / static_cast<double>(bins);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const auto i = std::min(static_cast<std::size_t>(p.positions[j] / h), bins - 1);
    c[i] += p.masses[j] / h;
  }
  return c;
}

double lagged_product(const std::vector<double>& x, const std::vector<double>& y, std::size_t shift,
                      double mean) {
  const std::size_t m = x.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += (x[i] - mean) * (y[(i + shift) % m] - mean);
  return acc / static_cast<double>(m);
}

}  // namespace

CovarianceResult empirical_autocovariance(std::span<const ParticleSystem> systems,
                                          std::span<const double> lags) {
  if (systems.size() < kMinCovarianceEnsemble) {
    throw Error(ErrorCode::InsufficientEnsemble,
                "covariance estimates need at least 50 independent systems");
  }
  const ParticleSystem& first = systems.front();
  if (first.dim != 1) {
    throw Error(ErrorCode::UnsupportedDimension, "covariance estimates are implemented for d = 1");
  }
  if (first.kernel.kind() == KernelKind::VariableGaussian) {
    throw Error(ErrorCode::UnsupportedKernel, "covariance estimates need a fixed kernel");
  }
  const double side = first.side;
  const bool dirac = first.kernel.is_dirac();
  const double width = first.kernel.width();

  CovarianceResult result;
  std::vector<Accumulator> autos(lags.size());
  std::vector<Accumulator> crosses(lags.size());
  std::vector<double> effective(lags.begin(), lags.end());

  if (dirac) {
    const std::size_t bins = first.a.size();
    result.resolution = side / static_cast<double>(bins);
    std::vector<std::size_t> shifts(lags.size());
    for (std::size_t k = 0; k < lags.size(); ++k) {
      shifts[k] = static_cast<std::size_t>(std::llround(lags[k] / result.resolution)) % bins;
      effective[k] = static_cast<double>(shifts[k]) * result.resolution;
    }
    for (const ParticleSystem& s : systems) {
      const double mean = s.a.total_mass() / side;
      const auto ca = binned(s.a, bins, side);
      const auto cb = binned(s.b, bins, side);
      for (std::size_t k = 0; k < lags.size(); ++k) {
        autos[k].add(0.5 * (lagged_product(ca, ca, shifts[k], mean) +
                            lagged_product(cb, cb, shifts[k], mean)));
        crosses[k].add(0.5 * (lagged_product(ca, cb, shifts[k], mean) +
                              lagged_product(cb, ca, shifts[k], mean)));
      }
    }
  } else {
    const auto points = static_cast<std::size_t>(std::ceil(side / (0.25 * width)));
    result.resolution = side / static_cast<double>(points);
    for (const ParticleSystem& s : systems) {
      const double mean = s.a.total_mass() / side;
      const GaussianField fa(s.a, width, side);
      const GaussianField fb(s.b, width, side);
      std::vector<double> a0(points);
      std::vector<double> b0(points);
      for (std::size_t i = 0; i < points; ++i) {
        const double x = static_cast<double>(i) * result.resolution;
        a0[i] = fa(x) - mean;
        b0[i] = fb(x) - mean;
      }
      for (std::size_t k = 0; k < lags.size(); ++k) {
        double aa = 0.0;
        double bb = 0.0;
        double ab = 0.0;
        double ba = 0.0;
        for (std::size_t i = 0; i < points; ++i) {
          const double x = wrap(static_cast<double>(i) * result.resolution + lags[k], side);
          const double al = fa(x) - mean;
          const double bl = fb(x) - mean;
          aa += a0[i] * al;
          bb += b0[i] * bl;
          ab += a0[i] * bl;
          ba += b0[i] * al;
        }
        const double m = static_cast<double>(points);
        autos[k].add(0.5 * (aa + bb) / m);
        crosses[k].add(0.5 * (ab + ba) / m);
      }
    }
  }

  for (std::size_t k = 0; k < lags.size(); ++k) {
    result.lags.push_back({effective[k], autos[k].mean(), autos[k].standard_error(),
                           crosses[k].mean(), crosses[k].standard_error()});
  }
  return result;
}

std::size_t count_species_blocks(const Snapshot& snapshot) {
  if (snapshot.particles.empty()) return 0;
  std::vector<std::pair<double, Species>> order;
  order.reserve(snapshot.particles.size());
  for (const auto& p : snapshot.particles) order.emplace_back(p.position.front(), p.species);
  std::sort(order.begin(), order.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::size_t runs = 1;
  for (std::size_t i = 1; i < order.size(); ++i) runs += order[i].second != order[i - 1].second;
  if (snapshot.boundary == Boundary::Periodic && runs > 1 &&
      order.front().second == order.back().second) {
    --runs;
  }
  return runs;
}

}  // namespace krpt::engine
