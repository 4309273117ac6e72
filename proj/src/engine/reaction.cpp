#include "krpt/engine/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "krpt/core/diagnostics.hpp"
#include "krpt/core/errors.hpp"

namespace krpt::engine {

namespace {

// A decrement below 2^-60 m_p is under half an ulp of any mass in (0, m_p].
const double kNegligible = std::ldexp(1.0, -60);

inline double min_image(double d, double side, double half) {
  return d > half ? d - side : (d < -half ? d + side : d);
}

// Separation component under the system's boundary.
struct Separation {
  double side;
  double half;
  bool periodic;
  double operator()(double d) const { return periodic ? min_image(d, side, half) : d; }
};

Separation separation_of(const ParticleSystem& s) {
  return {s.side, 0.5 * s.side, s.boundary == Boundary::Periodic};
}

// Squared separation above which k dt m_p v(q) < 2^-60 m_p; -inf when no pair matters.
double negligible_squared(const kernels::PairKernel& pair, double kdt, double particle_mass) {
  const double largest = kdt * particle_mass * pair.peak;
  if (!(largest > kNegligible)) return -std::numeric_limits<double>::infinity();
  return 4.0 * pair.variance * std::log(largest / kNegligible);
}

void check_mass(double& m, double particle_mass) {
  if (m >= 0.0) return;
  if (m < -kOverdrawTolerance * particle_mass) {
    std::ostringstream msg;
    msg << "particle mass " << m << " below zero; reduce the time step";
    throw Error(ErrorCode::MassOverdraw, msg.str());
  }
  m = 0.0;
}

}  // namespace

ReactionStepper::ReactionStepper(const Config& config, const KernelSpec& kernel,
                                 ReactionOptions options)
    : config_(config), kernel_(kernel), options_(options) {
  if (kernel.kind() == KernelKind::VariableGaussian) variable_.emplace(config);
}

double ReactionStepper::width_at(double t) {
  if (!variable_) return kernel_.width();
  bool clamped = false;
  const double w = variable_->evaluate(t, &clamped);
  if (clamped && !clamped_) {
    std::ostringstream msg;
    msg << "variable half-width clamped at tau* = " << variable_->tau_star().value
        << " from t = " << t;
    diag::warn(msg.str());
  }
  clamped_ = clamped_ || clamped;
  return w;
}

void ReactionStepper::gather_exact(const ParticleSystem& s, std::size_t j, double q_max) {
  const std::size_t nb = s.b.size();
  const int dim = s.dim;
  const Separation sep = separation_of(s);
  squared_.resize(nb);
  index_.resize(nb);
  const double* xb = s.b.positions.data();
  if (dim == 1 && sep.periodic) {
    const double xa = s.a.positions[j];
    for (std::size_t l = 0; l < nb; ++l) {
      const double d = min_image(xa - xb[l], sep.side, sep.half);
      squared_[l] = d * d;
    }
  } else if (dim == 1) {
    const double xa = s.a.positions[j];
    for (std::size_t l = 0; l < nb; ++l) {
      const double d = xa - xb[l];
      squared_[l] = d * d;
    }
  } else {
    const double* xa = &s.a.positions[j * dim];
    for (std::size_t l = 0; l < nb; ++l) {
      double q = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double d = sep(xa[c] - xb[l * dim + c]);
        q += d * d;
      }
      squared_[l] = q;
    }
  }
  std::size_t count = 0;
  for (std::size_t l = 0; l < nb; ++l) {
    index_[count] = static_cast<std::uint32_t>(l);
    count += squared_[l] < q_max;
  }
  index_.resize(count);
  candidate_q_.resize(count);
  for (std::size_t i = 0; i < count; ++i) candidate_q_[i] = squared_[index_[i]];
}

std::size_t ReactionStepper::cell_of(double x) const {
  return std::min(static_cast<std::size_t>(x / cell_width_), n_cells_ - 1);
}

void ReactionStepper::build_cells(const ParticleSystem& s, double cutoff) {
  const std::size_t nb = s.b.size();
  n_cells_ = static_cast<std::size_t>(std::floor(s.side / cutoff));
  if (n_cells_ < 3) return;
  cell_width_ = s.side / static_cast<double>(n_cells_);
  cell_start_.assign(n_cells_ + 1, 0);
  for (std::size_t l = 0; l < nb; ++l) ++cell_start_[cell_of(s.b.positions[l * s.dim]) + 1];
  for (std::size_t c = 0; c < n_cells_; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_members_.resize(nb);
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t l = 0; l < nb; ++l) {
    cell_members_[fill[cell_of(s.b.positions[l * s.dim])]++] = static_cast<std::uint32_t>(l);
  }
}

void ReactionStepper::gather_cells(const ParticleSystem& s, std::size_t j, double q_max) {
  const int dim = s.dim;
  const Separation sep = separation_of(s);
  const double* xa = &s.a.positions[j * dim];
  const std::size_t c = cell_of(xa[0]);
  const std::size_t first = c == 0 ? 0 : c - 1;
  const std::size_t last = std::min(c + 1, n_cells_ - 1);

  index_.clear();
  auto append = [&](std::size_t cell) {
    index_.insert(index_.end(), cell_members_.begin() + cell_start_[cell],
                  cell_members_.begin() + cell_start_[cell + 1]);
  };
  if (sep.periodic) {
    append((c + n_cells_ - 1) % n_cells_);
    append(c);
    append((c + 1) % n_cells_);
  } else {
    for (std::size_t cell = first; cell <= last; ++cell) append(cell);
  }
  // Visit B particles in ascending index order, as the exact loop does.
  std::sort(index_.begin(), index_.end());

  const double* xb = s.b.positions.data();
  std::size_t count = 0;
  candidate_q_.resize(index_.size());
  for (std::size_t i = 0; i < index_.size(); ++i) {
    const std::size_t l = index_[i];
    double q = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double d = sep(xa[k] - xb[l * dim + k]);
      q += d * d;
    }
    if (q < q_max) {
      index_[count] = static_cast<std::uint32_t>(l);
      candidate_q_[count] = q;
      ++count;
    }
  }
  index_.resize(count);
  candidate_q_.resize(count);
}

void ReactionStepper::react_candidates(double& mass_a, std::vector<double>& masses_b, double kdt) {
  const std::size_t count = index_.size();
  weight_.resize(count);
  if (options_.vectorized) {
    kernels::evaluate_batch(pair_, candidate_q_, weight_);
  } else {
    for (std::size_t i = 0; i < count; ++i) weight_[i] = pair_(candidate_q_[i]);
  }
  if (options_.update == MassUpdate::Sequential) {
    double m = mass_a;
    for (std::size_t i = 0; i < count; ++i) {
      double& mb = masses_b[index_[i]];
      const double dm = kdt * m * mb * weight_[i];
      m -= dm;
      mb -= dm;
    }
    mass_a = m;
  } else {
    const double m = mass_a;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint32_t l = index_[i];
      const double dm = kdt * m * start_b_[l] * weight_[i];
      total += dm;
      masses_b[l] -= dm;
    }
    mass_a = m - total;
  }
}

void ReactionStepper::step(ParticleSystem& s) {
  const double k = config_.rate_constant();
  if (k == 0.0 || s.a.size() == 0 || s.b.size() == 0) return;
  const double dt = config_.dt();
  const double kdt = k * dt;
  const double width = width_at(s.time);
  pair_ = kernels::make_pair_kernel(width, config_.diffusion(), dt, s.dim);
  const double q_max = negligible_squared(pair_, kdt, s.particle_mass);
  if (q_max <= 0.0) return;

  const bool cells = options_.search == PairSearch::CellList;
  if (cells) build_cells(s, pair_.cutoff_radius());
  const bool use_cells = cells && n_cells_ >= 3;
  if (options_.update == MassUpdate::Summed) start_b_ = s.b.masses;

  std::vector<double>& mb = s.b.masses;
  for (std::size_t j = 0; j < s.a.size(); ++j) {
    double& ma = s.a.masses[j];
    if (ma == 0.0) continue;
    if (use_cells) {
      gather_cells(s, j, q_max);
    } else {
      gather_exact(s, j, q_max);
    }
    react_candidates(ma, mb, kdt);
    check_mass(ma, s.particle_mass);
  }
  for (double& m : mb) check_mass(m, s.particle_mass);
}

void reaction_step(ParticleSystem& system, const Config& config, ReactionOptions options) {
  ReactionStepper stepper(config, system.kernel, options);
  stepper.step(system);
}

}  // namespace krpt::engine
