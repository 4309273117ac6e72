#ifndef KRPT_CORE_KERNEL_SPEC_HPP
#define KRPT_CORE_KERNEL_SPEC_HPP

#include <string>

namespace krpt {

enum class KernelKind { Dirac, FixedGaussian, VariableGaussian };

/**
 * @brief Shape of the mass carried by each particle.
 *
 * A fixed Gaussian of zero half-width is normalized to Dirac. For the variable
 * kernel the half-width is recomputed from the simulation time every step, so
 * width() is 0 and callers must resolve it through kernels::VariableWidth.
 */
class KernelSpec {
 public:
  static KernelSpec dirac() { return KernelSpec(KernelKind::Dirac, 0.0); }
  /// Throws InvalidArgument for negative or non-finite widths.
  static KernelSpec fixed_gaussian(double half_width);
  static KernelSpec variable_gaussian() { return KernelSpec(KernelKind::VariableGaussian, 0.0); }

  KernelKind kind() const noexcept { return kind_; }
  double width() const noexcept { return width_; }
  bool is_dirac() const noexcept { return kind_ == KernelKind::Dirac; }
  /// Gaussian particles are the reduced-count (N_G) population.
  bool uses_gaussian_count() const noexcept { return kind_ != KernelKind::Dirac; }

  /// e.g. "dirac", "gaussian(0.1096)", "variable"
  std::string describe() const;

  bool operator==(const KernelSpec&) const = default;

 private:
  KernelSpec(KernelKind kind, double width) : kind_(kind), width_(width) {}

  KernelKind kind_;
  double width_;
};

}  // namespace krpt

#endif  // KRPT_CORE_KERNEL_SPEC_HPP
