#ifndef KRPT_TESTS_SUPPORT_HELPERS_HPP
#define KRPT_TESTS_SUPPORT_HELPERS_HPP

#include <cmath>
#include <functional>

#include "krpt/core/config.hpp"
#include "krpt/core/errors.hpp"

namespace krpt::testing {

inline SimConfig base_params() { return SimConfig{}; }

inline Config base_config() { return validate_config(base_params()); }

inline Config with(std::function<void(SimConfig&)> edit) {
  SimConfig raw = base_params();
  edit(raw);
  return validate_config(raw);
}

/// Runs f and returns the ErrorCode it throws; fails the check if nothing is thrown.
template <class F>
ErrorCode thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 50) {
  auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> recurse =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int level) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid);
        const double rm = 0.5 * (mid + hi);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(lo, mid, flo, flm, fmid);
        const double right = simpson(mid, hi, fmid, frm, fhi);
        if (level <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
          return left + right + (left + right - whole) / 15.0;
        }
        return recurse(lo, mid, flo, flm, fmid, left, 0.5 * eps, level - 1) +
               recurse(mid, hi, fmid, frm, fhi, right, 0.5 * eps, level - 1);
      };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, depth);
}

}  // namespace krpt::testing

#endif  // KRPT_TESTS_SUPPORT_HELPERS_HPP
