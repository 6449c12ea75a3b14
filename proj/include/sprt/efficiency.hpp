#pragma once

// Relative efficiency of the SPRT versus the fixed-sample design:
// f(alpha) = eta(alpha)/(Phi^{-1}(alpha))^2 in the symmetric case and
// F(alpha, beta) = max{E_{-1}tau, E_{+1}tau}/T_{alpha,beta} in general,
// together with the alpha -> 0 asymptotic expansion and the inverse map
// from a target sample-size reduction back to alpha.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sprt/design.hpp"
#include "sprt/normal.hpp"

namespace sprt {

// f is increasing with range (1/4, 2/pi); both limits are unattained.
inline constexpr double f_limit_alpha_zero = 0.25;
inline constexpr double f_limit_alpha_half = 0.6366197723675814;  // 2/pi
inline constexpr double ln_4pi = 2.5310242469692907;

// alpha values within this distance of 1/2 are rejected: both eta and
// (Phi^{-1})^2 vanish there and the ratio is 0/0.
inline constexpr double alpha_half_guard = 1e-12;

namespace detail {

inline void check_alpha_open_half(double alpha, const char* what) {
  if (!(alpha > 0.0) || !(alpha <= 0.5 - alpha_half_guard))
    throw std::domain_error(std::string(what) +
                            " requires alpha in (0, 1/2), away from 1/2");
}

}  // namespace detail

/// Relative efficiency f(alpha) = eta(alpha) / (Phi^{-1}(alpha))^2.
inline double efficiency_f(double alpha) {
  detail::check_alpha_open_half(alpha, "efficiency_f");
  const double z = detail::norm_quantile(alpha);
  return eta(alpha) / (z * z);
}

/// Relative efficiency under the worse hypothesis,
/// F(alpha, beta) = omega(max, min) / T_{alpha,beta}. Symmetric in its
/// arguments; F(a, a) = f(a).
inline double efficiency_F(double alpha, double beta) {
  detail::check_alpha_open_half(alpha, "efficiency_F");
  detail::check_alpha_open_half(beta, "efficiency_F");
  const double hi = std::max(alpha, beta);
  const double lo = std::min(alpha, beta);
  const double za = detail::norm_quantile(alpha);
  const double zb = detail::norm_quantile(beta);
  const double root = -0.5 * (za + zb);
  return omega(hi, lo) / (root * root);
}

/// Average sample size reduction 1 - value.
inline double reduction(double value) {
  if (!(value >= 0.0) || !(value <= 1.0))
    throw std::domain_error("reduction requires a value in [0, 1]");
  return 1.0 - value;
}

// An (alpha, beta, efficiency) sample for curve and surface exports.
struct EfficiencyPoint {
  double alpha;
  double beta;
  double value;
  double reduction;
};

inline EfficiencyPoint efficiency_point(double alpha, double beta) {
  const double v = efficiency_F(alpha, beta);
  return EfficiencyPoint{alpha, beta, v, 1.0 - v};
}

// Domain bound of the asymptotic expansion: need -ln(alpha) > e.
inline constexpr double f_asymptotic_alpha_max = 0.06598803584531254;  // e^-e

/// Leading asymptotic expansion f(alpha) ~ 1/4 - ln(-ln alpha)/(8 ln alpha)
/// as alpha -> 0.
inline double f_asymptotic(double alpha) {
  if (!(alpha > 0.0) || !(alpha < f_asymptotic_alpha_max))
    throw std::domain_error("f_asymptotic requires 0 < alpha < exp(-e)");
  const double x = -std::log(alpha);
  return 0.25 + std::log(x) / (8.0 * x);
}

/// (Phi^{-1}(alpha))^2 = -2 ln(alpha) - ln(-4 pi ln(alpha)) + o(1); this
/// returns the two explicit terms.
inline double quantile_square_expansion(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 0.5))
    throw std::domain_error(
        "quantile_square_expansion requires alpha in (0, 1/2)");
  const double x = -std::log(alpha);
  return 2.0 * x - std::log(4.0 * M_PI * x);
}

/// Solves 1 - f(alpha) = target_reduction by bisection on ln(alpha); unique
/// by the monotonicity of f. Valid targets lie strictly between 1 - 2/pi and
/// 3/4; targets representable only by alpha below ~1e-300 are rejected.
inline double invert_f(double target_reduction) {
  if (!(target_reduction > 1.0 - f_limit_alpha_half) ||
      !(target_reduction < 0.75))
    throw std::domain_error(
        "invert_f requires a reduction strictly between 1 - 2/pi and 3/4");
  double lo = std::log(1e-300);              // reduction(lo) ~ 0.74835
  double hi = std::log(0.5 - 1e-6);          // reduction(hi) ~ 0.36338
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double red = 1.0 - efficiency_f(std::exp(mid));
    (red > target_reduction ? lo : hi) = mid;
  }
  const double alpha = std::exp(0.5 * (lo + hi));
  if (std::fabs(1.0 - efficiency_f(alpha) - target_reduction) > 1e-10)
    throw std::domain_error(
        "invert_f: target reduction not attainable with alpha >= 1e-300");
  return alpha;
}

}  // namespace sprt
