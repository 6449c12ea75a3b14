#pragma once

// Fixed-sample and Wald SPRT test designs for the two-sided drift problem
// X_t = theta*t + W_t with theta in {-1,+1}, plus their exact (expected)
// sample sizes and the signal-to-noise rescaling for X_t = theta*mu*t +
// sigma*W_t.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sprt/normal.hpp"

namespace sprt {

enum class Hypothesis : int { drift_down = -1, drift_up = +1 };

inline double theta_of(Hypothesis h) { return static_cast<double>(h); }

// Admissible error probabilities: alpha bounds P_{-1}(accept H_{+1}), beta
// bounds P_{+1}(accept H_{-1}). Both must lie strictly in (0, 1/2).
struct ErrorSpec {
  double alpha;
  double beta;

  ErrorSpec(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha > 0.0) || !(alpha < 0.5) || !(beta > 0.0) || !(beta < 0.5))
      throw std::domain_error("ErrorSpec requires 0 < alpha, beta < 1/2 (got " +
                              std::to_string(alpha_) + ", " +
                              std::to_string(beta_) + ")");
  }
  bool symmetric() const { return alpha == beta; }
};

// Drift magnitude and volatility of the observation process.
struct SignalSpec {
  double mu = 1.0;
  double sigma = 1.0;

  SignalSpec() = default;
  SignalSpec(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!(mu > 0.0) || !(sigma > 0.0))
      throw std::domain_error("SignalSpec requires mu > 0 and sigma > 0");
  }
  double rho() const { return 2.0 * mu / sigma; }
};

// Observe X on [0, horizon]; accept H_{+1} iff X_horizon >= threshold.
struct FixedDesign {
  double horizon;
  double threshold;
};

// Continue while X_t stays inside (lower, upper); hitting `upper` accepts
// H_{+1}, hitting `lower` accepts H_{-1}.
struct SequentialDesign {
  double lower;
  double upper;

  static Hypothesis decision_at_upper() { return Hypothesis::drift_up; }
  static Hypothesis decision_at_lower() { return Hypothesis::drift_down; }
};

namespace detail {

// alpha + beta - 1, exact to a rounding even when both are close to 1/2
// (Sterbenz: a - 0.5 is exact for a in [0.25, 1]).
inline double sum_minus_one(double a, double b) {
  return (a - 0.5) + (b - 0.5);
}

// ln(num/den) for positive inputs; `delta` is num - den supplied by the
// caller in a cancellation-free form. The log1p branch keeps full relative
// accuracy when the ratio is near 1, the direct branch when it is far from 1
// (where log1p would amplify the absolute error of its argument).
inline double log_ratio(double num, double den, double delta) {
  const double r = num / den;
  if (r > 0.5 && r < 2.0) return std::log1p(delta / den);
  return std::log(r);
}

}  // namespace detail

/// Expected SPRT sample size eta(alpha) in the symmetric unit model.
inline double eta(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 0.5))
    throw std::domain_error("eta requires alpha in (0, 1/2)");
  const double t = 0.5 - alpha;
  return t * std::log1p(2.0 * t / alpha);
}

/// omega(alpha, beta) = (alpha*ln(alpha/(1-beta)) + (1-alpha)*ln((1-alpha)/beta))/2,
/// the expected SPRT sample size under drift -1. Evaluated through
/// (P-Q)/4 + (1/2-alpha)(P+Q)/2 with P = ln((1-alpha)/beta), Q = ln((1-beta)/alpha),
/// which stays relatively accurate near the diagonal alpha = beta -> 1/2
/// where the naive form cancels.
inline double omega(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha < 0.5) || !(beta > 0.0) || !(beta < 0.5))
    throw std::domain_error("omega requires (alpha, beta) in (0, 1/2)^2");
  const double u = detail::sum_minus_one(alpha, beta);  // < 0
  // ln of alpha(1-alpha) / (beta(1-beta)); the difference factors as
  // -(alpha-beta)*u, which avoids the cancellation of the raw products
  const double d = detail::log_ratio(alpha * (1.0 - alpha),
                                     beta * (1.0 - beta),
                                     -(alpha - beta) * u);
  const double s = std::log1p(-u / beta) + std::log1p(-u / alpha);
  return 0.25 * d + 0.5 * (0.5 - alpha) * s;
}

/// Smallest deterministic design meeting the error spec:
/// horizon = (Phi^{-1}(alpha) + Phi^{-1}(beta))^2 / 4,
/// threshold = horizon + sqrt(horizon) * Phi^{-1}(beta).
/// The threshold is exactly 0 for symmetric specs.
inline FixedDesign fixed_design(const ErrorSpec& spec) {
  const double za = detail::norm_quantile(spec.alpha);
  const double zb = detail::norm_quantile(spec.beta);
  const double root = -0.5 * (za + zb);  // sqrt(horizon), both quantiles < 0
  const double horizon = root * root;
  return FixedDesign{horizon, horizon + root * zb};
}

/// Wald SPRT continuation interval:
/// lower = ln(beta/(1-alpha))/2 < 0 < upper = ln((1-beta)/alpha)/2.
inline SequentialDesign sprt_design(const ErrorSpec& spec) {
  const double u = detail::sum_minus_one(spec.alpha, spec.beta);
  const double lower =
      0.5 * detail::log_ratio(spec.beta, 1.0 - spec.alpha, u);
  const double upper =
      -0.5 * detail::log_ratio(spec.alpha, 1.0 - spec.beta, u);
  return SequentialDesign{lower, upper};
}

/// E_theta[tau] for the SPRT design in the unit model: omega(alpha, beta)
/// under drift -1 and omega(beta, alpha) under drift +1.
inline double expected_stop_time(const ErrorSpec& spec, Hypothesis hyp) {
  return hyp == Hypothesis::drift_down ? omega(spec.alpha, spec.beta)
                                       : omega(spec.beta, spec.alpha);
}

/// 4/rho^2: multiplies any unit-model horizon or expected stop time to give
/// the (mu, sigma) model's value.
inline double snr_scale_factor(const SignalSpec& signal) {
  if (!(signal.mu > 0.0) || !(signal.sigma > 0.0))
    throw std::domain_error("snr_scale_factor requires mu > 0 and sigma > 0");
  const double rho = signal.rho();
  return 4.0 / (rho * rho);
}

}  // namespace sprt
