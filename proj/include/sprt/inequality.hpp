#pragma once

// Numerical verifiers for the inequalities behind the efficiency results.
// Every verifier returns a signed margin (>= 0 when the inequality holds);
// scans sweep a margin over a grid and report the minimum, its location and
// the number of tolerance violations.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sprt/design.hpp"
#include "sprt/efficiency.hpp"
#include "sprt/normal.hpp"

namespace sprt {

/// Mills-ratio inequality margin scaled by 1/phi(z):
/// z(2+z^2)Phi(z)M(z) - (1+z^2)(2Phi(z)-1). Scale-invariant form that stays
/// meaningful to z = 40 where both unscaled sides underflow.
inline double mills_lemma_margin_scaled(double z) {
  if (!(z >= 0.0)) throw std::domain_error("mills_lemma_margin requires z >= 0");
  const double q = detail::norm_upper_tail(z);
  const double zsq = z * z;
  // Phi = 1-q and 2*Phi-1 = 1-2q; 1-2q is exact for q in [0.25, 0.5].
  return z * (2.0 + zsq) * (1.0 - q) * detail::mills(z) -
         (1.0 + zsq) * (1.0 - 2.0 * q);
}

/// Unscaled margin z(2+z^2)Phi(z)(1-Phi(z)) - (1+z^2)(2Phi(z)-1)phi(z);
/// underflows gracefully (to +0) past z ~ 38.6.
inline double mills_lemma_margin(double z) {
  return mills_lemma_margin_scaled(z) * detail::norm_pdf(z);
}

/// Disc-estimate margin (1 - e^{-2z^2/pi}) - (2Phi(z)-1)^2, evaluated as
/// 4q(1-q) - e^{-2z^2/pi} with q the upper tail, which is exact algebra and
/// tail-stable (both terms tiny and positive for large z).
inline double disc_estimate_margin(double z) {
  if (!(z >= 0.0))
    throw std::domain_error("disc_estimate_margin requires z >= 0");
  const double q = detail::norm_upper_tail(z);
  return 4.0 * q * (1.0 - q) - std::exp(-2.0 * z * z / M_PI);
}

/// Two-dimensional lemma margin
/// (Phi^{-1}(beta))^2 phi^3(Phi^{-1}(alpha)) (2a-1)/(a^2(1-a)^2)
///   + 2(1-2b) ln(b/(1-b)) Phi^{-1}(alpha)
/// for 0 < beta <= alpha < 1/2. If `scale` is non-null it receives the
/// magnitude of the larger addend (the natural yardstick for a relative
/// tolerance).
inline double two_dim_lemma_margin(double alpha, double beta,
                                   double* scale = nullptr) {
  if (!(beta > 0.0) || !(beta <= alpha) || !(alpha < 0.5))
    throw std::domain_error(
        "two_dim_lemma_margin requires 0 < beta <= alpha < 1/2");
  const double za = detail::norm_quantile(alpha);
  const double zb = detail::norm_quantile(beta);
  const double pa = detail::norm_pdf(za);
  const double aa = alpha * (1.0 - alpha);
  const double t1 = zb * zb * pa * pa * pa * (2.0 * alpha - 1.0) / (aa * aa);
  const double ln_odds = -std::log1p((1.0 - 2.0 * beta) / beta);  // ln(b/(1-b))
  const double t2 = 2.0 * (1.0 - 2.0 * beta) * ln_odds * za;
  if (scale) *scale = std::max(std::fabs(t1), std::fabs(t2));
  return t1 + t2;
}

/// omega(max,min) - max{omega(a,b), omega(b,a)}; zero up to rounding.
inline double omega_max_margin(double alpha, double beta) {
  const double closed =
      omega(std::max(alpha, beta), std::min(alpha, beta));
  return closed - std::max(omega(alpha, beta), omega(beta, alpha));
}

// Outcome of sweeping one margin over a grid.
struct MarginReport {
  std::string grid_description;
  double min_margin = std::numeric_limits<double>::infinity();
  std::array<double, 2> argmin{0.0, 0.0};
  int argmin_arity = 1;
  std::size_t violations = 0;
  std::size_t points = 0;
  double tolerance = 0.0;
  bool failed = false;            // a grid point raised a domain error
  std::array<double, 2> failure_point{0.0, 0.0};

  bool ok() const { return !failed && violations == 0; }

  std::string summary() const {
    char buf[256];
    if (failed) {
      std::snprintf(buf, sizeof buf,
                    "%s: FAILED domain error at (%.17g, %.17g)",
                    grid_description.c_str(), failure_point[0],
                    failure_point[1]);
      return buf;
    }
    if (argmin_arity == 1)
      std::snprintf(buf, sizeof buf,
                    "%s: points=%zu min_margin=%.6g at %.6g violations=%zu",
                    grid_description.c_str(), points, min_margin, argmin[0],
                    violations);
    else
      std::snprintf(
          buf, sizeof buf,
          "%s: points=%zu min_margin=%.6g at (%.6g, %.6g) violations=%zu",
          grid_description.c_str(), points, min_margin, argmin[0], argmin[1],
          violations);
    return buf;
  }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.front() = lo;
  v.back() = hi;  // endpoints exact, independent of interpolation rounding
  return v;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = std::exp(llo +
                    (lhi - llo) * static_cast<double>(i) /
                        static_cast<double>(n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

// Optional per-point sink for CSV dumps: (x, y or 0, margin).
using ScanSink = std::function<void(double, double, double)>;

namespace detail {

template <typename Fn>
MarginReport scan_1d(const std::string& what, const std::vector<double>& grid,
                     double tolerance, Fn&& margin_fn,
                     const ScanSink* sink = nullptr) {
  MarginReport r;
  r.grid_description = what;
  r.tolerance = tolerance;
  r.argmin_arity = 1;
  for (double x : grid) {
    double m;
    try {
      m = margin_fn(x);
    } catch (const std::domain_error&) {
      r.failed = true;
      r.failure_point = {x, 0.0};
      return r;
    }
    ++r.points;
    if (m < r.min_margin) {
      r.min_margin = m;
      r.argmin = {x, 0.0};
    }
    if (m < -tolerance) ++r.violations;
    if (sink) (*sink)(x, 0.0, m);
  }
  return r;
}

}  // namespace detail

/// Lemma-1 scan (scaled margin, absolute tolerance).
inline MarginReport scan_mills(const std::vector<double>& zs,
                               double tolerance = 1e-13,
                               const ScanSink* sink = nullptr) {
  return detail::scan_1d("mills lemma", zs, tolerance,
                         [](double z) { return mills_lemma_margin_scaled(z); },
                         sink);
}

/// Disc-estimate scan (absolute tolerance).
inline MarginReport scan_disc(const std::vector<double>& zs,
                              double tolerance = 1e-14,
                              const ScanSink* sink = nullptr) {
  return detail::scan_1d("disc estimate", zs, tolerance,
                         [](double z) { return disc_estimate_margin(z); },
                         sink);
}

/// Lemma-4 scan over the triangle beta <= alpha; margins are normalized by
/// the magnitude of the larger addend before the tolerance test.
inline MarginReport scan_twodim(const std::vector<double>& grid,
                                double tolerance = 1e-12,
                                const ScanSink* sink = nullptr) {
  MarginReport r;
  r.grid_description = "two-dim lemma";
  r.tolerance = tolerance;
  r.argmin_arity = 2;
  for (double a : grid) {
    for (double b : grid) {
      if (b > a) continue;
      double scale = 0.0, m;
      try {
        m = two_dim_lemma_margin(a, b, &scale);
      } catch (const std::domain_error&) {
        r.failed = true;
        r.failure_point = {a, b};
        return r;
      }
      ++r.points;
      const double normalized = scale > 0.0 ? m / scale : m;
      if (normalized < r.min_margin) {
        r.min_margin = normalized;
        r.argmin = {a, b};
      }
      if (normalized < -tolerance) ++r.violations;
      if (sink) (*sink)(a, b, normalized);
    }
  }
  return r;
}

/// Lemma-3 scan: |omega(max,min) - max(omega(a,b), omega(b,a))| relative to
/// omega(max,min) must stay within tolerance.
inline MarginReport scan_omega_max(const std::vector<double>& grid,
                                   double tolerance = 1e-14,
                                   const ScanSink* sink = nullptr) {
  MarginReport r;
  r.grid_description = "omega max identity";
  r.tolerance = tolerance;
  r.argmin_arity = 2;
  for (double a : grid) {
    for (double b : grid) {
      double m;
      try {
        m = omega_max_margin(a, b) /
            omega(std::max(a, b), std::min(a, b));
      } catch (const std::domain_error&) {
        r.failed = true;
        r.failure_point = {a, b};
        return r;
      }
      ++r.points;
      const double signed_margin = -std::fabs(m);
      if (signed_margin < r.min_margin) {
        r.min_margin = signed_margin;
        r.argmin = {a, b};
      }
      if (signed_margin < -tolerance) ++r.violations;
      if (sink) (*sink)(a, b, m);
    }
  }
  return r;
}

// The 10^4-point efficiency grid: log-spaced in [1e-12, 0.01), linear in
// [0.01, 1/2 - 1e-12].
inline std::vector<double> efficiency_grid() {
  std::vector<double> g = logspace(1e-12, 0.01, 5000);
  g.pop_back();
  std::vector<double> lin = linspace(0.01, 0.5 - 1e-12, 5001);
  g.insert(g.end(), lin.begin(), lin.end());
  return g;
}

/// Strict monotonicity of f: margins are the forward differences.
inline MarginReport scan_monotone(const std::vector<double>& grid,
                                  const ScanSink* sink = nullptr) {
  MarginReport r;
  r.grid_description = "f monotonicity";
  r.tolerance = 0.0;
  r.argmin_arity = 1;
  double prev = efficiency_f(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = efficiency_f(grid[i]);
    const double diff = cur - prev;
    ++r.points;
    if (diff < r.min_margin) {
      r.min_margin = diff;
      r.argmin = {grid[i], 0.0};
    }
    if (!(diff > 0.0)) ++r.violations;
    if (sink) (*sink)(grid[i], 0.0, diff);
    prev = cur;
  }
  return r;
}

/// Strict bounds 1/4 < f < 2/pi: margin is the distance to the nearer bound.
inline MarginReport scan_bounds(const std::vector<double>& grid,
                                const ScanSink* sink = nullptr) {
  return detail::scan_1d("f bounds", grid, 0.0,
                         [](double a) {
                           const double v = efficiency_f(a);
                           return std::min(v - f_limit_alpha_zero,
                                           f_limit_alpha_half - v);
                         },
                         sink);
}

/// Cross-check of the asymmetric lower bound along alpha for fixed beta:
/// (F(alpha,beta) - f(beta)) * T_{alpha,beta} >= 0 on [beta, 1/2).
inline MarginReport scan_theorem2(const std::vector<double>& betas,
                                  std::size_t n_alpha = 200,
                                  double tolerance = 1e-12,
                                  const ScanSink* sink = nullptr) {
  MarginReport r;
  r.grid_description = "theorem-2 sections";
  r.tolerance = tolerance;
  r.argmin_arity = 2;
  for (double b : betas) {
    const double fb = efficiency_f(b);
    for (double a : linspace(b, 0.5 - 1e-9, n_alpha)) {
      double m, scale;
      try {
        const double t = fixed_design(ErrorSpec(a, b)).horizon;
        const double w = omega(std::max(a, b), std::min(a, b));
        m = w - fb * t;
        scale = std::max(w, fb * t);
      } catch (const std::domain_error&) {
        r.failed = true;
        r.failure_point = {a, b};
        return r;
      }
      ++r.points;
      const double normalized = m / scale;
      if (normalized < r.min_margin) {
        r.min_margin = normalized;
        r.argmin = {a, b};
      }
      if (normalized < -tolerance) ++r.violations;
      if (sink) (*sink)(a, b, normalized);
    }
  }
  return r;
}

enum class Suite { mills, twodim, disc, omega_max, monotone, bounds, theorem2 };

/// Runs one verifier with its documented default grid.
inline MarginReport run_suite(Suite suite, const ScanSink* sink = nullptr) {
  switch (suite) {
    case Suite::mills:
      return scan_mills(linspace(0.0, 40.0, 4000), 1e-13, sink);
    case Suite::twodim:
      return scan_twodim(logspace(1e-6, 0.5 - 1e-6, 150), 1e-12, sink);
    case Suite::disc:
      return scan_disc(linspace(0.0, 8.0, 2000), 1e-14, sink);
    case Suite::omega_max:
      return scan_omega_max(logspace(1e-6, 0.5 - 1e-6, 200), 1e-14, sink);
    case Suite::monotone:
      return scan_monotone(efficiency_grid(), sink);
    case Suite::bounds:
      return scan_bounds(efficiency_grid(), sink);
    case Suite::theorem2:
      return scan_theorem2({0.01, 0.1, 0.3}, 200, 1e-12, sink);
  }
  throw std::domain_error("unknown suite");
}

}  // namespace sprt
