#pragma once

// Standard normal density, distribution, quantile and Mills ratio in double
// precision, implemented from scratch on top of Cody-style rational
// approximations of erf/erfc (netlib SPECFUN coefficients) and the AS241
// PPND16 quantile initializer. The tail is kept in complementary form
// throughout so that probabilities down to ~1e-300 keep full relative
// accuracy.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sprt {

namespace detail {

inline constexpr double inv_sqrt2_hi = 0.7071067811865476;       // fl(1/sqrt(2))
inline constexpr double inv_sqrt2_lo = -4.833646656726457e-17;   // 1/sqrt(2) - hi
inline constexpr double inv_sqrt_2pi = 0.3989422804014327;
inline constexpr double sqrt_pi_over_2 = 1.2533141373155003;
inline constexpr double two_over_sqrt_pi = 1.1283791670955126;

// exp(-y*y) for y >= 0 with the argument split so that the rounding of y*y
// does not contaminate the tail (Cody's AINT(16y)/16 trick).
inline double exp_neg_sq(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

// Rational pieces of W. J. Cody's CALERF (SPECFUN, March 1990 release).
// erf on |x| <= 0.46875.
inline double erf_small(double x, double xsq) {
  static constexpr double a[5] = {3.1611237438705656, 113.864154151050156,
                                  377.485237685302021, 3209.37758913846947,
                                  0.185777706184603153};
  static constexpr double b[4] = {23.6012909523441209, 244.024637934444173,
                                  1282.61652607737228, 2844.23683343917062};
  double num = a[4] * xsq;
  double den = xsq;
  for (int i = 0; i < 3; ++i) {
    num = (num + a[i]) * xsq;
    den = (den + b[i]) * xsq;
  }
  return x * (num + a[3]) / (den + b[3]);
}

// exp(x*x)*erfc(x) on 0.46875 < x <= 4.
inline double erfcx_mid(double x) {
  static constexpr double c[9] = {
      0.564188496988670089, 8.88314979438837594, 66.1191906371416295,
      298.635138197400131,  881.95222124176909,  1712.04761263407058,
      2051.07837782607147,  1230.33935479799725, 2.15311535474403846e-8};
  static constexpr double d[8] = {15.7449261107098347, 117.693950891312499,
                                  537.181101862009858, 1621.38957456669019,
                                  3290.79923573345963, 4362.61909014324716,
                                  3439.36767414372164, 1230.33935480374942};
  double num = c[8] * x;
  double den = x;
  for (int i = 0; i < 7; ++i) {
    num = (num + c[i]) * x;
    den = (den + d[i]) * x;
  }
  return (num + c[7]) / (den + d[7]);
}

// exp(x*x)*erfc(x) on x > 4.
inline double erfcx_far(double x) {
  static constexpr double p[6] = {0.305326634961232344, 0.360344899949804439,
                                  0.125781726111229246, 0.0160837851487422766,
                                  6.58749161529837803e-4, 0.0163153871373020978};
  static constexpr double q[5] = {2.56852019228982242, 1.87295284992346047,
                                  0.527905102951428412, 0.0605183413124413191,
                                  0.00233520497626869185};
  static constexpr double sqrpi = 0.56418958354775628695;  // 1/sqrt(pi)
  const double xsq = 1.0 / (x * x);
  double num = p[5] * xsq;
  double den = xsq;
  for (int i = 0; i < 4; ++i) {
    num = (num + p[i]) * xsq;
    den = (den + q[i]) * xsq;
  }
  const double r = xsq * (num + p[4]) / (den + q[4]);
  return (sqrpi - r) / x;
}

// exp(x*x)*erfc(x) for x >= 0. Stays finite for all x.
inline double erfcx_pos(double x) {
  if (x <= 0.46875) {
    const double xsq = x * x;
    return std::exp(xsq) * (1.0 - erf_small(x, xsq));
  }
  if (x <= 4.0) return erfcx_mid(x);
  return erfcx_far(x);
}

// erfc(x + dx) for x >= 0 and |dx| ~ ulp(x), to first order in dx. The
// correction removes the rounding of the z/sqrt(2) argument reduction, which
// otherwise costs ~2*x^2*eps relative error deep in the tail.
inline double erfc_shifted(double x, double dx) {
  if (x <= 0.46875) {
    const double xsq = x * x;
    const double e = std::exp(-xsq);
    return 1.0 - erf_small(x, xsq) - dx * two_over_sqrt_pi * e;
  }
  const double r = (x <= 4.0) ? erfcx_mid(x) : erfcx_far(x);
  return exp_neg_sq(x) * (r - dx * two_over_sqrt_pi);
}

// P(Z > z) for any finite z; full relative accuracy on the small tail.
inline double norm_upper_tail(double z) {
  if (z < 0.0) return 1.0 - norm_upper_tail(-z);
  const double x = z * inv_sqrt2_hi;
  const double dx = std::fma(z, inv_sqrt2_hi, -x) + z * inv_sqrt2_lo;
  return 0.5 * erfc_shifted(x, dx);
}

inline double norm_cdf(double z) { return norm_upper_tail(-z); }

inline double norm_pdf(double z) {
  const double y = std::fabs(z);
  if (y < 2.0) return std::exp(-0.5 * y * y) * inv_sqrt_2pi;
  const double ys = std::trunc(y * 16.0) / 16.0;
  const double del = 0.5 * (y - ys) * (y + ys);
  return std::exp(-0.5 * ys * ys) * std::exp(-del) * inv_sqrt_2pi;
}

inline double mills(double z) {
  if (z >= 0.0) {
    const double x = z * inv_sqrt2_hi;
    const double dx = std::fma(z, inv_sqrt2_hi, -x) + z * inv_sqrt2_lo;
    // erfcx evaluated with the same first-order argument correction
    if (x <= 0.46875) {
      const double xsq = x * x;
      const double e = std::exp(-xsq);
      const double erfc_v = 1.0 - erf_small(x, xsq) - dx * two_over_sqrt_pi * e;
      return sqrt_pi_over_2 * std::exp(xsq) * erfc_v;
    }
    const double r = (x <= 4.0) ? erfcx_mid(x) : erfcx_far(x);
    return sqrt_pi_over_2 * (r - dx * two_over_sqrt_pi);
  }
  // M(z) = Phi(-z)/phi(z); overflows to +inf once phi underflows (z < -38.6)
  return norm_cdf(-z) / norm_pdf(z);
}

// Wichura's AS241 PPND16 rational approximation of Phi^{-1}(p), good to
// about 1e-16 relative in z over the full double range.
inline double norm_quantile_as241(double p) {
  constexpr double split1 = 0.425;
  constexpr double split2 = 5.0;
  constexpr double const1 = 0.180625;
  constexpr double const2 = 1.6;

  static constexpr double A[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e+2,
      1.9715909503065514427e+3, 1.3731693765509461125e+4,
      4.5921953931549871457e+4, 6.7265770927008700853e+4,
      3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double B[7] = {
      4.2313330701600911252e+1, 6.8718700749205790830e+2,
      5.3941960214247511077e+3, 2.1213794301586595867e+4,
      3.9307895800092710610e+4, 2.8729085735721942674e+4,
      5.2264952788528545610e+3};
  static constexpr double C[8] = {
      1.42343711074968357734e0,    4.63033784615654529590e0,
      5.76949722146069140550e0,    3.64784832476320460504e0,
      1.27045825245236838258e0,    2.41780725177450611770e-1,
      2.27238449892691845833e-2,   7.74545014278341407640e-4};
  static constexpr double D[7] = {
      2.05319162663775882187e0,  1.67638483018380384940e0,
      6.89767334985100004550e-1, 1.48103976427480074590e-1,
      1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9};
  static constexpr double E[8] = {
      6.65790464350110377720e0,  5.46378491116411436990e0,
      1.78482653991729133580e0,  2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double F[7] = {
      5.99832206555887937690e-1, 1.36929880922735805310e-1,
      1.48753612908506148525e-2, 7.86869131145613259100e-4,
      1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15};

  const double q = p - 0.5;
  if (std::fabs(q) <= split1) {
    const double r = const1 - q * q;
    const double num =
        (((((((A[7] * r + A[6]) * r + A[5]) * r + A[4]) * r + A[3]) * r +
           A[2]) * r + A[1]) * r + A[0]);
    const double den =
        (((((((B[6] * r + B[5]) * r + B[4]) * r + B[3]) * r + B[2]) * r +
           B[1]) * r + B[0]) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= split2) {
    r -= const2;
    const double num =
        (((((((C[7] * r + C[6]) * r + C[5]) * r + C[4]) * r + C[3]) * r +
           C[2]) * r + C[1]) * r + C[0]);
    const double den =
        (((((((D[6] * r + D[5]) * r + D[4]) * r + D[3]) * r + D[2]) * r +
           D[1]) * r + D[0]) * r + 1.0);
    z = num / den;
  } else {
    r -= split2;
    const double num =
        (((((((E[7] * r + E[6]) * r + E[5]) * r + E[4]) * r + E[3]) * r +
           E[2]) * r + E[1]) * r + E[0]);
    const double den =
        (((((((F[6] * r + F[5]) * r + F[4]) * r + F[3]) * r + F[2]) * r +
           F[1]) * r + F[0]) * r + 1.0);
    z = num / den;
  }
  return (q < 0.0) ? -z : z;
}

// AS241 polished by one second-order Newton step against norm_upper_tail.
inline double norm_quantile(double p) {
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -norm_quantile(1.0 - p);  // 1-p is exact here
  double z = norm_quantile_as241(p);
  const double pdf = norm_pdf(z);
  if (pdf > 1e-305) {
    const double r = (norm_upper_tail(-z) - p) / pdf;
    z -= r * (1.0 - 0.5 * z * r);
  }
  return z;
}

}  // namespace detail

// A probability constrained to the open interval (0,1).
class Probability {
 public:
  explicit Probability(double v) : v_(v) {
    if (!(v > 0.0) || !(v < 1.0))
      throw std::domain_error("Probability must lie strictly in (0,1), got " +
                              std::to_string(v));
  }
  double value() const { return v_; }

 private:
  double v_;
};

// A finite standard-normal abscissa.
class RealZ {
 public:
  explicit RealZ(double v) : v_(v) {
    if (!std::isfinite(v)) throw std::domain_error("RealZ must be finite");
  }
  double value() const { return v_; }

 private:
  double v_;
};

/// Standard normal density phi(z).
inline double normal_pdf(RealZ z) { return detail::norm_pdf(z.value()); }

/// Standard normal distribution function Phi(z).
inline double normal_cdf(RealZ z) { return detail::norm_cdf(z.value()); }

/// Upper tail P(Z > z) = 1 - Phi(z), accurate in relative terms for large z.
inline double normal_tail(RealZ z) {
  return detail::norm_upper_tail(z.value());
}

/// Quantile Phi^{-1}(p).
inline RealZ normal_quantile(Probability p) {
  return RealZ(detail::norm_quantile(p.value()));
}

/// Mills ratio M(z) = (1 - Phi(z))/phi(z), computed in scaled form so it
/// stays accurate far into the right tail.
inline double mills_ratio(RealZ z) { return detail::mills(z.value()); }

}  // namespace sprt
