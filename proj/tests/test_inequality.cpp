#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "sprt/inequality.hpp"

using namespace sprt;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

}  // namespace

TEST_CASE("mills lemma margin") {
  CHECK(mills_lemma_margin(0.0) == 0.0);
  CHECK(rel_err(mills_lemma_margin(1.0), 0.070069550926172417) < 1e-12);
  CHECK(rel_err(mills_lemma_margin(0.5), 0.071491656684428017) < 1e-12);
  CHECK(rel_err(mills_lemma_margin(3.0), 2.8766837840684863e-4) < 1e-11);
  // far tail: the unscaled margin underflows towards +0, never negative
  const double far = mills_lemma_margin(40.0);
  CHECK(far >= 0.0);
  CHECK(far <= 1e-300);
  // the scaled form keeps a clean positive margin out there; the z^4
  // cancellation costs ~1e-7 relative accuracy, which the check absorbs
  CHECK(rel_err(mills_lemma_margin_scaled(40.0), 6.2150257419912465e-4) < 1e-5);
  CHECK_THROWS_AS(mills_lemma_margin(-0.1), std::domain_error);
}

TEST_CASE("disc estimate margin") {
  CHECK(disc_estimate_margin(0.0) == 0.0);
  CHECK(rel_err(disc_estimate_margin(1.0), 4.8572490578723856e-3) < 1e-12);
  CHECK(rel_err(disc_estimate_margin(2.0), 1.0573184666581831e-2) < 1e-12);
  CHECK(rel_err(disc_estimate_margin(6.0), 3.8349971335970675e-9) < 1e-10);
  CHECK(disc_estimate_margin(6.0) > 0.0);
  CHECK(rel_err(disc_estimate_margin(8.0), 2.4863646968181679e-15) < 1e-10);
  CHECK_THROWS_AS(disc_estimate_margin(-1.0), std::domain_error);
}

TEST_CASE("two-dimensional lemma margin") {
  CHECK(rel_err(two_dim_lemma_margin(0.25, 0.25), 0.53337574238267565) < 1e-12);
  CHECK(rel_err(two_dim_lemma_margin(0.1, 0.01), 8.6530396456140961) < 1e-12);
  CHECK(two_dim_lemma_margin(0.49, 0.01) > 0.0);
  // both addends vanish as alpha = beta -> 1/2
  double scale = 0.0;
  const double near_half = two_dim_lemma_margin(0.4999, 0.4999, &scale);
  CHECK(near_half >= 0.0);
  CHECK(near_half < 1e-7);
  CHECK(scale < 1e-4);
  CHECK_THROWS_AS(two_dim_lemma_margin(0.01, 0.1), std::domain_error);
  CHECK_THROWS_AS(two_dim_lemma_margin(0.6, 0.1), std::domain_error);
}

TEST_CASE("omega max identity margin") {
  const double m = omega_max_margin(0.02, 1e-6);
  CHECK(std::fabs(m) <= 1e-14 * omega(0.02, 1e-6));
  CHECK(omega(0.02, 1e-6) > omega(1e-6, 0.02));
  CHECK(omega_max_margin(0.3, 0.3) == 0.0);
  CHECK(omega_max_margin(1e-6, 0.02) == omega_max_margin(0.02, 1e-6));
}

TEST_CASE("default suites report zero violations") {
  for (Suite s : {Suite::mills, Suite::twodim, Suite::disc, Suite::omega_max,
                  Suite::monotone, Suite::bounds, Suite::theorem2}) {
    const MarginReport r = run_suite(s);
    INFO(r.summary());
    CHECK(r.ok());
    CHECK(r.points > 0);
  }
}

TEST_CASE("documented default grid sizes") {
  CHECK(run_suite(Suite::mills).points == 4000);
  CHECK(run_suite(Suite::disc).points == 2000);
  CHECK(run_suite(Suite::twodim).points == 150 * 151 / 2);
  CHECK(run_suite(Suite::omega_max).points == 200 * 200);
  CHECK(run_suite(Suite::monotone).points == 9999);
  CHECK(run_suite(Suite::theorem2).points == 600);
}

TEST_CASE("scan is deterministic and order-independent in its report") {
  const MarginReport a = run_suite(Suite::twodim);
  const MarginReport b = run_suite(Suite::twodim);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.argmin[0] == b.argmin[0]);
  CHECK(a.argmin[1] == b.argmin[1]);
  CHECK(a.violations == b.violations);
}

TEST_CASE("scan sink receives every grid point") {
  std::size_t count = 0;
  ScanSink sink = [&](double, double, double) { ++count; };
  const MarginReport r = scan_disc(linspace(0.0, 8.0, 100), 1e-14, &sink);
  CHECK(count == r.points);
  CHECK(r.points == 100);
}

TEST_CASE("domain errors become report-level failures with the point") {
  const MarginReport r = detail::scan_1d(
      "bad grid", std::vector<double>{1.0, 2.0, -3.0}, 1e-13,
      [](double z) { return mills_lemma_margin(z); });
  CHECK(r.failed);
  CHECK_FALSE(r.ok());
  CHECK(r.failure_point[0] == -3.0);
  CHECK(r.summary().find("FAILED") != std::string::npos);
}

TEST_CASE("theorem-2 sections stay nonnegative for other betas") {
  const MarginReport r = scan_theorem2({0.05, 0.2}, 150, 1e-12);
  INFO(r.summary());
  CHECK(r.ok());
}
