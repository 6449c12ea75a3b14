#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "sprt/inequality.hpp"
#include "sprt/normal.hpp"

using namespace sprt;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

struct RefRow {
  double p;
  double z;
};

std::vector<RefRow> load_reference() {
  std::ifstream in(std::string(SPRT_TEST_DATA_DIR) + "/normal_reference.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  std::vector<RefRow> rows;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string p, z;
    std::getline(ss, p, ',');
    std::getline(ss, z, ',');
    rows.push_back({std::stod(p), std::stod(z)});
  }
  return rows;
}

}  // namespace

TEST_CASE("normal_pdf reference values and symmetry") {
  CHECK(rel_err(normal_pdf(RealZ(0.0)), 0.39894228040143268) < 1e-15);
  CHECK(rel_err(normal_pdf(RealZ(1.0)), 0.24197072451914335) < 1e-15);
  CHECK(rel_err(normal_pdf(RealZ(2.5)), 0.017528300493568537) < 1e-15);
  for (double z : {0.25, 1.0, 3.5, 9.0, 20.0, 33.0})
    CHECK(normal_pdf(RealZ(-z)) == normal_pdf(RealZ(z)));
  CHECK(normal_pdf(RealZ(37.0)) > 0.0);
}

TEST_CASE("normal_cdf reference values") {
  CHECK(detail::norm_cdf(0.0) == 0.5);
  CHECK(rel_err(detail::norm_cdf(1.0), 0.84134474606854293) < 1e-15);
  CHECK(rel_err(detail::norm_cdf(-2.0), 0.022750131948179207) < 1e-14);
  CHECK(rel_err(detail::norm_cdf(1.6448536270), 0.95000000000500490) < 1e-14);
  CHECK(rel_err(detail::norm_cdf(-6.3613409), 1.0000000156542232e-10) < 1e-13);
}

TEST_CASE("normal upper tail deep values") {
  CHECK(rel_err(detail::norm_upper_tail(5.0), 2.8665157187919391e-7) < 1e-13);
  CHECK(rel_err(detail::norm_upper_tail(10.0), 7.6198530241605261e-24) < 1e-13);
  CHECK(rel_err(detail::norm_upper_tail(20.0), 2.7536241186062337e-89) < 1e-13);
  CHECK(rel_err(detail::norm_upper_tail(37.0), 5.7255712225245768e-300) < 1e-13);
}

TEST_CASE("cdf symmetry and monotonicity") {
  // strictness is checkable only while phi(z)*dz exceeds ulp(Phi); past
  // |z| ~ 7.6 the cdf plateaus at the resolution of doubles near 1
  const std::vector<double> grid = linspace(-7.5, 7.5, 1001);
  double prev = -1.0;
  for (double z : grid) {
    const double c = detail::norm_cdf(z);
    CHECK(std::fabs(c + detail::norm_cdf(-z) - 1.0) <= 1e-15);
    CHECK(c > prev);
    prev = c;
  }
  for (double z : {8.0, 12.0, 25.0, 38.0})
    CHECK(std::fabs(detail::norm_cdf(z) + detail::norm_cdf(-z) - 1.0) <= 1e-15);
}

TEST_CASE("normal_quantile reference values") {
  CHECK(normal_quantile(Probability(0.5)).value() == 0.0);
  CHECK(rel_err(normal_quantile(Probability(0.05)).value(),
                -1.6448536269514722) < 1e-15);
  CHECK(rel_err(normal_quantile(Probability(0.2)).value(),
                -0.84162123357291421) < 1e-15);
}

TEST_CASE("quantile odd symmetry") {
  // restricted to p where 1-p is representable to ~1e-13 relative accuracy;
  // below that the double 1-p itself encodes a different tail probability
  for (double p : {1e-3, 0.03, 0.111, 0.25, 0.4, 0.477}) {
    const double zp = detail::norm_quantile(p);
    const double zq = detail::norm_quantile(1.0 - p);
    CHECK(std::fabs(zq + zp) <= 1e-13 * std::max(1.0, std::fabs(zp)));
  }
}

TEST_CASE("quantile monotonicity") {
  const std::vector<double> grid = logspace(1e-300, 1.0 - 1e-16, 2001);
  double prev = -std::numeric_limits<double>::infinity();
  for (double p : grid) {
    const double z = detail::norm_quantile(p);
    CHECK(z > prev);
    prev = z;
  }
}

TEST_CASE("round trip through cdf and quantile on a log grid") {
  // p log-spaced over [1e-300, 1/2], plus the mirrored upper half.
  for (double p : logspace(1e-300, 0.5, 1500)) {
    for (double q : {p, 1.0 - p}) {
      if (q >= 1.0) continue;
      const double z = detail::norm_quantile(q);
      const double back = detail::norm_cdf(z);
      CHECK(std::fabs(back - q) / std::min(q, 1.0 - q) <= 1e-12);
    }
  }
}

TEST_CASE("committed reference table") {
  const std::vector<RefRow> rows = load_reference();
  REQUIRE(rows.size() >= 50);
  bool has_1e40 = false;
  for (const RefRow& r : rows) {
    if (r.p == 1e-40) has_1e40 = true;
    const double z = detail::norm_quantile(r.p);
    CHECK(std::fabs(z - r.z) * std::max(1.0, std::fabs(r.z)) <= 5e-14);
    const double c = detail::norm_cdf(r.z);
    CHECK(std::fabs(c - r.p) / std::min(r.p, 1.0 - r.p) <= 1e-13);
    const double back = detail::norm_cdf(z);
    CHECK(std::fabs(back - r.p) / std::min(r.p, 1.0 - r.p) <= 1e-12);
  }
  CHECK(has_1e40);
}

TEST_CASE("mills ratio values and tail-stable form") {
  CHECK(mills_ratio(RealZ(0.0)) == 1.2533141373155003);
  CHECK(rel_err(mills_ratio(RealZ(1.0)), 0.65567954241879847) < 1e-14);
  CHECK(rel_err(mills_ratio(RealZ(10.0)), 0.099028596471731921) < 1e-14);
  CHECK(rel_err(mills_ratio(RealZ(38.0)), 0.026297602974252964) < 5e-14);
  CHECK(rel_err(mills_ratio(RealZ(-5.0)), 672621.63672287925) < 1e-12);
}

TEST_CASE("classical Mills bounds hold on (0, 38]") {
  for (double z : linspace(38.0 / 4000.0, 38.0, 4000)) {
    const double m = detail::mills(z);
    CHECK(m - z / (1.0 + z * z) >= -1e-14);
    CHECK(1.0 / z - m >= -1e-14);
  }
}

TEST_CASE("as241 initializer agrees with the polished quantile") {
  for (double p : logspace(1e-300, 0.5, 400)) {
    const double a = detail::norm_quantile_as241(p);
    const double b = detail::norm_quantile(p);
    CHECK(std::fabs(a - b) <= 2e-15 * std::max(1.0, std::fabs(b)));
  }
}

TEST_CASE("domain validation of the strong types") {
  CHECK_THROWS_AS(Probability(0.0), std::domain_error);
  CHECK_THROWS_AS(Probability(1.0), std::domain_error);
  CHECK_THROWS_AS(Probability(-0.1), std::domain_error);
  CHECK_THROWS_AS(Probability(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK_THROWS_AS(RealZ(std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(RealZ(std::numeric_limits<double>::quiet_NaN()),
                  std::domain_error);
  CHECK(Probability(1e-300).value() == 1e-300);
  CHECK(RealZ(-38.0).value() == -38.0);
}
