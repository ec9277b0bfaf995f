#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pentile/analysis.hpp"
#include "pentile/geometry.hpp"
#include "test_support.hpp"

using namespace pentile;
using testsupport::fd1;
using testsupport::fd2;
using testsupport::rel_err;

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
const double kCairoPerimeter = 2.0 * std::sqrt(2.0 + kSqrt3);

double cot(double x) { return std::cos(x) / std::sin(x); }

// Independent evaluation of P_n used to cross-check eval_P and as the base
// function for the finite-difference gradient oracle.
double oracle_P(int n, double k, double q) {
  const double kp = n - k;
  const double qp = (n - 2) * kPi / 2.0 - q;
  return 2.0 * std::sqrt(k * cot(q / k) + kp * cot(qp / kp));
}

}  // namespace

TEST_CASE("eval_P reference values") {
  // 3 cot(pi/3) + 2 cot(pi/4) = sqrt(3) + 2, so P5(3, pi) = 2 sqrt(2+sqrt 3).
  CHECK(eval_P(PerimeterSurfacePoint::make(5, 3.0, kPi)) ==
        doctest::Approx(kCairoPerimeter).epsilon(1e-14));
  CHECK(eval_P(PerimeterSurfacePoint::make(5, 3.0, kPi)) ==
        doctest::Approx(2.0 * std::sqrt(std::sqrt(3.0) + 2.0)).epsilon(1e-14));
  // Q3 chain anchor.
  const double p3 = eval_P(PerimeterSurfacePoint::make(3, 0.5, kPi / 8.0));
  CHECK(p3 > 4.6503);
  CHECK(p3 == doctest::Approx(4.650387624171937).epsilon(1e-13));
  // All angles pi/2 gives the unit square.
  CHECK(eval_P(PerimeterSurfacePoint::make(4, 2.0, kPi / 2.0)) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("eval_P agrees with the geometry closed form for cairo") {
  CHECK(std::abs(eval_P(PerimeterSurfacePoint::make(5, 3.0, kPi)) -
                 closed_form_perimeter(cairo_angles())) < 1e-12);
}

TEST_CASE("PerimeterSurfacePoint domain gates") {
  CHECK_THROWS_AS(PerimeterSurfacePoint::make(6, 2.0, kPi), Error);
  CHECK_THROWS_AS(PerimeterSurfacePoint::make(5, 0.0, kPi), Error);
  CHECK_THROWS_AS(PerimeterSurfacePoint::make(5, 5.0, kPi), Error);
  // theta out of range
  CHECK_THROWS_AS(PerimeterSurfacePoint::make(5, 1.0, 2.0), Error);
  // derived invariant: q + q' = (n-2) pi / 2
  const auto pt = PerimeterSurfacePoint::make(5, 3.0, kPi);
  CHECK(pt.q + pt.q_prime() == doctest::Approx(1.5 * kPi).epsilon(1e-15));
}

TEST_CASE("grad_P reproduces the four-decimal derivative table") {
  const auto table = derivative_table();
  const double expected[3][2] = {
      {-0.7217, 1.2265}, {-0.4455, 0.5334}, {-0.3091, 0.3451}};
  for (int i = 0; i < 3; ++i) {
    CHECK(table[static_cast<size_t>(i)].dk_expected == expected[i][0]);
    CHECK(table[static_cast<size_t>(i)].dq_expected == expected[i][1]);
    CHECK(table[static_cast<size_t>(i)].matches());
    const auto& entry = table[static_cast<size_t>(i)];
    CHECK(std::round(entry.computed.dk * 1e4) / 1e4 == expected[i][0]);
    CHECK(std::round(entry.computed.dq * 1e4) / 1e4 == expected[i][1]);
  }
}

TEST_CASE("grad_P matches central finite differences at random points") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> pick_n(3, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 1000) {
    const int n = pick_n(rng);
    const double k = 0.2 + (n - 0.4) * unit(rng);
    const double theta = 0.1 + (kPi / 2.0 - 0.2) * unit(rng);
    const double q = k * theta;
    const double thp = ((n - 2) * kPi / 2.0 - q) / (n - k);
    if (thp < 0.1 || thp > kPi / 2.0 - 0.1) continue;
    ++tested;
    const auto grad = grad_P(PerimeterSurfacePoint::make(n, k, q));
    const double gk = fd1([&](double kk) { return oracle_P(n, kk, q); }, k);
    const double gq = fd1([&](double qq) { return oracle_P(n, k, qq); }, q);
    worst = std::max({worst, rel_err(grad.dk, gk), rel_err(grad.dq, gq)});
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("lemma 3.2 closed forms") {
  SUBCASE("symmetric point has g' = 0 and positive discriminant") {
    // k = k' = 2, u = pi/8 gives theta = theta' = pi/4.
    const auto probe = Lemma32Probe::make(4, 2, 2, kPi / 8.0);
    CHECK(probe.theta() == doctest::Approx(kPi / 4.0));
    CHECK(probe.theta_prime() == doctest::Approx(kPi / 4.0));
    const auto eval = lemma32_eval(probe);
    CHECK(std::abs(eval.g1) < 1e-12);
    CHECK(eval.discriminant == doctest::Approx(2.0 * eval.g * eval.g2));
    CHECK(eval.discriminant > 0.0);
  }
  SUBCASE("cairo-like probe (n=5, k=3, theta=pi/3, theta'=pi/4)") {
    const double u = kPi / 6.0;  // theta = k' u = pi/3
    const auto probe = Lemma32Probe::make(5, 3, 2, u);
    CHECK(probe.theta() == doctest::Approx(kPi / 3.0));
    CHECK(probe.theta_prime() == doctest::Approx(kPi / 4.0));
    const auto eval = lemma32_eval(probe);
    // Direct closed-form evaluation: g = sqrt(3) + 2, g' = 4,
    // g'' = 32/sqrt(3) + 72.
    CHECK(eval.g == doctest::Approx(kSqrt3 + 2.0).epsilon(1e-14));
    CHECK(eval.g1 == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval.g2 ==
          doctest::Approx(32.0 / kSqrt3 + 72.0).epsilon(1e-13));
    CHECK(eval.discriminant > 0.0);
    CHECK(eval.discriminant ==
          doctest::Approx(2.0 * (kSqrt3 + 2.0) * (32.0 / kSqrt3 + 72.0) - 16.0)
              .epsilon(1e-13));
  }
  SUBCASE("derivatives match finite differences") {
    const auto probe = Lemma32Probe::make(5, 3, 2, kPi / 6.0);
    const auto eval = lemma32_eval(probe);
    auto g = [&](double u) {
      return 3.0 * cot(2.0 * u) + 2.0 * cot(3.0 * kPi / 4.0 - 3.0 * u);
    };
    CHECK(rel_err(eval.g1, fd1(g, probe.u)) < 1e-6);
    CHECK(rel_err(eval.g2, fd2(g, probe.u)) < 1e-6);
  }
  SUBCASE("domain gate") {
    CHECK_THROWS_AS(Lemma32Probe::make(5, 3, 2, 0.9), Error);  // theta too big
    CHECK_THROWS_AS(Lemma32Probe::make(5, 3, 3, 0.1), Error);  // k + k' != n
  }
}

TEST_CASE("lemma 3.2 grid scan is positive") {
  const auto report = lemma32_scan(10000, 42);
  CHECK(report.samples == 10000);
  CHECK(report.positive == report.samples);
  CHECK(report.min_discriminant > 0.0);
  CHECK(report.fd_checked > 1000);
  CHECK(report.max_fd_rel_error < 1e-6);
  CHECK(report.max_fd_rel_error_all < 1e-2);
}

TEST_CASE("lemma 3.3 closed forms") {
  SUBCASE("symmetric probe is positive") {
    // c = c' = 1, d = d' = pi/3 + 1/2, k = k' = 2 gives theta = theta' = pi/3.
    const double d = kPi / 3.0 + 0.5;
    const auto probe = Lemma33Probe::make(4.0, 1.0, 1.0, d, d, 2.0);
    CHECK(probe.theta() == doctest::Approx(kPi / 3.0));
    CHECK(probe.theta_prime() == doctest::Approx(kPi / 3.0));
    CHECK(lemma33_discriminant(probe) > 0.0);
  }
  SUBCASE("theta = pi/4, theta' = pi/3 probe is positive") {
    const double k = 1.5, kp = 2.5;
    const double c = 0.8, cp = 1.2;
    const double d = kPi / 4.0 + c / k;
    const double dp = kPi / 3.0 + cp / kp;
    const auto probe = Lemma33Probe::make(4.0, c, cp, d, dp, k);
    CHECK(probe.theta() == doctest::Approx(kPi / 4.0));
    CHECK(probe.theta_prime() == doctest::Approx(kPi / 3.0));
    CHECK(lemma33_discriminant(probe) > 0.0);
  }
  SUBCASE("min(theta, theta') above pi/3 is rejected") {
    const double theta = kPi / 2.5;  // > pi/3
    const double k = 2.0, kp = 2.0, c = 1.0, cp = 1.0;
    const double d = theta + c / k;
    const double dp = theta + cp / kp;
    CHECK_THROWS_WITH_AS(Lemma33Probe::make(4.0, c, cp, d, dp, k),
                         doctest::Contains("DomainViolation"), Error);
  }
  SUBCASE("derivatives match finite differences") {
    const double c = 0.8, cp = 1.2, d = kPi / 4.0 + 0.8 / 1.5,
                 dp = kPi / 3.0 + 1.2 / 2.5;
    const auto probe = Lemma33Probe::make(4.0, c, cp, d, dp, 1.5);
    const auto eval = lemma33_eval(probe);
    auto g = [&](double k) {
      return k * cot(d - c / k) + (4.0 - k) * cot(dp - cp / (4.0 - k));
    };
    CHECK(rel_err(eval.g1, fd1(g, probe.k)) < 1e-6);
    CHECK(rel_err(eval.g2, fd2(g, probe.k)) < 1e-6);
  }
}

TEST_CASE("lemma 3.3 scans are positive under both d interpretations") {
  const auto printed = lemma33_scan(10000, 43, true);
  CHECK(printed.positive == printed.samples);
  CHECK(printed.min_discriminant > 0.0);
  CHECK(printed.fd_checked > 1000);
  CHECK(printed.max_fd_rel_error < 1e-6);
  CHECK(printed.max_fd_rel_error_all < 1e-2);
  const auto independent = lemma33_scan(10000, 44, false);
  CHECK(independent.positive == independent.samples);
  CHECK(independent.min_discriminant > 0.0);
  CHECK(independent.fd_checked > 1000);
  CHECK(independent.max_fd_rel_error < 1e-6);
  CHECK(independent.max_fd_rel_error_all < 1e-2);
}

TEST_CASE("independent-d' lemma 3.3 fails outside the proof-valid domain") {
  // The typo-fix interpretation is not a theorem on the full probe domain:
  // a concrete counterexample with all stated invariants satisfied.
  const double n = 4.5824, k = 1.5647;
  const double c = 0.1122, cp = 0.3519, d = 0.4381, dp = 1.4739;
  const auto probe = Lemma33Probe::make(n, c, cp, d, dp, k);
  CHECK(probe.theta() < probe.theta_prime());
  CHECK(probe.theta() <= kPi / 3.0);
  CHECK(lemma33_discriminant(probe) < 0.0);
  // Direct second difference of f = sqrt(g) confirms genuine nonconvexity.
  auto f = [&](double kk) {
    return std::sqrt(kk * cot(d - c / kk) + (n - kk) * cot(dp - cp / (n - kk)));
  };
  CHECK(fd2(f, k) < 0.0);
}

TEST_CASE("vertical-line convexity cross-check between both routes") {
  // A vertical segment in (k, q) is a Lemma 3.2 line: the discriminant route
  // and the direct midpoint test must agree that f is convex along it.
  const int n = 5, k = 3, kp = 2;
  const double S = 1.5 * kPi;
  const double q_a = 3.0 * (kPi / 3.0 - 0.12);
  const double q_b = 3.0 * (kPi / 3.0 + 0.12);
  auto f = [&](double q) {
    return 0.5 * oracle_P(n, k, q);
  };
  const double gap = 0.5 * (f(q_a) + f(q_b)) - f(0.5 * (q_a + q_b));
  CHECK(gap > 0.0);
  // Same segment through the lemma parametrization theta = k' u.
  for (double q : {q_a, 0.5 * (q_a + q_b), q_b}) {
    const double u = q / (k * kp);
    const double thp = (S - q) / kp;
    REQUIRE(thp > 0.0);
    REQUIRE(thp < kPi / 2.0);
    CHECK(lemma32_discriminant(Lemma32Probe::make(n, k, kp, u)) > 0.0);
  }
}

TEST_CASE("midpoint convexity scans have zero failures") {
  for (int n = 3; n <= 5; ++n) {
    const auto scan = convexity_scan_f_n(n, 100000, 42);
    CHECK(scan.per_n.feasible);
    CHECK(scan.per_n.segments == 100000);
    CHECK(scan.per_n.failures == 0);
    CHECK(scan.per_n.worst_gap > 0.0);
    if (n == 3) {
      // k theta + k' theta' < 3 pi/2 for any triangle: printed surface empty.
      CHECK_FALSE(scan.printed.feasible);
    } else {
      CHECK(scan.printed.feasible);
      CHECK(scan.printed.failures == 0);
    }
  }
}

TEST_CASE("constraint identity") {
  SUBCASE("pure cairo limit") {
    CHECK(constraint_identity_check(0.0, 0.0, 1.0, 0.0, 0.0, 3.0, 0.0, 0.0,
                                    kPi / 3.0));
  }
  SUBCASE("f5 = 1 with k5 = 3, k5 theta5 = pi") {
    CHECK(constraint_identity_check(0.0, 0.0, 1.0, 1.0, 2.0, 3.0, 0.4, 0.7,
                                    kPi / 3.0));
  }
  SUBCASE("1000 random tuples projected onto the surface") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int passes = 0, total = 0;
    while (total < 1000) {
      const double f3 = 0.05 + 0.4 * unit(rng);
      const double f4 = 0.05 + 0.4 * unit(rng);
      const double f5 = 1.0 - f3 - f4;
      const double k3 = 0.1 + 1.8 * unit(rng);
      const double k4 = 0.1 + 2.8 * unit(rng);
      const double th3 = kPi / 4.0 + (kPi / 4.0) * unit(rng);
      const double th4 = kPi / 4.0 + (kPi / 4.0) * unit(rng);
      const double e = 3.0 * f3 + 4.0 * f4 + 5.0 * f5;
      const double k5 = (3.0 * e - 12.0 - f3 * k3 - f4 * k4) / f5;
      if (std::abs(k5) < 1e-6) continue;
      const double th5 =
          ((kPi / 3.0) * (3.0 * e - 12.0) - f3 * k3 * th3 - f4 * k4 * th4) /
          (f5 * k5);
      ++total;
      if (constraint_identity_check(f3, f4, f5, k3, k4, k5, th3, th4, th5)) {
        ++passes;
      }
    }
    CHECK(passes == 1000);
  }
  SUBCASE("precondition violation is reported") {
    CHECK_THROWS_WITH_AS(
        constraint_identity_check(0.0, 0.0, 1.0, 0.0, 0.0, 2.0, 0.0, 0.0,
                                  kPi / 3.0),
        doctest::Contains("PreconditionViolation"), Error);
    CHECK_THROWS_AS(constraint_identity_check(0.5, 0.6, -0.1, 1, 1, 1, 1, 1, 1),
                    Error);
  }
}

TEST_CASE("q bound chains") {
  const auto report = q_bound_check();
  CHECK(report.all_pass());
  CHECK(report.p5_value == doctest::Approx(kCairoPerimeter).epsilon(1e-14));
  CHECK(report.p3_value > 4.6503);
  // Frozen chain constants from the printed one-sided coefficients.
  CHECK(report.q3_constant ==
        doctest::Approx(4.371937522369149).epsilon(1e-12));
  CHECK(report.q4_constant ==
        doctest::Approx(3.9622201064366154).epsilon(1e-12));
  CHECK(report.q3_constant > 4.3718);
  CHECK(report.q4_constant > 3.9622);
  CHECK(report.q3_bracket > 0.0);
  CHECK(report.q4_bracket > 0.0);
  // Every chain value dominates the Cairo/Prismatic perimeter.
  CHECK(report.q3_constant > report.p5_value);
  CHECK(report.q4_constant > report.p5_value);
}

TEST_CASE("eval_P consistency with measured prototile perimeters") {
  const double measured = prototile(TileKind::Cairo).shape.perimeter();
  CHECK(std::abs(eval_P(PerimeterSurfacePoint::make(5, 3.0, kPi)) - measured) <
        1e-12);
}
