#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "renewal_ldp/numerics.hpp"

using namespace renewal_ldp;

TEST_CASE("log_sum_exp basics") {
  std::vector<double> xs{0.0, 0.0};
  CHECK(log_sum_exp(xs) == Catch::Approx(std::log(2.0)).epsilon(1e-15));

  std::vector<double> big{1000.0, 1000.0, 1000.0};
  CHECK(log_sum_exp(big) ==
        Catch::Approx(1000.0 + std::log(3.0)).epsilon(1e-15));

  std::vector<double> empty_like{kNegInf, kNegInf};
  CHECK(log_sum_exp(empty_like) == kNegInf);

  CHECK(log_add_exp(0.0, kNegInf) == 0.0);
  CHECK(log_add_exp(-745.0, -745.0) ==
        Catch::Approx(-745.0 + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("Kahan summation keeps cancellation error small") {
  KahanSum s;
  const double tiny = 1e-16;
  s.add(1.0);
  for (int i = 0; i < 100000; ++i) s.add(tiny);
  CHECK(s.value() == Catch::Approx(1.0 + 1e5 * tiny).epsilon(1e-14));
}

TEST_CASE("power_log_sum geometric closed forms") {
  // sum x^s = x / (1 - x)
  CHECK(power_log_sum(0.0, 0, 0.5).value == Catch::Approx(1.0).epsilon(1e-14));
  // sum s x^s = x / (1 - x)^2
  CHECK(power_log_sum(-1.0, 0, 0.5).value ==
        Catch::Approx(2.0).epsilon(1e-14));
  // start offset: sum_{s>=3} x^s = x^3 / (1 - x)
  CHECK(power_log_sum(0.0, 0, 0.5, 3).value ==
        Catch::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("power_log_sum zeta values") {
  CHECK(power_log_sum(1.5, 0, 1.0).value ==
        Catch::Approx(oracles::kZeta32).epsilon(1e-12));
  CHECK(power_log_sum(2.5, 0, 1.0).value ==
        Catch::Approx(oracles::kZeta52).epsilon(1e-12));
  CHECK(riemann_zeta(2.0) ==
        Catch::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
}

TEST_CASE("power_log_sum divergence is proven, not overflowed") {
  CHECK(!power_log_sum(1.0, 0, 1.0).is_finite());
  CHECK(!power_log_sum(0.5, 0, 1.0).is_finite());
  CHECK(!power_log_sum(5.0, 0, 1.5).is_finite());
  CHECK(power_log_sum(1.0001, 0, 1.0).is_finite());
}

TEST_CASE("Euler-Maclaurin path agrees with brute force near x = 1") {
  // x = 0.9995 sits on the EM path; 10^6 brute-force terms converge there
  for (double nu : {0.7, 1.5, 2.5}) {
    for (int q : {0, 1, 2}) {
      const double em = power_log_sum(nu, q, 0.9995).value;
      const double brute = oracles::brute_series(nu, q, 0.9995, 1, 1000000);
      CHECK(em == Catch::Approx(brute).epsilon(1e-10));
    }
  }
}

TEST_CASE("direct path agrees with brute force at moderate x") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    const double nu = 4.0 * unif(rng) - 1.0;
    const double x = 0.999 * unif(rng);
    const int q = it % 3;
    const double got = power_log_sum(nu, q, x).value;
    const double brute = oracles::brute_series(nu, q, x, 1, 1000000);
    CHECK(got == Catch::Approx(brute).margin(1e-10 * (1.0 + std::abs(brute))));
  }
}

TEST_CASE("power_log_sum error bounds hold against brute force") {
  const SeriesValue sv = power_log_sum(2.0, 1, 0.99);
  const double brute = oracles::brute_series(2.0, 1, 0.99, 1, 1000000);
  CHECK(std::abs(sv.value - brute) <= sv.abs_error + 1e-12);
}

TEST_CASE("regularized incomplete gamma") {
  // Q(1, x) = e^{-x}
  CHECK(gamma_q(1.0, 2.5) == Catch::Approx(std::exp(-2.5)).epsilon(1e-12));
  // Q(0.5, x) = erfc(sqrt(x))
  CHECK(gamma_q(0.5, 1.44) ==
        Catch::Approx(std::erfc(1.2)).epsilon(1e-12));
  // chi-square with 4 dof at its mean: Q(2, 2)
  CHECK(gamma_q(2.0, 2.0) ==
        Catch::Approx(3.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(gamma_q(3.0, 0.0) == 1.0);
}

TEST_CASE("splitmix64 is deterministic and well spread") {
  std::uint64_t s1 = 42, s2 = 42;
  CHECK(splitmix64(s1) == splitmix64(s2));
  std::uint64_t s = 0;
  std::uint64_t x1 = splitmix64(s);
  std::uint64_t x2 = splitmix64(s);
  CHECK(x1 != x2);
}
