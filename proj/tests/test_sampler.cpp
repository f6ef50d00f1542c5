#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "renewal_ldp/sampler.hpp"

using namespace renewal_ldp;

TEST_CASE("deterministic renewals sample the only path") {
  const Model m = make_dirac(1, 1.0);
  const ZcTable zc = zc_table(m, 20);
  const PathSample ps = sample_path(m, zc, 20, 99);
  REQUIRE(ps.waiting_times.size() == 20);
  for (std::int64_t s : ps.waiting_times) CHECK(s == 1);
  CHECK(ps.rewards_total[0] == 20.0);
}

TEST_CASE("paths partition the horizon and accumulate rewards") {
  const Model m = oracles::geometric_model();
  const ZcTable zc = zc_table(m, 200);
  for (std::uint64_t seed : {1ull, 2ull, 77ull}) {
    const PathSample ps = sample_path(m, zc, 200, seed);
    std::int64_t total = 0;
    for (std::int64_t s : ps.waiting_times) total += s;
    CHECK(total == 200);
    CHECK(ps.rewards_total[0] == double(ps.waiting_times.size()));
  }
}

TEST_CASE("identical seeds reproduce identical paths") {
  const Model m = oracles::geometric_model();
  const ZcTable zc = zc_table(m, 100);
  const PathSample a = sample_path(m, zc, 100, 31337);
  const PathSample b = sample_path(m, zc, 100, 31337);
  CHECK(a.waiting_times == b.waiting_times);
  const PathSample c = sample_path(m, zc, 100, 31338);
  CHECK(a.waiting_times != c.waiting_times);
}

TEST_CASE("sampled renewal counts pass a chi-square test against the DP") {
  const Model m = oracles::geometric_model();
  const std::int64_t t = 50;
  const ZcTable zc = zc_table(m, t);
  const DistW d = dist_w(m, t);
  const std::int64_t n_samples = 100000;

  std::vector<std::int64_t> observed(d.p.size(), 0);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const PathSample ps = sample_path(m, zc, t, path_seed(424242, i));
    const std::int64_t n = std::int64_t(ps.waiting_times.size());
    REQUIRE(n >= d.n_min);
    REQUIRE(n < d.n_min + std::int64_t(d.p.size()));
    ++observed[std::size_t(n - d.n_min)];
  }
  const double pval = oracles::chi_square_pvalue(observed, d.p, n_samples);
  CHECK(pval > 0.001);
}

TEST_CASE("Monte Carlo deviation estimates match the exact distribution") {
  const Model m = oracles::geometric_model();
  const std::int64_t t = 100;
  const double delta = 0.1, rho = 0.5;
  const DistW d = dist_w(m, t);
  double exact = 0.0;
  for (std::size_t i = 0; i < d.p.size(); ++i) {
    const double w = double(d.n_min + std::int64_t(i)) / double(t);
    if (std::abs(w - rho) >= delta) exact += d.p[i];
  }

  const ZcTable zc = zc_table(m, t);
  const std::int64_t n_samples = 20000;
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const PathSample ps = sample_path(m, zc, t, path_seed(777, i));
    const double w = ps.rewards_total[0] / double(t);
    if (std::abs(w - rho) >= delta) ++hits;
  }
  const double phat = double(hits) / double(n_samples);
  const double se = std::sqrt(exact * (1.0 - exact) / double(n_samples));
  CHECK(std::abs(phat - exact) <= 4.0 * se + 1e-12);
}

TEST_CASE("deviation_probability uses the exact path for integer rewards") {
  const Model m = oracles::geometric_model();
  const std::vector<std::int64_t> ts{50, 100};
  const std::vector<double> rho{0.5};
  const auto est = deviation_probability(m, ts, rho, 0.1, 1000, 1);
  REQUIRE(est.size() == 2);
  for (const auto& e : est) {
    CHECK(e.exact);
    CHECK(e.estimate >= 0.0);
    CHECK(e.estimate <= 1.0);
  }
  // exponential decay: estimate shrinks with t
  CHECK(est[1].estimate < est[0].estimate);
}

TEST_CASE("deviation probability of deterministic renewals is zero") {
  const Model m = make_dirac(1, 1.0);
  const std::vector<std::int64_t> ts{10};
  const std::vector<double> rho{1.0};
  const auto est = deviation_probability(m, ts, rho, 0.05, 100, 3);
  CHECK(est[0].estimate == 0.0);
}
