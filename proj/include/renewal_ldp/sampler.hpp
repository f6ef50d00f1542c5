/**
 * Exact sampling from the constrained pinning model by backward
 * decomposition: conditioned on a renewal at the horizon tau, the first
 * waiting time has law P[S = s] = a(s) Z^c_{tau-s} / Z^c_tau, and the
 * remainder restarts the problem at tau - s.
 *
 * Reproducibility contract: every path draws from its own mt19937_64
 * seeded through splitmix64(base_seed, path_index), so results are
 * byte-identical for a fixed seed regardless of batching or thread count.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "renewal_ldp/exact.hpp"
#include "renewal_ldp/model.hpp"

namespace renewal_ldp {

struct PathSample {
  std::vector<std::int64_t> waiting_times;  // sums to t exactly
  Vec rewards_total;
  std::uint64_t seed = 0;
};

/// One exact draw from the constrained model at horizon t, using the
/// prebuilt partition-function table (must cover t).
inline PathSample sample_path(const Model& model, const ZcTable& zc,
                              std::int64_t t, std::uint64_t seed) {
  if (t < 0 || t > zc.t_max()) {
    throw std::invalid_argument("sample_path: horizon beyond the table");
  }
  if (zc.log_zc[t] == kNegInf) {
    throw std::invalid_argument("sample_path: Z^c_t = 0, no admissible path");
  }
  std::uint64_t s0 = seed;
  std::mt19937_64 rng(splitmix64(s0));
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  PathSample out;
  out.seed = seed;
  out.rewards_total.assign(model.dim(), 0.0);

  std::int64_t tau = t;
  while (tau > 0) {
    const double u = unif(rng);
    double acc = 0.0;
    std::int64_t drawn = 0;
    for (std::int64_t s = 1; s <= tau; ++s) {
      const double lp =
          model.log_weight(s) + zc.log_zc[tau - s] - zc.log_zc[tau];
      if (lp == kNegInf) continue;
      acc += std::exp(lp);
      drawn = s;
      if (acc >= u) break;
    }
    if (drawn == 0) {
      throw std::invalid_argument("sample_path: empty conditional support");
    }
    out.waiting_times.push_back(drawn);
    const Vec f = model.reward(drawn);
    for (int i = 0; i < model.dim(); ++i) out.rewards_total[i] += f[i];
    tau -= drawn;
  }
  return out;
}

/// Independent reproducible per-path seed stream.
inline std::uint64_t path_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t s = base_seed ^ (0xA076'1D64'78BD'642FULL * (index + 1));
  return splitmix64(s);
}

struct DeviationEstimate {
  std::int64_t t = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool exact = false;  // dist_w evaluation instead of Monte Carlo
};

/**
 * P_t^c[ |W_t / t - rho| >= delta ] for each listed horizon. Scalar
 * integer rewards use the exact distribution; everything else falls back
 * to Monte Carlo with a Wilson 95% interval.
 */
inline std::vector<DeviationEstimate> deviation_probability(
    const Model& model, std::span<const std::int64_t> t_list,
    std::span<const double> rho, double delta, std::int64_t n_samples,
    std::uint64_t seed) {
  std::vector<DeviationEstimate> out;
  const bool can_exact = model.dim() == 1;
  for (std::int64_t t : t_list) {
    DeviationEstimate est;
    est.t = t;
    bool done = false;
    if (can_exact) {
      try {
        const DistW d = dist_w(model, t);
        KahanSum mass;
        for (std::size_t i = 0; i < d.p.size(); ++i) {
          const double w = double(d.n_min + std::int64_t(i)) / double(t);
          if (std::abs(w - rho[0]) >= delta) mass.add(d.p[i]);
        }
        est.estimate = est.ci_low = est.ci_high = mass.value();
        est.exact = true;
        done = true;
      } catch (const std::invalid_argument&) {
        // non-integer rewards or size cap: fall through to Monte Carlo
      }
    }
    if (!done) {
      const ZcTable zc = zc_table(model, t);
      std::int64_t hits = 0;
      for (std::int64_t i = 0; i < n_samples; ++i) {
        const PathSample ps =
            sample_path(model, zc, t, path_seed(seed, std::uint64_t(i)));
        double dev = 0.0;
        for (int c = 0; c < model.dim(); ++c) {
          const double diff = ps.rewards_total[c] / double(t) - rho[c];
          dev += diff * diff;
        }
        if (std::sqrt(dev) >= delta) ++hits;
      }
      const double n = double(n_samples), x = double(hits);
      const double zq = 1.959963984540054;  // 95% normal quantile
      const double phat = x / n;
      const double denom = 1.0 + zq * zq / n;
      const double center = (phat + zq * zq / (2.0 * n)) / denom;
      const double half =
          zq / denom *
          std::sqrt(phat * (1.0 - phat) / n + zq * zq / (4.0 * n * n));
      est.estimate = phat;
      est.ci_low = std::max(0.0, center - half);
      est.ci_high = std::min(1.0, center + half);
      est.exact = false;
    }
    out.push_back(est);
  }
  return out;
}

}  // namespace renewal_ldp
