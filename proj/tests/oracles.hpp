/**
 * Test-side oracles, deliberately independent of the library's numeric
 * paths: brute-force series summation, finite differences, random model
 * generation, closed-form references, and a chi-square goodness-of-fit
 * helper. Anything the library computes cleverly is recomputed here the
 * dumb way.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "renewal_ldp/free_energy.hpp"
#include "renewal_ldp/model.hpp"
#include "renewal_ldp/series.hpp"

namespace oracles {

using renewal_ldp::Model;
using renewal_ldp::RewardSpec;
using renewal_ldp::TailSpec;
using renewal_ldp::Vec;
using renewal_ldp::WeightModel;

// frozen reference constants
inline constexpr double kZeta32 = 2.612375348685488;   // zeta(3/2)
inline constexpr double kZeta52 = 1.341487257250917;   // zeta(5/2)

/// Plain term-by-term sum of t^{-nu} (ln t)^q x^t over n_terms terms.
inline double brute_series(double nu, int q, double x, std::int64_t from,
                           std::int64_t n_terms) {
  long double acc = 0.0L;
  for (std::int64_t t = from; t < from + n_terms; ++t) {
    const long double lt = std::log((long double)t);
    long double term = std::exp(-nu * lt + t * std::log((long double)x));
    for (int i = 0; i < q; ++i) term *= lt;
    acc += term;
  }
  return double(acc);
}

/// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Geometric pinning model: a(s) = 2^{-s}, f == 1, with base law.
inline Model geometric_model(std::int64_t s_head = 48) {
  return renewal_ldp::make_geometric(0.0, s_head).count_model();
}

/// Closed forms for the geometric model.
inline double geometric_z(double k) {
  return std::log1p(std::exp(k)) - std::log(2.0);
}
inline double geometric_rate(double w) {
  if (w < 0.0 || w > 1.0) return renewal_ldp::kInf;
  double v = std::log(2.0);
  if (w > 0.0) v += w * std::log(w);
  if (w < 1.0) v += (1.0 - w) * std::log(1.0 - w);
  return v;
}

/// log C(n, k) via lgamma.
inline double log_binom(std::int64_t n, std::int64_t k) {
  return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
         std::lgamma(double(n - k + 1));
}

/**
 * Random valid model, scalar or 2-vector rewards. Guarantees aperiodic
 * support and finite reward bound; roughly half get an analytic tail.
 */
inline Model random_model(std::mt19937_64& rng, int dim = 1,
                          bool force_tail = false,
                          bool integer_rewards = false) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> head_len(3, 10);
  const int n = head_len(rng);

  std::vector<double> head(std::size_t(n), 0.0);
  for (int s = 1; s <= n; ++s) {
    head[s - 1] = unif(rng) < 0.8 ? std::exp(-1.5 * unif(rng) * s) : 0.0;
  }
  head[0] = std::max(head[0], 0.05);  // s = 1 in support: aperiodic

  const bool tail = force_tail || unif(rng) < 0.5;
  WeightModel w;
  w.head = head;
  w.dim = dim;
  if (tail) {
    TailSpec ts;
    ts.amplitude = 0.1 + unif(rng);
    ts.power = 1.2 + 3.0 * unif(rng);
    ts.rate = -0.2 - 1.5 * unif(rng);
    w.tail = ts;
  }

  RewardSpec rw;
  rw.head.resize(std::size_t(n));
  std::uniform_int_distribution<int> small_int(-2, 3);
  for (int s = 1; s <= n; ++s) {
    Vec f(std::size_t(dim), 0.0);
    for (int i = 0; i < dim; ++i) {
      f[std::size_t(i)] = integer_rewards ? double(small_int(rng))
                                          : 4.0 * unif(rng) - 1.0;
    }
    rw.head[s - 1] = f;
  }
  rw.tail_slope.assign(std::size_t(dim), 0.0);
  rw.tail_offset.assign(std::size_t(dim), 0.0);
  rw.tail_log.assign(std::size_t(dim), 0.0);
  for (int i = 0; i < dim; ++i) {
    rw.tail_slope[std::size_t(i)] =
        integer_rewards ? double(small_int(rng) % 2) : unif(rng) - 0.5;
    rw.tail_offset[std::size_t(i)] =
        integer_rewards ? 1.0 : unif(rng) - 0.5;
    if (!integer_rewards && unif(rng) < 0.3) {
      rw.tail_log[std::size_t(i)] = 0.5 * unif(rng);
    }
  }
  return Model(std::move(w), std::move(rw));
}

/// Pearson chi-square p-value of observed counts against expected
/// probabilities; bins with expectation below 5 are pooled.
inline double chi_square_pvalue(const std::vector<std::int64_t>& observed,
                                const std::vector<double>& expected_p,
                                std::int64_t n_total) {
  double stat = 0.0;
  int bins = 0;
  double pool_o = 0.0, pool_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected_p[i] * double(n_total);
    const double o = double(observed[i]);
    if (e < 5.0) {
      pool_o += o;
      pool_e += e;
      if (pool_e >= 5.0) {
        stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
        ++bins;
        pool_o = pool_e = 0.0;
      }
    } else {
      stat += (o - e) * (o - e) / e;
      ++bins;
    }
  }
  if (pool_e > 0.0) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / std::max(pool_e, 1e-12);
    ++bins;
  }
  const int df = bins - 1;
  if (df < 1) return 1.0;
  return renewal_ldp::gamma_q(0.5 * df, 0.5 * stat);
}

}  // namespace oracles
