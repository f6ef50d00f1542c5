/**
 * Exact finite-horizon computations used as oracles for the asymptotic
 * machinery: the constrained partition function, the exact distribution of
 * integer cumulative rewards, the base renewal mass, gap-count statistics
 * of renewal-indicator strings, and exhaustive enumeration of the
 * constrained Gibbs marginal at small horizons.
 *
 * All dynamic programs run in the plain domain after tilting the weights
 * by e^{-z(0) s}, which keeps magnitudes O(1); per-row log offsets absorb
 * whatever drift remains, so deep-tail probabilities (down to e^{-700} per
 * row) come out exact in log form.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "renewal_ldp/free_energy.hpp"
#include "renewal_ldp/model.hpp"

namespace renewal_ldp {

// ---------------------------------------------------------------------------
// Constrained partition function
// ---------------------------------------------------------------------------

struct ZcTable {
  std::vector<double> log_zc;  // log Z^c_0 .. log Z^c_t_max; -inf where 0

  std::int64_t t_max() const { return std::int64_t(log_zc.size()) - 1; }
};

/// log Z^c_t by the renewal recursion Z^c_t = sum_{s<=t} a(s) Z^c_{t-s}.
inline ZcTable zc_table(const Model& model, std::int64_t t_max) {
  if (t_max < 0 || t_max > 100000) {
    throw std::invalid_argument("zc_table: horizon out of range");
  }
  std::vector<double> la(std::size_t(t_max) + 1, kNegInf);
  for (std::int64_t s = 1; s <= t_max; ++s) la[s] = model.log_weight(s);

  ZcTable out;
  out.log_zc.assign(std::size_t(t_max) + 1, kNegInf);
  out.log_zc[0] = 0.0;
  std::vector<double> terms;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    terms.clear();
    for (std::int64_t s = 1; s <= t; ++s) {
      const double v = la[s] + out.log_zc[t - s];
      if (v != kNegInf) terms.push_back(v);
    }
    out.log_zc[t] = terms.empty() ? kNegInf : log_sum_exp(terms);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact reward distributions
// ---------------------------------------------------------------------------

struct DistW {
  std::int64_t t = 0;
  std::int64_t n_min = 0;            // reward value of index 0
  std::vector<double> p;             // P[W_t = n_min + i]
  std::vector<double> log_p;         // exact log probabilities

  double prob(std::int64_t n) const {
    const std::int64_t i = n - n_min;
    if (i < 0 || i >= std::int64_t(p.size())) return 0.0;
    return p[std::size_t(i)];
  }
  double log_prob(std::int64_t n) const {
    const std::int64_t i = n - n_min;
    if (i < 0 || i >= std::int64_t(p.size())) return kNegInf;
    return log_p[std::size_t(i)];
  }
};

namespace detail {

/// True when f(s) == 1 on the whole support (renewal counting).
inline bool is_unit_reward(const Model& model, std::int64_t horizon) {
  if (model.dim() != 1) return false;
  const RewardSpec& rw = model.rewards();
  if (model.has_tail() &&
      (rw.tail_slope[0] != 0.0 || rw.tail_offset[0] != 1.0 ||
       rw.tail_log[0] != 0.0)) {
    return false;
  }
  const std::int64_t check = std::min(horizon, model.head_size());
  for (std::int64_t s = 1; s <= check; ++s) {
    if (model.in_support(s) && model.reward(s)[0] != 1.0) return false;
  }
  return true;
}

/// Tilt exponent keeping the DP O(1) per entry: z(0) off Theta, the
/// boundary value ell on it.
inline double dp_tilt(const Model& model) {
  return free_energy(model, std::vector<double>{0.0}).z;
}

/// Renewal-count distribution: rows r_j(t) = sum over j-part compositions
/// of t of the tilted weights, built by repeated convolution; the common
/// tilt factor cancels in the normalization.
inline DistW dist_counts(const Model& model, std::int64_t t) {
  const double zeta = dp_tilt(model);
  std::vector<double> q(std::size_t(t) + 1, 0.0);
  for (std::int64_t s = 1; s <= t; ++s) {
    q[s] = std::exp(model.log_weight(s) - zeta * double(s));
  }

  std::vector<double> row(q), next(std::size_t(t) + 1, 0.0);
  std::vector<double> log_rows;       // log r_j(t), j = 1..t
  std::vector<double> offsets{0.0};   // log rescale accumulated per row
  log_rows.push_back(row[t] > 0.0 ? std::log(row[t]) : kNegInf);

  for (std::int64_t j = 2; j <= t; ++j) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::int64_t u = j; u <= t; ++u) {
      double acc = 0.0;
      // row holds r_{j-1}, nonzero on [j-1, t]
      for (std::int64_t s = 1; s <= u - (j - 1); ++s) {
        acc += q[s] * row[u - s];
      }
      next[u] = acc;
    }
    double rowmax = 0.0;
    for (std::int64_t u = j; u <= t; ++u) rowmax = std::max(rowmax, next[u]);
    if (rowmax == 0.0) break;  // everything below underflow: genuinely tiny
    double off = offsets.back();
    if (rowmax < 1e-200) {
      // rescale to keep the next convolution above the flush region
      const double scale = 1.0 / rowmax;
      for (std::int64_t u = j; u <= t; ++u) next[u] *= scale;
      off -= std::log(scale);
    }
    offsets.push_back(off);
    log_rows.push_back(next[t] > 0.0 ? std::log(next[t]) + off : kNegInf);
    row.swap(next);
  }

  DistW out;
  out.t = t;
  out.n_min = 1;
  const std::size_t m = log_rows.size();
  std::vector<double> logs(m);
  for (std::size_t j = 0; j < m; ++j) logs[j] = log_rows[j];
  const double total = log_sum_exp(logs);
  out.p.resize(m);
  out.log_p.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.log_p[j] = logs[j] - total;
    out.p[j] = std::exp(out.log_p[j]);
  }
  return out;
}

/// General integer scalar rewards: time-indexed DP over reward values.
inline DistW dist_general(const Model& model, std::int64_t t) {
  // integer check and reward range over reachable s
  std::vector<std::int64_t> f(std::size_t(t) + 1, 0);
  for (std::int64_t s = 1; s <= t; ++s) {
    if (!model.in_support(s)) continue;
    const double v = model.reward(s)[0];
    const double rv = std::nearbyint(v);
    if (std::abs(v - rv) > 1e-9) {
      throw std::invalid_argument("dist_W: non-integer reward");
    }
    f[s] = std::int64_t(rv);
  }
  double ratio_lo = 0.0, ratio_hi = 0.0;  // extremes of f(s)/s, at least 0
  for (std::int64_t s = 1; s <= t; ++s) {
    if (!model.in_support(s)) continue;
    ratio_lo = std::min(ratio_lo, double(f[s]) / double(s));
    ratio_hi = std::max(ratio_hi, double(f[s]) / double(s));
  }
  const std::int64_t n_lo = std::int64_t(std::floor(ratio_lo * double(t)));
  const std::int64_t n_hi = std::int64_t(std::ceil(ratio_hi * double(t)));
  const std::int64_t width = n_hi - n_lo + 1;
  if (t > 2000 || width > 4000000 / std::max<std::int64_t>(t, 1)) {
    throw std::invalid_argument("dist_W: general DP size cap exceeded");
  }

  const double zeta = dp_tilt(model);
  std::vector<double> q(std::size_t(t) + 1, 0.0);
  for (std::int64_t s = 1; s <= t; ++s) {
    q[s] = std::exp(model.log_weight(s) - zeta * double(s));
  }

  // D[time][n - n_lo]; D[0] = delta at reward 0
  std::vector<std::vector<double>> D(
      std::size_t(t) + 1, std::vector<double>(std::size_t(width), 0.0));
  D[0][std::size_t(-n_lo)] = 1.0;
  for (std::int64_t tt = 1; tt <= t; ++tt) {
    auto& row = D[tt];
    for (std::int64_t s = 1; s <= tt; ++s) {
      if (q[s] == 0.0) continue;
      const auto& prev = D[tt - s];
      const std::int64_t shift = f[s];
      for (std::int64_t i = 0; i < width; ++i) {
        const std::int64_t src = i - shift;
        if (src >= 0 && src < width && prev[src] != 0.0) {
          row[i] += q[s] * prev[src];
        }
      }
    }
  }

  DistW out;
  out.t = t;
  const auto& fin = D[t];
  std::int64_t first = -1, last = -1;
  double total = 0.0;
  for (std::int64_t i = 0; i < width; ++i) {
    if (fin[i] > 0.0) {
      if (first < 0) first = i;
      last = i;
      total += fin[i];
    }
  }
  if (first < 0) throw std::invalid_argument("dist_W: horizon unreachable");
  out.n_min = n_lo + first;
  out.p.resize(std::size_t(last - first + 1), 0.0);
  out.log_p.resize(out.p.size(), kNegInf);
  for (std::int64_t i = first; i <= last; ++i) {
    out.p[i - first] = fin[i] / total;
    if (fin[i] > 0.0) {
      out.log_p[i - first] = std::log(fin[i]) - std::log(total);
    }
  }
  return out;
}

}  // namespace detail

/// Exact law of the cumulative reward W_t under the constrained model.
/// Requires an integer-valued scalar reward.
inline DistW dist_w(const Model& model, std::int64_t t) {
  if (model.dim() != 1) {
    throw std::invalid_argument("dist_W: scalar rewards only");
  }
  if (t < 1 || t > 100000) {
    throw std::invalid_argument("dist_W: horizon out of range");
  }
  if (detail::is_unit_reward(model, t)) return detail::dist_counts(model, t);
  return detail::dist_general(model, t);
}

// ---------------------------------------------------------------------------
// Base renewal mass and regenerative identities
// ---------------------------------------------------------------------------

/// u_t = P[renewal at t] under the base law; u_0 = 1.
inline std::vector<double> renewal_mass(const BaseLaw& base,
                                        std::int64_t t_max) {
  std::vector<double> u(std::size_t(t_max) + 1, 0.0);
  u[0] = 1.0;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    KahanSum acc;
    for (std::int64_t s = 1; s <= t; ++s) acc.add(base.p(s) * u[t - s]);
    u[t] = acc.value();
  }
  return u;
}

/// Number of gaps of length s in the indicator string (u_0 = 1, u_1..u_t):
/// sum_i u_i u_{i+s} prod_{i<j<i+s} (1 - u_j).
inline std::int64_t gap_counts(std::span<const int> u, std::int64_t s) {
  const std::int64_t t = std::int64_t(u.size()) - 1;
  std::int64_t count = 0;
  for (std::int64_t i = 0; i + s <= t; ++i) {
    int prod = u[i] * u[i + s];
    for (std::int64_t j = i + 1; j < i + s; ++j) prod *= 1 - u[j];
    count += prod;
  }
  return count;
}

struct EnumeratedMarginal {
  std::int64_t t = 0;
  double zc = 0.0;                      // sum of string weights
  std::vector<std::vector<int>> strings;  // u_0..u_t with u_0 = u_t = 1
  std::vector<double> probability;        // weight / zc
};

/// Exhaustive sweep of the 2^{t-1} indicator strings with u_t = 1, each
/// weighted by the product of gap weights.
inline EnumeratedMarginal enumerate_marginal(const Model& model,
                                             std::int64_t t) {
  if (t < 1 || t > 16) {
    throw std::invalid_argument("enumerate_marginal: need 1 <= t <= 16");
  }
  EnumeratedMarginal out;
  out.t = t;
  KahanSum total;
  const std::int64_t n_strings = std::int64_t(1) << (t - 1);
  for (std::int64_t bits = 0; bits < n_strings; ++bits) {
    std::vector<int> u(std::size_t(t) + 1, 0);
    u[0] = 1;
    u[t] = 1;
    for (std::int64_t i = 1; i < t; ++i) u[i] = int((bits >> (i - 1)) & 1);
    double w = 1.0;
    std::int64_t prev = 0;
    for (std::int64_t i = 1; i <= t; ++i) {
      if (u[i]) {
        w *= model.weight(i - prev);
        prev = i;
      }
    }
    if (w > 0.0) {
      out.strings.push_back(std::move(u));
      out.probability.push_back(w);
      total.add(w);
    }
  }
  out.zc = total.value();
  for (double& p : out.probability) p /= out.zc;
  return out;
}

/// N_t histogram implied by an enumeration, comparable to dist_w for f==1.
inline std::map<std::int64_t, double> enumeration_count_histogram(
    const EnumeratedMarginal& e) {
  std::map<std::int64_t, double> h;
  for (std::size_t i = 0; i < e.strings.size(); ++i) {
    std::int64_t n = -1;  // u_0 does not count as a renewal event
    for (int b : e.strings[i]) n += b;
    h[n] += e.probability[i];
  }
  return h;
}

}  // namespace renewal_ldp
