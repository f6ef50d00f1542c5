/**
 * Pinning-model description: Boltzmann weights a(s) = e^{v(s)} p(s) as a
 * finite head table plus an optional analytic tail, vector rewards f(s),
 * and the underlying base law (p, v, defect mass).
 *
 * Tail family:   a(s) = A * (s - shift)^(-power) * e^(rate * s)
 * Reward tail:   f(s) = r*s + kappa0 + kappa1 * ln(s - shift)
 *
 * The shift accommodates loop-length conventions (entropy of a loop of
 * length s-1) while keeping every tail series polylog-summable.
 *
 * Everything here is immutable after construction; Model instances can be
 * shared freely across threads.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "renewal_ldp/numerics.hpp"

namespace renewal_ldp {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Analytic tail A * (s - shift)^(-power) * e^(rate * s) for s > S_head.
struct TailSpec {
  double amplitude = 1.0;  // A > 0
  double power = 0.0;      // gamma
  double rate = 0.0;       // per-step log scale; equals ell when attached to weights
  int shift = 0;           // 0 <= shift <= S_head

  double log_value(std::int64_t s) const {
    return std::log(amplitude) - power * std::log(double(s - shift)) +
           rate * double(s);
  }
};

/// Vector reward f(s): explicit head plus r*s + kappa0 + kappa1*ln(s-shift).
struct RewardSpec {
  std::vector<Vec> head;  // f(1..S_head), each of size dim
  Vec tail_slope;         // r
  Vec tail_offset;        // kappa0
  Vec tail_log;           // kappa1
  int shift = 0;

  int dim() const { return int(tail_slope.size()); }

  Vec value(std::int64_t s) const {
    if (s >= 1 && s <= std::int64_t(head.size())) return head[s - 1];
    Vec f(tail_slope.size());
    const double ls = std::log(double(s - shift));
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = tail_slope[i] * double(s) + tail_offset[i] + tail_log[i] * ls;
    }
    return f;
  }
};

/// Waiting-time law p with potential v and explicit defect mass.
struct BaseLaw {
  std::vector<double> p_head;
  std::optional<TailSpec> p_tail;
  std::vector<double> v_head;
  double v_tail = 0.0;
  double mass_at_infinity = 0.0;

  double p(std::int64_t s) const {
    if (s >= 1 && s <= std::int64_t(p_head.size())) return p_head[s - 1];
    if (p_tail && s > std::int64_t(p_head.size())) {
      return std::exp(p_tail->log_value(s));
    }
    return 0.0;
  }
  double log_p(std::int64_t s) const {
    if (s >= 1 && s <= std::int64_t(p_head.size())) {
      return p_head[s - 1] > 0.0 ? std::log(p_head[s - 1]) : kNegInf;
    }
    if (p_tail && s > std::int64_t(p_head.size())) return p_tail->log_value(s);
    return kNegInf;
  }
  double v(std::int64_t s) const {
    if (s >= 1 && s <= std::int64_t(v_head.size())) return v_head[s - 1];
    return v_tail;
  }
};

/// Boltzmann weights a(s) = e^{v(s)} p(s).
struct WeightModel {
  std::vector<double> head;  // a(1..S_head)
  std::optional<TailSpec> tail;
  int dim = 1;
};

struct ValidationReport {
  bool passed = false;
  double ell = kNegInf;
  double z_sup = kNegInf;    // extensivity witness: sup_s (1/s) ln a(s)
  double reward_bound = 0.0; // M = sup_s ||f(s)||/s over the support
  Vec r;
  std::int64_t support_gcd = 0;
  std::int64_t s_min = 0;    // smallest support element
  int dim = 0;
  std::vector<std::string> messages;
};

/// A weight model paired with its rewards (and, when known, base law),
/// with the derived quantities every downstream module needs.
class Model {
 public:
  Model(WeightModel weights, RewardSpec rewards,
        std::optional<BaseLaw> base = std::nullopt)
      : weights_(std::move(weights)),
        rewards_(std::move(rewards)),
        base_(std::move(base)) {
    finalize();
  }

  const WeightModel& weights() const { return weights_; }
  const RewardSpec& rewards() const { return rewards_; }
  const std::optional<BaseLaw>& base() const { return base_; }

  int dim() const { return weights_.dim; }
  bool has_tail() const { return weights_.tail.has_value(); }
  std::int64_t head_size() const { return std::int64_t(weights_.head.size()); }

  double ell() const { return ell_; }
  double z_sup() const { return z_sup_; }
  double reward_bound() const { return reward_bound_; }
  const Vec& r() const { return r_; }
  std::int64_t support_gcd() const { return support_gcd_; }
  std::int64_t s_min() const { return s_min_; }

  double weight(std::int64_t s) const {
    if (s >= 1 && s <= head_size()) return weights_.head[s - 1];
    if (weights_.tail && s > head_size()) {
      return std::exp(weights_.tail->log_value(s));
    }
    return 0.0;
  }
  double log_weight(std::int64_t s) const {
    if (s >= 1 && s <= head_size()) {
      return weights_.head[s - 1] > 0.0 ? std::log(weights_.head[s - 1])
                                        : kNegInf;
    }
    if (weights_.tail && s > head_size()) return weights_.tail->log_value(s);
    return kNegInf;
  }
  bool in_support(std::int64_t s) const {
    if (s >= 1 && s <= head_size()) return weights_.head[s - 1] > 0.0;
    return weights_.tail && s > head_size();
  }
  Vec reward(std::int64_t s) const { return rewards_.value(s); }

  ValidationReport validate() const;

  /// Rebind the rewards, keeping weights and base law.
  Model with_rewards(RewardSpec rw) const {
    WeightModel w = weights_;
    w.dim = rw.dim();
    return Model(std::move(w), std::move(rw), base_);
  }

 private:
  void finalize();

  WeightModel weights_;
  RewardSpec rewards_;
  std::optional<BaseLaw> base_;

  double ell_ = kNegInf;
  double z_sup_ = kNegInf;
  double reward_bound_ = 0.0;
  Vec r_;
  std::int64_t support_gcd_ = 0;
  std::int64_t s_min_ = 0;
};

inline void Model::finalize() {
  if (weights_.dim != rewards_.dim()) {
    throw std::invalid_argument("model: weight dim != reward dim");
  }
  if (!rewards_.head.empty()) {
    for (const Vec& f : rewards_.head) {
      if (int(f.size()) != weights_.dim) {
        throw std::invalid_argument("model: ragged reward head");
      }
    }
  }
  if (weights_.tail) {
    if (!(weights_.tail->amplitude > 0.0)) {
      throw std::invalid_argument("model: tail amplitude must be positive");
    }
    if (weights_.tail->shift < 0 || weights_.tail->shift > head_size()) {
      throw std::invalid_argument("model: tail shift out of range");
    }
  }

  ell_ = weights_.tail ? weights_.tail->rate : kNegInf;

  // support scan over the head
  support_gcd_ = 0;
  s_min_ = 0;
  for (std::int64_t s = 1; s <= head_size(); ++s) {
    if (weights_.head[s - 1] > 0.0) {
      support_gcd_ = std::gcd(support_gcd_, s);
      if (s_min_ == 0) s_min_ = s;
    }
  }
  if (weights_.tail) {
    // tail support is every s > S_head: consecutive integers force gcd 1
    support_gcd_ = std::gcd(support_gcd_, head_size() + 1);
    support_gcd_ = std::gcd(support_gcd_, head_size() + 2);
    if (s_min_ == 0) s_min_ = head_size() + 1;
  }

  // z_sup = sup_s (1/s) ln a(s): head scan, then a log-spaced tail scan
  // joined with the limit rate.
  for (std::int64_t s = 1; s <= head_size(); ++s) {
    if (weights_.head[s - 1] > 0.0) {
      z_sup_ = std::max(z_sup_, std::log(weights_.head[s - 1]) / double(s));
    }
  }
  if (weights_.tail) {
    z_sup_ = std::max(z_sup_, ell_);
    double s = double(head_size() + 1);
    while (s < 1e9) {
      z_sup_ = std::max(z_sup_, weights_.tail->log_value(std::int64_t(s)) / s);
      s = std::max(s + 1.0, s * 1.05);
    }
  }

  // r and M
  if (weights_.tail) {
    r_ = rewards_.tail_slope;
  } else if (s_min_ > 0) {
    r_ = rewards_.value(s_min_);
    for (double& x : r_) x /= double(s_min_);
  } else {
    r_.assign(weights_.dim, 0.0);
  }
  reward_bound_ = 0.0;
  for (std::int64_t s = 1; s <= head_size(); ++s) {
    if (weights_.head[s - 1] > 0.0) {
      reward_bound_ =
          std::max(reward_bound_, norm(rewards_.value(s)) / double(s));
    }
  }
  if (weights_.tail) {
    reward_bound_ = std::max(reward_bound_, norm(rewards_.tail_slope));
    double s = double(head_size() + 1);
    while (s < 1e9) {
      reward_bound_ = std::max(
          reward_bound_, norm(rewards_.value(std::int64_t(s))) / s);
      s = std::max(s + 1.0, s * 1.05);
    }
  }
}

inline ValidationReport Model::validate() const {
  ValidationReport rep;
  rep.ell = ell_;
  rep.z_sup = z_sup_;
  rep.reward_bound = reward_bound_;
  rep.r = r_;
  rep.support_gcd = support_gcd_;
  rep.s_min = s_min_;
  rep.dim = weights_.dim;
  rep.passed = true;

  if (s_min_ == 0) {
    rep.passed = false;
    rep.messages.push_back("empty support");
  } else if (support_gcd_ != 1) {
    rep.passed = false;
    rep.messages.push_back("periodic support (gcd " +
                           std::to_string(support_gcd_) + ")");
  }
  if (!std::isfinite(z_sup_) && s_min_ != 0) {
    rep.passed = false;
    rep.messages.push_back("potential not extensive");
  }
  if (!std::isfinite(reward_bound_)) {
    rep.passed = false;
    rep.messages.push_back("reward grows faster than the waiting time");
  }
  if (weights_.dim < 1 || weights_.dim > 4) {
    rep.passed = false;
    rep.messages.push_back("unsupported reward dimension " +
                           std::to_string(weights_.dim));
  }
  if (base_) {
    double mass = base_->mass_at_infinity;
    KahanSum ps;
    for (double p : base_->p_head) ps.add(p);
    if (base_->p_tail) {
      const TailSpec& pt = *base_->p_tail;
      const double x = std::exp(pt.rate);
      SeriesValue tail = power_log_sum(pt.power, 0, x,
                                       std::int64_t(base_->p_head.size()) + 1 -
                                           pt.shift);
      // sum over s>S of A (s-shift)^-gamma e^(rate s) = A x^shift * kernel
      ps.add(pt.amplitude * std::pow(x, pt.shift) * tail.value);
    }
    if (std::abs(ps.value() + mass - 1.0) > 1e-12) {
      rep.passed = false;
      rep.messages.push_back("base law mass does not sum to one");
    }
    // e^{v(s)} p(s) must reproduce the weight head entrywise
    for (std::int64_t s = 1; s <= head_size(); ++s) {
      const double aw = std::exp(base_->v(s)) * base_->p(s);
      if (std::abs(aw - weights_.head[s - 1]) >
          1e-12 * std::max(1.0, std::abs(weights_.head[s - 1]))) {
        rep.passed = false;
        rep.messages.push_back("base law inconsistent with weights at s=" +
                               std::to_string(s));
        break;
      }
    }
  }
  return rep;
}

/// f == 1 reward of the requested head size (counts renewals).
inline RewardSpec unit_reward(std::int64_t head_size) {
  RewardSpec rw;
  rw.head.assign(std::size_t(head_size), Vec{1.0});
  rw.tail_slope = {0.0};
  rw.tail_offset = {1.0};
  rw.tail_log = {0.0};
  return rw;
}

// ---------------------------------------------------------------------------
// eta-normalization: p(s) = b(s) e^{-eta s}
// ---------------------------------------------------------------------------

struct EtaResult {
  double eta = 0.0;
  BaseLaw base;
};

namespace detail {

/// sum_s b(s) e^{-eta s} for raw weights b given as head + optional tail.
inline double normalization_sum(std::span<const double> head,
                                const std::optional<TailSpec>& tail,
                                double eta) {
  KahanSum s;
  for (std::size_t i = 0; i < head.size(); ++i) {
    s.add(head[i] * std::exp(-eta * double(i + 1)));
  }
  if (tail) {
    const double x = std::exp(tail->rate - eta);
    SeriesValue sv = power_log_sum(tail->power, 0, x,
                                   std::int64_t(head.size()) + 1 - tail->shift);
    if (!sv.is_finite()) return kInf;
    s.add(tail->amplitude * std::pow(x, tail->shift) * sv.value);
  }
  return s.value();
}

}  // namespace detail

/**
 * Normalize raw weights b(s) >= 0 into a waiting-time law.
 *
 * The normalization sum is monotone decreasing in eta. When the sum at the
 * tail rate eta_o is >= 1 a unique root with sum == 1 exists and is found
 * by bisection; otherwise eta = eta_o and the deficit becomes an explicit
 * mass at infinity (defective law).
 */
inline EtaResult eta_normalize(std::vector<double> head,
                               std::optional<TailSpec> tail) {
  for (double b : head) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("eta_normalize: negative or non-finite weight");
    }
  }
  bool any = tail.has_value();
  for (double b : head) any = any || b > 0.0;
  if (!any) throw std::invalid_argument("eta_normalize: all weights zero");

  const auto sum_at = [&](double eta) {
    return detail::normalization_sum(head, tail, eta);
  };

  const double eta_o = tail ? tail->rate : kNegInf;
  double eta;
  double mass = 0.0;

  double lo, hi;
  if (tail) {
    const double at_rate = sum_at(eta_o);  // may be +inf
    if (at_rate < 1.0) {
      eta = eta_o;
      mass = 1.0 - at_rate;
      goto build;
    }
    lo = eta_o;
  } else {
    lo = 0.0;
    while (sum_at(lo) < 1.0) lo -= std::max(1.0, std::abs(lo));
  }
  hi = std::max(lo, 0.0) + 1.0;
  while (sum_at(hi) >= 1.0) hi = lo + 2.0 * (hi - lo);
  // bisection on the monotone sum; Newton is unsafe at the left endpoint
  // where the derivative series may diverge.
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi));
       ++it) {
    const double mid = 0.5 * (lo + hi);
    (sum_at(mid) >= 1.0 ? lo : hi) = mid;
  }
  eta = lo;
  if (tail && !(sum_at(eta) >= 1.0)) eta = hi;  // keep the >=1 side exact-ish

build:
  EtaResult out;
  out.eta = eta;
  BaseLaw& bl = out.base;
  bl.p_head.resize(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) {
    bl.p_head[i] = head[i] * std::exp(-eta * double(i + 1));
  }
  if (tail) {
    TailSpec pt = *tail;
    pt.rate -= eta;
    bl.p_tail = pt;
  }
  bl.v_head.assign(head.size(), 0.0);
  bl.v_tail = 0.0;
  bl.mass_at_infinity = std::max(0.0, mass);
  // tighten: force exact unit mass by absorbing the residual into the
  // defect when it is within tolerance of zero
  if (bl.mass_at_infinity < 1e-12) bl.mass_at_infinity = 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Physics presets
// ---------------------------------------------------------------------------

/// A preset bundles one weight model with the standard reward catalog.
struct PresetFamily {
  WeightModel weights;
  BaseLaw base;
  double eta = 0.0;
  RewardSpec count;   // f(s) = 1
  RewardSpec extra;   // model-specific scalar observable
  RewardSpec joint;   // (count, extra) as a 2-vector

  Model model(const RewardSpec& rw) const {
    WeightModel w = weights;
    w.dim = rw.dim();
    return Model(w, rw, base);
  }
  Model count_model() const { return model(count); }
  Model extra_model() const { return model(extra); }
  Model joint_model() const { return model(joint); }
};

namespace detail {

inline PresetFamily assemble_family(BaseLaw base, double eta, double v_const,
                                    RewardSpec extra) {
  PresetFamily fam;
  fam.eta = eta;
  fam.base = std::move(base);
  const std::size_t n = fam.base.p_head.size();
  fam.base.v_head.assign(n, v_const);
  fam.base.v_tail = v_const;

  fam.weights.head.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fam.weights.head[i] = std::exp(v_const) * fam.base.p_head[i];
  }
  if (fam.base.p_tail) {
    TailSpec wt = *fam.base.p_tail;
    wt.amplitude *= std::exp(v_const);
    fam.weights.tail = wt;
  }

  fam.count = unit_reward(std::int64_t(n));
  fam.extra = std::move(extra);
  fam.joint.shift = fam.extra.shift;
  fam.joint.head.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    fam.joint.head[i] = {fam.count.head[i][0], fam.extra.head[i][0]};
  }
  fam.joint.tail_slope = {0.0, fam.extra.tail_slope[0]};
  fam.joint.tail_offset = {1.0, fam.extra.tail_offset[0]};
  fam.joint.tail_log = {0.0, fam.extra.tail_log[0]};

  fam.weights.dim = 2;
  return fam;
}

}  // namespace detail

/**
 * DNA melting chain with loop entropy sigma_l = a*l + b - c*ln(l) (sigma_0 = 0),
 * binding energy epsilon per bound monomer. Raw stretch weights
 * b(s) = e^{sigma_{s-1}} are eta-normalized from above; the potential is
 * v = -epsilon. Rewards: bound-monomer count and total loop entropy.
 */
inline PresetFamily make_poland_scheraga(double a, double b, double c,
                                         double epsilon,
                                         std::int64_t s_head) {
  if (!(c >= 0.0) || s_head < 2) {
    throw std::invalid_argument("poland_scheraga: need c >= 0, S_head >= 2");
  }
  std::vector<double> raw(std::size_t(s_head), 0.0);
  raw[0] = 1.0;  // sigma_0 = 0
  for (std::int64_t s = 2; s <= s_head; ++s) {
    const double l = double(s - 1);
    raw[s - 1] = std::exp(a * l + b - c * std::log(l));
  }
  TailSpec tail;
  tail.amplitude = std::exp(b - a);
  tail.power = c;
  tail.rate = a;
  tail.shift = 1;  // (s-1)^(-c)

  EtaResult er = eta_normalize(raw, tail);

  RewardSpec entropy;  // f(s) = sigma_{s-1}
  entropy.shift = 1;
  entropy.head.resize(std::size_t(s_head));
  entropy.head[0] = {0.0};
  for (std::int64_t s = 2; s <= s_head; ++s) {
    const double l = double(s - 1);
    entropy.head[s - 1] = {a * l + b - c * std::log(l)};
  }
  entropy.tail_slope = {a};
  entropy.tail_offset = {b - a};
  entropy.tail_log = {-c};

  return detail::assemble_family(std::move(er.base), er.eta, -epsilon,
                                 std::move(entropy));
}

/**
 * Lattice fluid of clusters: p(s) = e^{eta s - E_{s-1}} with E_0 = 0 and
 * cluster energies E_1..E_{S_head-1} continued linearly with the declared
 * tail slope eta_o = lim E_l / l. Potential v = -mu. Rewards: hole count
 * and total cluster energy.
 */
inline PresetFamily make_cluster_model(const std::vector<double>& energies,
                                       double tail_slope, double mu) {
  const std::int64_t s_head = std::int64_t(energies.size()) + 1;
  if (s_head < 2) throw std::invalid_argument("cluster: need at least E_1");
  // head-only consistency check on the declared asymptotic slope
  const double last = energies.back() / double(energies.size());
  if (last < tail_slope - 1e-9) {
    throw std::invalid_argument(
        "cluster: declared tail slope inconsistent with head growth");
  }

  std::vector<double> raw(std::size_t(s_head), 0.0);
  raw[0] = 1.0;  // E_0 = 0
  for (std::int64_t s = 2; s <= s_head; ++s) {
    raw[s - 1] = std::exp(-energies[s - 2]);
  }
  // E_l = tail_slope*l + offset exactly beyond the head
  const double offset =
      energies.back() - tail_slope * double(energies.size());
  TailSpec tail;
  tail.amplitude = std::exp(-offset + tail_slope);
  tail.power = 0.0;
  tail.rate = -tail_slope;  // b(s) = e^{-E_{s-1}} ~ e^{-offset} e^{-slope(s-1)}
  tail.shift = 0;

  // cluster models are written p = b e^{+eta s} with eta <= eta_o; the
  // normalizer solves p = b e^{-eta' s}, so the two agree with eta = -eta'.
  EtaResult er = eta_normalize(raw, tail);

  RewardSpec energy;  // f(s) = E_{s-1}
  energy.head.resize(std::size_t(s_head));
  energy.head[0] = {0.0};
  for (std::int64_t s = 2; s <= s_head; ++s) energy.head[s - 1] = {energies[s - 2]};
  energy.tail_slope = {tail_slope};
  energy.tail_offset = {offset - tail_slope};
  energy.tail_log = {0.0};

  PresetFamily fam = detail::assemble_family(std::move(er.base), -er.eta, -mu,
                                             std::move(energy));
  return fam;
}

/**
 * Homogeneous protein-folding chain: couplings eps_1..eps_{S_head-1} build
 * stretch energies E_l = sum_{s<=l} (l-s) eps_s, then the cluster
 * construction applies with v = sigma (entropic loss per disordered bond).
 */
inline PresetFamily make_wsme(const std::vector<double>& couplings,
                              double sigma) {
  std::vector<double> energies(couplings.size());
  for (std::size_t l = 1; l <= couplings.size(); ++l) {
    double e = 0.0;
    for (std::size_t s = 1; s <= l; ++s) e += double(l - s) * couplings[s - 1];
    energies[l - 1] = e;
  }
  // beyond the head E_l is exactly linear with slope sum(eps)
  double slope = 0.0;
  for (double e : couplings) slope += e;
  return make_cluster_model(energies, slope, -sigma);
}

/// p(s) = s^{-c} / zeta(c) with constant potential beta (c > 1).
inline PresetFamily make_zeta_model(double c, double beta,
                                    std::int64_t s_head = 64) {
  if (!(c > 1.0)) throw std::invalid_argument("zeta model: need c > 1");
  const double zc = riemann_zeta(c);
  std::vector<double> raw(std::size_t(s_head), 0.0);
  for (std::int64_t s = 1; s <= s_head; ++s) {
    raw[s - 1] = std::pow(double(s), -c) / zc;
  }
  TailSpec tail{1.0 / zc, c, 0.0, 0};
  BaseLaw base;
  base.p_head = std::move(raw);
  base.p_tail = tail;
  RewardSpec dummy;
  dummy.head.assign(std::size_t(s_head), Vec{0.0});
  dummy.tail_slope = {0.0};
  dummy.tail_offset = {0.0};
  dummy.tail_log = {0.0};
  return detail::assemble_family(std::move(base), 0.0, beta, std::move(dummy));
}

/// p(s) = 2^{-s} with constant potential beta.
inline PresetFamily make_geometric(double beta = 0.0,
                                   std::int64_t s_head = 48) {
  std::vector<double> raw(std::size_t(s_head), 0.0);
  for (std::int64_t s = 1; s <= s_head; ++s) raw[s - 1] = std::pow(2.0, -double(s));
  TailSpec tail{1.0, 0.0, -std::log(2.0), 0};
  BaseLaw base;
  base.p_head = std::move(raw);
  base.p_tail = tail;
  RewardSpec dummy;
  dummy.head.assign(std::size_t(s_head), Vec{0.0});
  dummy.tail_slope = {0.0};
  dummy.tail_offset = {0.0};
  dummy.tail_log = {0.0};
  return detail::assemble_family(std::move(base), 0.0, beta, std::move(dummy));
}

/// Deterministic renewals: p(s0) = 1.
inline Model make_dirac(std::int64_t s0 = 1, double f_value = 1.0) {
  WeightModel w;
  w.head.assign(std::size_t(s0), 0.0);
  w.head[s0 - 1] = 1.0;
  w.dim = 1;
  RewardSpec rw;
  rw.head.assign(std::size_t(s0), Vec{0.0});
  rw.head[s0 - 1] = {f_value};
  rw.tail_slope = {0.0};
  rw.tail_offset = {0.0};
  rw.tail_log = {0.0};
  BaseLaw base;
  base.p_head = w.head;
  base.v_head.assign(std::size_t(s0), 0.0);
  return Model(std::move(w), std::move(rw), std::move(base));
}

}  // namespace renewal_ldp
