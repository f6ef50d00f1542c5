/**
 * Legendre-Fenchel rate function I(w) = sup_k { w.k - z(k) + z(0) } and its
 * surroundings: the effective domain, branch-dispatched evaluation
 * (interior dual Newton, phase-transition segment, the point r, radial
 * boundary limits), the closed-form suite for renewal-count rewards with a
 * constant potential, and affine dimension reduction of degenerate rewards.
 *
 * The single workhorse is maximization of the concave dual objective
 * phi(k) = w.k - z(k): interior optima return the Newton fixpoint with
 * nu(dual_k) = w, while stalls against the boundary of Theta with
 * theta -> 1 identify the affine stretch of I.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "renewal_ldp/free_energy.hpp"
#include "renewal_ldp/model.hpp"
#include "renewal_ldp/series.hpp"

namespace renewal_ldp {

enum class RateBranch {
  interior_newton,
  segment,
  at_r,
  boundary_limit,
  outside_domain,
};

inline const char* to_string(RateBranch b) {
  switch (b) {
    case RateBranch::interior_newton: return "interior_newton";
    case RateBranch::segment: return "segment";
    case RateBranch::at_r: return "at_r";
    case RateBranch::boundary_limit: return "boundary_limit";
    case RateBranch::outside_domain: return "outside_domain";
  }
  return "?";
}

struct RateResult {
  Vec w;
  double value = kInf;
  RateBranch branch = RateBranch::outside_domain;
  std::optional<Vec> dual_k;
  double theta_residual = 0.0;  // |theta(dual_k) - 1| for segment duals
};

// ---------------------------------------------------------------------------
// Effective domain
// ---------------------------------------------------------------------------

enum class DomainLocation { interior, boundary, outside };

/**
 * Closed convex hull of the reward-per-step ratios { f(s)/s : s in support }
 * together with the tail limit r. Membership is tested against the support
 * function over a fixed fan of directions.
 */
struct DomainDescriptor {
  std::vector<Vec> generators;
  int dim = 1;
  // d = 1 shortcut
  double lo = kInf, hi = kNegInf;
  bool lo_attained = false, hi_attained = false;  // at finite s

  double support(std::span<const double> k) const {
    double m = kNegInf;
    for (const Vec& g : generators) m = std::max(m, dot(k, g));
    return m;
  }

  DomainLocation classify(std::span<const double> w, double tol = 1e-9) const {
    if (dim == 1) {
      const double x = w[0];
      if (x < lo - tol || x > hi + tol) return DomainLocation::outside;
      if (x < lo + tol || x > hi - tol) return DomainLocation::boundary;
      return DomainLocation::interior;
    }
    // direction fan: 2d axis directions plus a deterministic random set
    double margin = kInf;
    std::mt19937_64 rng(0x5eed5eed);
    std::normal_distribution<double> gauss;
    std::vector<double> k(w.size());
    const auto probe = [&]() {
      double nk = norm(k);
      if (nk == 0.0) return;
      for (double& x : k) x /= nk;
      margin = std::min(margin, support(k) - dot(k, w));
    };
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (double sgn : {1.0, -1.0}) {
        std::fill(k.begin(), k.end(), 0.0);
        k[i] = sgn;
        probe();
      }
    }
    for (int it = 0; it < 512; ++it) {
      for (double& x : k) x = gauss(rng);
      probe();
    }
    if (margin < -tol) return DomainLocation::outside;
    if (margin < tol) return DomainLocation::boundary;
    return DomainLocation::interior;
  }

  /// Interior anchor: average of the generators, nudged toward r if needed.
  Vec anchor() const {
    Vec u(std::size_t(dim), 0.0);
    for (const Vec& g : generators) {
      for (int i = 0; i < dim; ++i) u[i] += g[i];
    }
    for (double& x : u) x /= double(generators.size());
    return u;
  }
};

inline DomainDescriptor domain(const Model& model) {
  DomainDescriptor dd;
  dd.dim = model.dim();
  const auto push = [&](std::int64_t s) {
    Vec g = model.reward(s);
    for (double& x : g) x /= double(s);
    if (dd.dim == 1) {
      if (g[0] < dd.lo) {
        dd.lo = g[0];
        dd.lo_attained = true;
      }
      if (g[0] > dd.hi) {
        dd.hi = g[0];
        dd.hi_attained = true;
      }
    }
    dd.generators.push_back(std::move(g));
  };
  for (std::int64_t s = 1; s <= model.head_size(); ++s) {
    if (model.in_support(s)) push(s);
  }
  if (model.has_tail()) {
    double s = double(model.head_size() + 1);
    while (s < 1e7) {
      push(std::int64_t(s));
      s = std::max(s + 1.0, s * 1.1);
    }
    // the limit ratio r
    dd.generators.push_back(model.r());
    if (dd.dim == 1) {
      const double rv = model.r()[0];
      if (rv <= dd.lo) {
        dd.lo = rv;
        dd.lo_attained = false;
      }
      if (rv >= dd.hi) {
        dd.hi = rv;
        dd.hi_attained = false;
      }
    }
  }
  return dd;
}

// ---------------------------------------------------------------------------
// Dual maximization
// ---------------------------------------------------------------------------

namespace detail {

/// Solve the symmetric system J x = g (d <= 4) by Gaussian elimination with
/// partial pivoting; near-singular systems get a diagonal regularization.
inline Vec solve_spd(Matrix J, Vec g) {
  const int d = int(g.size());
  double trace = 0.0;
  for (int i = 0; i < d; ++i) trace += J[i][i];
  const double reg = 1e-14 * std::max(trace, 1e-30);
  for (int i = 0; i < d; ++i) J[i][i] += reg;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(J[r][c]) > std::abs(J[piv][c])) piv = r;
    }
    std::swap(J[c], J[piv]);
    std::swap(g[c], g[piv]);
    if (J[c][c] == 0.0) J[c][c] = reg;
    for (int r = c + 1; r < d; ++r) {
      const double m = J[r][c] / J[c][c];
      for (int cc = c; cc < d; ++cc) J[r][cc] -= m * J[c][cc];
      g[r] -= m * g[c];
    }
  }
  Vec x(d);
  for (int c = d - 1; c >= 0; --c) {
    double s = g[c];
    for (int cc = c + 1; cc < d; ++cc) s -= J[c][cc] * x[cc];
    x[c] = s / J[c][c];
  }
  return x;
}

/// phi(k) = w.k - z(k), finite for every k.
inline double dual_objective(const Model& model, std::span<const double> w,
                             std::span<const double> k) {
  return dot(w, k) - free_energy(model, k).z;
}

/// Walk from a point of Theta along direction u until theta > 1, then
/// bisect back so the returned point sits just outside the boundary.
/// phi increases along the whole inside stretch of the ray, so landing
/// tight keeps the dual ascent monotone.
inline Vec escape_theta(const Model& model, Vec k, const Vec& u) {
  const auto at = [&](double t) {
    Vec trial = k;
    for (std::size_t i = 0; i < k.size(); ++i) trial[i] += t * u[i];
    return trial;
  };
  const auto outside = [&](const Vec& trial) {
    const SeriesValue th = theta(model, trial);
    return !th.is_finite() || th.value > 1.0 + kThetaBoundaryTol;
  };
  double t_in = 0.0, t_out = 1e-3;
  bool found = false;
  for (int it = 0; it < 80; ++it) {
    if (outside(at(t_out))) {
      found = true;
      break;
    }
    t_in = t_out;
    t_out *= 2.0;
  }
  if (!found) {
    throw NonConvergence("rate: cannot leave Theta along the ascent direction");
  }
  for (int it = 0; it < 100 && t_out - t_in > 1e-12 * (1.0 + t_in); ++it) {
    const double mid = 0.5 * (t_in + t_out);
    const Vec trial = at(mid);
    const SeriesValue th = theta(model, trial);
    if (!th.is_finite() || th.value > 1.0 + kThetaBoundaryTol) {
      t_out = mid;
      if (th.is_finite() && th.value <= 1.0 + 1e-8) break;  // tight enough
    } else {
      t_in = mid;
    }
  }
  return at(t_out);
}

/// Locate the Theta boundary between k_in (theta <= 1) and k_out
/// (theta > 1) by bisection; returns the inside point.
inline Vec theta_boundary(const Model& model, Vec k_in, Vec k_out) {
  for (int it = 0; it < 200; ++it) {
    Vec mid(k_in.size());
    double gap = 0.0;
    for (std::size_t i = 0; i < mid.size(); ++i) {
      mid[i] = 0.5 * (k_in[i] + k_out[i]);
      gap = std::max(gap, std::abs(k_in[i] - k_out[i]));
    }
    if (gap < 1e-13 * (1.0 + norm(k_in))) break;
    const SeriesValue th = theta(model, mid);
    if (th.is_finite() && th.value <= 1.0 + kThetaBoundaryTol) {
      k_in = std::move(mid);
    } else {
      k_out = std::move(mid);
    }
  }
  return k_in;
}

Vec theta_boundary_seed(const Model& model, Vec k, const Vec& dk);

}  // namespace detail

/// Evaluate I at a point known (or assumed) to lie in the interior of the
/// domain, by maximizing the concave dual. z0 = z(0) is passed in to avoid
/// recomputation across grid sweeps.
inline RateResult rate_interior(const Model& model, std::span<const double> w,
                                double z0) {
  const int d = model.dim();
  RateResult out;
  out.w.assign(w.begin(), w.end());

  Vec k(d, 0.0);
  const double wtol = 1e-9 * (1.0 + norm(w));

  for (int it = 0; it < 200; ++it) {
    FreeEnergyPoint fe = free_energy(model, k);

    if (fe.on_theta) {
      if (fe.subdiff == SubdiffKind::segment) {
        // w inside the segment [r, nu(k)]  =>  k is a maximizer
        const Vec& a = fe.segment_a;
        const Vec& b = fe.segment_b;
        double t = 0.0, den = 0.0;
        for (int i = 0; i < d; ++i) {
          t += (w[i] - a[i]) * (b[i] - a[i]);
          den += (b[i] - a[i]) * (b[i] - a[i]);
        }
        t = den > 0.0 ? t / den : 0.0;
        double off = 0.0;
        for (int i = 0; i < d; ++i) {
          off = std::max(off, std::abs(a[i] + t * (b[i] - a[i]) - w[i]));
        }
        if (t >= -1e-9 && t <= 1.0 + 1e-9 && off <= 1e-9 * (1.0 + norm(w))) {
          out.branch = RateBranch::segment;
          out.value = dot(w, k) - fe.z + z0;
          out.dual_k = k;
          out.theta_residual = std::abs(fe.theta_value - 1.0);
          return out;
        }
      }
      // ascend out of Theta along the linear part of phi
      Vec u(d);
      for (int i = 0; i < d; ++i) u[i] = w[i] - model.r()[i];
      const double nu_ = norm(u);
      if (nu_ == 0.0) {  // w == r handled by the caller; safeguard
        out.branch = RateBranch::at_r;
        out.value = z0 - model.ell();
        out.dual_k = k;
        return out;
      }
      for (double& x : u) x /= nu_;
      Vec k_new = detail::escape_theta(model, k, u);
      double step = 0.0;
      for (int i = 0; i < d; ++i) step = std::max(step, std::abs(k_new[i] - k[i]));
      bool pinned = step <= 1e-7 * (1.0 + norm(k));
      if (pinned) {
        // a boundary point maximizes phi only if the outward directional
        // derivative (w - nu).u is non-positive just outside Theta
        const FreeEnergyPoint fo = free_energy(model, k_new);
        if (fo.nu) {
          double dd = 0.0;
          for (int i = 0; i < d; ++i) dd += (w[i] - (*fo.nu)[i]) * u[i];
          if (dd > 1e-7 * (1.0 + norm(w))) pinned = false;
        }
      }
      if (pinned) {
        // pinned against the Theta boundary: w lies on the affine stretch
        const Vec kb = detail::theta_boundary(model, k, k_new);
        out.branch = RateBranch::segment;
        out.value = dot(w, kb) - (dot(kb, model.r()) + model.ell()) + z0;
        out.dual_k = kb;
        out.theta_residual = std::abs(theta(model, kb).value - 1.0);
        return out;
      }
      k = std::move(k_new);
      continue;
    }

    Vec g(d);
    for (int i = 0; i < d; ++i) g[i] = w[i] - (*fe.nu)[i];
    if (norm(g) <= wtol) {
      out.branch = RateBranch::interior_newton;
      out.value = dot(w, k) - fe.z + z0;
      out.dual_k = k;
      return out;
    }

    Vec dk = detail::solve_spd(*fe.hessian, g);
    if (dot(dk, g) <= 0.0) dk = g;  // fall back to plain ascent
    const double phi0 = dot(w, k) - fe.z;
    double alpha = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec trial = k;
      for (int i = 0; i < d; ++i) trial[i] += alpha * dk[i];
      if (detail::dual_objective(model, w, trial) > phi0) {
        k = std::move(trial);
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) {
      // stagnation: either pressed against the Theta boundary (affine
      // stretch of I) or numerically converged below phi resolution
      const SeriesValue th = theta(model, k);
      if (th.is_finite() && std::abs(th.value - 1.0) <= 1e-8) {
        Vec k_out = k;
        Vec k_in = detail::theta_boundary(
            model, detail::theta_boundary_seed(model, k, dk), k_out);
        const double zb = dot(k_in, model.r()) + model.ell();
        out.branch = RateBranch::segment;
        out.value = dot(w, k_in) - zb + z0;
        out.dual_k = k_in;
        out.theta_residual = std::abs(theta(model, k_in).value - 1.0);
        return out;
      }
      out.branch = RateBranch::interior_newton;
      out.value = phi0 + z0;
      out.dual_k = k;
      return out;
    }
  }
  throw NonConvergence("rate: dual maximization exceeded iteration cap");
}

namespace detail {
/// A point of Theta near k, found by stepping against the last ascent
/// direction (k itself has theta ~ 1 from outside).
inline Vec theta_boundary_seed(const Model& model, Vec k, const Vec& dk) {
  const double nd = norm(dk);
  Vec u = dk;
  if (nd > 0.0) {
    for (double& x : u) x /= nd;
  }
  double t = 1e-6;
  for (int it = 0; it < 80; ++it) {
    Vec trial = k;
    for (std::size_t i = 0; i < k.size(); ++i) trial[i] -= t * u[i];
    const SeriesValue th = theta(model, trial);
    if (th.is_finite() && th.value <= 1.0 + kThetaBoundaryTol) return trial;
    t *= 2.0;
  }
  throw NonConvergence("rate: no Theta point near the stalled iterate");
}
}  // namespace detail

/// I(w) with full branch dispatch.
inline RateResult rate_at(const Model& model, std::span<const double> w) {
  const int d = model.dim();
  RateResult out;
  out.w.assign(w.begin(), w.end());

  const DomainDescriptor dd = domain(model);
  const DomainLocation loc = dd.classify(w);
  if (loc == DomainLocation::outside) {
    out.branch = RateBranch::outside_domain;
    out.value = kInf;
    return out;
  }

  const Vec k0(d, 0.0);
  const double z0 = free_energy(model, k0).z;

  // w == r: value z(0) - ell whenever the tail fixes ell > -inf
  bool is_r = model.ell() != kNegInf;
  for (int i = 0; i < d && is_r; ++i) {
    is_r = std::abs(w[i] - model.r()[i]) <= 1e-12 * (1.0 + std::abs(w[i]));
  }
  if (is_r) {
    out.branch = RateBranch::at_r;
    out.value = z0 - model.ell();
    return out;
  }

  if (loc == DomainLocation::interior) return rate_interior(model, w, z0);

  // relative boundary: radial Richardson limit toward an interior anchor
  const Vec u = dd.anchor();
  std::vector<double> diag;
  Vec trial(d);
  double prev = kInf;
  for (int j = 1; j <= 20; ++j) {
    const double lam = 1.0 - std::ldexp(1.0, -j);
    for (int i = 0; i < d; ++i) trial[i] = lam * w[i] + (1.0 - lam) * u[i];
    double val;
    bool trial_is_r = model.ell() != kNegInf;
    for (int i = 0; i < d && trial_is_r; ++i) {
      trial_is_r = std::abs(trial[i] - model.r()[i]) <=
                   1e-12 * (1.0 + std::abs(trial[i]));
    }
    if (trial_is_r) {
      val = z0 - model.ell();
    } else {
      val = rate_interior(model, trial, z0).value;
    }
    diag.push_back(val);
    // Richardson in powers of 2^{-j}
    for (std::size_t m = diag.size() - 1; m-- > 0;) {
      const double fac = std::ldexp(1.0, int(diag.size() - 1 - m));
      diag[m] = (fac * diag[m + 1] - diag[m]) / (fac - 1.0);
    }
    if (j >= 6 && std::abs(diag[0] - prev) <=
                      1e-10 * (1.0 + std::abs(diag[0]))) {
      break;
    }
    prev = diag[0];
  }
  out.branch = RateBranch::boundary_limit;
  out.value = diag[0];
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form suite for renewal counts under a constant potential
// ---------------------------------------------------------------------------

enum class TransitionOrder { none, continuous, discontinuous };

inline const char* to_string(TransitionOrder o) {
  switch (o) {
    case TransitionOrder::none: return "none";
    case TransitionOrder::continuous: return "continuous";
    case TransitionOrder::discontinuous: return "discontinuous";
  }
  return "?";
}

/**
 * Closed forms for f == 1 (renewal counts) with constant potential beta:
 * the critical potential beta_c, the jump amplitude w_c, the order
 * parameter rho(beta), and a direct evaluator for I on [0, 1] through the
 * monotone moment-ratio function V.
 */
class NtSuite {
 public:
  NtSuite(const Model& model, double beta) : model_(model), beta_(beta) {
    if (!model.has_tail()) {
      throw std::invalid_argument("nt suite: needs full support (tail)");
    }
    if (model.ell() == kNegInf) {
      throw std::invalid_argument("nt suite: needs finite ell");
    }
    if (!model.base()) {
      throw std::invalid_argument("nt suite: needs an explicit base law");
    }
    ell_ = model.ell();
    const SeriesValue s0 = base_sum(ell_, 0);
    const SeriesValue s1 = base_sum(ell_, 1);
    beta_c_ = s0.is_finite() ? -std::log(s0.value) : kNegInf;
    w_c_ = (s0.is_finite() && s1.is_finite()) ? s0.value / s1.value : 0.0;
    if (beta_c_ == kNegInf) w_c_ = 0.0;
    z0_ = free_energy(model_, std::vector<double>{0.0}).z;
  }

  double beta_c() const { return beta_c_; }
  double w_c() const { return w_c_; }
  double z0() const { return z0_; }

  TransitionOrder order() const {
    if (beta_c_ == kNegInf) return TransitionOrder::none;
    return w_c_ > 0.0 ? TransitionOrder::discontinuous
                      : TransitionOrder::continuous;
  }

  /// V(zeta) = sum e^{-zeta s}p / sum s e^{-zeta s}p, increasing on
  /// zeta > ell with range (w_c, 1).
  double V(double zeta) const {
    const SeriesValue s0 = base_sum(zeta, 0);
    const SeriesValue s1 = base_sum(zeta, 1);
    return s0.value / s1.value;
  }

  /// Order parameter rho(beta): the limit of N_t / t.
  double rho() const {
    if (beta_ < beta_c_) return 0.0;
    if (beta_ == beta_c_ ||
        (std::isfinite(beta_c_) && std::abs(beta_ - beta_c_) <= 1e-14)) {
      return w_c_;
    }
    return V(z0_);
  }

  /// I(w) on [0, 1].
  double rate(double w) const {
    if (w < -1e-12 || w > 1.0 + 1e-12) return kInf;
    w = std::clamp(w, 0.0, 1.0);
    if (w == 0.0) return -ell_ + z0_;
    if (w == 1.0) {
      return -(beta_ + model_.base()->log_p(1)) + z0_;
    }
    if (beta_c_ != kNegInf && w <= w_c_) {
      return w * (beta_c_ - beta_) - ell_ + z0_;  // affine stretch
    }
    // solve V(zeta) = w, V increasing
    double lo = ell_ + 1.0;
    while (V(lo) >= w) {
      lo = ell_ + 0.5 * (lo - ell_);
      if (lo - ell_ < 1e-300) return w * (beta_c_ - beta_) - ell_ + z0_;
    }
    double hi = ell_ + 1.0;
    while (V(hi) < w) hi = ell_ + 2.0 * (hi - ell_);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi));
         ++it) {
      const double mid = 0.5 * (lo + hi);
      (V(mid) < w ? lo : hi) = mid;
    }
    const double zeta = 0.5 * (lo + hi);
    const double s0 = base_sum(zeta, 0).value;
    return -w * (beta_ + std::log(s0)) - zeta + z0_;
  }

 private:
  /// sum_s s^n e^{-zeta s} p(s) for the base law.
  SeriesValue base_sum(double zeta, int n) const {
    const BaseLaw& b = *model_.base();
    KahanSum sum;
    std::int64_t used = 0;
    for (std::int64_t s = 1; s <= std::int64_t(b.p_head.size()); ++s) {
      double t = b.p_head[s - 1] * std::exp(-zeta * double(s));
      for (int j = 0; j < n; ++j) t *= double(s);
      sum.add(t);
      ++used;
    }
    if (b.p_tail) {
      const TailSpec& pt = *b.p_tail;
      const double log_x = pt.rate - zeta;
      if (log_x > 0.0) return SeriesValue::infinite();
      const double x = std::exp(log_x);
      const std::int64_t from =
          std::int64_t(b.p_head.size()) + 1 - pt.shift;
      const double scale = pt.amplitude * std::exp(double(pt.shift) * log_x);
      // s^n = (t + shift)^n binomially
      double binom = 1.0;
      for (int j = 0; j <= n; ++j) {
        const SeriesValue sv =
            power_log_sum(pt.power - double(n - j), 0, x, from);
        if (!sv.is_finite()) return SeriesValue::infinite();
        sum.add(scale * binom * std::pow(double(pt.shift), j) * sv.value);
        used += sv.terms_used;
        binom *= double(n - j) / double(j + 1);
      }
    }
    return {sum.value(), 1e-14 * std::abs(sum.value()), used};
  }

  Model model_;
  double beta_;
  double ell_;
  double beta_c_ = kNegInf;
  double w_c_ = 0.0;
  double z0_ = 0.0;
};

// ---------------------------------------------------------------------------
// Dimension reduction
// ---------------------------------------------------------------------------

struct DimensionReduction {
  int reduced_dim = 0;
  std::optional<Model> reduced;    // absent when reduced_dim == 0 or == d
  std::vector<Vec> A_o;            // reduced_dim x d
  Vec a_o;                         // reduced_dim
  bool passthrough = false;

  Vec map(std::span<const double> w) const {
    Vec y(A_o.size());
    for (std::size_t i = 0; i < A_o.size(); ++i) {
      y[i] = dot(A_o[i], w) + a_o[i];
    }
    return y;
  }
};

/**
 * Detect rank deficiency of { f(s) - r s } over the support and build the
 * reduced model with rewards y(s) = B^T (f(s) - r s) for an orthonormal
 * basis B of the span, so that I(w) = I_o(B^T w - B^T r) on dom I.
 */
inline DimensionReduction reduce_dimension(const Model& model) {
  const int d = model.dim();
  std::vector<Vec> gens;
  const auto push = [&](Vec g) {
    // Gram-Schmidt against the accepted basis
    for (const Vec& b : gens) {
      const double c = dot(g, b);
      for (int i = 0; i < d; ++i) g[i] -= c * b[i];
    }
    const double n = norm(g);
    if (n > 1e-9) {
      for (double& x : g) x /= n;
      gens.push_back(std::move(g));
    }
  };
  const Vec& r = model.r();
  for (std::int64_t s = 1; s <= model.head_size(); ++s) {
    if (!model.in_support(s)) continue;
    Vec g = model.reward(s);
    for (int i = 0; i < d; ++i) g[i] -= r[i] * double(s);
    push(std::move(g));
  }
  if (model.has_tail()) {
    push(model.rewards().tail_offset);
    push(model.rewards().tail_log);
  }

  DimensionReduction out;
  out.reduced_dim = int(gens.size());
  out.A_o = gens;
  out.a_o.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    out.a_o[i] = -dot(gens[i], r);
  }
  if (out.reduced_dim == d) {
    out.passthrough = true;
    return out;
  }
  if (out.reduced_dim == 0) return out;  // I concentrated at r

  RewardSpec rw;
  rw.shift = model.rewards().shift;
  rw.head.resize(std::size_t(model.head_size()));
  for (std::int64_t s = 1; s <= model.head_size(); ++s) {
    Vec g = model.reward(s);
    for (int i = 0; i < d; ++i) g[i] -= r[i] * double(s);
    Vec y(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) y[i] = dot(gens[i], g);
    rw.head[s - 1] = std::move(y);
  }
  rw.tail_slope.assign(gens.size(), 0.0);
  rw.tail_offset.resize(gens.size());
  rw.tail_log.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rw.tail_offset[i] = dot(gens[i], model.rewards().tail_offset);
    rw.tail_log[i] = dot(gens[i], model.rewards().tail_log);
  }
  out.reduced = model.with_rewards(std::move(rw));
  return out;
}

}  // namespace renewal_ldp
