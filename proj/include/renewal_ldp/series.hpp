/**
 * Tilted weight series and their moments:
 *
 *   G(k, zeta)      = sum_s e^{k.f(s)} a(s) e^{-zeta s}
 *   moments         = sum_s prod_i f_i(s)^{m_i} s^n e^{k.f(s)} a(s) e^{-zeta s}
 *   theta(k)        = G(k, k.r + ell)
 *
 * The head is summed directly. The analytic tail reduces, after the
 * substitution t = s - shift, to a polynomial combination of
 *     sum_t t^{-nu} (ln t)^q x^t,      x = e^{k.r + ell - zeta},
 * evaluated by power_log_sum. Finiteness is decided exactly from the
 * exponents: finite iff x < 1, or x == 1 and nu > 1 for every needed term.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "renewal_ldp/model.hpp"
#include "renewal_ldp/numerics.hpp"

namespace renewal_ldp {

/// Multi-index over reward components plus a power of s.
struct MomentIndex {
  std::vector<int> m;  // empty means m = 0
  int n = 0;
};

namespace detail {

/// Sparse polynomial in (t, ln t): list of (t-power, ln-power, coefficient).
struct Poly2 {
  struct Term {
    int p = 0;
    int q = 0;
    double c = 0.0;
  };
  std::vector<Term> terms;

  static Poly2 constant(double c) {
    Poly2 r;
    if (c != 0.0) r.terms.push_back({0, 0, c});
    return r;
  }

  void add_term(int p, int q, double c) {
    if (c == 0.0) return;
    for (Term& t : terms) {
      if (t.p == p && t.q == q) {
        t.c += c;
        return;
      }
    }
    terms.push_back({p, q, c});
  }

  Poly2 times(const Poly2& o) const {
    Poly2 r;
    for (const Term& a : terms) {
      for (const Term& b : o.terms) {
        r.add_term(a.p + b.p, a.q + b.q, a.c * b.c);
      }
    }
    return r;
  }
};

/// f_i(s) = slope*t + (slope*shift + offset) + logc*ln t  with t = s - shift.
inline Poly2 reward_component_poly(double slope, double offset, double logc,
                                   int shift) {
  Poly2 r;
  r.add_term(1, 0, slope);
  r.add_term(0, 0, slope * double(shift) + offset);
  r.add_term(0, 1, logc);
  return r;
}

/// (t + shift)^n expanded binomially.
inline Poly2 s_power_poly(int n, int shift) {
  Poly2 r = Poly2::constant(1.0);
  Poly2 s;
  s.add_term(1, 0, 1.0);
  s.add_term(0, 0, double(shift));
  for (int i = 0; i < n; ++i) r = r.times(s);
  return r;
}

}  // namespace detail

/**
 * sum_s prod_i f_i(s)^{m_i} s^n e^{k.f(s)} a(s) e^{-zeta s}.
 * Extended-real: +inf when the tail exponent conditions prove divergence.
 */
inline SeriesValue grand_moment(const Model& model, std::span<const double> k,
                                double zeta, const MomentIndex& idx = {}) {
  const int d = model.dim();
  KahanSum sum;
  KahanSum err;
  std::int64_t used = 0;

  for (std::int64_t s = 1; s <= model.head_size(); ++s) {
    if (!model.in_support(s)) continue;
    const Vec f = model.reward(s);
    double lw = dot(k, f) + model.log_weight(s) - zeta * double(s);
    double term = std::exp(lw);
    for (int i = 0; i < int(idx.m.size()) && i < d; ++i) {
      for (int j = 0; j < idx.m[i]; ++j) term *= f[i];
    }
    for (int j = 0; j < idx.n; ++j) term *= double(s);
    sum.add(term);
    ++used;
  }

  if (!model.has_tail()) {
    return {sum.value(), 1e-15 * std::abs(sum.value()), used};
  }

  const TailSpec& tail = *model.weights().tail;
  const RewardSpec& rw = model.rewards();
  const int shift = tail.shift;
  const double kr = dot(k, rw.tail_slope);
  const double kk0 = dot(k, rw.tail_offset);
  const double kk1 = dot(k, rw.tail_log);
  const double log_x = kr + model.ell() - zeta;

  if (log_x > 0.0) return SeriesValue::infinite();
  const double x = std::exp(log_x);

  // polynomial prefactor prod f_i^{m_i} * s^n in (t, ln t)
  detail::Poly2 poly = detail::s_power_poly(idx.n, shift);
  for (int i = 0; i < int(idx.m.size()) && i < d; ++i) {
    const detail::Poly2 fi = detail::reward_component_poly(
        rw.tail_slope[i], rw.tail_offset[i], rw.tail_log[i], shift);
    for (int j = 0; j < idx.m[i]; ++j) poly = poly.times(fi);
  }

  const double nu0 = tail.power - kk1;
  const std::int64_t from = model.head_size() + 1 - shift;

  if (x == 1.0) {
    // finite iff every contributing term has exponent nu0 - p > 1
    for (const auto& t : poly.terms) {
      if (!(nu0 - double(t.p) > 1.0)) return SeriesValue::infinite();
    }
  }

  // overall scale A e^{k.kappa0} x^{shift}; kept in log form
  const double log_scale =
      std::log(tail.amplitude) + kk0 + double(shift) * log_x;
  const double scale = std::exp(log_scale);

  for (const auto& t : poly.terms) {
    SeriesValue sv = power_log_sum(nu0 - double(t.p), t.q, x, from);
    if (!sv.is_finite()) return SeriesValue::infinite();
    sum.add(scale * t.c * sv.value);
    err.add(std::abs(scale * t.c) * sv.abs_error);
    used += sv.terms_used;
  }

  return {sum.value(), err.value() + 1e-14 * std::abs(sum.value()), used};
}

/// G(k, zeta) = sum_s e^{k.f(s)} a(s) e^{-zeta s}.
inline SeriesValue grand_sum(const Model& model, std::span<const double> k,
                             double zeta) {
  return grand_moment(model, k, zeta, {});
}

/// theta(k) = G(k, k.r + ell); +inf whenever ell = -inf.
inline SeriesValue theta(const Model& model, std::span<const double> k) {
  if (model.ell() == kNegInf) return SeriesValue::infinite();
  return grand_sum(model, k, dot(k, model.r()) + model.ell());
}

inline constexpr double kThetaBoundaryTol = 1e-10;

/// k in Theta  <=>  theta(k) <= 1, ties within the boundary tolerance
/// classified as members (Theta is closed).
inline bool in_theta(const Model& model, std::span<const double> k) {
  const SeriesValue th = theta(model, k);
  return th.is_finite() && th.value <= 1.0 + kThetaBoundaryTol;
}

/// True when the first-moment series sum_s s e^{k.f+v-ell s}p converges at
/// the Theta boundary value zeta = k.r + ell; decidable from exponents.
inline bool first_moment_converges_on_theta(const Model& model,
                                            std::span<const double> k) {
  if (model.ell() == kNegInf) return false;
  if (!model.has_tail()) return true;  // head-only tail trivially summable
  const double nu0 =
      model.weights().tail->power - dot(k, model.rewards().tail_log);
  return nu0 - 1.0 > 1.0;  // the s^1 term needs exponent > 1
}

}  // namespace renewal_ldp
