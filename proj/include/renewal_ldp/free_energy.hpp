/**
 * Free energy z(k) of the constrained pinning model, its gradient data,
 * and the classification of the subdifferential.
 *
 * Off Theta, z(k) is the unique root of G(k, zeta) = 1, bracketed between
 * k.r + ell and the a-priori bound z_sup + M|k| + ln 2. On Theta,
 * z(k) = k.r + ell and differentiability is decided by theta(k) and the
 * convergence of the tilted first moment, which is read off the tail
 * exponents exactly.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "renewal_ldp/model.hpp"
#include "renewal_ldp/series.hpp"

namespace renewal_ldp {

using Matrix = std::vector<Vec>;  // row-major symmetric d x d

enum class SubdiffKind { point_nu, point_r, segment };

struct FreeEnergyPoint {
  Vec k;
  double z = 0.0;
  bool on_theta = false;
  double theta_value = kInf;       // theta(k), +inf when ell = -inf
  std::optional<Vec> nu;           // gradient when defined
  std::optional<Matrix> hessian;   // off Theta only
  SubdiffKind subdiff = SubdiffKind::point_nu;
  Vec segment_a, segment_b;        // endpoints when subdiff == segment
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Root of G(k, .) = 1 on (lo_open, hi]: bisection to width 1e-4, then
/// Newton polish with the exact zeta-derivative.
inline double solve_free_energy(const Model& model, std::span<const double> k,
                                double lo_open, double hi) {
  double lo = lo_open;
  if (lo == kNegInf) {
    // head-only model: walk left until G >= 1
    double step = 1.0;
    lo = hi - step;
    while (grand_sum(model, k, lo).value < 1.0) {
      step *= 2.0;
      lo = hi - step;
      if (step > 1e8) throw NonConvergence("free energy: no lower bracket");
    }
  }
  // G(lo+) > 1 >= G(hi) by construction; keep lo exclusive
  for (int it = 0; it < 80 && hi - lo > 1e-4; ++it) {
    const double mid = 0.5 * (lo + hi);
    const SeriesValue g = grand_sum(model, k, mid);
    (g.is_finite() && g.value <= 1.0 ? hi : lo) = mid;
  }
  double zeta = hi;
  MomentIndex first;
  first.n = 1;
  for (int it = 0; it < 100; ++it) {
    const SeriesValue g = grand_sum(model, k, zeta);
    if (!g.is_finite()) {
      zeta = 0.5 * (zeta + hi);
      continue;
    }
    const double resid = g.value - 1.0;
    if (std::abs(resid) <= 1e-12) return zeta;
    const double dg = grand_moment(model, k, zeta, first).value;  // = -dG/dzeta
    double next = zeta + resid / dg;  // Newton on G - 1 with G' = -dg
    if (!(next > lo)) next = 0.5 * (zeta + lo);
    zeta = next;
  }
  if (std::abs(grand_sum(model, k, zeta).value - 1.0) <= 1e-10) return zeta;
  throw NonConvergence("free energy: Newton failed to converge");
}

}  // namespace detail

/// Gradient nu(k) at the given zeta (normally zeta = z(k)).
inline Vec nu_at(const Model& model, std::span<const double> k, double zeta) {
  MomentIndex first;
  first.n = 1;
  const SeriesValue denom = grand_moment(model, k, zeta, first);
  if (!denom.is_finite()) {
    throw NonConvergence("nu: divergent first moment");
  }
  const int d = model.dim();
  Vec nu(d);
  for (int i = 0; i < d; ++i) {
    MomentIndex mi;
    mi.m.assign(d, 0);
    mi.m[i] = 1;
    nu[i] = grand_moment(model, k, zeta, mi).value / denom.value;
  }
  return nu;
}

/// Hessian J(k) = E[(f - nu s)(f - nu s)^T] / E[s] under the tilted weights.
inline Matrix hessian_at(const Model& model, std::span<const double> k,
                         double zeta, const Vec& nu) {
  const int d = model.dim();
  MomentIndex first;
  first.n = 1;
  const double es = grand_moment(model, k, zeta, first).value;

  const auto moment = [&](std::vector<int> m, int n) {
    MomentIndex mi;
    mi.m = std::move(m);
    mi.n = n;
    return grand_moment(model, k, zeta, mi).value;
  };

  Matrix J(d, Vec(d, 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      std::vector<int> mij(d, 0);
      mij[i] += 1;
      mij[j] += 1;
      std::vector<int> mi_(d, 0), mj_(d, 0);
      mi_[i] = 1;
      mj_[j] = 1;
      const double eff = moment(mij, 0);
      const double efis = moment(mi_, 1);
      const double efjs = moment(mj_, 1);
      const double es2 = moment(std::vector<int>(d, 0), 2);
      const double val =
          (eff - nu[i] * efjs - nu[j] * efis + nu[i] * nu[j] * es2) / es;
      J[i][j] = J[j][i] = val;
    }
  }
  return J;
}

/// Full free-energy bundle at k.
inline FreeEnergyPoint free_energy(const Model& model,
                                   std::span<const double> k) {
  FreeEnergyPoint out;
  out.k.assign(k.begin(), k.end());

  const SeriesValue th = theta(model, k);
  out.theta_value = th.value;
  out.on_theta = th.is_finite() && th.value <= 1.0 + kThetaBoundaryTol;

  const double boundary =
      model.ell() == kNegInf ? kNegInf : dot(k, model.r()) + model.ell();

  if (out.on_theta) {
    out.z = boundary;
    const bool at_one = std::abs(th.value - 1.0) <= kThetaBoundaryTol;
    const bool moment_ok = first_moment_converges_on_theta(model, k);
    if (at_one && moment_ok) {
      out.subdiff = SubdiffKind::segment;
      out.segment_a = model.r();
      out.segment_b = nu_at(model, k, boundary);
      // a degenerate segment collapses to the gradient point
      bool degenerate = true;
      for (int i = 0; i < model.dim(); ++i) {
        degenerate = degenerate &&
                     std::abs(out.segment_b[i] - out.segment_a[i]) <= 1e-12;
      }
      if (degenerate) {
        out.subdiff = SubdiffKind::point_r;
        out.nu = model.r();
      } else {
        out.nu.reset();
      }
    } else {
      out.subdiff = SubdiffKind::point_r;
      out.nu = model.r();
    }
    return out;
  }

  const double hi =
      model.z_sup() + model.reward_bound() * norm(k) + std::log(2.0);
  out.z = detail::solve_free_energy(model, k, boundary, hi);
  out.subdiff = SubdiffKind::point_nu;
  out.nu = nu_at(model, k, out.z);
  out.hessian = hessian_at(model, k, out.z, *out.nu);
  return out;
}

struct CriticalityReport {
  bool is_critical = false;
  double theta0 = kInf;
  bool first_moment_finite = false;
  Vec rho;
  std::optional<std::pair<Vec, Vec>> segment;  // (r, nu(0)) when present
};

/// Criticality test at k = 0 and the concentration point rho.
inline CriticalityReport criticality(const Model& model) {
  CriticalityReport rep;
  const Vec k0(model.dim(), 0.0);
  const FreeEnergyPoint fe = free_energy(model, k0);
  rep.theta0 = fe.theta_value;
  rep.first_moment_finite =
      model.ell() != kNegInf && first_moment_converges_on_theta(model, k0);
  const bool at_one = std::isfinite(fe.theta_value) &&
                      std::abs(fe.theta_value - 1.0) <= kThetaBoundaryTol;
  rep.is_critical = model.ell() != kNegInf && at_one && rep.first_moment_finite;

  if (fe.subdiff == SubdiffKind::segment) {
    rep.segment = std::make_pair(fe.segment_a, fe.segment_b);
    rep.rho = fe.segment_b;  // W_t/t settles at the gradient endpoint
  } else if (fe.subdiff == SubdiffKind::point_r) {
    rep.rho = model.r();
  } else {
    rep.rho = *fe.nu;
  }
  return rep;
}

}  // namespace renewal_ldp
