/**
 * Low-level numeric kernels shared by the whole library:
 *
 *  - compensated (Kahan) summation
 *  - log-sum-exp over spans
 *  - certified evaluation of power/log-weighted exponential series
 *        sum_{t>=t0} t^(-nu) * (ln t)^q * x^t
 *    by direct summation with a geometric tail bound, switching to
 *    Euler-Maclaurin with a numerically integrated remainder when x
 *    approaches or equals 1
 *  - regularized incomplete gamma (chi-square tail probabilities)
 *
 * All series routines return a SeriesValue carrying the value, an
 * absolute error bound, and the number of explicitly summed terms.
 * Divergence is reported as +infinity, never as an exception.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace renewal_ldp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Value of a (possibly divergent) positive series.
struct SeriesValue {
  double value = 0.0;        // +inf when divergence was proven
  double abs_error = 0.0;    // certified bound when finite
  std::int64_t terms_used = 0;

  bool is_finite() const { return std::isfinite(value); }
  static SeriesValue infinite() { return {kInf, kInf, 0}; }
};

/// Kahan-compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;  // all -inf, or a +inf present
  KahanSum s;
  for (double x : xs) s.add(std::exp(x - m));
  return m + std::log(s.value());
}

inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

namespace detail {

/// Adaptive Simpson quadrature on [a,b], relative tolerance tol.
template <typename F>
double simpson_rec(const F& f, double a, double fa, double b, double fb,
                   double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol_abs) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol_abs, 48);
}

/// g(t) = t^(-nu) (ln t)^q e^(-mu t), the continuous extension of the
/// series terms. Evaluated through exp/log to avoid pow overflow.
inline double series_term(double nu, int q, double mu, double t) {
  const double lt = std::log(t);
  double lnv = -nu * lt - mu * t;
  if (lnv > 700.0) return kInf;
  double v = std::exp(lnv);
  for (int i = 0; i < q; ++i) v *= lt;
  return v;
}

/// Integral of g over [n, +inf). mu > 0 uses quadrature after t = n e^u;
/// mu == 0 requires nu > 1 and q <= 2 and has a closed form.
inline double series_tail_integral(double nu, int q, double mu, double n) {
  if (mu == 0.0) {
    const double a = nu - 1.0;  // > 0
    const double ln_n = std::log(n);
    const double base = std::exp(-a * ln_n) / a;  // n^(1-nu)/(nu-1)
    switch (q) {
      case 0: return base;
      case 1: return base * (ln_n + 1.0 / a);
      case 2: return base * (ln_n * ln_n + 2.0 * ln_n / a + 2.0 / (a * a));
      default: throw std::invalid_argument("series tail: log power > 2 at x=1");
    }
  }
  // cutoff where mu*t >= 800: integrand below ~1e-347 relative
  const double upper = std::log(800.0 / (mu * n));
  if (upper <= 0.0) return 0.0;
  const auto integrand = [&](double u) {
    const double t = n * std::exp(u);
    return t * series_term(nu, q, mu, t);
  };
  const double peak = std::max(integrand(0.0), integrand(0.5 * upper));
  return adaptive_simpson(integrand, 0.0, upper,
                          1e-14 * std::max(peak, 1e-300) * upper);
}

/// Euler-Maclaurin value of sum_{t>=n} g(t). Derivative corrections come
/// from a 7-point stencil at unit spacing; with n >= ~16k the neglected
/// B_8 term is far below 1e-14 of the total.
inline double series_tail_euler_maclaurin(double nu, int q, double mu,
                                          double n) {
  if (mu * n > 745.0) return series_term(nu, q, mu, n);  // everything tiny
  double f[7];
  for (int i = 0; i < 7; ++i) f[i] = series_term(nu, q, mu, n + i - 3);
  const double d1 = (45.0 * (f[4] - f[2]) - 9.0 * (f[5] - f[1]) +
                     (f[6] - f[0])) / 60.0;
  const double d3 = -13.0 / 8.0 * (f[4] - f[2]) + (f[5] - f[1]) -
                    0.125 * (f[6] - f[0]);
  const double d5 = 2.5 * (f[4] - f[2]) - 2.0 * (f[5] - f[1]) +
                    0.5 * (f[6] - f[0]);
  return series_tail_integral(nu, q, mu, n) + 0.5 * f[3] - d1 / 12.0 +
         d3 / 720.0 - d5 / 30240.0;
}

}  // namespace detail

/**
 * sum_{t >= from} t^(-nu) (ln t)^q x^t  for x >= 0, integer q >= 0.
 *
 * Finite iff x < 1, or x == 1 and nu > 1. Requires q <= 2 when x is so
 * close to 1 that the Euler-Maclaurin path triggers with mu == 0.
 */
inline SeriesValue power_log_sum(double nu, int q, double x,
                                 std::int64_t from = 1) {
  if (q < 0 || !(x >= 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("power_log_sum: bad arguments");
  }
  if (from < 1) from = 1;
  if (x == 0.0) return {0.0, 0.0, 0};
  if (x > 1.0) return SeriesValue::infinite();
  if (x == 1.0 && nu <= 1.0) return SeriesValue::infinite();

  const double mu = -std::log(x);  // 0 when x == 1
  SeriesValue out;
  KahanSum sum;

  if (x < 0.999) {
    // direct summation; ratio of consecutive terms is at most
    // x * exp((|nu|+q)/t), so a geometric bound closes the tail.
    for (std::int64_t t = from;; ++t) {
      const double term = detail::series_term(nu, q, mu, double(t));
      sum.add(term);
      ++out.terms_used;
      const double rho = x * std::exp((std::abs(nu) + q) / double(t));
      // a zero term (t = 1 with q > 0) says nothing about the tail
      if (rho < 1.0 && term != 0.0) {
        const double bound = term * rho / (1.0 - rho);
        if (bound <= 1e-16 * std::abs(sum.value()) + 1e-300) {
          out.abs_error = bound;
          break;
        }
      }
      if (out.terms_used > 5'000'000) {  // unreachable for x <= 0.999
        out.abs_error = term * 10.0;
        break;
      }
    }
    out.value = sum.value();
    return out;
  }

  // x in (0.999, 1]: explicit head then Euler-Maclaurin tail.
  const std::int64_t n_switch = std::max<std::int64_t>(from, 16384);
  for (std::int64_t t = from; t < n_switch; ++t) {
    sum.add(detail::series_term(nu, q, mu, double(t)));
    ++out.terms_used;
  }
  const double tail =
      detail::series_tail_euler_maclaurin(nu, q, mu, double(n_switch));
  sum.add(tail);
  out.value = sum.value();
  out.abs_error = 1e-13 * std::abs(out.value) + 1e-300;
  return out;
}

/// Riemann zeta for real s > 1.
inline double riemann_zeta(double s) {
  return power_log_sum(s, 0, 1.0).value;
}

/// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0.
/// Series for x < a+1, Lentz continued fraction otherwise.
inline double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, term = 1.0 / a, sum = term;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - lg);
    return 1.0 - p;
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

/// splitmix64; used to derive independent, reproducible RNG streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace renewal_ldp
