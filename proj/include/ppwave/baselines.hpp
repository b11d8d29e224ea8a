#pragma once

// Comparison tests: a Kolmogorov-Smirnov test of uniformity of the children
// on their observation window, and the GAUE coincidence-count test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "ppwave/process_core.hpp"

namespace ppwave {

/// P(K > x) for the limiting Kolmogorov distribution K = sup |Brownian bridge|.
inline double kolmogorov_survival(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.0) {
    // Jacobi theta form, fast for small x:
    // P(K <= x) = sqrt(2 pi)/x sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 x^2)).
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double cdf = 0.0;
    for (int j = 1; j < 100; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * c);
      cdf += term;
      if (term < 1e-16) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / x;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j < 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// P(D_n < d) for the one-sample statistic of n uniforms, exact for finite n
/// (Marsaglia, Tsang and Wang 2003): the (k,k) entry of H^n scaled by n!/n^n,
/// with k = floor(n d) + 1. Powers of 10 are split off to avoid underflow.
inline double kolmogorov_cdf_exact(std::size_t n, double d) {
  if (n == 0) throw std::invalid_argument("kolmogorov_cdf_exact: n must be >= 1");
  const double nd = static_cast<double>(n) * d;
  if (nd <= 0.5) return 0.0;
  if (d >= 1.0) return 1.0;
  const int k = static_cast<int>(nd) + 1;
  const int m = 2 * k - 1;
  const double h = k - nd;
  using Matrix = std::vector<double>;
  auto at = [m](Matrix& a, int i, int j) -> double& { return a[static_cast<std::size_t>(i * m + j)]; };

  Matrix H(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) at(H, i, j) = (i - j + 1 < 0) ? 0.0 : 1.0;
  for (int i = 0; i < m; ++i) {
    at(H, i, 0) -= std::pow(h, i + 1);
    at(H, m - 1, i) -= std::pow(h, m - i);
  }
  if (2.0 * h - 1.0 > 0.0) at(H, m - 1, 0) += std::pow(2.0 * h - 1.0, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int g = 1; g <= i - j + 1; ++g) at(H, i, j) /= g;

  auto multiply = [&](Matrix& a, const Matrix& b) {
    Matrix c(a.size(), 0.0);
    for (int i = 0; i < m; ++i)
      for (int l = 0; l < m; ++l) {
        const double ail = at(a, i, l);
        if (ail == 0.0) continue;
        for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(i * m + j)] += ail * b[static_cast<std::size_t>(l * m + j)];
      }
    a.swap(c);
  };
  auto renormalize = [&](Matrix& a, int& e) {
    if (at(a, k - 1, k - 1) > 1e140) {
      for (auto& v : a) v *= 1e-140;
      e += 140;
    }
  };

  // Q = H^n by binary powering, with decimal exponent eq.
  Matrix Q(static_cast<std::size_t>(m * m), 0.0), P = H;
  for (int i = 0; i < m; ++i) at(Q, i, i) = 1.0;
  int eq = 0, ep = 0;
  for (std::size_t e = n; e > 0; e >>= 1) {
    if (e & 1) {
      multiply(Q, P);
      eq += ep;
      renormalize(Q, eq);
    }
    if (e > 1) {
      multiply(P, P);
      ep *= 2;
      renormalize(P, ep);
    }
  }
  double s = at(Q, k - 1, k - 1);
  for (std::size_t i = 1; i <= n; ++i) {
    s *= static_cast<double>(i) / static_cast<double>(n);
    if (s < 1e-140) {
      s *= 1e140;
      eq -= 140;
    }
  }
  return std::clamp(s * std::pow(10.0, eq), 0.0, 1.0);
}

/// sup_t |F_m(t) - (t - lo)/(hi - lo)| for sorted `times`.
inline double ks_uniform_statistic(std::span<const double> times, const Window& w) {
  const double m = static_cast<double>(times.size());
  double d = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double f = std::clamp((times[i] - w.lo) / w.length(), 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / m - f, f - static_cast<double>(i) / m});
  }
  return d;
}

/// Two-sample statistic sup_t |F_a(t) - F_b(t)| for sorted samples.
inline double ks_two_sample_statistic(std::span<const double> a, std::span<const double> b) {
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic two-sample p-value K(sqrt(na nb / (na + nb)) D).
inline double ks_two_sample_pvalue(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return 1.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  return kolmogorov_survival(std::sqrt(na * nb / (na + nb)) * ks_two_sample_statistic(a, b));
}

/// `exact` uses the finite-m distribution of D, `asymptotic` the limit K(sqrt(m) D),
/// which is conservative for m below a few hundred.
enum class KsPValue { exact, asymptotic };

struct KsResult {
  double d_stat = 0.0;
  double p_value = 1.0;
  bool reject = false;
  bool no_information = false;
};

inline KsResult ks_test(const EventTrain& children, const Window& obs, double alpha,
                        KsPValue method = KsPValue::exact) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ks_test: alpha must lie in (0;1)");
  KsResult r;
  if (children.empty()) {
    r.no_information = true;
    return r;
  }
  r.d_stat = ks_uniform_statistic(children.times(), obs);
  const std::size_t m = children.count();
  r.p_value = method == KsPValue::exact
                  ? std::clamp(1.0 - kolmogorov_cdf_exact(m, r.d_stat), 0.0, 1.0)
                  : kolmogorov_survival(std::sqrt(static_cast<double>(m)) * r.d_stat);
  r.reject = r.p_value <= alpha;
  return r;
}

/// Rejection region of the GAUE test. `two_sided` rejects on
/// |X_T - m0| >= sigma u_{1-alpha/2}, the symmetric coincidence test whose null
/// level is alpha; `upper` keeps only the excess side X_T >= m0 + sigma u_{1-alpha/2},
/// whose null level is about alpha/2.
enum class GaueRule { two_sided, upper };

inline constexpr std::string_view to_string(GaueRule r) {
  return r == GaueRule::two_sided ? "two_sided" : "upper";
}

struct GaueResult {
  std::int64_t x_t = 0;
  double m0_hat = 0.0;
  double sigma_hat = 0.0;
  double delta = 0.0;
  bool reject = false;
};

/// #{(x, y) : |x - y| <= delta} for sorted `a`, `b`.
inline std::int64_t count_coincidences(std::span<const double> a, std::span<const double> b,
                                       double delta) {
  std::int64_t count = 0;
  std::size_t lo = 0, hi = 0;
  for (double x : a) {
    while (lo < b.size() && x - b[lo] > delta) ++lo;
    if (hi < lo) hi = lo;
    while (hi < b.size() && b[hi] - x <= delta) ++hi;
    count += static_cast<std::int64_t>(hi - lo);
  }
  return count;
}

/// u_{1-alpha/2}, the standard normal quantile.
inline double normal_upper_quantile(double alpha) {
  return boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
}

namespace detail {

inline GaueResult gaue_from_counts(std::span<const double> parents, std::span<const double> children,
                                   double T, double delta, double u, GaueRule rule) {
  GaueResult r;
  r.delta = delta;
  if (parents.empty() || children.empty()) return r;
  r.x_t = count_coincidences(parents, children, delta);
  const double lp = static_cast<double>(parents.size()) / T;
  const double lc = static_cast<double>(children.size()) / T;
  r.m0_hat = lp * lc * (2.0 * T * delta - delta * delta);
  const double d3 = delta * delta * delta;
  const double var = r.m0_hat + lp * lc * (lp + lc) * (2.0 / 3.0 * d3 - d3 * delta / T);
  r.sigma_hat = std::sqrt(std::max(var, 0.0));
  const double excess = static_cast<double>(r.x_t) - r.m0_hat;
  r.reject = (rule == GaueRule::two_sided ? std::abs(excess) : excess) >= r.sigma_hat * u;
  return r;
}

}  // namespace detail

/// GAUE test on [0;T]. Events outside [0;T] are ignored; an empty train accepts.
inline GaueResult gaue_test(const EventTrain& parents, const EventTrain& children, double T,
                            double delta, double alpha, GaueRule rule = GaueRule::two_sided) {
  if (!(T > 0.0)) throw std::invalid_argument("gaue_test: T must be > 0");
  if (!(delta > 0.0 && delta < T)) throw std::invalid_argument("gaue_test: need 0 < delta < T");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("gaue_test: alpha must lie in (0;1)");
  const Window w(0.0, T);
  const auto p = restrict_to(parents, w);
  const auto c = restrict_to(children, w);
  return detail::gaue_from_counts(p.times(), c.times(), T, delta, normal_upper_quantile(alpha), rule);
}

inline constexpr int kGaueGridSize = 40;

/// delta = 0.001, 0.002, ..., 0.040.
inline std::vector<double> gaue_delta_grid() {
  std::vector<double> g;
  for (int i = 1; i <= kGaueGridSize; ++i) g.push_back(i / 1000.0);
  return g;
}

inline std::vector<GaueResult> gaue_grid(const EventTrain& parents, const EventTrain& children,
                                         double T, double alpha,
                                         GaueRule rule = GaueRule::two_sided) {
  if (!(T > 0.0)) throw std::invalid_argument("gaue_grid: T must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("gaue_grid: alpha must lie in (0;1)");
  const auto grid = gaue_delta_grid();
  if (!(grid.back() < T)) throw std::invalid_argument("gaue_grid: need T > 0.04");
  const Window w(0.0, T);
  const auto p = restrict_to(parents, w);
  const auto c = restrict_to(children, w);
  const double u = normal_upper_quantile(alpha);
  std::vector<GaueResult> out;
  out.reserve(grid.size());
  for (double d : grid) out.push_back(detail::gaue_from_counts(p.times(), c.times(), T, d, u, rule));
  return out;
}

}  // namespace ppwave
