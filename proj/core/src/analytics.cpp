#include "trunca/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "trunca/errors.hpp"

namespace trunca {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kConvergenceTol = 1e-4;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Aitken's delta-squared on three consecutive terms.
double aitken(double x0, double x1, double x2) {
  const double den = x2 - 2.0 * x1 + x0;
  if (std::abs(den) < 1e-14) return x2;
  const double a = x2 - (x2 - x1) * (x2 - x1) / den;
  return std::isfinite(a) ? a : x2;
}

struct Limit {
  double value;
  bool converged;
};

template <class F>
Limit extrapolate(F&& term, std::array<double, 5> ts) {
  std::array<double, 5> x{};
  for (std::size_t i = 0; i < ts.size(); ++i) x[i] = term(ts[i]);
  const double a1 = aitken(x[1], x[2], x[3]);
  const double a2 = aitken(x[2], x[3], x[4]);
  return {a2, std::abs(a2 - a1) <= kConvergenceTol};
}

// d/dx f at x in [0, 1]: central inside, second-order one-sided at the ends.
template <class F>
double derivative(F&& f, double x) {
  const double e = kFdStep;
  if (x - e < 0.0) return (-3.0 * f(x) + 4.0 * f(x + e) - f(x + 2.0 * e)) / (2.0 * e);
  if (x + e > 1.0) return (3.0 * f(x) - 4.0 * f(x - e) + f(x - 2.0 * e)) / (2.0 * e);
  return (f(x + e) - f(x - e)) / (2.0 * e);
}

double cdf2(const CopulaModel& m, double u1, double u2) {
  const double u[2] = {u1, u2};
  return cdf(m, u);
}

void check_bivariate(const CopulaModel& m) {
  if (m.dim() != 2) throw std::invalid_argument("tail dependence needs a bivariate model");
}

void check_exchangeable(const CopulaModel& m) {
  static constexpr double pts[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (double a : pts)
    for (double b : pts)
      if (std::abs(cdf2(m, a, b) - cdf2(m, b, a)) > 1e-10)
        throw std::domain_error("model is not exchangeable");
}

}  // namespace

std::string_view to_string(TailDepMethod m) {
  switch (m) {
    case TailDepMethod::AnalyticLimit: return "analytic-limit";
    case TailDepMethod::NumericLimit: return "numeric-limit";
    case TailDepMethod::Empirical: return "empirical";
  }
  return "unknown";
}

TailDepReport tail_dep_tilted(const OuterPowerGenerator& g, double h) {
  if (!(h >= 0.0)) throw std::domain_error("tilt must be >= 0");
  const Family f = g.base().family();
  const double a = g.alpha();
  const double th = g.base().theta();
  TailDepReport r;
  r.method = TailDepMethod::AnalyticLimit;
  // Regularly varying generators keep their lower tail under tilting; the
  // others decay exponentially.
  r.lambda_lower = f == Family::Clayton ? std::pow(2.0, -a / th) : 0.0;
  if (h > 0.0) {
    r.lambda_upper = 0.0;
  } else {
    const double beta = (f == Family::Gumbel || f == Family::Joe) ? 1.0 / th : 1.0;
    r.lambda_upper = clamp01(2.0 - std::pow(2.0, a * beta));
  }
  return r;
}

TailDepReport tail_dep_tilted_numeric(const GeneratorLike& g, double h) {
  const GeneratorLike gt = h > 0.0 ? GeneratorLike(tilt(g, h)) : g;
  const auto ratio = [&](double t) {
    return std::exp(log_neg_psi_deriv1(gt, 2.0 * t) - log_neg_psi_deriv1(gt, t));
  };
  const auto lower = extrapolate([&](double t) { return 2.0 * ratio(t); },
                                 {1e2, 1e3, 1e4, 1e5, 1e6});
  const auto upper = extrapolate([&](double t) { return 2.0 - 2.0 * ratio(t); },
                                 {1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
  TailDepReport r;
  r.method = TailDepMethod::NumericLimit;
  r.lambda_lower = clamp01(lower.value);
  r.lambda_upper = clamp01(upper.value);
  r.converged = lower.converged && upper.converged;
  return r;
}

TailDepReport tail_dep_model(const CopulaModel& m) {
  check_bivariate(m);
  return std::visit(
      [&](const auto& x) -> TailDepReport {
        using T = std::decay_t<decltype(x)>;
        TailDepReport r;
        if constexpr (std::is_same_v<T, Independence>) {
          return r;
        } else if constexpr (std::is_same_v<T, Comonotone>) {
          r.lambda_lower = r.lambda_upper = 1.0;
          return r;
        } else if constexpr (std::is_same_v<T, Archimedean>) {
          const auto parts = decompose(x.gen);
          return tail_dep_tilted(parts.base, parts.tilt);
        } else if constexpr (std::is_same_v<T, NestedArchimedean>) {
          // Two coordinates: either one sector of size two or two singletons.
          const auto& g = x.sectors.size() == 1 ? x.sectors.front().gen : x.root;
          return tail_dep_tilted(g, 0.0);
        } else if constexpr (std::is_same_v<T, MarshallOlkin2>) {
          r.lambda_upper = std::min(x.a1, x.a2);
          return r;
        } else {
          const auto inner = tail_dep_model(*x.inner);
          r.lambda_lower = inner.lambda_upper;
          r.lambda_upper = inner.lambda_lower;
          return r;
        }
      },
      m.variant());
}

TailDepReport tail_dep_exchangeable_equal_t(const CopulaModel& m, double t) {
  check_bivariate(m);
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("threshold must lie in (0, 1]");
  check_exchangeable(m);
  if (!(cdf2(m, t, t) > 0.0)) throw std::domain_error("C(t, t) must be positive");
  const double base_lower = tail_dep_model(m).lambda_lower;
  const double d1_low = derivative([&](double x) { return cdf2(m, x, t); }, 0.0);
  const double d1_diag = derivative([&](double x) { return cdf2(m, x, t); }, t);
  const double ddiag = derivative([&](double x) { return cdf2(m, x, x); }, t);
  if (!(d1_low > 0.0) || !(d1_diag > 0.0))
    throw NumericError("partial derivative of C vanishes at the truncation point");
  TailDepReport r;
  r.method = TailDepMethod::NumericLimit;
  r.lambda_lower = clamp01(base_lower / d1_low);
  r.lambda_upper = clamp01(2.0 - ddiag / d1_diag);
  if (r.lambda_lower < base_lower - 1e-6)
    throw NumericError("truncated lower tail coefficient fell below the untruncated one");
  return r;
}

TailDepReport tail_dep_truncated(const CopulaModel& m, const TruncationPoint& t) {
  if (const auto* a = m.get_if<Archimedean>(); a && m.dim() == 2) {
    const auto parts = decompose(tilt(a->gen, psi_inv(a->gen, t.c())));
    return tail_dep_tilted(parts.base, parts.tilt);
  }
  check_bivariate(m);
  if (t[0] != t[1])
    throw UnsupportedError("tail dependence of this truncation needs equal thresholds");
  return tail_dep_exchangeable_equal_t(m, t[0]);
}

double kendall_dist_truncated(const GeneratorLike& g, const TruncationPoint& t, int d, double u) {
  if (d < 2 || d > 3) throw UnsupportedError("Kendall distribution is available for d = 2, 3");
  if (t.dim() != d) throw std::invalid_argument("truncation point dimension does not match d");
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("u must lie in [0, 1]");
  if (u == 0.0) return 0.0;
  const double c = t.c();
  const double s = psi_inv(g, c * u);
  const double gap = s - psi_inv(g, c);
  double k = u;
  k -= gap * psi_deriv(g, s, 1) / c;
  if (d == 3) k += gap * gap * psi_deriv(g, s, 2) / (2.0 * c);
  return clamp01(k);
}

TailDepReport empirical_tail_dep(const SampleMatrix& data, double q, std::uint64_t seed,
                                 int resamples) {
  if (data.cols() < 2) throw std::invalid_argument("tail dependence needs two columns");
  if (data.rows() < 1000) throw std::invalid_argument("tail dependence needs n >= 1000");
  if (!(q > 0.0 && q < 0.5)) throw std::domain_error("threshold q must lie in (0, 0.5)");
  const auto po = pseudo_observations(data);
  const std::size_t n = po.rows();
  // Per-row indicators: lower margin, lower joint, upper margin, upper joint.
  std::vector<std::array<std::uint8_t, 4>> flags(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = po(i, 0);
    const double b = po(i, 1);
    flags[i] = {a <= q, a <= q && b <= q, a > 1.0 - q, a > 1.0 - q && b > 1.0 - q};
  }
  const auto estimate = [&](auto&& index) {
    std::array<double, 4> s{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < 4; ++k) s[k] += flags[index(i)][k];
    return std::array<double, 2>{s[0] > 0 ? s[1] / s[0] : 0.0, s[2] > 0 ? s[3] / s[2] : 0.0};
  };
  const auto point = estimate([](std::size_t i) { return i; });
  TailDepReport r;
  r.method = TailDepMethod::Empirical;
  r.lambda_lower = point[0];
  r.lambda_upper = point[1];
  if (resamples > 1) {
    RngStream rng(seed);
    double sl = 0.0, sl2 = 0.0, su = 0.0, su2 = 0.0;
    std::vector<std::size_t> idx(n);
    for (int b = 0; b < resamples; ++b) {
      for (auto& i : idx)
        i = std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
      const auto e = estimate([&](std::size_t i) { return idx[i]; });
      sl += e[0];
      sl2 += e[0] * e[0];
      su += e[1];
      su2 += e[1] * e[1];
    }
    const double m = resamples;
    r.se_lower = std::sqrt(std::max(0.0, (sl2 - sl * sl / m) / (m - 1.0)));
    r.se_upper = std::sqrt(std::max(0.0, (su2 - su * su / m) / (m - 1.0)));
  }
  return r;
}

namespace {

// Sorts v and returns the number of inversions (pairs i < j with v[i] > v[j]).
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

template <class Eq>
double tied_pairs(std::size_t n, Eq&& same) {
  double total = 0.0;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && same(lo, hi)) ++hi;
    const double m = static_cast<double>(hi - lo);
    total += m * (m - 1.0) / 2.0;
    lo = hi;
  }
  return total;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("Kendall's tau needs columns of equal length");
  if (n < 2) throw std::invalid_argument("Kendall's tau needs at least two observations");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[idx[i]];
    ys[i] = y[idx[i]];
  }
  const double n0 = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double n1 = tied_pairs(n, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b]; });
  const double n3 = tied_pairs(
      n, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b] && ys[a] == ys[b]; });
  std::vector<double> buf(n);
  const double swaps = static_cast<double>(merge_count(ys, buf, 0, n));
  const double n2 = tied_pairs(n, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });
  if (n1 == n0 || n2 == n0) throw std::invalid_argument("Kendall's tau is undefined for a constant column");
  return (n0 - n1 - n2 + n3 - 2.0 * swaps) / std::sqrt((n0 - n1) * (n0 - n2));
}

double empirical_kendall_tau(const SampleMatrix& data, int j1, int j2) {
  const auto x = data.column(j1);
  const auto y = data.column(j2);
  return kendall_tau(x, y);
}

}  // namespace trunca
