#include "trunca/frailty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "trunca/errors.hpp"

namespace trunca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Above this every integer is representable only approximately anyway.
constexpr double kLargeInteger = 0x1.0p52;
constexpr std::uint64_t kMaxRejectionTries = 100'000'000;

}  // namespace

// ---------------------------------------------------------------------------
// Logarithmic and geometric

double sample_log_log1mp(double log1mp, RngStream& rng) {
  if (!(log1mp < 0.0)) throw std::domain_error("Log(p) requires 0 < p < 1");
  const double p = -std::expm1(log1mp);
  const double v = rng.uniform();
  if (v > p) return 1.0;
  const double q = -std::expm1(log1mp * rng.uniform());
  if (v <= q * q) {
    const double r = std::floor(1.0 + std::log(v) / std::log(q));
    return std::max(1.0, r);
  }
  if (v <= q) return 2.0;
  return 1.0;
}

double sample_log(double p, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("Log(p) requires 0 < p < 1");
  return sample_log_log1mp(std::log1p(-p), rng);
}

double sample_geometric_log1mq(double log1mq, RngStream& rng) {
  if (!(log1mq <= 0.0)) throw std::domain_error("geometric success probability must be in (0, 1]");
  if (log1mq == -kInf) return 1.0;
  return 1.0 + std::floor(std::log(rng.uniform()) / log1mq);
}

// ---------------------------------------------------------------------------
// Sibuya

double log_sibuya_survival(double alpha, double n) {
  if (n <= 0.0) return 0.0;
  if (alpha == 1.0) return -kInf;
  // Gamma(n + 1 - alpha) / (Gamma(1 - alpha) Gamma(n + 1))
  return std::log(boost::math::tgamma_delta_ratio(n + 1.0 - alpha, alpha)) -
         std::lgamma(1.0 - alpha);
}

double sample_sibuya(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("Sibuya requires alpha in (0, 1]");
  if (alpha == 1.0) return 1.0;
  const double log_u = std::log(rng.uniform());

  // P(V > n) ~ n^{-alpha} / Gamma(1 - alpha) for large n.
  const double approx = std::exp(-(log_u + std::lgamma(1.0 - alpha)) / alpha);
  if (approx > kLargeInteger) return std::ceil(approx);

  // Smallest n with P(V > n) < U.
  double lo = 0.0;
  double hi = 1.0;
  while (log_sibuya_survival(alpha, hi) >= log_u) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1.0) {
    const double mid = std::floor(0.5 * (lo + hi));
    if (log_sibuya_survival(alpha, mid) >= log_u)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

double sample_tilted_sibuya(double alpha, double p, RngStream& rng, SibuyaBranch branch,
                            RejectionStats* stats) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("tilted Sibuya requires alpha in (0, 1]");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("tilted Sibuya requires p in (0, 1)");
  if (alpha == 1.0) {
    if (stats) {
      ++stats->proposals;
      ++stats->accepted;
    }
    return 1.0;
  }
  const double log1mp = std::log1p(-p);
  if (branch == SibuyaBranch::Auto)
    branch = p <= -alpha * log1mp ? SibuyaBranch::Sibuya : SibuyaBranch::Logarithmic;

  const double log_p = std::log(p);
  for (std::uint64_t tries = 0; tries < kMaxRejectionTries; ++tries) {
    if (stats) ++stats->proposals;
    if (branch == SibuyaBranch::Sibuya) {
      const double v = sample_sibuya(alpha, rng);
      if (std::log(rng.uniform()) <= (v - 1.0) * log_p) {
        if (stats) ++stats->accepted;
        return v;
      }
    } else {
      const double v = sample_log_log1mp(log1mp, rng);
      if (std::log(rng.uniform()) <= log_sibuya_survival(alpha, v - 1.0)) {
        if (stats) ++stats->accepted;
        return v;
      }
    }
  }
  throw SamplingError("tilted Sibuya sampler exceeded its rejection budget");
}

// ---------------------------------------------------------------------------
// Stable

double sample_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::domain_error("stable requires alpha in (0, 1]");
  if (alpha == 1.0) return 1.0;
  // Kanter's representation.
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  const double log_s = std::log(std::sin(alpha * u)) - std::log(std::sin(u)) / alpha +
                       (1.0 - alpha) / alpha * (std::log(std::sin((1.0 - alpha) * u)) - std::log(e));
  return std::exp(log_s);
}

int tilted_stable_pieces(double alpha, double h) {
  const double r = std::round(std::pow(h, alpha));
  if (!(r >= 1.0)) return 1;
  if (r > 1e9) throw SamplingError("tilted stable: tilt too large");
  return static_cast<int>(r);
}

double sample_tilted_stable(double alpha, double h, RngStream& rng, RejectionStats* stats) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("tilted stable requires alpha in (0, 1]");
  if (!(h >= 0.0)) throw std::domain_error("tilted stable requires h >= 0");
  if (alpha == 1.0) return 1.0;
  if (h == 0.0) {
    if (stats) {
      ++stats->proposals;
      ++stats->accepted;
    }
    return sample_stable(alpha, rng);
  }
  const int m = tilted_stable_pieces(alpha, h);
  const double scale = std::pow(static_cast<double>(m), -1.0 / alpha);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    std::uint64_t tries = 0;
    for (;;) {
      if (++tries > kMaxRejectionTries)
        throw SamplingError("tilted stable sampler exceeded its rejection budget");
      if (stats) ++stats->proposals;
      const double v = scale * sample_stable(alpha, rng);
      if (rng.uniform() <= std::exp(-h * v)) {
        if (stats) ++stats->accepted;
        sum += v;
        break;
      }
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Family dispatch

double sample_frailty(const Generator& g, double h, RngStream& rng) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw std::domain_error("frailty tilt must be finite and >= 0");
  const double th = g.theta();
  switch (g.family()) {
    case Family::Independence: return 1.0;
    case Family::Clayton: return rng.gamma(1.0 / th) / (1.0 + h);
    case Family::AMH: {
      if (th == 0.0) return 1.0;
      // Geo(1 - theta e^{-h}) on {1, 2, ...}
      return sample_geometric_log1mq(std::log(th) - h, rng);
    }
    case Family::Frank: {
      // Log(p e^{-h}), p = 1 - e^{-theta}
      const double x = -std::expm1(-th) * std::exp(-h);
      const double log1mx =
          x < 0.5 ? std::log1p(-x) : std::log(-std::expm1(-h) + std::exp(-th - h));
      return sample_log_log1mp(log1mx, rng);
    }
    case Family::Gumbel:
      if (th == 1.0) return 1.0;
      return sample_tilted_stable(1.0 / th, h, rng);
    case Family::Joe:
      if (th == 1.0) return 1.0;
      if (h == 0.0) return sample_sibuya(1.0 / th, rng);
      return sample_tilted_sibuya(1.0 / th, std::exp(-h), rng);
  }
  throw UnsupportedError("no frailty sampler for this family");
}

namespace {

// A draw from LS^{-1}[psi^{1/m}] for families closed under positive roots.
double sample_root_frailty(const Generator& g, int m, RngStream& rng) {
  const double th = g.theta();
  switch (g.family()) {
    case Family::Independence: return 1.0 / m;
    case Family::Clayton: return rng.gamma(1.0 / (th * m));
    case Family::Gumbel:
      if (th == 1.0) return 1.0 / m;
      return std::pow(static_cast<double>(m), -th) * sample_stable(1.0 / th, rng);
    default: break;
  }
  throw UnsupportedError("family is not closed under positive roots");
}

bool has_root_frailty(Family f) {
  return f == Family::Independence || f == Family::Clayton || f == Family::Gumbel;
}

}  // namespace

double sample_frailty(const OuterPowerGenerator& g, double h, RngStream& rng) {
  const double a = g.alpha();
  if (a == 1.0) return sample_frailty(g.base(), h, rng);
  if (!(h >= 0.0) || !std::isfinite(h)) throw std::domain_error("frailty tilt must be finite and >= 0");
  // V = S V_base^{1/alpha}
  if (h == 0.0) return sample_stable(a, rng) * std::pow(sample_frailty(g.base(), 0.0, rng), 1.0 / a);

  if (has_root_frailty(g.base().family())) {
    // Fast rejection: sum of m tilted draws from LS^{-1}[psi^{1/m}].
    const double log_inv_psi_h = -std::log(g.psi(h));
    const int m = std::max(1, static_cast<int>(std::round(log_inv_psi_h)));
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      std::uint64_t tries = 0;
      for (;;) {
        if (++tries > kMaxRejectionTries)
          throw SamplingError("outer power frailty sampler exceeded its rejection budget");
        const double v = sample_stable(a, rng) * std::pow(sample_root_frailty(g.base(), m, rng), 1.0 / a);
        if (rng.uniform() <= std::exp(-h * v)) {
          sum += v;
          break;
        }
      }
    }
    return sum;
  }

  for (std::uint64_t tries = 0; tries < kMaxRejectionTries; ++tries) {
    const double v = sample_stable(a, rng) * std::pow(sample_frailty(g.base(), 0.0, rng), 1.0 / a);
    if (rng.uniform() <= std::exp(-h * v)) return v;
  }
  throw SamplingError("outer power frailty sampler exceeded its rejection budget");
}

double sample_frailty(const GeneratorLike& g, RngStream& rng) {
  const auto parts = decompose(g);
  return sample_frailty(parts.base, parts.tilt, rng);
}

}  // namespace trunca
