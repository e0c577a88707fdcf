#pragma once

// Frailty samplers: draws V with Laplace-Stieltjes transform psi, and the
// exponentially tilted laws with transform psi(t + h) / psi(h).
//
// Discrete laws (geometric, logarithmic, Sibuya and its tilted version) are
// returned as integer-valued doubles; Sibuya draws in particular can exceed
// every fixed-width integer type.

#include <cstdint>

#include "trunca/generators.hpp"
#include "trunca/rng.hpp"

namespace trunca {

struct RejectionStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// Logarithmic series Log(p), pmf p^k / (-log(1 - p) k), k >= 1. Kemp's LK
/// scheme. Throws std::domain_error unless 0 < p < 1.
double sample_log(double p, RngStream& rng);
/// Same law parameterized by log(1 - p) < 0, for p close to one.
double sample_log_log1mp(double log1mp, RngStream& rng);

/// Geometric on {1, 2, ...} with success probability q in (0, 1], given
/// log(1 - q) (use -inf for q = 1).
double sample_geometric_log1mq(double log1mq, RngStream& rng);

/// Sibuya(alpha), alpha in (0, 1]: P(V > n) = prod_{i<=n} (1 - alpha / i).
/// Tail inversion with exponential then binary search.
double sample_sibuya(double alpha, RngStream& rng);

/// log P(V > n) for V ~ Sibuya(alpha).
double log_sibuya_survival(double alpha, double n);

enum class SibuyaBranch { Auto, Sibuya, Logarithmic };

/// Exponentially tilted Sibuya with pmf p^k p_k^{Sib(alpha)} / (1 - (1 - p)^alpha),
/// p = exp(-h) in (0, 1). Auto picks the proposal with the smaller
/// rejection constant; forcing a branch is meant for testing.
double sample_tilted_sibuya(double alpha, double p, RngStream& rng,
                            SibuyaBranch branch = SibuyaBranch::Auto,
                            RejectionStats* stats = nullptr);

/// Positive stable with Laplace transform exp(-t^alpha), alpha in (0, 1];
/// alpha = 1 is the point mass at 1.
double sample_stable(double alpha, RngStream& rng);

/// Number of pieces used by the tilted stable fast rejection sampler.
int tilted_stable_pieces(double alpha, double h);

/// Exponentially tilted stable with Laplace transform
/// exp(-((t + h)^alpha - h^alpha)), via fast rejection over
/// tilted_stable_pieces(alpha, h) independent pieces.
double sample_tilted_stable(double alpha, double h, RngStream& rng,
                            RejectionStats* stats = nullptr);

/// One draw of the frailty of g exponentially tilted by h.
double sample_frailty(const Generator& g, double h, RngStream& rng);
/// Frailty of an outer power generator tilted by h.
double sample_frailty(const OuterPowerGenerator& g, double h, RngStream& rng);
/// Frailty whose Laplace transform is exactly g (tilt included).
double sample_frailty(const GeneratorLike& g, RngStream& rng);

}  // namespace trunca
