#pragma once

// Tail dependence, Kendall distributions and empirical dependence measures.

#include <cstdint>
#include <span>
#include <string_view>

#include "trunca/copulas.hpp"
#include "trunca/generators.hpp"
#include "trunca/sampling.hpp"

namespace trunca {

enum class TailDepMethod { AnalyticLimit, NumericLimit, Empirical };

std::string_view to_string(TailDepMethod m);

struct TailDepReport {
  double lambda_lower = 0.0;
  double lambda_upper = 0.0;
  double se_lower = 0.0;
  double se_upper = 0.0;
  TailDepMethod method = TailDepMethod::AnalyticLimit;
  /// False when a numeric limit had not settled (last two estimates more
  /// than 1e-4 apart).
  bool converged = true;
};

/// Coefficients of the Archimedean copula with generator g tilted by h:
///   lambda_l = 2 lim_{t -> inf} psi'(2t + h) / psi'(t + h),
///   lambda_u = 2 - 2 lim_{t -> 0} psi'(2t + h) / psi'(t + h),
/// from the known limit per family.
TailDepReport tail_dep_tilted(const OuterPowerGenerator& g, double h);

/// Same limits evaluated from log(-psi') on t = 10^k (k = 2..6 for the
/// lower, k = -2..-6 for the upper coefficient) with Aitken extrapolation.
TailDepReport tail_dep_tilted_numeric(const GeneratorLike& g, double h);

/// Coefficients of an untruncated bivariate model.
TailDepReport tail_dep_model(const CopulaModel& m);

/// Exchangeable bivariate C truncated at (t, t):
///   lambda_l = lambda_l^C / D_1 C(0, t),  lambda_u = 2 - delta'(t) / D_1 C(t, t),
/// with delta(x) = C(x, x) and derivatives by finite differences (step 1e-6,
/// second-order one-sided stencils at the ends of [0, 1]). Throws
/// std::domain_error when C is visibly not exchangeable and NumericError when
/// D_1 C vanishes.
TailDepReport tail_dep_exchangeable_equal_t(const CopulaModel& m, double t);

/// Coefficients of C_t: tilted-generator limits for Archimedean models, the
/// equal-threshold formula for other exchangeable bivariate models.
TailDepReport tail_dep_truncated(const CopulaModel& m, const TruncationPoint& t);

/// K(u) = P(C_t(U) <= u) for the d-dimensional Archimedean copula with
/// generator g truncated at t, d in {2, 3}:
///   sum_{k<d} (psi^{-1}[c u] - psi^{-1}[c])^k (-1)^k psi^{(k)}(psi^{-1}[c u]) / (k! c).
double kendall_dist_truncated(const GeneratorLike& g, const TruncationPoint& t, int d, double u);

/// Conditional tail frequencies on the pseudo-observations of columns 0 and 1:
///   lambda_l = #{U_1 <= q, U_2 <= q} / #{U_1 <= q},
///   lambda_u = #{U_1 > 1 - q, U_2 > 1 - q} / #{U_1 > 1 - q},
/// with bootstrap standard errors. Requires n >= 1000 and q in (0, 0.5).
TailDepReport empirical_tail_dep(const SampleMatrix& data, double q, std::uint64_t seed = 1,
                                 int resamples = 200);

/// Kendall's tau-b in O(n log n). Throws std::invalid_argument for fewer
/// than two observations or a constant column.
double kendall_tau(std::span<const double> x, std::span<const double> y);
double empirical_kendall_tau(const SampleMatrix& data, int j1, int j2);

}  // namespace trunca
