#pragma once

// Archimedean generators psi: [0, inf) -> [0, 1] with psi(0) = 1.
//
// Three concrete kinds share one interface (psi, psi_inv, deriv):
//   Generator            one-parameter family
//   OuterPowerGenerator  t -> psi(t^alpha), alpha in (0, 1]
//   TiltedGenerator      t -> psi(t + h) / psi(h), h >= 0
// GeneratorLike is the closed sum of the three.

#include <string_view>
#include <variant>

namespace trunca {

enum class Family { Independence, Clayton, AMH, Frank, Gumbel, Joe };

std::string_view to_string(Family f);
/// Case-insensitive; accepts "independence", "clayton", "amh", "frank",
/// "gumbel", "joe". Throws std::invalid_argument otherwise.
Family family_from_string(std::string_view name);

class Generator {
 public:
  /// Independence generator psi(t) = exp(-t).
  Generator() = default;
  /// Throws std::domain_error if theta is outside the family's range:
  /// Clayton (0, inf), AMH [0, 1), Frank (0, inf), Gumbel [1, inf),
  /// Joe [1, inf). theta is ignored for Independence.
  Generator(Family family, double theta);

  Family family() const { return family_; }
  double theta() const { return theta_; }

  double psi(double t) const;
  /// psi_inv(0) = +inf for every (strict) family.
  double psi_inv(double u) const;
  /// order 1 or 2; anything else throws UnsupportedError.
  double deriv(double t, int order) const;
  /// log(-psi'(t)); finite where psi'(t) underflows.
  double log_neg_deriv1(double t) const;

  /// Kendall's tau of the bivariate copula generated by this family.
  double kendall_tau() const;

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  Family family_ = Family::Independence;
  double theta_ = 0.0;
  double frank_p_ = 0.0;  // 1 - exp(-theta)
};

class OuterPowerGenerator {
 public:
  OuterPowerGenerator() = default;
  /// alpha must lie in (0, 1]; otherwise std::domain_error.
  OuterPowerGenerator(Generator base, double alpha);
  /// Implicit so that plain generators can be used where an outer power
  /// (alpha = 1) is expected.
  OuterPowerGenerator(Generator base) : OuterPowerGenerator(base, 1.0) {}  // NOLINT

  const Generator& base() const { return base_; }
  double alpha() const { return alpha_; }

  double psi(double t) const;
  double psi_inv(double u) const;
  double deriv(double t, int order) const;
  double log_neg_deriv1(double t) const;

  friend bool operator==(const OuterPowerGenerator&,
                         const OuterPowerGenerator&) = default;

 private:
  Generator base_;
  double alpha_ = 1.0;
};

class TiltedGenerator {
 public:
  using Base = std::variant<Generator, OuterPowerGenerator>;

  TiltedGenerator() = default;
  /// Requires h >= 0 and psi(h) > 0; otherwise std::domain_error.
  TiltedGenerator(Base base, double h);

  const Base& base() const { return base_; }
  double tilt() const { return h_; }
  /// psi_base(h), the normalizing constant.
  double psi_h() const { return psi_h_; }

  /// Base as an outer power generator (alpha = 1 for plain generators).
  OuterPowerGenerator base_outer() const;

  double psi(double t) const;
  double psi_inv(double u) const;
  double deriv(double t, int order) const;
  double log_neg_deriv1(double t) const;

 private:
  Base base_;
  double h_ = 0.0;
  double psi_h_ = 1.0;
};

using GeneratorLike = std::variant<Generator, OuterPowerGenerator, TiltedGenerator>;

double psi(const GeneratorLike& g, double t);
double psi_inv(const GeneratorLike& g, double u);
double psi_deriv(const GeneratorLike& g, double t, int order);
double log_neg_psi_deriv1(const GeneratorLike& g, double t);

/// psi~(t) = psi(t + h) / psi(h). Tilting a tilted generator adds the tilts.
TiltedGenerator tilt(const GeneratorLike& g, double h);
OuterPowerGenerator outer_power(const Generator& g, double alpha);

/// Splits g into (outer power base, accumulated tilt).
struct GeneratorParts {
  OuterPowerGenerator base;
  double tilt = 0.0;
};
GeneratorParts decompose(const GeneratorLike& g);

}  // namespace trunca
