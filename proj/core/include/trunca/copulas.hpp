#pragma once

// Copula models and their right truncations.
//
// For U ~ C and a threshold vector t with C(t) > 0, the right-truncated
// copula C_t is the copula of U | U <= t. TruncatedCopula evaluates it either
// through a recognized closed form or through the general formula
//   C_t(u) = C(x_1, ..., x_d) / C(t),  x_j = inf{x : C(x; t_{-j}) >= C(t) u_j},
// where C(x; t_{-j}) is C(t) with the j-th argument replaced by x.
//
// Coordinates are 0-based throughout.

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "trunca/generators.hpp"

namespace trunca {

struct Independence {
  explicit Independence(int d);
  int d;
};

struct Comonotone {
  explicit Comonotone(int d);
  int d;
};

/// C(u) = psi(sum_j psi^{-1}(u_j)).
struct Archimedean {
  Archimedean(GeneratorLike gen, int d);
  GeneratorLike gen;
  int d;
};

struct NestedSector {
  OuterPowerGenerator gen;
  int dim;
};

/// C(u) = psi_0(sum_s psi_0^{-1}(C_s(u_s))), sectors laid out consecutively.
/// Construction checks a sufficient nesting condition for every sector:
///   the root is the independence generator, or
///   root and sector share family and outer power with theta_0 <= theta_s, or
///   root and sector share the base generator with alpha_0 >= alpha_s, or
///   both are stable-type (independence or Gumbel base) with
///   alpha_0 / theta_0 >= alpha_s / theta_s.
/// Violations throw std::domain_error.
struct NestedArchimedean {
  NestedArchimedean(OuterPowerGenerator root, std::vector<NestedSector> sectors);
  OuterPowerGenerator root;
  std::vector<NestedSector> sectors;
  int dim() const;
  /// Index of the sector holding coordinate j and its offset in that sector.
  std::pair<int, int> locate(int j) const;
  /// First coordinate of sector s.
  int offset(int s) const;
};

/// min(u1^{1 - a1} u2, u1 u2^{1 - a2}), a1, a2 in (0, 1).
struct MarshallOlkin2 {
  MarshallOlkin2(double a1, double a2);
  double a1;
  double a2;
};

class CopulaModel;

/// Bivariate survival copula u1 + u2 - 1 + C(1 - u1, 1 - u2).
struct Survival {
  /// Throws UnsupportedError unless inner is bivariate.
  explicit Survival(const CopulaModel& inner);
  std::shared_ptr<const CopulaModel> inner;
};

class CopulaModel {
 public:
  using Variant = std::variant<Independence, Comonotone, Archimedean, NestedArchimedean,
                               MarshallOlkin2, Survival>;

  // Implicit from every alternative.
  CopulaModel(Independence m) : v_(std::move(m)) {}  // NOLINT
  CopulaModel(Comonotone m) : v_(std::move(m)) {}  // NOLINT
  CopulaModel(Archimedean m) : v_(std::move(m)) {}  // NOLINT
  CopulaModel(NestedArchimedean m) : v_(std::move(m)) {}  // NOLINT
  CopulaModel(MarshallOlkin2 m) : v_(std::move(m)) {}  // NOLINT
  CopulaModel(Survival m) : v_(std::move(m)) {}  // NOLINT

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  int dim() const;
  std::string_view kind() const;

 private:
  Variant v_;
};

CopulaModel survival(const CopulaModel& m);

/// Model CDF. Inputs within 1e-12 of [0, 1] are clipped; anything further out
/// throws std::domain_error, a dimension mismatch std::invalid_argument.
double cdf(const CopulaModel& m, std::span<const double> u);

class TruncationPoint {
 public:
  /// Requires t in (0, 1]^d with d = m.dim() and C(t) > 0; otherwise
  /// std::domain_error (std::invalid_argument for a dimension mismatch).
  TruncationPoint(const CopulaModel& m, std::vector<double> t);

  const std::vector<double>& t() const { return t_; }
  double operator[](int j) const { return t_[static_cast<std::size_t>(j)]; }
  int dim() const { return static_cast<int>(t_.size()); }
  double c() const { return c_; }
  bool is_one() const;

 private:
  std::vector<double> t_;
  double c_;
};

/// C(x; t_{-j}) for x in [0, t_j].
double margin_section(const CopulaModel& m, int j, double x, const TruncationPoint& t);

/// inf{x in [0, t_j] : C(x; t_{-j}) >= y}. Analytic where available,
/// bisection otherwise. y above C(t) (beyond 1e-12) throws std::domain_error.
double margin_section_inv(const CopulaModel& m, int j, double y, const TruncationPoint& t);

/// Bisection form of margin_section_inv: at most 200 halvings, stopping at
/// width 1e-13, returning the left end of the final bracket.
double margin_section_inv_bisect(const CopulaModel& m, int j, double y,
                                 const TruncationPoint& t);

/// Root-bracketing (TOMS 748) form of margin_section_inv, used as the
/// reference inverse for models without an analytic one.
double margin_section_inv_bracket(const CopulaModel& m, int j, double y,
                                  const TruncationPoint& t);

/// F_t(x) = C(min(x, t)) / C(t).
double truncated_cdf(const CopulaModel& m, const TruncationPoint& t, std::span<const double> x);

// ---------------------------------------------------------------------------
// Closed forms of right truncations

/// Truncation leaves the model unchanged (independence, comonotonicity).
struct SameForm {};

/// Archimedean with generator psi(t + h) / psi(h), h = psi^{-1}(C(t)).
struct TiltedArchimedeanForm {
  TiltedGenerator gen;
};

/// Truncated nested Archimedean copula, evaluated through
///   c = C(t), h_0 = psi_0^{-1}(c),
///   k_s = h_0 - psi_0^{-1}(C_s(t_s)), a_s = psi_s^{-1}(C_s(t_s)).
struct TruncatedNestedForm {
  double c;
  double h0;
  std::vector<double> k;
  std::vector<double> a;
};

/// Product of independently truncated sectors (independence root).
struct ProductOfBlocksForm {
  std::vector<TiltedGenerator> blocks;
  std::vector<int> dims;
};

/// Truncated Marshall-Olkin copula. case1 is t2^{a2} <= t1^{a1}; the
/// breakpoint lies on u1 in case 1 and on u2 otherwise.
struct TruncatedMOForm {
  bool case1;
  double breakpoint;
  /// t1^{a1} / t2^{a2}
  double ratio;
};

using ClosedForm = std::variant<std::monostate, SameForm, TiltedArchimedeanForm,
                                TruncatedNestedForm, ProductOfBlocksForm, TruncatedMOForm>;

enum class InverseMethod { Analytic, Bisection, Bracket };

class TruncatedCopula {
 public:
  TruncatedCopula(CopulaModel source, TruncationPoint t, ClosedForm form);

  const CopulaModel& source() const { return source_; }
  const TruncationPoint& point() const { return t_; }
  const ClosedForm& closed_form() const { return form_; }
  bool has_closed_form() const { return form_.index() != 0; }
  /// "same", "tilted-archimedean", "truncated-nested", "product-of-blocks",
  /// "truncated-mo" or "numeric".
  std::string_view form_name() const;
  int dim() const { return t_.dim(); }

  /// C_t(u), closed form when available.
  double cdf(std::span<const double> u) const;
  /// C_t(u) through the general formula with the chosen section inverse.
  double cdf_general(std::span<const double> u,
                     InverseMethod method = InverseMethod::Analytic) const;

  /// F_{t,j}(x) = C(x; t_{-j}) / C(t) for x in [0, t_j].
  double margin_cdf(int j, double x) const;
  /// Generalized inverse of margin_cdf.
  double margin_quantile(int j, double u) const;

  /// Truncated Marshall-Olkin only: the u2 on the singular curve above u1,
  /// or nullopt when the curve does not pass over u1.
  std::optional<double> singular_curve(double u1) const;

 private:
  CopulaModel source_;
  TruncationPoint t_;
  ClosedForm form_;
};

/// Dispatches to the closed form of the model when one is known and falls
/// back to the general numeric form otherwise.
TruncatedCopula truncate_general(const CopulaModel& m, const TruncationPoint& t);
/// Always the general numeric form.
TruncatedCopula truncate_numeric(const CopulaModel& m, const TruncationPoint& t);
TruncatedCopula truncate_nested(const NestedArchimedean& m, const TruncationPoint& t);
TruncatedCopula truncate_mo(const MarshallOlkin2& m, const TruncationPoint& t);

/// Bivariate margin of a truncated nested copula for coordinates j1 != j2.
/// Cross-sector pairs are tilted Archimedean with generator psi_0 tilted by
/// h_0; same-sector pairs use the sector constants.
double nested_biv_margin(const TruncatedCopula& tc, int j1, int j2, double u1, double u2);

/// sup over the grid (squared) of |C_t(u^alpha) - C_{t^{1/alpha}}(u)^alpha|.
double ev_scaling_check(const MarshallOlkin2& m, std::span<const double> t, double alpha,
                        std::span<const double> grid);

}  // namespace trunca
