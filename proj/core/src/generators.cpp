#include "trunca/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trunca/errors.hpp"

namespace trunca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_t(double t) {
  if (!(t >= 0.0)) throw std::domain_error("generator argument must be >= 0");
}

void check_u(double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::domain_error("generator inverse argument must lie in [0, 1]");
}

void check_order(int order) {
  if (order != 1 && order != 2)
    throw UnsupportedError("generator derivatives are available for order 1 and 2 only");
}

// 1 - p * exp(-t) for the Frank family without cancellation.
double frank_one_minus_x(double p, double theta, double t) {
  const double x = p * std::exp(-t);
  if (x < 0.5) return 1.0 - x;
  return -std::expm1(-t) + std::exp(-theta - t);
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Independence: return "independence";
    case Family::Clayton: return "clayton";
    case Family::AMH: return "amh";
    case Family::Frank: return "frank";
    case Family::Gumbel: return "gumbel";
    case Family::Joe: return "joe";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "independence" || s == "indep") return Family::Independence;
  if (s == "clayton") return Family::Clayton;
  if (s == "amh" || s == "ali-mikhail-haq") return Family::AMH;
  if (s == "frank") return Family::Frank;
  if (s == "gumbel") return Family::Gumbel;
  if (s == "joe") return Family::Joe;
  throw std::invalid_argument("unknown generator family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(Family family, double theta) : family_(family), theta_(theta) {
  bool ok = true;
  switch (family) {
    case Family::Independence: theta_ = 0.0; break;
    case Family::Clayton: ok = theta > 0.0 && std::isfinite(theta); break;
    case Family::AMH: ok = theta >= 0.0 && theta < 1.0; break;
    case Family::Frank: ok = theta > 0.0 && std::isfinite(theta); break;
    case Family::Gumbel: ok = theta >= 1.0 && std::isfinite(theta); break;
    case Family::Joe: ok = theta >= 1.0 && std::isfinite(theta); break;
  }
  if (!ok)
    throw std::domain_error("parameter theta = " + std::to_string(theta) +
                            " out of range for family " + std::string(to_string(family)));
  if (family_ == Family::Frank) frank_p_ = -std::expm1(-theta_);
}

double Generator::psi(double t) const {
  check_t(t);
  if (t == kInf) return 0.0;
  switch (family_) {
    case Family::Independence: return std::exp(-t);
    case Family::Clayton: return std::exp(-std::log1p(t) / theta_);
    case Family::AMH: {
      const double e = std::exp(-t);
      return (1.0 - theta_) * e / (1.0 - theta_ * e);
    }
    case Family::Frank: {
      const double x = frank_p_ * std::exp(-t);
      if (x < 0.5) return -std::log1p(-x) / theta_;
      return -std::log(frank_one_minus_x(frank_p_, theta_, t)) / theta_;
    }
    case Family::Gumbel: return std::exp(-std::pow(t, 1.0 / theta_));
    case Family::Joe: {
      // 1 - (1 - e^{-t})^{1/theta}
      const double log_w = t > std::log(2.0) ? std::log1p(-std::exp(-t)) : std::log(-std::expm1(-t));
      return -std::expm1(log_w / theta_);
    }
  }
  return 0.0;
}

double Generator::psi_inv(double u) const {
  check_u(u);
  if (u == 0.0) return kInf;
  if (u == 1.0) return 0.0;
  switch (family_) {
    case Family::Independence: return -std::log(u);
    case Family::Clayton: return std::expm1(-theta_ * std::log(u));
    case Family::AMH: return std::log1p(-theta_ * (1.0 - u)) - std::log(u);
    case Family::Frank: {
      // r = expm1(-theta u) / expm1(-theta), 1 - r computed without cancellation
      const double q = std::exp(-theta_ * u) * std::expm1(-theta_ * (1.0 - u)) / std::expm1(-theta_);
      if (q < 0.5) return -std::log1p(-q);
      return -std::log(std::expm1(-theta_ * u) / std::expm1(-theta_));
    }
    case Family::Gumbel: return std::pow(-std::log(u), theta_);
    case Family::Joe: {
      const double x = theta_ * std::log1p(-u);
      return x < -std::log(2.0) ? -std::log1p(-std::exp(x)) : -std::log(-std::expm1(x));
    }
  }
  return 0.0;
}

double Generator::deriv(double t, int order) const {
  check_order(order);
  check_t(t);
  const double sign = order == 1 ? -1.0 : 1.0;
  if (t == kInf) return 0.0;
  switch (family_) {
    case Family::Independence: return sign * std::exp(-t);
    case Family::Clayton: {
      const double a = 1.0 / theta_;
      if (order == 1) return -a * std::exp(-(a + 1.0) * std::log1p(t));
      return a * (a + 1.0) * std::exp(-(a + 2.0) * std::log1p(t));
    }
    case Family::AMH: {
      const double e = std::exp(-t);
      const double den = 1.0 - theta_ * e;
      if (order == 1) return -(1.0 - theta_) * e / (den * den);
      return (1.0 - theta_) * e * (1.0 + theta_ * e) / (den * den * den);
    }
    case Family::Frank: {
      const double x = frank_p_ * std::exp(-t);
      const double omx = frank_one_minus_x(frank_p_, theta_, t);
      if (order == 1) return -x / (theta_ * omx);
      return x / (theta_ * omx * omx);
    }
    case Family::Gumbel: {
      if (theta_ == 1.0) return sign * std::exp(-t);
      const double a = 1.0 / theta_;
      const double ta = std::pow(t, a);
      const double p = std::exp(-ta);
      if (order == 1) return -a * std::pow(t, a - 1.0) * p;
      return p * a * std::pow(t, a - 2.0) * (a * ta - (a - 1.0));
    }
    case Family::Joe: {
      if (theta_ == 1.0) return sign * std::exp(-t);
      const double a = 1.0 / theta_;
      const double e = std::exp(-t);
      const double w = -std::expm1(-t);
      if (order == 1) return -a * std::pow(w, a - 1.0) * e;
      return a * std::pow(w, a - 2.0) * e * (1.0 - a * e);
    }
  }
  return 0.0;
}

double Generator::log_neg_deriv1(double t) const {
  check_t(t);
  switch (family_) {
    case Family::Independence: return -t;
    case Family::Clayton: return -std::log(theta_) - (1.0 / theta_ + 1.0) * std::log1p(t);
    case Family::AMH:
      return std::log1p(-theta_) - t - 2.0 * std::log1p(-theta_ * std::exp(-t));
    case Family::Frank:
      return std::log(frank_p_) - t - std::log(theta_) -
             std::log(frank_one_minus_x(frank_p_, theta_, t));
    case Family::Gumbel: {
      const double a = 1.0 / theta_;
      return std::log(a) + (a - 1.0) * std::log(t) - std::pow(t, a);
    }
    case Family::Joe: {
      const double a = 1.0 / theta_;
      const double log_w = t > std::log(2.0) ? std::log1p(-std::exp(-t)) : std::log(-std::expm1(-t));
      return std::log(a) + (a - 1.0) * log_w - t;
    }
  }
  return 0.0;
}

double Generator::kendall_tau() const {
  switch (family_) {
    case Family::Independence: return 0.0;
    case Family::Clayton: return theta_ / (theta_ + 2.0);
    case Family::Gumbel: return 1.0 - 1.0 / theta_;
    case Family::AMH: {
      const double th = theta_;
      if (th < 1e-4) return 2.0 * th / 9.0;
      return 1.0 - 2.0 * (th + (1.0 - th) * (1.0 - th) * std::log1p(-th)) / (3.0 * th * th);
    }
    case Family::Frank: {
      // 1 + 4 (D_1(theta) - 1) / theta with the Debye function D_1
      auto f = [](double x) { return x == 0.0 ? 1.0 : x / std::expm1(x); };
      const double integral =
          boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, theta_, 15, 1e-14);
      const double debye = integral / theta_;
      return 1.0 + 4.0 * (debye - 1.0) / theta_;
    }
    case Family::Joe: {
      // 1 - 4 sum_k 1 / (k (theta k + 2)(theta (k - 1) + 2)), tail ~ 1/(2 theta^2 K^2)
      const double th = theta_;
      constexpr int kTerms = 200000;
      double s = 0.0;
      for (int k = kTerms; k >= 1; --k) {
        const double kk = k;
        s += 1.0 / (kk * (th * kk + 2.0) * (th * (kk - 1.0) + 2.0));
      }
      s += 1.0 / (2.0 * th * th * static_cast<double>(kTerms) * kTerms);
      return 1.0 - 4.0 * s;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// OuterPowerGenerator

OuterPowerGenerator::OuterPowerGenerator(Generator base, double alpha)
    : base_(base), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::domain_error("outer power alpha must lie in (0, 1]");
}

double OuterPowerGenerator::psi(double t) const {
  check_t(t);
  if (alpha_ == 1.0) return base_.psi(t);
  return base_.psi(std::pow(t, alpha_));
}

double OuterPowerGenerator::psi_inv(double u) const {
  const double s = base_.psi_inv(u);
  if (alpha_ == 1.0) return s;
  return std::pow(s, 1.0 / alpha_);
}

double OuterPowerGenerator::deriv(double t, int order) const {
  check_order(order);
  check_t(t);
  if (alpha_ == 1.0) return base_.deriv(t, order);
  const double a = alpha_;
  const double ta = std::pow(t, a);
  const double d1 = base_.deriv(ta, 1);
  if (order == 1) return d1 * a * std::pow(t, a - 1.0);
  const double d2 = base_.deriv(ta, 2);
  return d2 * a * a * std::pow(t, 2.0 * a - 2.0) + d1 * a * (a - 1.0) * std::pow(t, a - 2.0);
}

double OuterPowerGenerator::log_neg_deriv1(double t) const {
  if (alpha_ == 1.0) return base_.log_neg_deriv1(t);
  check_t(t);
  return base_.log_neg_deriv1(std::pow(t, alpha_)) + std::log(alpha_) +
         (alpha_ - 1.0) * std::log(t);
}

OuterPowerGenerator outer_power(const Generator& g, double alpha) {
  return OuterPowerGenerator(g, alpha);
}

// ---------------------------------------------------------------------------
// TiltedGenerator

namespace {

template <class F>
decltype(auto) visit_base(const TiltedGenerator::Base& b, F&& f) {
  return std::visit(std::forward<F>(f), b);
}

}  // namespace

TiltedGenerator::TiltedGenerator(Base base, double h) : base_(std::move(base)), h_(h) {
  if (!(h >= 0.0) || !std::isfinite(h)) throw std::domain_error("tilt h must be finite and >= 0");
  psi_h_ = visit_base(base_, [h](const auto& g) { return g.psi(h); });
  if (!(psi_h_ > 0.0)) throw std::domain_error("tilt h has psi(h) = 0");
}

OuterPowerGenerator TiltedGenerator::base_outer() const {
  return std::visit([](const auto& g) { return OuterPowerGenerator(g); }, base_);
}

double TiltedGenerator::psi(double t) const {
  check_t(t);
  if (h_ == 0.0) return visit_base(base_, [t](const auto& g) { return g.psi(t); });
  return visit_base(base_, [&](const auto& g) { return g.psi(t + h_); }) / psi_h_;
}

double TiltedGenerator::psi_inv(double u) const {
  check_u(u);
  if (h_ == 0.0) return visit_base(base_, [u](const auto& g) { return g.psi_inv(u); });
  if (u == 1.0) return 0.0;
  const double s = visit_base(base_, [&](const auto& g) { return g.psi_inv(psi_h_ * u); });
  return std::max(0.0, s - h_);
}

double TiltedGenerator::deriv(double t, int order) const {
  check_order(order);
  check_t(t);
  return visit_base(base_, [&](const auto& g) { return g.deriv(t + h_, order); }) / psi_h_;
}

double TiltedGenerator::log_neg_deriv1(double t) const {
  check_t(t);
  return visit_base(base_, [&](const auto& g) { return g.log_neg_deriv1(t + h_); }) -
         std::log(psi_h_);
}

// ---------------------------------------------------------------------------
// GeneratorLike

double psi(const GeneratorLike& g, double t) {
  return std::visit([t](const auto& x) { return x.psi(t); }, g);
}

double psi_inv(const GeneratorLike& g, double u) {
  return std::visit([u](const auto& x) { return x.psi_inv(u); }, g);
}

double psi_deriv(const GeneratorLike& g, double t, int order) {
  return std::visit([t, order](const auto& x) { return x.deriv(t, order); }, g);
}

double log_neg_psi_deriv1(const GeneratorLike& g, double t) {
  return std::visit([t](const auto& x) { return x.log_neg_deriv1(t); }, g);
}

TiltedGenerator tilt(const GeneratorLike& g, double h) {
  if (const auto* tg = std::get_if<TiltedGenerator>(&g)) {
    if (!(h >= 0.0)) throw std::domain_error("tilt h must be >= 0");
    return TiltedGenerator(tg->base(), tg->tilt() + h);
  }
  if (const auto* pg = std::get_if<Generator>(&g)) return TiltedGenerator(*pg, h);
  return TiltedGenerator(std::get<OuterPowerGenerator>(g), h);
}

GeneratorParts decompose(const GeneratorLike& g) {
  if (const auto* tg = std::get_if<TiltedGenerator>(&g)) return {tg->base_outer(), tg->tilt()};
  if (const auto* pg = std::get_if<Generator>(&g)) return {OuterPowerGenerator(*pg), 0.0};
  return {std::get<OuterPowerGenerator>(g), 0.0};
}

}  // namespace trunca
