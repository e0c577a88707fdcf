#include "trunca/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "trunca/errors.hpp"

namespace trunca {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClipTol = 1e-12;
constexpr int kBisectMaxIter = 200;
constexpr double kBisectWidth = 1e-13;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_dim(int d, const char* what) {
  if (d < 2) throw std::invalid_argument(std::string(what) + " requires dimension >= 2");
}

double clip_unit(double u) {
  if (!(u >= -kClipTol && u <= 1.0 + kClipTol))
    throw std::domain_error("copula argument outside [0, 1]");
  return std::clamp(u, 0.0, 1.0);
}

// sum_j psi^{-1}(u_j) with an early exit on a zero argument.
template <class G>
double inverse_sum(const G& g, std::span<const double> u) {
  double s = 0.0;
  for (double x : u) {
    if (x <= 0.0) return kInf;
    s += g.psi_inv(x);
  }
  return s;
}

double archimedean_cdf(const GeneratorLike& g, std::span<const double> u) {
  double s = 0.0;
  for (double x : u) {
    if (x <= 0.0) return 0.0;
    s += psi_inv(g, x);
  }
  return psi(g, s);
}

std::optional<double> stable_index(const OuterPowerGenerator& g) {
  switch (g.base().family()) {
    case Family::Independence: return g.alpha();
    case Family::Gumbel: return g.alpha() / g.base().theta();
    default: return std::nullopt;
  }
}

bool nesting_ok(const OuterPowerGenerator& root, const OuterPowerGenerator& sector) {
  const Generator& r = root.base();
  const Generator& s = sector.base();
  if (r.family() == Family::Independence && root.alpha() == 1.0) return true;
  if (r.family() == s.family() && root.alpha() == sector.alpha() && r.theta() <= s.theta())
    return true;
  if (r == s && root.alpha() >= sector.alpha()) return true;
  const auto ri = stable_index(root);
  const auto si = stable_index(sector);
  return ri && si && *ri >= *si;
}

double nested_cdf(const NestedArchimedean& m, std::span<const double> u) {
  double s0 = 0.0;
  std::size_t pos = 0;
  for (const auto& sec : m.sectors) {
    const auto part = u.subspan(pos, static_cast<std::size_t>(sec.dim));
    pos += static_cast<std::size_t>(sec.dim);
    const double cs = sec.gen.psi(inverse_sum(sec.gen, part));
    if (cs <= 0.0) return 0.0;
    s0 += m.root.psi_inv(cs);
  }
  return m.root.psi(s0);
}

double mo_cdf(double a1, double a2, double u1, double u2) {
  return std::min(std::pow(u1, 1.0 - a1) * u2, u1 * std::pow(u2, 1.0 - a2));
}

double cdf_clipped(const CopulaModel& m, std::span<const double> u);

double survival_cdf(const Survival& s, double u1, double u2) {
  const double v[2] = {1.0 - u1, 1.0 - u2};
  return std::clamp(u1 + u2 - 1.0 + cdf_clipped(*s.inner, v), 0.0, 1.0);
}

double cdf_clipped(const CopulaModel& m, std::span<const double> u) {
  return std::visit(
      overloaded{
          [&](const Independence&) {
            return std::accumulate(u.begin(), u.end(), 1.0, std::multiplies<>());
          },
          [&](const Comonotone&) { return *std::min_element(u.begin(), u.end()); },
          [&](const Archimedean& a) { return archimedean_cdf(a.gen, u); },
          [&](const NestedArchimedean& n) { return nested_cdf(n, u); },
          [&](const MarshallOlkin2& mo) { return mo_cdf(mo.a1, mo.a2, u[0], u[1]); },
          [&](const Survival& s) { return survival_cdf(s, u[0], u[1]); },
      },
      m.variant());
}

std::vector<double> with_replaced(const TruncationPoint& t, int j, double x) {
  std::vector<double> v = t.t();
  v[static_cast<std::size_t>(j)] = x;
  return v;
}

void check_index(int j, int d) {
  if (j < 0 || j >= d) throw std::invalid_argument("coordinate index out of range");
}

double check_section_value(double y, const TruncationPoint& t) {
  if (!(y >= -kClipTol) || y > t.c() * (1.0 + kClipTol) + kClipTol)
    throw std::domain_error("section value outside [0, C(t)]");
  return std::clamp(y, 0.0, t.c());
}

// psi(max(0, psi^{-1}(y) - s)) for a generator object.
template <class G>
double shifted_inverse(const G& g, double y, double s) {
  if (y <= 0.0) return 0.0;
  return g.psi(std::max(0.0, g.psi_inv(y) - s));
}

struct GeneratorLikeRef {
  const GeneratorLike& g;
  double psi(double t) const { return trunca::psi(g, t); }
  double psi_inv(double u) const { return trunca::psi_inv(g, u); }
};

double nested_section_inv(const NestedArchimedean& m, int j, double y, const TruncationPoint& t) {
  const auto [s, k] = m.locate(j);
  double other = 0.0;
  for (int r = 0; r < static_cast<int>(m.sectors.size()); ++r) {
    if (r == s) continue;
    const auto& sec = m.sectors[static_cast<std::size_t>(r)];
    const auto part = std::span<const double>(t.t()).subspan(
        static_cast<std::size_t>(m.offset(r)), static_cast<std::size_t>(sec.dim));
    other += m.root.psi_inv(sec.gen.psi(inverse_sum(sec.gen, part)));
  }
  const double z = shifted_inverse(m.root, y, other);
  const auto& sec = m.sectors[static_cast<std::size_t>(s)];
  double within = 0.0;
  for (int i = 0; i < sec.dim; ++i) {
    if (i == k) continue;
    within += sec.gen.psi_inv(t[m.offset(s) + i]);
  }
  return shifted_inverse(sec.gen, z, within);
}

double mo_section_inv(const MarshallOlkin2& m, int j, double y, const TruncationPoint& t) {
  const double aj = j == 0 ? m.a1 : m.a2;
  const double ao = j == 0 ? m.a2 : m.a1;
  const double to = t[1 - j];
  // Section x -> min(x^{1 - aj} to, x to^{1 - ao}); the second term is the
  // smaller one up to x = to^{ao / aj}.
  if (y <= std::pow(to, 1.0 - ao + ao / aj)) return y / std::pow(to, 1.0 - ao);
  return std::pow(y / to, 1.0 / (1.0 - aj));
}

double section_inv(const CopulaModel& m, int j, double y, const TruncationPoint& t,
                   InverseMethod method) {
  switch (method) {
    case InverseMethod::Analytic: return margin_section_inv(m, j, y, t);
    case InverseMethod::Bisection: return margin_section_inv_bisect(m, j, y, t);
    case InverseMethod::Bracket: return margin_section_inv_bracket(m, j, y, t);
  }
  throw std::invalid_argument("unknown inverse method");
}

double tilted_archimedean_cdf(const TiltedGenerator& g, std::span<const double> u) {
  double s = 0.0;
  for (double x : u) {
    if (x <= 0.0) return 0.0;
    s += g.psi_inv(x);
  }
  return g.psi(s);
}

double truncated_nested_cdf(const NestedArchimedean& m, const TruncatedNestedForm& f,
                            std::span<const double> u) {
  const auto& r = m.root;
  double s0 = 0.0;
  std::size_t pos = 0;
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    const auto& sec = m.sectors[s];
    double inner = 0.0;
    for (int i = 0; i < sec.dim; ++i) {
      const double x = u[pos++];
      if (x <= 0.0) return 0.0;
      inner += sec.gen.psi_inv(r.psi(r.psi_inv(f.c * x) - f.k[s]));
    }
    inner -= (sec.dim - 1) * f.a[s];
    s0 += r.psi_inv(sec.gen.psi(std::max(0.0, inner)));
  }
  return r.psi(s0) / f.c;
}

double product_cdf(const ProductOfBlocksForm& f, std::span<const double> u) {
  double p = 1.0;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < f.blocks.size(); ++b) {
    const auto part = u.subspan(pos, static_cast<std::size_t>(f.dims[b]));
    pos += static_cast<std::size_t>(f.dims[b]);
    p *= tilted_archimedean_cdf(f.blocks[b], part);
  }
  return p;
}

double truncated_mo_cdf(const MarshallOlkin2& m, const TruncatedMOForm& f, double u1,
                        double u2) {
  const double a1 = m.a1;
  const double a2 = m.a2;
  if (f.case1) {
    if (u1 <= f.breakpoint)
      return std::min(std::pow(u1 / f.ratio, 1.0 - a1) * u2, u1 * std::pow(u2, 1.0 - a2));
    return std::min(u1 * u2,
                    f.ratio * std::pow(u1, 1.0 / (1.0 - a1)) * std::pow(u2, 1.0 - a2));
  }
  if (u2 <= f.breakpoint)
    return std::min(std::pow(f.ratio * u2, 1.0 - a2) * u1, u2 * std::pow(u1, 1.0 - a1));
  return std::min(u1 * u2,
                  std::pow(u2, 1.0 / (1.0 - a2)) * std::pow(u1, 1.0 - a1) / f.ratio);
}

std::vector<double> clipped(std::span<const double> u, int d) {
  if (static_cast<int>(u.size()) != d) throw std::invalid_argument("dimension mismatch");
  std::vector<double> v(u.size());
  std::transform(u.begin(), u.end(), v.begin(), clip_unit);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Models

Independence::Independence(int d_) : d(d_) { check_dim(d, "independence copula"); }

Comonotone::Comonotone(int d_) : d(d_) { check_dim(d, "comonotone copula"); }

Archimedean::Archimedean(GeneratorLike g, int d_) : gen(std::move(g)), d(d_) {
  check_dim(d, "Archimedean copula");
}

NestedArchimedean::NestedArchimedean(OuterPowerGenerator r, std::vector<NestedSector> s)
    : root(std::move(r)), sectors(std::move(s)) {
  if (sectors.empty()) throw std::invalid_argument("nested copula requires at least one sector");
  for (const auto& sec : sectors) {
    if (sec.dim < 1) throw std::invalid_argument("nested sector dimension must be >= 1");
    if (!nesting_ok(root, sec.gen))
      throw std::domain_error("nested copula violates the sufficient nesting condition");
  }
  check_dim(dim(), "nested Archimedean copula");
}

int NestedArchimedean::dim() const {
  int d = 0;
  for (const auto& s : sectors) d += s.dim;
  return d;
}

std::pair<int, int> NestedArchimedean::locate(int j) const {
  check_index(j, dim());
  int s = 0;
  while (j >= sectors[static_cast<std::size_t>(s)].dim) {
    j -= sectors[static_cast<std::size_t>(s)].dim;
    ++s;
  }
  return {s, j};
}

int NestedArchimedean::offset(int s) const {
  int o = 0;
  for (int r = 0; r < s; ++r) o += sectors[static_cast<std::size_t>(r)].dim;
  return o;
}

MarshallOlkin2::MarshallOlkin2(double a1_, double a2_) : a1(a1_), a2(a2_) {
  if (!(a1 > 0.0 && a1 < 1.0 && a2 > 0.0 && a2 < 1.0))
    throw std::domain_error("Marshall-Olkin parameters must lie in (0, 1)");
}

Survival::Survival(const CopulaModel& m) : inner(std::make_shared<const CopulaModel>(m)) {
  if (m.dim() != 2) throw UnsupportedError("survival copulas are supported in dimension 2 only");
}

int CopulaModel::dim() const {
  return std::visit(overloaded{
                        [](const Independence& m) { return m.d; },
                        [](const Comonotone& m) { return m.d; },
                        [](const Archimedean& m) { return m.d; },
                        [](const NestedArchimedean& m) { return m.dim(); },
                        [](const MarshallOlkin2&) { return 2; },
                        [](const Survival&) { return 2; },
                    },
                    v_);
}

std::string_view CopulaModel::kind() const {
  return std::visit(overloaded{
                        [](const Independence&) { return std::string_view("independence"); },
                        [](const Comonotone&) { return std::string_view("comonotone"); },
                        [](const Archimedean&) { return std::string_view("archimedean"); },
                        [](const NestedArchimedean&) { return std::string_view("nested"); },
                        [](const MarshallOlkin2&) { return std::string_view("marshall_olkin"); },
                        [](const Survival&) { return std::string_view("survival"); },
                    },
                    v_);
}

CopulaModel survival(const CopulaModel& m) { return Survival(m); }

double cdf(const CopulaModel& m, std::span<const double> u) {
  const auto v = clipped(u, m.dim());
  return cdf_clipped(m, v);
}

// ---------------------------------------------------------------------------
// Truncation point and sections

TruncationPoint::TruncationPoint(const CopulaModel& m, std::vector<double> t) : t_(std::move(t)) {
  if (static_cast<int>(t_.size()) != m.dim())
    throw std::invalid_argument("truncation point dimension does not match the model");
  for (double x : t_)
    if (!(x > 0.0 && x <= 1.0)) throw std::domain_error("truncation point must lie in (0, 1]^d");
  c_ = cdf(m, t_);
  if (!(c_ > 0.0)) throw std::domain_error("C(t) must be positive");
}

bool TruncationPoint::is_one() const {
  return std::all_of(t_.begin(), t_.end(), [](double x) { return x == 1.0; });
}

double margin_section(const CopulaModel& m, int j, double x, const TruncationPoint& t) {
  check_index(j, t.dim());
  if (!(x >= -kClipTol && x <= t[j] + kClipTol))
    throw std::domain_error("section argument outside [0, t_j]");
  const auto v = with_replaced(t, j, std::clamp(x, 0.0, t[j]));
  return cdf(m, v);
}

double margin_section_inv(const CopulaModel& m, int j, double y, const TruncationPoint& t) {
  check_index(j, t.dim());
  y = check_section_value(y, t);
  const auto& tv = t.t();
  const auto others = [&](auto&& f) {
    double s = 0.0;
    for (int k = 0; k < t.dim(); ++k)
      if (k != j) s += f(tv[static_cast<std::size_t>(k)]);
    return s;
  };
  double x = std::visit(
      overloaded{
          [&](const Independence&) {
            double p = 1.0;
            for (int k = 0; k < t.dim(); ++k)
              if (k != j) p *= tv[static_cast<std::size_t>(k)];
            return y / p;
          },
          [&](const Comonotone&) { return y; },
          [&](const Archimedean& a) {
            return shifted_inverse(GeneratorLikeRef{a.gen}, y,
                                   others([&](double u) { return psi_inv(a.gen, u); }));
          },
          [&](const NestedArchimedean& n) { return nested_section_inv(n, j, y, t); },
          [&](const MarshallOlkin2& mo) { return mo_section_inv(mo, j, y, t); },
          [&](const Survival&) { return margin_section_inv_bisect(m, j, y, t); },
      },
      m.variant());
  return std::clamp(x, 0.0, t[j]);
}

double margin_section_inv_bisect(const CopulaModel& m, int j, double y,
                                 const TruncationPoint& t) {
  check_index(j, t.dim());
  y = check_section_value(y, t);
  if (y <= 0.0) return 0.0;
  auto v = t.t();
  const auto section = [&](double x) {
    v[static_cast<std::size_t>(j)] = x;
    return cdf_clipped(m, v);
  };
  double lo = 0.0;
  double hi = t[j];
  for (int it = 0; it < kBisectMaxIter && hi - lo > kBisectWidth; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (section(mid) >= y)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

double margin_section_inv_bracket(const CopulaModel& m, int j, double y,
                                  const TruncationPoint& t) {
  check_index(j, t.dim());
  y = check_section_value(y, t);
  if (y <= 0.0) return 0.0;
  auto v = t.t();
  const auto f = [&](double x) {
    v[static_cast<std::size_t>(j)] = x;
    return cdf_clipped(m, v) - y;
  };
  const double fhi = f(t[j]);
  if (fhi <= 0.0) return t[j];
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, 0.0, t[j], -y, fhi,
                                                   boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

double truncated_cdf(const CopulaModel& m, const TruncationPoint& t, std::span<const double> x) {
  if (static_cast<int>(x.size()) != t.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> v(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= 0.0)) throw std::domain_error("truncated CDF argument must be >= 0");
    v[j] = std::min(x[j], t.t()[j]);
  }
  return std::min(1.0, cdf_clipped(m, v) / t.c());
}

// ---------------------------------------------------------------------------
// Truncated copulas

TruncatedCopula::TruncatedCopula(CopulaModel source, TruncationPoint t, ClosedForm form)
    : source_(std::move(source)), t_(std::move(t)), form_(std::move(form)) {
  if (t_.dim() != source_.dim())
    throw std::invalid_argument("truncation point dimension does not match the model");
}

std::string_view TruncatedCopula::form_name() const {
  return std::visit(
      overloaded{
          [](const std::monostate&) { return std::string_view("numeric"); },
          [](const SameForm&) { return std::string_view("same"); },
          [](const TiltedArchimedeanForm&) { return std::string_view("tilted-archimedean"); },
          [](const TruncatedNestedForm&) { return std::string_view("truncated-nested"); },
          [](const ProductOfBlocksForm&) { return std::string_view("product-of-blocks"); },
          [](const TruncatedMOForm&) { return std::string_view("truncated-mo"); },
      },
      form_);
}

double TruncatedCopula::cdf(std::span<const double> u) const {
  const auto v = clipped(u, dim());
  const double r = std::visit(
      overloaded{
          [&](const std::monostate&) { return cdf_general(v); },
          [&](const SameForm&) { return cdf_clipped(source_, v); },
          [&](const TiltedArchimedeanForm& f) { return tilted_archimedean_cdf(f.gen, v); },
          [&](const TruncatedNestedForm& f) {
            return truncated_nested_cdf(*source_.get_if<NestedArchimedean>(), f, v);
          },
          [&](const ProductOfBlocksForm& f) { return product_cdf(f, v); },
          [&](const TruncatedMOForm& f) {
            return truncated_mo_cdf(*source_.get_if<MarshallOlkin2>(), f, v[0], v[1]);
          },
      },
      form_);
  return std::clamp(r, 0.0, 1.0);
}

double TruncatedCopula::cdf_general(std::span<const double> u, InverseMethod method) const {
  const auto v = clipped(u, dim());
  std::vector<double> x(v.size());
  for (int j = 0; j < dim(); ++j)
    x[static_cast<std::size_t>(j)] =
        section_inv(source_, j, t_.c() * v[static_cast<std::size_t>(j)], t_, method);
  return std::clamp(cdf_clipped(source_, x) / t_.c(), 0.0, 1.0);
}

double TruncatedCopula::margin_cdf(int j, double x) const {
  return std::min(1.0, margin_section(source_, j, x, t_) / t_.c());
}

double TruncatedCopula::margin_quantile(int j, double u) const {
  return margin_section_inv(source_, j, clip_unit(u) * t_.c(), t_);
}

std::optional<double> TruncatedCopula::singular_curve(double u1) const {
  const auto* f = std::get_if<TruncatedMOForm>(&form_);
  if (!f) throw std::invalid_argument("singular curve is defined for truncated Marshall-Olkin only");
  const auto& m = *source_.get_if<MarshallOlkin2>();
  u1 = clip_unit(u1);
  if (f->case1) {
    if (u1 > f->breakpoint) return std::nullopt;
    return std::pow(std::pow(f->ratio, 1.0 - m.a1) * std::pow(u1, m.a1), 1.0 / m.a2);
  }
  const double u2 = std::pow(std::pow(f->ratio, 1.0 - m.a2) * std::pow(u1, m.a1), 1.0 / m.a2);
  if (u2 > 1.0) return std::nullopt;
  return u2;
}

TruncatedCopula truncate_numeric(const CopulaModel& m, const TruncationPoint& t) {
  return TruncatedCopula(m, t, std::monostate{});
}

TruncatedCopula truncate_nested(const NestedArchimedean& m, const TruncationPoint& t) {
  TruncatedNestedForm f;
  f.c = t.c();
  f.h0 = m.root.psi_inv(f.c);
  for (int s = 0; s < static_cast<int>(m.sectors.size()); ++s) {
    const auto& sec = m.sectors[static_cast<std::size_t>(s)];
    const auto part = std::span<const double>(t.t()).subspan(
        static_cast<std::size_t>(m.offset(s)), static_cast<std::size_t>(sec.dim));
    const double a = inverse_sum(sec.gen, part);
    const double cs = sec.gen.psi(a);
    f.a.push_back(a);
    f.k.push_back(f.h0 - m.root.psi_inv(cs));
  }
  return TruncatedCopula(m, t, std::move(f));
}

TruncatedCopula truncate_mo(const MarshallOlkin2& m, const TruncationPoint& t) {
  TruncatedMOForm f;
  const double p1 = std::pow(t[0], m.a1);
  const double p2 = std::pow(t[1], m.a2);
  f.ratio = p1 / p2;
  f.case1 = p2 <= p1;
  f.breakpoint = f.case1 ? std::pow(1.0 / f.ratio, (1.0 - m.a1) / m.a1)
                         : std::pow(f.ratio, (1.0 - m.a2) / m.a2);
  return TruncatedCopula(m, t, f);
}

TruncatedCopula truncate_general(const CopulaModel& m, const TruncationPoint& t) {
  return std::visit(
      overloaded{
          [&](const Independence&) { return TruncatedCopula(m, t, SameForm{}); },
          [&](const Comonotone&) { return TruncatedCopula(m, t, SameForm{}); },
          [&](const Archimedean& a) {
            return TruncatedCopula(m, t, TiltedArchimedeanForm{tilt(a.gen, psi_inv(a.gen, t.c()))});
          },
          [&](const NestedArchimedean& n) {
            if (n.root.base().family() != Family::Independence || n.root.alpha() != 1.0)
              return truncate_nested(n, t);
            ProductOfBlocksForm f;
            for (int s = 0; s < static_cast<int>(n.sectors.size()); ++s) {
              const auto& sec = n.sectors[static_cast<std::size_t>(s)];
              const auto part = std::span<const double>(t.t()).subspan(
                  static_cast<std::size_t>(n.offset(s)), static_cast<std::size_t>(sec.dim));
              const double cs = sec.gen.psi(inverse_sum(sec.gen, part));
              f.blocks.push_back(tilt(sec.gen, sec.gen.psi_inv(cs)));
              f.dims.push_back(sec.dim);
            }
            return TruncatedCopula(m, t, std::move(f));
          },
          [&](const MarshallOlkin2& mo) { return truncate_mo(mo, t); },
          [&](const Survival&) { return truncate_numeric(m, t); },
      },
      m.variant());
}

double nested_biv_margin(const TruncatedCopula& tc, int j1, int j2, double u1, double u2) {
  const auto* f = std::get_if<TruncatedNestedForm>(&tc.closed_form());
  if (!f) throw std::invalid_argument("bivariate nested margins need a truncated nested copula");
  const auto& m = *tc.source().get_if<NestedArchimedean>();
  if (j1 == j2) throw std::invalid_argument("bivariate margin needs two distinct coordinates");
  const auto [s1, k1] = m.locate(j1);
  const auto [s2, k2] = m.locate(j2);
  u1 = clip_unit(u1);
  u2 = clip_unit(u2);
  if (u1 <= 0.0 || u2 <= 0.0) return 0.0;
  const auto& r = m.root;
  if (s1 != s2) {
    const TiltedGenerator g(r, f->h0);
    return std::clamp(g.psi(g.psi_inv(u1) + g.psi_inv(u2)), 0.0, 1.0);
  }
  const auto s = static_cast<std::size_t>(s1);
  const auto& gs = m.sectors[s].gen;
  const double ks = f->k[s];
  const auto term = [&](double u) { return gs.psi_inv(r.psi(r.psi_inv(f->c * u) - ks)); };
  const double inner = std::max(0.0, term(u1) + term(u2) - f->a[s]);
  return std::clamp(r.psi(ks + r.psi_inv(gs.psi(inner))) / f->c, 0.0, 1.0);
}

double ev_scaling_check(const MarshallOlkin2& m, std::span<const double> t, double alpha,
                        std::span<const double> grid) {
  if (!(alpha > 0.0)) throw std::domain_error("scaling exponent must be positive");
  if (t.size() != 2) throw std::invalid_argument("Marshall-Olkin truncation point must be bivariate");
  const CopulaModel model(m);
  const auto lhs = truncate_mo(m, TruncationPoint(model, {t[0], t[1]}));
  const auto rhs = truncate_mo(
      m, TruncationPoint(model, {std::pow(t[0], 1.0 / alpha), std::pow(t[1], 1.0 / alpha)}));
  double worst = 0.0;
  for (double a : grid) {
    for (double b : grid) {
      const double ua[2] = {std::pow(a, alpha), std::pow(b, alpha)};
      const double u[2] = {a, b};
      worst = std::max(worst, std::abs(lhs.cdf(ua) - std::pow(rhs.cdf(u), alpha)));
    }
  }
  return worst;
}

}  // namespace trunca
