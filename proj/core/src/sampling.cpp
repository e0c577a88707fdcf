#include "trunca/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include "trunca/errors.hpp"
#include "trunca/frailty.hpp"

namespace trunca {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<double> stable_index(const OuterPowerGenerator& g) {
  switch (g.base().family()) {
    case Family::Independence: return g.alpha();
    case Family::Gumbel: return g.alpha() / g.base().theta();
    default: return std::nullopt;
  }
}

bool is_plain(const OuterPowerGenerator& g, Family f) {
  return g.base().family() == f && g.alpha() == 1.0;
}

// psi(E_j / V) for each entry of out.
template <class G>
void fill_from_frailty(const G& g, double v, RngStream& rng, std::span<double> out) {
  for (double& u : out) u = g.psi(rng.exponential() / v);
}

struct GeneratorLikeRef {
  const GeneratorLike& g;
  double psi(double t) const { return trunca::psi(g, t); }
};

// One row of the nested copula; draw_sector(s, v0, rng) returns V_s.
template <class F>
void nested_row(const NestedArchimedean& m, double v0, RngStream& rng, std::span<double> out,
                F&& draw_sector) {
  std::size_t pos = 0;
  for (std::size_t s = 0; s < m.sectors.size(); ++s) {
    const auto& sec = m.sectors[s];
    const auto part = out.subspan(pos, static_cast<std::size_t>(sec.dim));
    pos += static_cast<std::size_t>(sec.dim);
    fill_from_frailty(sec.gen, draw_sector(s, v0, rng), rng, part);
  }
}

void draw_nested_row(const NestedArchimedean& m, RngStream& rng, std::span<double> out) {
  const auto& root = m.root;
  if (is_plain(root, Family::Independence)) {
    nested_row(m, 1.0, rng, out, [&](std::size_t s, double, RngStream& r) {
      return sample_frailty(m.sectors[s].gen, 0.0, r);
    });
    return;
  }
  const bool all_equal = std::all_of(m.sectors.begin(), m.sectors.end(),
                                     [&](const NestedSector& s) { return s.gen == root; });
  if (all_equal) {
    const double v0 = sample_frailty(root, 0.0, rng);
    nested_row(m, v0, rng, out, [](std::size_t, double v, RngStream&) { return v; });
    return;
  }
  const auto r_index = stable_index(root);
  const bool stable_stack =
      r_index && std::all_of(m.sectors.begin(), m.sectors.end(),
                             [](const NestedSector& s) { return stable_index(s.gen).has_value(); });
  if (stable_stack) {
    // psi_0^{-1}(psi_s(t)) = t^a, a = beta_s / beta_0: V_s = V_0^{1/a} S_a.
    const double v0 = sample_stable(*r_index, rng);
    nested_row(m, v0, rng, out, [&](std::size_t s, double v, RngStream& r) {
      const double a = *stable_index(m.sectors[s].gen) / *r_index;
      return std::pow(v, 1.0 / a) * sample_stable(a, r);
    });
    return;
  }
  const bool clayton_stack =
      is_plain(root, Family::Clayton) &&
      std::all_of(m.sectors.begin(), m.sectors.end(),
                  [](const NestedSector& s) { return is_plain(s.gen, Family::Clayton); });
  if (clayton_stack) {
    // psi_0^{-1}(psi_s(t)) = (1 + t)^a - 1: V_s = V_0^{1/a} X, X tilted
    // stable with tilt V_0^{1/a}.
    const double v0 = rng.gamma(1.0 / root.base().theta());
    nested_row(m, v0, rng, out, [&](std::size_t s, double v, RngStream& r) {
      const double a = root.base().theta() / m.sectors[s].gen.base().theta();
      if (a == 1.0) return v;
      const double h = std::pow(v, 1.0 / a);
      return h * sample_tilted_stable(a, h, r);
    });
    return;
  }
  throw UnsupportedError("no nested sampler for this combination of generators");
}

void draw_row(const CopulaModel& m, RngStream& rng, std::span<double> out) {
  std::visit(overloaded{
                 [&](const Independence&) {
                   for (double& u : out) u = rng.uniform();
                 },
                 [&](const Comonotone&) { std::fill(out.begin(), out.end(), rng.uniform()); },
                 [&](const Archimedean& a) {
                   fill_from_frailty(GeneratorLikeRef{a.gen}, sample_frailty(a.gen, rng), rng, out);
                 },
                 [&](const NestedArchimedean& n) { draw_nested_row(n, rng, out); },
                 [&](const MarshallOlkin2& mo) {
                   const double v1 = rng.uniform();
                   const double v2 = rng.uniform();
                   const double w = rng.uniform();
                   out[0] = std::max(std::pow(v1, 1.0 / (1.0 - mo.a1)), std::pow(w, 1.0 / mo.a1));
                   out[1] = std::max(std::pow(v2, 1.0 / (1.0 - mo.a2)), std::pow(w, 1.0 / mo.a2));
                 },
                 [&](const Survival& s) {
                   draw_row(*s.inner, rng, out);
                   for (double& u : out) u = 1.0 - u;
                 },
             },
             m.variant());
}

SampleMatrix with_meta(SampleMatrix s, std::vector<double> t, std::uint64_t seed,
                       std::string method) {
  s.meta.t = std::move(t);
  s.meta.seed = seed;
  s.meta.method = std::move(method);
  return s;
}

// U | U <= t for Marshall-Olkin, straight from the shocks: the event splits
// into V_j <= t_j^{1 - a_j} and W <= min(t_1^{a_1}, t_2^{a_2}).
SampleMatrix truncated_mo_raw(const MarshallOlkin2& mo, const TruncationPoint& t, std::size_t n,
                              RngStream& rng) {
  SampleMatrix out(n, 2);
  const double b1 = std::pow(t[0], 1.0 - mo.a1);
  const double b2 = std::pow(t[1], 1.0 - mo.a2);
  const double bw = std::min(std::pow(t[0], mo.a1), std::pow(t[1], mo.a2));
  for (std::size_t i = 0; i < n; ++i) {
    const double v1 = b1 * rng.uniform();
    const double v2 = b2 * rng.uniform();
    const double w = bw * rng.uniform();
    out(i, 0) = std::min(t[0], std::max(std::pow(v1, 1.0 / (1.0 - mo.a1)), std::pow(w, 1.0 / mo.a1)));
    out(i, 1) = std::min(t[1], std::max(std::pow(v2, 1.0 / (1.0 - mo.a2)), std::pow(w, 1.0 / mo.a2)));
  }
  return out;
}

// Closed-form path, copula scale. Returns nullopt without one.
std::optional<SampleMatrix> fast_path(const TruncatedCopula& tc, std::size_t n, RngStream& rng) {
  const auto& m = tc.source();
  const auto& t = tc.point();
  return std::visit(
      overloaded{
          [&](const std::monostate&) -> std::optional<SampleMatrix> { return std::nullopt; },
          [&](const TruncatedNestedForm&) -> std::optional<SampleMatrix> { return std::nullopt; },
          [&](const SameForm&) -> std::optional<SampleMatrix> { return sample_model(m, n, rng); },
          [&](const TiltedArchimedeanForm& f) -> std::optional<SampleMatrix> {
            return sample_archimedean(f.gen, tc.dim(), n, rng);
          },
          [&](const ProductOfBlocksForm& f) -> std::optional<SampleMatrix> {
            SampleMatrix out(n, tc.dim());
            for (std::size_t i = 0; i < n; ++i) {
              auto row = out.row(i);
              std::size_t pos = 0;
              for (std::size_t b = 0; b < f.blocks.size(); ++b) {
                const auto part = row.subspan(pos, static_cast<std::size_t>(f.dims[b]));
                pos += static_cast<std::size_t>(f.dims[b]);
                fill_from_frailty(f.blocks[b], sample_frailty(f.blocks[b], rng), rng, part);
              }
            }
            return out;
          },
          [&](const TruncatedMOForm&) -> std::optional<SampleMatrix> {
            return transform_margins(truncated_mo_raw(*m.get_if<MarshallOlkin2>(), t, n, rng), m, t);
          },
      },
      tc.closed_form());
}

std::string method_tag(const TruncatedCopula& tc, bool oracle) {
  if (oracle) return "oracle";
  return std::string(tc.form_name());
}

}  // namespace

// ---------------------------------------------------------------------------
// SampleMatrix

SampleMatrix::SampleMatrix(std::size_t n, int d)
    : n_(n), d_(d), data_(n * static_cast<std::size_t>(d), 0.0) {
  if (d < 1) throw std::invalid_argument("sample matrix needs at least one column");
}

SampleMatrix::SampleMatrix(std::size_t n, int d, std::vector<double> data)
    : n_(n), d_(d), data_(std::move(data)) {
  if (d < 1) throw std::invalid_argument("sample matrix needs at least one column");
  if (data_.size() != n * static_cast<std::size_t>(d))
    throw std::invalid_argument("sample matrix data size does not match its shape");
}

std::vector<double> SampleMatrix::column(int j) const {
  if (j < 0 || j >= d_) throw std::invalid_argument("column index out of range");
  std::vector<double> c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

void SampleMatrix::append(const SampleMatrix& other) {
  if (other.n_ == 0) return;
  if (n_ == 0 && d_ == 0) d_ = other.d_;
  if (other.d_ != d_) throw std::invalid_argument("cannot append samples of another dimension");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  n_ += other.n_;
}

// ---------------------------------------------------------------------------
// Model samplers

SampleMatrix sample_archimedean(const GeneratorLike& g, int d, std::size_t n, RngStream& rng) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  SampleMatrix out(n, d);
  const GeneratorLikeRef ref{g};
  for (std::size_t i = 0; i < n; ++i) fill_from_frailty(ref, sample_frailty(g, rng), rng, out.row(i));
  out.meta.seed = rng.seed();
  out.meta.method = "frailty";
  return out;
}

SampleMatrix sample_nested(const NestedArchimedean& m, std::size_t n, RngStream& rng) {
  SampleMatrix out(n, m.dim());
  for (std::size_t i = 0; i < n; ++i) draw_nested_row(m, rng, out.row(i));
  out.meta.seed = rng.seed();
  out.meta.method = "nested-frailty";
  return out;
}

SampleMatrix sample_model(const CopulaModel& m, std::size_t n, RngStream& rng) {
  SampleMatrix out(n, m.dim());
  for (std::size_t i = 0; i < n; ++i) draw_row(m, rng, out.row(i));
  out.meta.seed = rng.seed();
  out.meta.method = "model";
  return out;
}

SampleMatrix oracle_sample(const CopulaModel& m, const TruncationPoint& t, std::size_t n,
                           RngStream& rng, std::uint64_t max_tries, OracleStats* stats) {
  if (t.dim() != m.dim()) throw std::invalid_argument("truncation point dimension mismatch");
  if (max_tries == 0)
    max_tries = static_cast<std::uint64_t>(std::ceil(100.0 * static_cast<double>(std::max<std::size_t>(n, 1)) / t.c()));
  SampleMatrix out(n, m.dim());
  std::vector<double> u(static_cast<std::size_t>(m.dim()));
  OracleStats local;
  std::size_t filled = 0;
  while (filled < n) {
    if (local.proposals >= max_tries) {
      if (stats) *stats = local;
      throw SamplingError("rejection sampling gave up after " + std::to_string(local.proposals) +
                          " proposals: accepted " + std::to_string(local.accepted) +
                          " (rate " + std::to_string(local.rate()) + ", C(t) = " +
                          std::to_string(t.c()) + ")");
    }
    draw_row(m, rng, u);
    ++local.proposals;
    bool inside = true;
    for (int j = 0; j < t.dim() && inside; ++j) inside = u[static_cast<std::size_t>(j)] <= t[j];
    if (!inside) continue;
    std::copy(u.begin(), u.end(), out.row(filled).begin());
    ++filled;
    ++local.accepted;
  }
  if (stats) *stats = local;
  return with_meta(std::move(out), t.t(), rng.seed(), "oracle-raw");
}

SampleMatrix transform_margins(const SampleMatrix& raw, const CopulaModel& m,
                               const TruncationPoint& t) {
  if (raw.cols() != t.dim()) throw std::invalid_argument("sample dimension does not match t");
  SampleMatrix out(raw.rows(), raw.cols());
  out.meta = raw.meta;
  for (std::size_t i = 0; i < raw.rows(); ++i) {
    for (int j = 0; j < raw.cols(); ++j) {
      const double x = raw(i, j);
      if (!(x >= 0.0 && x <= t[j])) throw std::domain_error("sample row lies outside [0, t]");
      out(i, j) = std::min(1.0, margin_section(m, j, x, t) / t.c());
    }
  }
  return out;
}

SampleMatrix sample_truncated(const TruncatedCopula& tc, std::size_t n, RngStream& rng,
                              SamplingMethod method, OracleStats* stats) {
  if (method != SamplingMethod::Oracle) {
    if (auto s = fast_path(tc, n, rng))
      return with_meta(std::move(*s), tc.point().t(), rng.seed(), method_tag(tc, false));
    if (method == SamplingMethod::Tilted)
      throw UnsupportedError("no closed-form sampler for this truncation (" +
                             std::string(tc.form_name()) + ")");
  }
  auto raw = oracle_sample(tc.source(), tc.point(), n, rng, 0, stats);
  return with_meta(transform_margins(raw, tc.source(), tc.point()), tc.point().t(), rng.seed(),
                   method_tag(tc, true));
}

SampleMatrix sample_truncated_raw(const TruncatedCopula& tc, std::size_t n, RngStream& rng,
                                  SamplingMethod method, OracleStats* stats) {
  if (method != SamplingMethod::Oracle) {
    if (const auto* mo = tc.source().get_if<MarshallOlkin2>())
      return with_meta(truncated_mo_raw(*mo, tc.point(), n, rng), tc.point().t(), rng.seed(),
                       method_tag(tc, false) + "-raw");
    if (auto s = fast_path(tc, n, rng)) {
      for (std::size_t i = 0; i < s->rows(); ++i)
        for (int j = 0; j < s->cols(); ++j) (*s)(i, j) = tc.margin_quantile(j, (*s)(i, j));
      return with_meta(std::move(*s), tc.point().t(), rng.seed(), method_tag(tc, false) + "-raw");
    }
    if (method == SamplingMethod::Tilted)
      throw UnsupportedError("no closed-form sampler for this truncation (" +
                             std::string(tc.form_name()) + ")");
  }
  return oracle_sample(tc.source(), tc.point(), n, rng, 0, stats);
}

// ---------------------------------------------------------------------------
// Ranks and empirical copulas

SampleMatrix pseudo_observations(const SampleMatrix& data) {
  const std::size_t n = data.rows();
  if (n < 2) throw std::invalid_argument("pseudo-observations need at least two rows");
  SampleMatrix out(n, data.cols());
  out.meta = data.meta;
  std::vector<std::size_t> idx(n);
  const double scale = 1.0 / static_cast<double>(n + 1);
  for (int j = 0; j < data.cols(); ++j) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return data(a, j) < data(b, j); });
    for (std::size_t lo = 0; lo < n;) {
      std::size_t hi = lo + 1;
      while (hi < n && data(idx[hi], j) == data(idx[lo], j)) ++hi;
      // ranks lo + 1 .. hi share their average
      const double rank = 0.5 * static_cast<double>(lo + 1 + hi);
      for (std::size_t k = lo; k < hi; ++k) out(idx[k], j) = rank * scale;
      lo = hi;
    }
  }
  return out;
}

namespace {

// Counts #{U <= grid point} over the (g + 1)^d grid by binning and prefix sums.
std::vector<double> grid_cdf(const SampleMatrix& s, int g) {
  const int d = s.cols();
  const std::size_t side = static_cast<std::size_t>(g) + 1;
  std::size_t total = 1;
  for (int j = 0; j < d; ++j) total *= side;
  std::vector<double> cells(total, 0.0);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    std::size_t flat = 0;
    for (int j = 0; j < d; ++j) {
      const double c = std::ceil(std::clamp(s(i, j), 0.0, 1.0) * g);
      flat = flat * side + static_cast<std::size_t>(c);
    }
    cells[flat] += 1.0;
  }
  std::size_t stride = 1;
  for (int j = d - 1; j >= 0; --j) {
    for (std::size_t k = 0; k < total; ++k)
      if ((k / stride) % side != 0) cells[k] += cells[k - stride];
    stride *= side;
  }
  const double inv_n = 1.0 / static_cast<double>(s.rows());
  for (double& c : cells) c *= inv_n;
  return cells;
}

}  // namespace

double empirical_copula_distance(const SampleMatrix& a, const SampleMatrix& b, int grid) {
  if (a.cols() != b.cols()) throw std::invalid_argument("samples differ in dimension");
  if (a.rows() == 0 || b.rows() == 0) throw std::invalid_argument("samples must be non-empty");
  const int d = a.cols();
  if (grid == 0) grid = std::clamp(static_cast<int>(std::pow(2.5e5, 1.0 / d)) - 1, 4, 100);
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  if (std::pow(grid + 1.0, d) > 5e7) throw std::invalid_argument("grid too fine for this dimension");
  const auto ca = grid_cdf(a, grid);
  const auto cb = grid_cdf(b, grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < ca.size(); ++k) worst = std::max(worst, std::abs(ca[k] - cb[k]));
  return worst;
}

SampleMatrix sample_parallel(const std::function<SampleMatrix(std::size_t, RngStream&)>& draw,
                             std::size_t n, unsigned workers, std::uint64_t seed) {
  workers = std::max(1u, workers);
  std::vector<SampleMatrix> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t rows = n / workers + (w < n % workers ? 1 : 0);
    threads.emplace_back([&, w, rows] {
      try {
        RngStream rng(seed, w + 1);
        parts[w] = draw(rows, rng);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  SampleMatrix out;
  for (const auto& p : parts) out.append(p);
  if (!parts.empty()) out.meta = parts.front().meta;
  out.meta.seed = seed;
  return out;
}

}  // namespace trunca
