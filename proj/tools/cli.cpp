#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trunca/analytics.hpp"
#include "trunca/copulas.hpp"
#include "trunca/errors.hpp"
#include "trunca/model_io.hpp"
#include "trunca/sampling.hpp"

namespace trunca::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Config {
  std::string model;
  std::string t;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string method = "auto";
  std::string out;
  bool raw = false;
  double q = 0.02;
  std::vector<std::string> u;
  int grid = 0;
  std::string data;
  std::string figure;
  double threshold = 0.015;
};

SamplingMethod parse_method(const std::string& m) {
  if (m == "auto") return SamplingMethod::Auto;
  if (m == "tilted") return SamplingMethod::Tilted;
  if (m == "oracle") return SamplingMethod::Oracle;
  throw SpecError("unknown method '" + m + "'");
}

CopulaModel require_model(const Config& c) {
  if (c.model.empty()) throw SpecError("--model is required");
  return load_model(c.model);
}

TruncationPoint make_point(const CopulaModel& m, const std::string& t) {
  if (t.empty()) return TruncationPoint(m, std::vector<double>(static_cast<std::size_t>(m.dim()), 1.0));
  auto v = parse_real_list(t);
  if (static_cast<int>(v.size()) != m.dim())
    throw SpecError("--t has " + std::to_string(v.size()) + " entries, model dimension is " +
                    std::to_string(m.dim()));
  return TruncationPoint(m, std::move(v));
}

// Evaluation points from --u (one list per occurrence) and --grid (interior
// grid i/g, i = 1..g-1, in every coordinate).
std::vector<std::vector<double>> points(const Config& c, int d) {
  std::vector<std::vector<double>> pts;
  for (const auto& s : c.u) {
    auto p = parse_real_list(s);
    if (static_cast<int>(p.size()) != d)
      throw SpecError("--u point '" + s + "' does not match dimension " + std::to_string(d));
    pts.push_back(std::move(p));
  }
  if (c.grid > 0) {
    if (std::pow(c.grid, d) > 1e6) throw SpecError("--grid too fine for this dimension");
    std::vector<int> idx(static_cast<std::size_t>(d), 1);
    while (true) {
      std::vector<double> p;
      for (int i : idx) p.push_back(static_cast<double>(i) / c.grid);
      pts.push_back(std::move(p));
      int k = d - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] >= c.grid) idx[static_cast<std::size_t>(k--)] = 1;
      if (k < 0) break;
    }
  }
  return pts;
}

// Writes to --out when given, otherwise to the provided stream.
void emit(const Config& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (c.out.empty()) {
    write(out);
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw SpecError("cannot write " + c.out);
  write(f);
}

void write_sample(const fs::path& path, const SampleMatrix& s) {
  std::ofstream f(path);
  if (!f) throw SpecError("cannot write " + path.string());
  write_csv(f, s);
  std::ofstream meta(path.string() + ".meta.json");
  meta << meta_to_json(s.meta).dump(2) << '\n';
}

SampleMatrix draw(const Config& c, const CopulaModel& m, const TruncationPoint& t) {
  const auto tc = truncate_general(m, t);
  RngStream rng(c.seed);
  const auto method = parse_method(c.method);
  auto s = c.raw ? sample_truncated_raw(tc, c.n, rng, method) : sample_truncated(tc, c.n, rng, method);
  s.meta.model_spec = model_document(m).dump();
  s.meta.seed = c.seed;
  return s;
}

int cmd_sample(const Config& c, std::ostream& out) {
  const auto m = require_model(c);
  const auto t = make_point(m, c.t);
  if (c.n < 1) throw SpecError("--n must be >= 1");
  const auto s = draw(c, m, t);
  if (c.out.empty())
    write_csv(out, s);
  else
    write_sample(c.out, s);
  return kExitOk;
}

int cmd_cdf(const Config& c, std::ostream& out) {
  const auto m = require_model(c);
  const auto pts = points(c, m.dim());
  if (pts.empty()) throw SpecError("cdf needs --u or --grid");
  const auto t = make_point(m, c.t);
  const auto tc = truncate_general(m, t);
  emit(c, out, [&](std::ostream& os) {
    for (int j = 0; j < m.dim(); ++j) os << 'u' << j + 1 << ',';
    os << "cdf\n";
    for (const auto& p : pts) {
      for (double x : p) os << format_real(x) << ',';
      os << format_real(t.is_one() ? cdf(m, p) : tc.cdf(p)) << '\n';
    }
  });
  return kExitOk;
}

int cmd_truncate_eval(const Config& c, std::ostream& out) {
  const auto m = require_model(c);
  const auto t = make_point(m, c.t);
  const auto tc = truncate_general(m, t);
  json j;
  j["model"] = model_to_json(m);
  j["t"] = t.t();
  j["c"] = t.c();
  j["form"] = std::string(tc.form_name());
  if (const auto* f = std::get_if<TiltedArchimedeanForm>(&tc.closed_form())) j["tilt"] = f->gen.tilt();
  if (const auto* f = std::get_if<TruncatedNestedForm>(&tc.closed_form())) {
    j["h0"] = f->h0;
    j["k"] = f->k;
    j["a"] = f->a;
  }
  if (const auto* f = std::get_if<TruncatedMOForm>(&tc.closed_form())) {
    j["case"] = f->case1 ? 1 : 2;
    j["breakpoint"] = f->breakpoint;
  }
  j["points"] = json::array();
  for (const auto& p : points(c, m.dim())) {
    j["points"].push_back({{"u", p},
                           {"value", tc.cdf(p)},
                           {"general_analytic", tc.cdf_general(p, InverseMethod::Analytic)},
                           {"general_bisection", tc.cdf_general(p, InverseMethod::Bisection)}});
  }
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kExitOk;
}

SampleMatrix read_data(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SpecError("cannot open data file " + path);
  return read_csv(f);
}

int cmd_taildep(const Config& c, std::ostream& out) {
  json j;
  if (!c.data.empty()) {
    j = tail_dep_to_json(empirical_tail_dep(read_data(c.data), c.q, c.seed));
    j["q"] = c.q;
  } else {
    const auto m = require_model(c);
    const auto t = make_point(m, c.t);
    j = tail_dep_to_json(tail_dep_truncated(m, t));
    if (const auto* a = m.get_if<Archimedean>(); a && m.dim() == 2)
      j["numeric"] = tail_dep_to_json(tail_dep_tilted_numeric(a->gen, psi_inv(a->gen, t.c())));
  }
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kExitOk;
}

int cmd_kendall(const Config& c, std::ostream& out) {
  json j;
  if (!c.data.empty()) {
    const auto s = read_data(c.data);
    std::vector<std::vector<double>> tau(static_cast<std::size_t>(s.cols()),
                                         std::vector<double>(static_cast<std::size_t>(s.cols()), 1.0));
    for (int a = 0; a < s.cols(); ++a)
      for (int b = a + 1; b < s.cols(); ++b)
        tau[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            tau[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = empirical_kendall_tau(s, a, b);
    j["tau"] = tau;
    j["n"] = s.rows();
  } else {
    const auto m = require_model(c);
    const auto* a = m.get_if<Archimedean>();
    if (!a) throw UnsupportedError("Kendall distributions are available for Archimedean models");
    const auto t = make_point(m, c.t);
    std::vector<double> us;
    for (const auto& s : c.u)
      for (double x : parse_real_list(s)) us.push_back(x);
    for (int i = 1; i < c.grid; ++i) us.push_back(static_cast<double>(i) / c.grid);
    if (us.empty()) throw SpecError("kendall needs --u or --grid (or --data)");
    std::vector<double> k;
    for (double x : us) k.push_back(kendall_dist_truncated(a->gen, t, m.dim(), x));
    j["u"] = us;
    j["K"] = k;
    j["c"] = t.c();
    if (const auto* g = std::get_if<Generator>(&a->gen); g && t.is_one()) j["tau"] = g->kendall_tau();
  }
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kExitOk;
}

struct FigureSpec {
  CopulaModel model;
  std::vector<std::vector<double>> ts;
  // Trivariate survival models are not a CopulaModel; their panels reflect
  // samples of model and condition them on the reflected region.
  bool reflect = false;
};

FigureSpec figure_spec(const std::string& name) {
  const auto nested = [](Family f, double th0, double th1) {
    const Generator r(f, th0);
    return NestedArchimedean(r, {{r, 1}, {Generator(f, th1), 2}});
  };
  const std::vector<std::vector<double>> nested_ts = {
      {1, 1, 1}, {0.2, 0.5, 0.5}, {0.9, 0.9, 0.9}, {0.2, 0.1, 0.9}, {0.5, 0.5, 0.5}};
  const Generator gumbel(Family::Gumbel, 2.0);
  if (name == "mo") return {MarshallOlkin2(0.2, 0.7), {{1, 1}, {0.5, 0.8}, {0.8, 0.5}, {0.2, 0.2}}};
  if (name == "survival-gumbel")
    return {survival(Archimedean(gumbel, 2)), {{1, 1}, {0.5, 0.5}, {0.2, 0.8}, {0.8, 0.2}}};
  if (name == "survival-gumbel-3d") return {Archimedean(gumbel, 3), {{0.05, 0.95, 0.4}}, true};
  if (name == "nested-clayton") return {nested(Family::Clayton, 2.0, 6.0), nested_ts};
  if (name == "nested-gumbel") return {nested(Family::Gumbel, 2.0, 4.0), nested_ts};
  throw SpecError("unknown figure '" + name +
                  "' (mo, survival-gumbel, survival-gumbel-3d, nested-clayton, nested-gumbel)");
}

// Pseudo-observations of 1 - V given 1 - V <= t for V drawn from m.
SampleMatrix reflected_truncated(const CopulaModel& m, const std::vector<double>& t, std::size_t n,
                                 RngStream& rng) {
  const int d = m.dim();
  SampleMatrix raw(n, d);
  std::size_t filled = 0;
  std::size_t tries = 0;
  while (filled < n) {
    const auto batch = sample_model(m, 10000, rng);
    for (std::size_t i = 0; i < batch.rows() && filled < n; ++i) {
      bool inside = true;
      for (int j = 0; j < d && inside; ++j) inside = 1.0 - batch(i, j) <= t[static_cast<std::size_t>(j)];
      if (!inside) continue;
      for (int j = 0; j < d; ++j) raw(filled, j) = 1.0 - batch(i, j);
      ++filled;
    }
    tries += batch.rows();
    if (tries > 100 * n && filled * 1000 < tries)
      throw SamplingError("acceptance rate below 1e-3 for the reflected truncation region");
  }
  return pseudo_observations(raw);
}

std::string point_tag(const std::vector<double>& t) {
  std::string s = "t";
  for (double x : t) {
    std::ostringstream os;
    os << x;
    s += "_" + os.str();
  }
  return s;
}

int cmd_figure_data(const Config& c, std::ostream& out) {
  if (c.figure.empty()) throw SpecError("--figure is required");
  if (c.out.empty()) throw SpecError("--out must name a directory for figure data");
  const auto spec = figure_spec(c.figure);
  Config local = c;
  if (local.n == 0) local.n = 5000;
  fs::create_directories(c.out);
  json files = json::array();
  for (const auto& tv : spec.ts) {
    SampleMatrix s;
    if (spec.reflect) {
      RngStream rng(local.seed);
      s = reflected_truncated(spec.model, tv, local.n, rng);
      s.meta.model_spec = json{{"type", "survival"}, {"inner", model_to_json(spec.model)}}.dump();
      s.meta.t = tv;
      s.meta.seed = local.seed;
      s.meta.method = "oracle-pseudo";
    } else {
      s = draw(local, spec.model, TruncationPoint(spec.model, tv));
    }
    const fs::path path = fs::path(c.out) / (c.figure + "_" + point_tag(tv) + ".csv");
    write_sample(path, s);
    files.push_back({{"t", tv}, {"path", path.string()}, {"method", s.meta.method}});
  }
  out << json{{"figure", c.figure}, {"n", local.n}, {"files", files}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_oracle_compare(const Config& c, std::ostream& out) {
  const auto m = require_model(c);
  const auto t = make_point(m, c.t);
  const auto tc = truncate_general(m, t);
  const std::size_t n = c.n == 0 ? 100000 : c.n;
  RngStream fast_rng(c.seed, 1);
  RngStream oracle_rng(c.seed, 2);
  const auto fast = sample_truncated(tc, n, fast_rng, SamplingMethod::Tilted);
  OracleStats stats;
  const auto oracle = sample_truncated(tc, n, oracle_rng, SamplingMethod::Oracle, &stats);
  const double dist = empirical_copula_distance(fast, oracle);
  const double rate = stats.rate();
  const double sd = std::sqrt(t.c() * (1.0 - t.c()) / static_cast<double>(stats.proposals));
  json j;
  j["form"] = std::string(tc.form_name());
  j["n"] = n;
  j["c"] = t.c();
  j["distance"] = dist;
  j["threshold"] = c.threshold;
  j["pass"] = dist <= c.threshold;
  j["acceptance_rate"] = rate;
  j["acceptance_z"] = sd > 0.0 ? (rate - t.c()) / sd : 0.0;
  emit(c, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Right-truncated copulas: sampling, evaluation and dependence measures", "trunca"};
  app.require_subcommand(1);
  Config c;
  const std::vector<std::string> methods = {"auto", "tilted", "oracle"};

  const auto add_model = [&](CLI::App* s) {
    s->add_option("--model", c.model, "Model specification (JSON)");
    s->add_option("--t", c.t, "Truncation point, comma separated");
  };
  const auto add_sampling = [&](CLI::App* s) {
    s->add_option("--n", c.n, "Number of observations");
    s->add_option("--seed", c.seed, "Random seed");
    s->add_option("--method", c.method, "Sampling path")->check(CLI::IsMember(methods));
  };

  auto* sample = app.add_subcommand("sample", "Draw samples of the truncated copula (CSV)");
  add_model(sample);
  add_sampling(sample);
  sample->add_option("--out", c.out, "Output CSV; a .meta.json sidecar is written next to it");
  sample->add_flag("--raw", c.raw, "Emit U | U <= t instead of its copula");

  auto* cdf_cmd = app.add_subcommand("cdf", "Evaluate the (truncated) copula (CSV)");
  add_model(cdf_cmd);
  cdf_cmd->add_option("--u", c.u, "Evaluation point, comma separated (repeatable)");
  cdf_cmd->add_option("--grid", c.grid, "Evaluate on the interior grid i/g");
  cdf_cmd->add_option("--out", c.out, "Output file");

  auto* trunc = app.add_subcommand("truncate-eval", "Closed form and constants of C_t (JSON)");
  add_model(trunc);
  trunc->add_option("--u", c.u, "Evaluation point, comma separated (repeatable)");
  trunc->add_option("--grid", c.grid, "Evaluate on the interior grid i/g");
  trunc->add_option("--out", c.out, "Output file");

  auto* taildep = app.add_subcommand("taildep", "Tail dependence coefficients (JSON)");
  add_model(taildep);
  taildep->add_option("--data", c.data, "CSV sample for empirical estimates");
  taildep->add_option("--q", c.q, "Empirical tail threshold");
  taildep->add_option("--seed", c.seed, "Bootstrap seed");
  taildep->add_option("--out", c.out, "Output file");

  auto* kendall = app.add_subcommand("kendall", "Kendall distribution or empirical Kendall's tau (JSON)");
  add_model(kendall);
  kendall->add_option("--data", c.data, "CSV sample for empirical Kendall's tau");
  kendall->add_option("--u", c.u, "Arguments of the Kendall distribution (repeatable)");
  kendall->add_option("--grid", c.grid, "Evaluate at i/g, i = 1..g-1");
  kendall->add_option("--out", c.out, "Output file");

  auto* figure = app.add_subcommand("figure-data", "Samples behind the figures (CSV per panel)");
  figure->add_option("--figure", c.figure, "mo, survival-gumbel, survival-gumbel-3d, nested-clayton or nested-gumbel");
  add_sampling(figure);
  figure->add_option("--out", c.out, "Output directory");

  auto* oracle = app.add_subcommand("oracle-compare", "Closed-form sampler against rejection (JSON)");
  add_model(oracle);
  oracle->add_option("--n", c.n, "Observations per path");
  oracle->add_option("--seed", c.seed, "Random seed");
  oracle->add_option("--threshold", c.threshold, "Largest accepted empirical copula distance");
  oracle->add_option("--out", c.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sample->parsed()) {
      if (c.n == 0) c.n = 1000;
      return cmd_sample(c, out);
    }
    if (cdf_cmd->parsed()) return cmd_cdf(c, out);
    if (trunc->parsed()) return cmd_truncate_eval(c, out);
    if (taildep->parsed()) return cmd_taildep(c, out);
    if (kendall->parsed()) return cmd_kendall(c, out);
    if (figure->parsed()) return cmd_figure_data(c, out);
    if (oracle->parsed()) return cmd_oracle_compare(c, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace trunca::cli
