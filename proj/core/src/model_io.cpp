#include "trunca/model_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "trunca/errors.hpp"

namespace trunca {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw SpecError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw SpecError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw SpecError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int positive_int(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw SpecError(std::string("field '") + key + "' must be a positive integer");
  return v.get<int>();
}

std::string text(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw SpecError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

GeneratorLike generator_like_from_json(const json& j) {
  const auto g = generator_from_json(j);
  const double h = j.contains("tilt") ? number(j, "tilt") : 0.0;
  if (h > 0.0) return tilt(g, h);
  if (g.alpha() == 1.0) return g.base();
  return g;
}

json generator_like_to_json(const GeneratorLike& g) {
  const auto parts = decompose(g);
  json j = generator_to_json(parts.base);
  if (parts.tilt > 0.0) j["tilt"] = parts.tilt;
  return j;
}

}  // namespace

json generator_to_json(const OuterPowerGenerator& g) {
  json j;
  j["family"] = std::string(to_string(g.base().family()));
  if (g.base().family() != Family::Independence) j["theta"] = g.base().theta();
  if (g.alpha() != 1.0) j["outer_alpha"] = g.alpha();
  return j;
}

OuterPowerGenerator generator_from_json(const json& j) {
  const Family f = [&] {
    try {
      return family_from_string(text(j, "family"));
    } catch (const SpecError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw SpecError(e.what());
    }
  }();
  const double theta = f == Family::Independence ? 0.0 : number(j, "theta");
  const double alpha = j.contains("outer_alpha") ? number(j, "outer_alpha") : 1.0;
  return OuterPowerGenerator(Generator(f, theta), alpha);
}

json model_to_json(const CopulaModel& m) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        json j;
        if constexpr (std::is_same_v<T, Independence>) {
          j["type"] = "independence";
          j["dim"] = x.d;
        } else if constexpr (std::is_same_v<T, Comonotone>) {
          j["type"] = "comonotone";
          j["dim"] = x.d;
        } else if constexpr (std::is_same_v<T, Archimedean>) {
          j["type"] = "archimedean";
          j["generator"] = generator_like_to_json(x.gen);
          j["dim"] = x.d;
        } else if constexpr (std::is_same_v<T, NestedArchimedean>) {
          j["type"] = "nested";
          j["root"] = generator_to_json(x.root);
          j["sectors"] = json::array();
          for (const auto& s : x.sectors)
            j["sectors"].push_back({{"generator", generator_to_json(s.gen)}, {"dim", s.dim}});
        } else if constexpr (std::is_same_v<T, MarshallOlkin2>) {
          j["type"] = "marshall_olkin";
          j["alpha1"] = x.a1;
          j["alpha2"] = x.a2;
        } else {
          j["type"] = "survival";
          j["inner"] = model_to_json(*x.inner);
        }
        return j;
      },
      m.variant());
}

json model_document(const CopulaModel& m) {
  json j = model_to_json(m);
  j["schema"] = std::string(kSchemaVersion);
  return j;
}

CopulaModel model_from_json(const json& j) {
  const std::string type = text(j, "type");
  if (type == "independence") return Independence(positive_int(j, "dim"));
  if (type == "comonotone") return Comonotone(positive_int(j, "dim"));
  if (type == "archimedean")
    return Archimedean(generator_like_from_json(field(j, "generator")), positive_int(j, "dim"));
  if (type == "nested") {
    const auto& secs = field(j, "sectors");
    if (!secs.is_array()) throw SpecError("field 'sectors' must be an array");
    std::vector<NestedSector> sectors;
    for (const auto& s : secs)
      sectors.push_back({generator_from_json(field(s, "generator")), positive_int(s, "dim")});
    return NestedArchimedean(generator_from_json(field(j, "root")), std::move(sectors));
  }
  if (type == "marshall_olkin") return MarshallOlkin2(number(j, "alpha1"), number(j, "alpha2"));
  if (type == "survival") return Survival(model_from_json(field(j, "inner")));
  throw SpecError("unknown model type '" + type + "'");
}

CopulaModel model_from_document(const json& doc) {
  const std::string schema = text(doc, "schema");
  if (schema != kSchemaVersion)
    throw SpecError("unsupported schema '" + schema + "' (expected " + std::string(kSchemaVersion) + ")");
  return model_from_json(doc);
}

CopulaModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open model file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw SpecError("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return model_from_document(doc);
}

std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss{std::string(s)};
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw SpecError("cannot parse '" + item + "' as a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw SpecError("cannot parse '" + item + "' as a number");
    out.push_back(v);
  }
  if (out.empty()) throw SpecError("empty list of numbers");
  return out;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const SampleMatrix& s) {
  for (int j = 0; j < s.cols(); ++j) os << (j ? "," : "") << 'u' << j + 1;
  os << '\n';
  std::string line;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    line.clear();
    for (int j = 0; j < s.cols(); ++j) {
      if (j) line += ',';
      line += format_real(s(i, j));
    }
    line += '\n';
    os << line;
  }
}

SampleMatrix read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw SpecError("empty CSV input");
  int d = 1;
  for (char c : line) d += c == ',';
  std::vector<double> data;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto row = parse_real_list(line);
    if (static_cast<int>(row.size()) != d) throw SpecError("CSV row width differs from the header");
    data.insert(data.end(), row.begin(), row.end());
    ++n;
  }
  return SampleMatrix(n, d, std::move(data));
}

json meta_to_json(const SampleMeta& meta) {
  json j;
  j["model"] = meta.model_spec.empty() ? json() : json::parse(meta.model_spec);
  j["t"] = meta.t;
  j["seed"] = meta.seed;
  j["method"] = meta.method;
  return j;
}

json tail_dep_to_json(const TailDepReport& r) {
  return {{"lambda_lower", r.lambda_lower}, {"lambda_upper", r.lambda_upper},
          {"se_lower", r.se_lower},         {"se_upper", r.se_upper},
          {"method", std::string(to_string(r.method))}, {"converged", r.converged}};
}

}  // namespace trunca
