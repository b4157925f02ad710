#include "periodica/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace periodica::io {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(std::string("invalid JSON: ") + e.what(), line);
  }
}

template <typename F>
auto with_schema(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what(), 0);
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Signal read_signal_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> times, values;
  while (std::getline(in, line)) {
    ++lineno;
    const auto row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      if (row != "t,value") throw ParseError("expected header 't,value'", lineno);
      header = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
      throw ParseError("expected two comma-separated fields", lineno);
    double t = 0, v = 0;
    if (!parse_double(row.substr(0, comma), t) || !parse_double(row.substr(comma + 1), v))
      throw ParseError("non-numeric field in row '" + std::string(row) + "'", lineno);
    if (!times.empty() && !(t > times.back())) throw ParseError("times not strictly increasing", lineno);
    times.push_back(t);
    values.push_back(v);
  }
  if (!header) throw ParseError("empty input, missing header 't,value'", lineno);
  if (times.size() < 2) throw ParseError("signal needs at least 2 samples", lineno);
  return Signal(std::move(times), std::move(values));
}

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  return read_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const Signal& s) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "t,value\n";
  for (std::size_t i = 0; i < s.size(); ++i) out << s.time(i) << ',' << s.value(i) << '\n';
  out.precision(old);
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  write_signal_csv(out, s);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string diagram_to_json(const AnnotatedDiagram& d) {
  json pts = json::array();
  for (const auto& p : d.points())
    pts.push_back({{"birth", p.birth}, {"death", p.death}, {"birth_index", p.birth_index}});
  return json{{"points", pts},
              {"domain_kind", d.domain_kind() == DomainKind::circle ? "circle" : "interval"},
              {"essential_index", d.essential_index()}}
      .dump();
}

AnnotatedDiagram diagram_from_json(std::string_view text) {
  const json j = parse_json(text);
  return with_schema("diagram JSON", [&] {
    std::vector<PersistencePoint> pts;
    for (const auto& p : j.at("points"))
      pts.push_back({p.at("birth").get<double>(), p.at("death").get<double>(), p.at("birth_index").get<std::size_t>()});
    const auto kind_name = j.at("domain_kind").get<std::string>();
    if (kind_name != "circle" && kind_name != "interval") throw ParseError("unknown domain_kind '" + kind_name + "'", 0);
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.birth_index < b.birth_index; });
    return AnnotatedDiagram(std::move(pts), kind_name == "circle" ? DomainKind::circle : DomainKind::interval,
                            j.at("essential_index").get<std::size_t>());
  });
}

std::string measure_to_json(const PersistenceMeasure& m) {
  json arr = json::array();
  for (const auto& a : m.atoms()) arr.push_back({{"birth", a.birth}, {"death", a.death}, {"multiplicity", a.multiplicity}});
  return arr.dump();
}

PersistenceMeasure measure_from_json(std::string_view text) {
  const json j = parse_json(text);
  return with_schema("measure JSON", [&] {
    std::vector<MeasureAtom> atoms;
    for (const auto& a : j)
      atoms.push_back({a.at("birth").get<double>(), a.at("death").get<double>(), a.at("multiplicity").get<std::int64_t>()});
    return PersistenceMeasure(std::move(atoms));
  });
}

std::string report_to_json(const EstimatorReport& r) {
  json j{{"n_hat", r.n_hat}, {"method", to_string(r.method)}, {"tau_used", optional_number(r.tau_used)}};
  j["interval_lo"] = r.longest_interval ? json(r.longest_interval->first) : json(nullptr);
  j["interval_hi"] = r.longest_interval ? json(r.longest_interval->second) : json(nullptr);
  return j.dump();
}

std::string reparam_to_json(const ReparamDocument& doc) {
  const auto k = doc.gamma.knots();
  const auto im = doc.gamma.images();
  return json{{"template_id", doc.template_id},
              {"knots", std::vector<double>(k.begin(), k.end())},
              {"images", std::vector<double>(im.begin(), im.end())},
              {"N", doc.gamma.periods()},
              {"duration", doc.duration}}
      .dump();
}

ReparamDocument reparam_from_json(std::string_view text) {
  const json j = parse_json(text);
  return with_schema("reparam JSON", [&] {
    return ReparamDocument{j.at("template_id").get<std::string>(),
                           Reparam(j.at("knots").get<std::vector<double>>(), j.at("images").get<std::vector<double>>()),
                           j.value("duration", 1.0)};
  });
}

std::string gp_config_to_json(const GPConfig& cfg) {
  return json{{"sigma", cfg.sigma}, {"l", cfg.l}, {"seed", cfg.seed}}.dump();
}

GPConfig gp_config_from_json(std::string_view text) {
  const json j = parse_json(text);
  auto cfg = with_schema("GP config JSON", [&] {
    return GPConfig{j.at("sigma").get<double>(), j.at("l").get<double>(), j.value("seed", std::uint64_t{0})};
  });
  cfg.validate();
  return cfg;
}

std::string bound_to_json(std::string_view kind, const BoundInputs& in, double literal, double corrected) {
  json inputs{{"kind", kind}, {"tau", in.tau}, {"sigma", in.sigma}, {"kappa", in.kappa()}};
  if (kind == "gp") {
    inputs["l"] = in.l;
  } else {
    inputs["omega"] = in.omega;
    inputs["c_f_gamma"] = in.c_f_gamma;
    inputs["alpha"] = in.alpha();
  }
  return json{{"literal", literal}, {"corrected", corrected}, {"inputs", inputs}}.dump();
}

std::string odometry_to_json(const OdometricResult& r) {
  return json{{"tau", r.tau},
              {"K", r.K},
              {"N", r.N},
              {"sequences", r.sequences},
              {"default_sequence", r.default_sequence()}}
      .dump();
}

std::string metrics_to_json(const OdometryMetrics& m) {
  return json{{"TS", m.TS}, {"TL", m.TL}, {"CR", m.CR}, {"dispersion", m.dispersion}, {"C", m.circumference}, {"d_n", m.d_n}}
      .dump();
}

}  // namespace periodica::io
