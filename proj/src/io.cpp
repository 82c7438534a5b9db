#include "slspec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "slspec/error.hpp"

namespace slspec::io {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": not a number: '" + t + "'",
                static_cast<long long>(line));
  return v;
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorKind::parse, std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

std::vector<double> get_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw Error(ErrorKind::parse, std::string("missing array field '") + key + "'");
  std::vector<double> v;
  for (const auto& e : j.at(key)) {
    if (!e.is_number()) throw Error(ErrorKind::parse, std::string("non-numeric entry in '") + key + "'");
    v.push_back(e.get<double>());
  }
  return v;
}

}  // namespace

Potential read_potential_csv(std::istream& in, const Grid& grid) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<double> xs, qs;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!header) {
      std::string h;
      for (char c : t)
        if (!std::isspace(static_cast<unsigned char>(c))) h.push_back(c);
      if (h != "x,q") throw Error(ErrorKind::parse, "potential CSV must start with header 'x,q'", 1);
      header = true;
      continue;
    }
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos)
      throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected two fields",
                  static_cast<long long>(lineno));
    const double x = parse_double(t.substr(0, comma), lineno);
    const double q = parse_double(t.substr(comma + 1), lineno);
    if (!xs.empty() && !(x > xs.back()))
      throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": x must strictly increase",
                  static_cast<long long>(lineno));
    xs.push_back(x);
    qs.push_back(q);
  }
  if (!header) throw Error(ErrorKind::parse, "potential CSV is empty");
  if (xs.size() < 2) throw Error(ErrorKind::parse, "potential CSV needs at least two rows");
  if (std::abs(xs.front()) > 1e-6 || std::abs(xs.back() - kPi) > 1e-6)
    throw Error(ErrorKind::parse, "potential CSV must cover [0, pi]");

  std::vector<double> v(grid.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.node(i);
    while (k + 2 < xs.size() && xs[k + 1] < x) ++k;
    const double t = std::clamp((x - xs[k]) / (xs[k + 1] - xs[k]), 0.0, 1.0);
    v[i] = qs[k] + (qs[k + 1] - qs[k]) * t;
  }
  return Potential(grid, std::move(v));
}

Potential read_potential_csv(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  return read_potential_csv(in, grid);
}

void write_potential_csv(std::ostream& out, const Potential& q) {
  out << "x,q\n" << std::setprecision(17);
  for (std::size_t i = 0; i < q.grid().size(); ++i) out << q.grid().node(i) << ',' << q[i] << '\n';
}

json to_json(const Spectrum& spectrum) {
  json records = json::array();
  for (const auto& r : spectrum.records())
    records.push_back({{"n", r.index},
                       {"mu", r.mu},
                       {"a_tilde", r.a_tilde},
                       {"b_tilde", r.b_tilde},
                       {"c_n", r.c_n},
                       {"phi_end", r.phi_end},
                       {"dphi_end", r.dphi_end}});
  return {{"format_version", kFormatVersion},
          {"alpha", spectrum.angles().alpha()},
          {"beta", spectrum.angles().beta()},
          {"q_mean", spectrum.q_mean()},
          {"records", records}};
}

Spectrum spectrum_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "spectrum must be a JSON object");
  const BoundaryAngles angles(get_number(j, "alpha"), get_number(j, "beta"));
  const double sa = std::sin(angles.alpha());
  const double sb = std::sin(angles.beta());
  if (!j.contains("records") || !j.at("records").is_array())
    throw Error(ErrorKind::parse, "spectrum needs a 'records' array");
  std::vector<EigenRecord> records;
  for (const auto& e : j.at("records")) {
    EigenRecord r;
    const double n = get_number(e, "n");
    if (n < 0.0 || n != std::floor(n)) throw Error(ErrorKind::parse, "record index must be a nonnegative integer");
    r.index = static_cast<std::size_t>(n);
    r.mu = get_number(e, "mu");
    r.a_tilde = get_number(e, "a_tilde");
    r.b_tilde = get_number(e, "b_tilde");
    r.c_n = get_number(e, "c_n");
    r.phi_end = get_number(e, "phi_end");
    r.dphi_end = get_number(e, "dphi_end");
    r.lambda_abs = std::sqrt(std::abs(r.mu));
    r.lambda_imaginary = r.mu < 0.0;
    r.a_n = r.a_tilde * sa * sa;
    r.b_n = r.b_tilde * sb * sb;
    records.push_back(r);
  }
  return Spectrum(angles, get_number(j, "q_mean"), std::move(records));
}

json to_json(const SumEvaluation& ev) {
  return {{"value", ev.value()},
          {"partial", ev.partial},
          {"tail_estimate", ev.tail_estimate},
          {"uncertainty", std::isfinite(ev.uncertainty) ? json(ev.uncertainty) : json(nullptr)},
          {"n_used", ev.n_used},
          {"tail_kappa_bar", ev.kappa_bar},
          {"tail_decay_p", ev.decay_p}};
}

namespace {

json seq_json(const SequenceCheck& c) {
  return {{"l2_partial", c.l2_partial},
          {"l2_increment_last_quartile", c.l2_increment},
          {"tail_max_abs", c.tail_max},
          {"decay_p", c.decay_p},
          {"margin", c.margin},
          {"pass", c.pass}};
}

json sum_json(const SumCheck& c) {
  json j = to_json(c.sum);
  j["target"] = c.target;
  j["deviation"] = c.deviation;
  j["margin"] = c.margin;
  j["pass"] = c.pass;
  return j;
}

}  // namespace

json to_json(const ValidationReport& r) {
  json c6 = seq_json(r.cond6);
  c6["omega_fit"] = r.omega_fit;
  return {{"format_version", kFormatVersion},
          {"cond6", c6},
          {"cond7", seq_json(r.cond7)},
          {"cond8", sum_json(r.cond8)},
          {"cond9", sum_json(r.cond9)},
          {"overall", r.overall},
          {"empirical_thresholds", r.empirical_thresholds}};
}

LoadedData spectral_data_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse, "spectral data must be a JSON object");
  if (j.contains("records")) {
    const Spectrum s = spectrum_from_json(j);
    return {SpectralData(s), s.angles()};
  }
  return {SpectralData(get_array(j, "mu"), get_array(j, "a_tilde")), std::nullopt};
}

json to_json(const SpectralData& data) {
  return {{"format_version", kFormatVersion}, {"mu", data.mus()}, {"a_tilde", data.a_tildes()}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::io, "write failed for " + path);
}

}  // namespace slspec::io
