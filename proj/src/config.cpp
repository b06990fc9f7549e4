#include "iniqkd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iniqkd {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw std::runtime_error("config: bad value for " + key + ": '" + value + "'");
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size()) bad_value(key, value);
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size()) bad_value(key, value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || p != value.data() + value.size()) bad_value(key, value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

void apply(SweepConfig& c, const std::string& key, const std::string& value) {
  if (key == "alpha_db_per_km") c.params.alpha_db_per_km = parse_double(key, value);
  else if (key == "eta_d") c.params.eta_d = parse_double(key, value);
  else if (key == "p_d") c.params.p_d = parse_double(key, value);
  else if (key == "f") c.params.f = parse_double(key, value);
  else if (key == "e_d") c.params.e_d = parse_double(key, value);
  else if (key == "delta") c.params.delta = parse_double(key, value);
  else if (key == "mu") c.params.mu = parse_double(key, value);
  else if (key == "b_max") c.params.b_max = int(parse_int(key, value));
  else if (key == "bit_error") {
    if (value == "paired") c.params.bit_error = BitErrorConvention::Paired;
    else if (value == "kronecker") c.params.bit_error = BitErrorConvention::Kronecker;
    else bad_value(key, value);
  } else if (key == "l_min_km") c.l_min_km = parse_double(key, value);
  else if (key == "l_max_km") c.l_max_km = parse_double(key, value);
  else if (key == "l_step_km") c.l_step_km = parse_double(key, value);
  else if (key == "mu_min") c.mu_min = parse_double(key, value);
  else if (key == "mu_max") c.mu_max = parse_double(key, value);
  else if (key == "mu_points") c.mu_points = int(parse_int(key, value));
  else if (key == "clamp") {
    if (value == "per-event") c.clamp = ClampMode::PerEvent;
    else if (value == "total") c.clamp = ClampMode::Total;
    else bad_value(key, value);
  } else if (key == "ie_eta") {
    if (value == "arm") c.ie_eta = EveEta::Arm;
    else if (value == "arm-etad") c.ie_eta = EveEta::ArmEtaD;
    else bad_value(key, value);
  } else if (key == "out_path") c.out_path = value;
  else if (key == "seed") c.seed = parse_u64(key, value);
  else if (key == "n_mc") c.n_mc = parse_int(key, value);
  else if (key == "workers") c.workers = int(parse_int(key, value));
  else if (key == "use_ad") c.use_ad = parse_bool(key, value);
  else throw std::runtime_error("config: unknown key '" + key + "'");
}

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace

SweepConfig parse_config_text(const std::string& text) {
  SweepConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: line " + std::to_string(lineno) + " is not key=value");
    apply(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  if (auto err = c.validate()) throw std::runtime_error("config: " + *err);
  return c;
}

SweepConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string config_to_text(const SweepConfig& c) {
  std::ostringstream out;
  out << "alpha_db_per_km=" << fmt(c.params.alpha_db_per_km) << '\n'
      << "eta_d=" << fmt(c.params.eta_d) << '\n'
      << "p_d=" << fmt(c.params.p_d) << '\n'
      << "f=" << fmt(c.params.f) << '\n'
      << "e_d=" << fmt(c.params.e_d) << '\n'
      << "delta=" << fmt(c.params.delta) << '\n'
      << "mu=" << fmt(c.params.mu) << '\n'
      << "b_max=" << c.params.b_max << '\n'
      << "bit_error="
      << (c.params.bit_error == BitErrorConvention::Paired ? "paired" : "kronecker") << '\n'
      << "l_min_km=" << fmt(c.l_min_km) << '\n'
      << "l_max_km=" << fmt(c.l_max_km) << '\n'
      << "l_step_km=" << fmt(c.l_step_km) << '\n'
      << "mu_min=" << fmt(c.mu_min) << '\n'
      << "mu_max=" << fmt(c.mu_max) << '\n'
      << "mu_points=" << c.mu_points << '\n'
      << "clamp=" << (c.clamp == ClampMode::PerEvent ? "per-event" : "total") << '\n'
      << "ie_eta=" << (c.ie_eta == EveEta::Arm ? "arm" : "arm-etad") << '\n'
      << "out_path=" << c.out_path << '\n'
      << "seed=" << c.seed << '\n'
      << "n_mc=" << c.n_mc << '\n'
      << "workers=" << c.workers << '\n'
      << "use_ad=" << (c.use_ad ? "true" : "false") << '\n';
  return out.str();
}

namespace {

struct Preset {
  const char* name;
  double e_d;
  double delta;
};

// Misalignment given as e_d, phase mismatch as a fraction of pi.
constexpr Preset kPresets[] = {
    {"ideal", 0.0, 0.0},    {"ed10", 0.10, 0.0},      {"ed30", 0.30, 0.0},
    {"ed50", 0.50, 0.0},    {"d15", 0.0, 0.15},       {"d23", 0.0, 0.23},
    {"d25", 0.0, 0.25},     {"d20ed15", 0.15, 0.20},  {"d10ed10", 0.10, 0.10},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const Preset& p : kPresets) names.push_back(p.name);
  return names;
}

bool is_preset(const std::string& name) {
  return std::any_of(std::begin(kPresets), std::end(kPresets),
                     [&](const Preset& p) { return name == p.name; });
}

SweepConfig preset_config(const std::string& name) {
  for (const Preset& p : kPresets) {
    if (name != p.name) continue;
    SweepConfig c;
    c.params.e_d = p.e_d;
    c.params.delta = p.delta;
    return c;
  }
  std::string known;
  for (const Preset& p : kPresets) {
    if (!known.empty()) known += ", ";
    known += p.name;
  }
  throw std::runtime_error("config: unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace iniqkd
