#include "iniqkd/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iniqkd/ad.hpp"
#include "iniqkd/bell.hpp"
#include "iniqkd/events.hpp"
#include "iniqkd/mc.hpp"

namespace iniqkd {

namespace {

constexpr const char* kCsvHeader =
    "distance_km,r_original,r_ad,b_opt,mu_opt_original,mu_opt_ad,plob";

int row_count(const SweepConfig& c) {
  return int(std::floor((c.l_max_km - c.l_min_km) / c.l_step_km + 1e-9)) + 1;
}

KeyRatePoint evaluate_row(const SweepConfig& c, std::span<const double> grid, double l) {
  RateOptions opts{c.clamp, c.ie_eta};
  KeyRatePoint row;
  row.distance_km = l;
  OptimizeResult orig = optimize_point(c.params, l, grid, false, opts);
  row.r_original = orig.rate;
  row.mu_opt_original = orig.mu;
  if (c.use_ad) {
    OptimizeResult ad = optimize_point(c.params, l, grid, true, opts);
    row.r_ad = ad.rate;
    row.b_opt = ad.b;
    row.mu_opt_ad = ad.mu;
  }
  row.plob = plob_bound(c.params.alpha_db_per_km, l);
  return row;
}

std::vector<KeyRatePoint> sweep_impl(const SweepConfig& c, bool parallel) {
  if (auto err = c.validate()) throw std::runtime_error("run_sweep: " + *err);
  std::vector<double> grid = make_mu_grid(c.mu_min, c.mu_max, c.mu_points);
  int n = row_count(c);
  std::vector<KeyRatePoint> rows(n);
  int nt = c.workers;
#ifdef _OPENMP
  if (nt <= 0) nt = omp_get_max_threads();
#endif
  (void)nt;
  if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < n; ++i)
      rows[i] = evaluate_row(c, grid, c.l_min_km + i * c.l_step_km);
  } else {
    for (int i = 0; i < n; ++i)
      rows[i] = evaluate_row(c, grid, c.l_min_km + i * c.l_step_km);
  }
  return rows;
}

std::string fmt_sci(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return std::string(buf, p);
}

double parse_field(const std::string& field, double absent) {
  if (field.empty()) return absent;
  double v = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || p != field.data() + field.size())
    throw std::runtime_error("csv: bad number '" + field + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<KeyRatePoint> run_sweep(const SweepConfig& config) {
  return sweep_impl(config, true);
}

std::vector<KeyRatePoint> run_sweep_serial(const SweepConfig& config) {
  return sweep_impl(config, false);
}

MaxDistanceResult run_max_distance(const SweepConfig& config, bool use_ad) {
  if (auto err = config.validate()) throw std::runtime_error("run_max_distance: " + *err);
  std::vector<double> grid = make_mu_grid(config.mu_min, config.mu_max, config.mu_points);
  RateOptions opts{config.clamp, config.ie_eta};
  return max_distance(config.params, use_ad, grid, opts);
}

std::string sweep_csv(const std::vector<KeyRatePoint>& rows, bool with_ad) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const KeyRatePoint& r : rows) {
    out += fmt_sci(r.distance_km);
    out += ',';
    out += fmt_sci(r.r_original);
    out += ',';
    if (with_ad) {
      out += fmt_sci(r.r_ad);
      out += ',';
      out += std::to_string(r.b_opt);
      out += ',';
    } else {
      out += ",,";
    }
    out += fmt_sci(r.mu_opt_original);
    out += ',';
    if (with_ad) out += fmt_sci(r.mu_opt_ad);
    out += ',';
    out += fmt_sci(r.plob);
    out += '\n';
  }
  return out;
}

void write_sweep_csv(const std::string& path, const std::vector<KeyRatePoint>& rows,
                     bool with_ad) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
  out << sweep_csv(rows, with_ad);
  if (!out) throw std::runtime_error("csv: write to '" + path + "' failed");
}

std::vector<KeyRatePoint> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("csv: missing or wrong header");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<KeyRatePoint> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 7) throw std::runtime_error("csv: expected 7 fields, got row '" + line + "'");
    KeyRatePoint r;
    r.distance_km = parse_field(f[0], 0.0);
    r.r_original = parse_field(f[1], 0.0);
    r.r_ad = parse_field(f[2], 0.0);
    r.b_opt = f[3].empty() ? 0 : int(parse_field(f[3], 0.0));
    r.mu_opt_original = parse_field(f[4], 0.0);
    r.mu_opt_ad = parse_field(f[5], 0.0);
    r.plob = parse_field(f[6], kInf);
    rows.push_back(r);
  }
  return rows;
}

namespace {

double hyp_se(double p, long long n) {
  if (n < 1) return 0.0;
  double v = p * (1.0 - p);
  return v > 0 ? std::sqrt(v / double(n)) : 0.0;
}

VerifyCheck make_check(const std::string& name, double analytic, const McEstimate& est,
                       double se_floor) {
  double se = std::max(est.std_err, se_floor);
  double diff = std::abs(est.value - analytic);
  double sigma;
  if (se > 0)
    sigma = diff / se;
  else
    sigma = diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return {name, analytic, est.value, sigma, sigma <= 4.0};
}

void add_ad_point(std::vector<VerifyCheck>& checks, const BellDiagonal& state, int b,
                  long long n_blocks, std::uint64_t seed, const std::string& tag) {
  ADResult analytic = ad_transform(state, b);
  AdBlockEstimates est = simulate_ad_blocks(state, b, n_blocks, seed);
  checks.push_back(make_check(tag + " p_succ", analytic.p_succ, est.p_succ,
                              hyp_se(analytic.p_succ, n_blocks)));
  const double lam[4] = {analytic.state_after.l0, analytic.state_after.l1,
                         analytic.state_after.l2, analytic.state_after.l3};
  for (int i = 0; i < 4; ++i)
    checks.push_back(make_check(tag + " lam" + std::to_string(i), lam[i], est.lam[i],
                                hyp_se(lam[i], est.lam[i].n)));
  checks.push_back(make_check(tag + " e_bit", analytic.e_bit_after, est.e_bit_after,
                              hyp_se(analytic.e_bit_after, est.e_bit_after.n)));
}

void add_det_point(std::vector<VerifyCheck>& checks, const ProtocolParams& base, double e_d,
                   double delta, double l_km, long long n_rounds, std::uint64_t seed) {
  ProtocolParams p = base;
  p.e_d = e_d;
  p.delta = delta;
  std::ostringstream tag;
  tag << "det[e_d=" << e_d << ",delta=" << delta << ",l=" << l_km << "]";
  EventStats analytic = overall_stats(p, l_km);
  DetectionEstimates est = simulate_detection(p, l_km, n_rounds, seed);
  static const char* ev[3] = {"X1", "X2", "X3"};
  for (int e = 0; e < 3; ++e) {
    double w = e == 0 ? 1.0 : 2.0;
    checks.push_back(make_check(tag.str() + " Q_" + ev[e], analytic.x[e].q, est.q[e],
                                w * hyp_se(analytic.x[e].q / w, n_rounds)));
    checks.push_back(make_check(tag.str() + " Ebit_" + ev[e], analytic.x[e].e_bit,
                                est.e_bit[e], hyp_se(analytic.x[e].e_bit, est.e_bit[e].n)));
  }
}

}  // namespace

VerifyReport run_verify(const SweepConfig& config) {
  if (auto err = config.validate()) throw std::runtime_error("run_verify: " + *err);
  VerifyReport report;
  long long n = config.n_mc;
  std::uint64_t seed = config.seed;

  // block-level distillation checks; the first state reproduces the
  // p_succ = 0.82 reference case (overall error 0.1, b = 2)
  add_ad_point(report.checks, BellDiagonal{0.81, 0.09, 0.09, 0.01}, 2, n, seed, "ad[E=0.1,b=2]");
  add_ad_point(report.checks, BellDiagonal{0.9, 0.05, 0.04, 0.01}, 3, n, seed + 1,
               "ad[0.9/0.05/0.04/0.01,b=3]");
  add_ad_point(report.checks, BellDiagonal{0.6, 0.2, 0.15, 0.05}, 2, n, seed + 2,
               "ad[0.6/0.2/0.15/0.05,b=2]");
  add_ad_point(report.checks, BellDiagonal{0.75, 0.1, 0.1, 0.05}, 5, n, seed + 3,
               "ad[0.75/0.1/0.1/0.05,b=5]");

  // detection-level gain and bit-error checks at short distances where the
  // coincidence events still collect good statistics
  add_det_point(report.checks, config.params, 0.10, 0.0, 25.0, n, seed + 4);
  add_det_point(report.checks, config.params, 0.30, 0.0, 10.0, n, seed + 5);
  add_det_point(report.checks, config.params, 0.15, 0.20, 25.0, n, seed + 6);
  add_det_point(report.checks, config.params, config.params.e_d, config.params.delta, 50.0, n,
                seed + 7);

  McEstimate pois = sample_mean_intensity(config.params.mu, n, seed + 8);
  report.checks.push_back(make_check("poisson mean", config.params.mu, pois,
                                     std::sqrt(config.params.mu / double(n))));

  for (const VerifyCheck& c : report.checks) {
    report.worst_sigma = std::max(report.worst_sigma, c.sigma);
    if (!c.pass) report.pass = false;
  }
  return report;
}

std::string verify_report_text(const VerifyReport& report) {
  std::ostringstream out;
  out.precision(10);
  for (const VerifyCheck& c : report.checks)
    out << (c.pass ? "ok  " : "FAIL") << "  " << c.name << "  analytic=" << c.analytic
        << "  mc=" << c.estimate << "  sigma=" << c.sigma << '\n';
  out << (report.pass ? "PASS" : "FAIL") << "  checks=" << report.checks.size()
      << "  worst_sigma=" << report.worst_sigma << '\n';
  return out.str();
}

std::string verify_report_csv(const VerifyReport& report) {
  std::string out = "check,analytic,mc,sigma,pass\n";
  for (const VerifyCheck& c : report.checks) {
    out += c.name;
    out += ',';
    out += fmt_sci(c.analytic);
    out += ',';
    out += fmt_sci(c.estimate);
    out += ',';
    out += fmt_sci(c.sigma);
    out += ',';
    out += c.pass ? "1" : "0";
    out += '\n';
  }
  return out;
}

}  // namespace iniqkd
