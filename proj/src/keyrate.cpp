#include "iniqkd/keyrate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "iniqkd/ad.hpp"
#include "iniqkd/bell.hpp"
#include "iniqkd/optics.hpp"

namespace iniqkd {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

double clamp01(double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); }

double eve_eta(const ProtocolParams& params, double l_km, EveEta mode) {
  double eta = arm_transmittance(params.alpha_db_per_km, l_km);
  return mode == EveEta::ArmEtaD ? eta * params.eta_d : eta;
}

}  // namespace

double original_key_rate(const EventStats& stats, const ProtocolParams& params,
                         double i_e, ClampMode clamp) {
  double total = 0;
  for (const EventDetail& ev : stats.x) {
    double eb = clamp01(ev.e_bit), ep = clamp01(ev.e_ph);
    double bracket = 1.0 - binary_entropy(ep) - i_e - params.f * binary_entropy(eb);
    double contrib = ev.q * bracket;
    total += clamp == ClampMode::PerEvent ? std::max(0.0, contrib) : contrib;
  }
  return clamp == ClampMode::Total ? std::max(0.0, total) : total;
}

double ad_key_rate(const EventStats& stats, const ProtocolParams& params,
                   double i_e, int b, bool homogeneous, ClampMode clamp,
                   int* infeasible) {
  if (b < 1 || b > params.b_max) throw std::invalid_argument("ad_key_rate: b outside [1, b_max]");
  if (infeasible) *infeasible = 0;
  double total = 0;
  for (const EventDetail& ev : stats.x) {
    double eb = clamp01(ev.e_bit), ep = clamp01(ev.e_ph);
    ErrorPair err{eb, ep};
    if (lambda3_range(err).empty()) {
      if (infeasible) ++*infeasible;
      continue;
    }
    int b_lo = homogeneous ? b : 1;
    int b_hi = homogeneous ? b : params.b_max;
    double contrib = homogeneous ? 0.0 : -std::numeric_limits<double>::infinity();
    for (int bi = b_lo; bi <= b_hi; ++bi) {
      double p = ad_success_probability(eb, bi);
      double ebt = p > 0 ? ipow(eb, bi) / p : 0.5;
      double wc = worst_case_ad_privacy(err, bi).value;
      double bracket = wc - params.f * binary_entropy(clamp01(ebt)) - i_e;
      double c = (1.0 / bi) * ev.q * p * bracket;
      if (homogeneous) {
        contrib = c;
      } else if (c > contrib) {
        contrib = c;
      }
    }
    total += clamp == ClampMode::PerEvent ? std::max(0.0, contrib) : contrib;
  }
  return clamp == ClampMode::Total ? std::max(0.0, total) : total;
}

std::vector<double> make_mu_grid(double mu_min, double mu_max, int points) {
  if (!(mu_min > 0) || mu_max < mu_min || points < 1)
    throw std::invalid_argument("make_mu_grid: invalid grid spec");
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = mu_min;
    return g;
  }
  double lr = std::log(mu_max / mu_min) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = mu_min * std::exp(lr * i);
  g.back() = mu_max;
  return g;
}

namespace {

void scan_mu(const ProtocolParams& params, double l_km, std::span<const double> mus,
             bool use_ad, const RateOptions& opts, OptimizeResult& best) {
  for (double mu : mus) {
    ProtocolParams p = params;
    p.mu = mu;
    EventStats stats = overall_stats(p, l_km);
    double i_e = eve_information(mu, eve_eta(p, l_km, opts.ie_eta));
    if (use_ad) {
      for (int b = 1; b <= p.b_max; ++b) {
        double r = ad_key_rate(stats, p, i_e, b, true, opts.clamp);
        if (r > best.rate) best = {r, mu, b};
      }
    } else {
      double r = original_key_rate(stats, p, i_e, opts.clamp);
      if (r > best.rate) best = {r, mu, 1};
    }
  }
}

}  // namespace

OptimizeResult optimize_point(const ProtocolParams& params, double l_km,
                              std::span<const double> mu_grid, bool use_ad,
                              const RateOptions& opts) {
  if (mu_grid.empty()) throw std::invalid_argument("optimize_point: empty mu grid");
  OptimizeResult best{0.0, mu_grid[0], 1};
  scan_mu(params, l_km, mu_grid, use_ad, opts, best);
  if (mu_grid.size() > 1 && best.rate > 0) {
    // one local zoom: 10 log-spaced points within one grid step of the best mu
    double ratio = mu_grid[mu_grid.size() - 1] / mu_grid[0];
    double step = std::pow(ratio, 1.0 / (mu_grid.size() - 1));
    double lo = std::max(mu_grid[0], best.mu / step);
    double hi = std::min(mu_grid[mu_grid.size() - 1], best.mu * step);
    std::vector<double> zoom = make_mu_grid(lo, hi, 10);
    scan_mu(params, l_km, zoom, use_ad, opts, best);
  }
  return best;
}

double plob_bound(double alpha_db_per_km, double l_km) {
  double eta = std::pow(10.0, -alpha_db_per_km * l_km / 10.0);
  if (eta >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log2(1.0 - eta);
}

MaxDistanceResult max_distance(const ProtocolParams& params, bool use_ad,
                               std::span<const double> mu_grid,
                               const RateOptions& opts,
                               const MaxDistanceSearch& search) {
  auto rate_at = [&](double l) { return optimize_point(params, l, mu_grid, use_ad, opts); };

  OptimizeResult first = rate_at(search.l_start_km);
  if (!(first.rate > search.r_floor))
    throw std::runtime_error("max_distance: no positive-rate region at start distance");

  double lo = search.l_start_km;
  OptimizeResult at_lo = first;
  double hi = -1;
  for (double l = search.l_start_km + search.coarse_step_km; l <= search.l_cap_km;
       l += search.coarse_step_km) {
    OptimizeResult r = rate_at(l);
    if (r.rate > search.r_floor) {
      lo = l;
      at_lo = r;
    } else {
      hi = l;
      break;
    }
  }
  if (hi < 0) return {search.l_cap_km, at_lo.b, at_lo.mu};

  while (hi - lo > search.bisect_tol_km) {
    double mid = 0.5 * (lo + hi);
    OptimizeResult r = rate_at(mid);
    if (r.rate > search.r_floor) {
      lo = mid;
      at_lo = r;
    } else {
      hi = mid;
    }
  }
  return {lo, at_lo.b, at_lo.mu};
}

}  // namespace iniqkd
