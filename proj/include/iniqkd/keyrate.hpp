#pragma once

#include <span>
#include <vector>

#include "iniqkd/events.hpp"
#include "iniqkd/params.hpp"

namespace iniqkd {

struct KeyRatePoint {
  double distance_km = 0;
  double r_original = 0;
  double r_ad = 0;
  int b_opt = 1;
  double mu_opt_original = 0;
  double mu_opt_ad = 0;
  double plob = 0;
};

struct RateOptions {
  ClampMode clamp = ClampMode::PerEvent;
  EveEta ie_eta = EveEta::Arm;
};

// Sum over events of Q^{Xi} [1 - H(E_ph) - I_E - f H(E_bit)], clamped.
double original_key_rate(const EventStats& stats, const ProtocolParams& params,
                         double i_e, ClampMode clamp);

// Sum over events of (1/b) Q^{Xi} p_succ [min-privacy - f H(E~_bit) - I_E],
// clamped. homogeneous forces the same b on all events; otherwise each event
// independently uses its best block size in [1, b_max]. Events with an
// infeasible error pair contribute zero and are counted in *infeasible.
double ad_key_rate(const EventStats& stats, const ProtocolParams& params,
                   double i_e, int b, bool homogeneous, ClampMode clamp,
                   int* infeasible = nullptr);

std::vector<double> make_mu_grid(double mu_min, double mu_max, int points);

struct OptimizeResult {
  double rate = 0;
  double mu = 0;
  int b = 1;
};

// Maximize the selected rate over the mu grid (plus one 10-point local zoom)
// and, when use_ad, over b in [1, b_max]; ties in b resolve to the smaller b.
OptimizeResult optimize_point(const ProtocolParams& params, double l_km,
                              std::span<const double> mu_grid, bool use_ad,
                              const RateOptions& opts);

// Repeaterless secret-key capacity -log2(1 - 10^(-alpha l / 10)).
// Returns +infinity at zero attenuation.
double plob_bound(double alpha_db_per_km, double l_km);

struct MaxDistanceSearch {
  double r_floor = 1e-12;
  double l_start_km = 1.0;
  double coarse_step_km = 1.0;
  double bisect_tol_km = 0.1;
  double l_cap_km = 600.0;
};

struct MaxDistanceResult {
  double distance_km = 0;
  int b_at_endpoint = 1;
  double mu_at_endpoint = 0;
};

MaxDistanceResult max_distance(const ProtocolParams& params, bool use_ad,
                               std::span<const double> mu_grid,
                               const RateOptions& opts,
                               const MaxDistanceSearch& search = {});

}  // namespace iniqkd
