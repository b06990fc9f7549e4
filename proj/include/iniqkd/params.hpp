#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace iniqkd {

// Which clamping the key-rate sums apply when a bracket goes negative.
enum class ClampMode { PerEvent, Total };

// Transmittance convention inside the eavesdropper information bound.
enum class EveEta { Arm, ArmEtaD };

// X2/X3 bit-error definition. Paired: wrong-coincidence-pair gain ratio
// (satisfies the 1/2 dark-count floor). Kronecker: the cross-polarization
// weighted single-pair sum (floor 3/8).
enum class BitErrorConvention { Paired, Kronecker };

struct ProtocolParams {
  double alpha_db_per_km = 0.2;
  double eta_d = 0.145;
  double p_d = 8e-8;
  double f = 1.15;
  double e_d = 0.0;
  double delta = 0.0;   // phase mismatch as a fraction of pi
  double mu = 0.1;      // X-basis intensity when not optimized
  int b_max = 6;
  BitErrorConvention bit_error = BitErrorConvention::Paired;

  std::optional<std::string> validate() const {
    if (alpha_db_per_km < 0) return "alpha_db_per_km must be >= 0";
    if (!(eta_d > 0 && eta_d <= 1)) return "eta_d must be in (0,1]";
    if (!(p_d >= 0 && p_d < 1)) return "p_d must be in [0,1)";
    if (f < 1) return "f must be >= 1";
    if (!(e_d >= 0 && e_d <= 1)) return "e_d must be in [0,1]";
    if (!(delta >= 0 && delta <= 1)) return "delta must be in [0,1]";
    if (!(mu > 0)) return "mu must be > 0";
    if (b_max < 1) return "b_max must be >= 1";
    return std::nullopt;
  }
};

struct SweepConfig {
  ProtocolParams params;
  double l_min_km = 1.0;
  double l_max_km = 450.0;
  double l_step_km = 1.0;
  double mu_min = 0.005;
  double mu_max = 1.5;
  int mu_points = 60;
  ClampMode clamp = ClampMode::PerEvent;
  EveEta ie_eta = EveEta::Arm;
  std::string out_path;
  std::uint64_t seed = 1;
  long long n_mc = 1000000;
  int workers = 0;        // 0: library default thread count
  bool use_ad = true;

  std::optional<std::string> validate() const {
    if (auto e = params.validate()) return e;
    if (l_min_km < 0) return "l_min_km must be >= 0";
    if (!(l_step_km > 0)) return "l_step_km must be > 0";
    if (l_max_km < l_min_km) return "l_max_km must be >= l_min_km";
    if (!(mu_min > 0) || mu_max < mu_min) return "mu grid must satisfy 0 < mu_min <= mu_max";
    if (mu_points < 1) return "mu_points must be >= 1";
    if (n_mc < 1) return "n_mc must be >= 1";
    if (workers < 0) return "workers must be >= 0";
    return std::nullopt;
  }
};

}  // namespace iniqkd
