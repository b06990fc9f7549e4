#pragma once

#include <array>
#include <cstdint>

#include "iniqkd/bell.hpp"
#include "iniqkd/params.hpp"

namespace iniqkd {

// Counter-based Philox4x32-10 stream. Keyed by (seed, stream); identical
// (seed, stream, draw index) always produces identical output, so parallel
// shards are reproducible regardless of thread count or schedule.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream);
  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double next_double();  // uniform in [0,1) with 53 random bits

  static std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t counter);

 private:
  std::uint64_t seed_, stream_, counter_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

struct McEstimate {
  double value = 0;
  double std_err = 0;
  long long n = 0;
  std::uint64_t seed = 0;
};

struct AdBlockEstimates {
  McEstimate p_succ;
  McEstimate lam[4];
  McEstimate e_bit_after;
};

// Samples n_blocks advantage-distillation blocks of size b from the given
// Bell-diagonal error model and returns empirical acceptance and post-AD
// state estimates with binomial standard errors.
AdBlockEstimates simulate_ad_blocks(const BellDiagonal& state, int b,
                                    long long n_blocks, std::uint64_t seed);
AdBlockEstimates simulate_ad_blocks_serial(const BellDiagonal& state, int b,
                                           long long n_blocks, std::uint64_t seed);

struct DetectionEstimates {
  McEstimate q[3];
  McEstimate e_bit[3];
};

// Photon-level detection sampling: uniform polarization/phase choices, four
// independent threshold-detector clicks per round, event classification into
// X1/X2/X3. Gains for the coincidence events are reported in the two-bits-
// per-coincidence convention of the analytic formulas (twice the raw event
// probability). Bit errors follow the paired-coincidence assignment.
DetectionEstimates simulate_detection(const ProtocolParams& params, double l_km,
                                      long long n_rounds, std::uint64_t seed);
DetectionEstimates simulate_detection_serial(const ProtocolParams& params, double l_km,
                                             long long n_rounds, std::uint64_t seed);

// Poisson-samples photon counts at a detector with the given mean intensity.
McEstimate sample_mean_intensity(double intensity, long long n, std::uint64_t seed);

}  // namespace iniqkd
