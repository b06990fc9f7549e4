#include "iniqkd/mc.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "iniqkd/events.hpp"
#include "iniqkd/optics.hpp"

namespace iniqkd {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
  std::uint64_t p0 = std::uint64_t(kPhiloxM0) * c[0];
  std::uint64_t p1 = std::uint64_t(kPhiloxM1) * c[2];
  std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  std::uint32_t n0 = hi1 ^ c[1] ^ k0;
  std::uint32_t n1 = lo1;
  std::uint32_t n2 = hi0 ^ c[3] ^ k1;
  std::uint32_t n3 = lo0;
  c[0] = n0;
  c[1] = n1;
  c[2] = n2;
  c[3] = n3;
}

double binom_se(double p, long long n) {
  return n > 0 ? std::sqrt(std::max(0.0, p * (1 - p) / double(n))) : 0.0;
}

}  // namespace

std::array<std::uint32_t, 4> PhiloxStream::block(std::uint64_t seed, std::uint64_t stream,
                                                 std::uint64_t counter) {
  std::uint32_t c[4] = {std::uint32_t(counter), std::uint32_t(counter >> 32),
                        std::uint32_t(stream), std::uint32_t(stream >> 32)};
  std::uint32_t k0 = std::uint32_t(seed);
  std::uint32_t k1 = std::uint32_t(seed >> 32);
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    philox_round(c, k0, k1);
  }
  return {c[0], c[1], c[2], c[3]};
}

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {}

std::uint32_t PhiloxStream::next_u32() {
  if (pos_ == 4) {
    buf_ = block(seed_, stream_, counter_++);
    pos_ = 0;
  }
  return buf_[pos_++];
}

std::uint64_t PhiloxStream::next_u64() {
  std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double PhiloxStream::next_double() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

struct AdShardCounts {
  long long accepted = 0;
  long long cat[4] = {0, 0, 0, 0};  // post-AD (bit, phase) error pattern of kept pair
};

AdShardCounts run_ad_shard(const BellDiagonal& st, int b, long long blocks,
                           std::uint64_t seed, std::uint64_t shard) {
  PhiloxStream rng(seed, shard);
  double c1 = st.l0, c2 = st.l0 + st.l1, c3 = st.l0 + st.l1 + st.l2;
  AdShardCounts out;
  for (long long i = 0; i < blocks; ++i) {
    int bit0 = -1;
    int phase_parity = 0;
    bool accept = true;
    for (int j = 0; j < b; ++j) {
      double u = rng.next_double();
      int cat = u < c1 ? 0 : (u < c2 ? 1 : (u < c3 ? 2 : 3));
      int bit = cat >> 1;
      phase_parity ^= cat & 1;
      if (j == 0)
        bit0 = bit;
      else if (bit != bit0)
        accept = false;
    }
    if (accept) {
      ++out.accepted;
      ++out.cat[(bit0 << 1) | phase_parity];
    }
  }
  return out;
}

AdBlockEstimates reduce_ad(const std::vector<AdShardCounts>& shards, long long n,
                           std::uint64_t seed) {
  AdShardCounts tot;
  for (const AdShardCounts& s : shards) {
    tot.accepted += s.accepted;
    for (int k = 0; k < 4; ++k) tot.cat[k] += s.cat[k];
  }
  AdBlockEstimates est;
  double p = double(tot.accepted) / double(n);
  est.p_succ = {p, binom_se(p, n), n, seed};
  for (int k = 0; k < 4; ++k) {
    double v = tot.accepted > 0 ? double(tot.cat[k]) / double(tot.accepted) : 0.0;
    est.lam[k] = {v, binom_se(v, tot.accepted), tot.accepted, seed};
  }
  double eb = tot.accepted > 0
                  ? double(tot.cat[2] + tot.cat[3]) / double(tot.accepted)
                  : 0.0;
  est.e_bit_after = {eb, binom_se(eb, tot.accepted), tot.accepted, seed};
  return est;
}

constexpr long long kAdShardSize = 1 << 16;

std::vector<AdShardCounts> ad_shards(const BellDiagonal& state, int b, long long n_blocks,
                                     std::uint64_t seed, bool parallel) {
  long long n_shards = (n_blocks + kAdShardSize - 1) / kAdShardSize;
  std::vector<AdShardCounts> shards(n_shards);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long s = 0; s < n_shards; ++s) {
      long long cnt = std::min(kAdShardSize, n_blocks - s * kAdShardSize);
      shards[s] = run_ad_shard(state, b, cnt, seed, std::uint64_t(s));
    }
  } else {
    for (long long s = 0; s < n_shards; ++s) {
      long long cnt = std::min(kAdShardSize, n_blocks - s * kAdShardSize);
      shards[s] = run_ad_shard(state, b, cnt, seed, std::uint64_t(s));
    }
  }
  return shards;
}

}  // namespace

AdBlockEstimates simulate_ad_blocks(const BellDiagonal& state, int b, long long n_blocks,
                                    std::uint64_t seed) {
  if (b < 1 || n_blocks < 1) throw std::invalid_argument("simulate_ad_blocks: bad arguments");
  return reduce_ad(ad_shards(state, b, n_blocks, seed, true), n_blocks, seed);
}

AdBlockEstimates simulate_ad_blocks_serial(const BellDiagonal& state, int b,
                                           long long n_blocks, std::uint64_t seed) {
  if (b < 1 || n_blocks < 1) throw std::invalid_argument("simulate_ad_blocks: bad arguments");
  return reduce_ad(ad_shards(state, b, n_blocks, seed, false), n_blocks, seed);
}

namespace {

struct DetShardCounts {
  // indexed [event][phase-bit class]; the analytic overall error rates are
  // plain 1/2-1/2 class mixtures, so classes must be tallied separately
  long long cnt[3][2] = {};
  long long err[3][2] = {};
};

struct ClickTable {
  // click probability per (pa, pb, ka, kb, detector)
  double p[2][2][2][2][4];
};

ClickTable make_click_table(const ProtocolParams& params, double l_km) {
  IntensityTable t = intensity_table(params, l_km);
  ClickTable ct;
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb)
      for (int ka = 0; ka < 2; ++ka)
        for (int kb = 0; kb < 2; ++kb)
          for (int d = 0; d < 4; ++d)
            ct.p[pa][pb][ka][kb][d] =
                click_probability(t.v[pa][pb][ka][kb][d], params.eta_d, params.p_d);
  return ct;
}

DetShardCounts run_det_shard(const ClickTable& ct, long long rounds, std::uint64_t seed,
                             std::uint64_t shard) {
  PhiloxStream rng(seed, shard);
  DetShardCounts out;
  for (long long i = 0; i < rounds; ++i) {
    std::uint32_t bits = rng.next_u32();
    int pa = bits & 1, pb = (bits >> 1) & 1, ka = (bits >> 2) & 1, kb = (bits >> 3) & 1;
    const double* p = ct.p[pa][pb][ka][kb];
    bool h1 = rng.next_double() < p[kH1];
    bool h2 = rng.next_double() < p[kH2];
    bool v1 = rng.next_double() < p[kV1];
    bool v2 = rng.next_double() < p[kV2];
    int cls = ka ^ kb;
    int nh = int(h1) + int(h2), nv = int(v1) + int(v2);
    if (nh == 1 && nv == 0) {
      ++out.cnt[0][cls];
      if ((h2 && cls == 0) || (h1 && cls == 1)) ++out.err[0][cls];
    } else if (nh == 1 && nv == 1) {
      bool pair1 = h1 && v1, pair2 = h2 && v2;  // X2 coincidence pairs
      if (pair1 || pair2) {
        ++out.cnt[1][cls];
        if ((pair2 && cls == 0) || (pair1 && cls == 1)) ++out.err[1][cls];
      } else {
        bool x3pair1 = h1 && v2;  // the H1-containing X3 pair
        ++out.cnt[2][cls];
        if ((!x3pair1 && cls == 0) || (x3pair1 && cls == 1)) ++out.err[2][cls];
      }
    }
  }
  return out;
}

constexpr long long kDetShardSize = 1 << 20;

DetectionEstimates reduce_det(const std::vector<DetShardCounts>& shards, long long n,
                              std::uint64_t seed) {
  DetShardCounts tot;
  for (const DetShardCounts& s : shards)
    for (int e = 0; e < 3; ++e)
      for (int c = 0; c < 2; ++c) {
        tot.cnt[e][c] += s.cnt[e][c];
        tot.err[e][c] += s.err[e][c];
      }
  DetectionEstimates est;
  for (int e = 0; e < 3; ++e) {
    double w = e == 0 ? 1.0 : 2.0;  // coincidences carry two raw bits
    long long cnt = tot.cnt[e][0] + tot.cnt[e][1];
    double p = double(cnt) / double(n);
    est.q[e] = {w * p, w * binom_se(p, n), n, seed};
    // equal-weight mixture of per-class ratios, matching the analytic rate
    double eb = 0.0, var = 0.0;
    for (int c = 0; c < 2; ++c) {
      double r = tot.cnt[e][c] > 0 ? double(tot.err[e][c]) / double(tot.cnt[e][c]) : 0.5;
      double se = tot.cnt[e][c] > 0 ? binom_se(r, tot.cnt[e][c]) : 0.5;
      eb += 0.5 * r;
      var += 0.25 * se * se;
    }
    est.e_bit[e] = {eb, std::sqrt(var), cnt, seed};
  }
  return est;
}

std::vector<DetShardCounts> det_shards(const ProtocolParams& params, double l_km,
                                       long long n_rounds, std::uint64_t seed,
                                       bool parallel) {
  ClickTable ct = make_click_table(params, l_km);
  long long n_shards = (n_rounds + kDetShardSize - 1) / kDetShardSize;
  std::vector<DetShardCounts> shards(n_shards);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long s = 0; s < n_shards; ++s) {
      long long cnt = std::min(kDetShardSize, n_rounds - s * kDetShardSize);
      shards[s] = run_det_shard(ct, cnt, seed, std::uint64_t(s));
    }
  } else {
    for (long long s = 0; s < n_shards; ++s) {
      long long cnt = std::min(kDetShardSize, n_rounds - s * kDetShardSize);
      shards[s] = run_det_shard(ct, cnt, seed, std::uint64_t(s));
    }
  }
  return shards;
}

}  // namespace

DetectionEstimates simulate_detection(const ProtocolParams& params, double l_km,
                                      long long n_rounds, std::uint64_t seed) {
  if (n_rounds < 1) throw std::invalid_argument("simulate_detection: n_rounds < 1");
  return reduce_det(det_shards(params, l_km, n_rounds, seed, true), n_rounds, seed);
}

DetectionEstimates simulate_detection_serial(const ProtocolParams& params, double l_km,
                                             long long n_rounds, std::uint64_t seed) {
  if (n_rounds < 1) throw std::invalid_argument("simulate_detection: n_rounds < 1");
  return reduce_det(det_shards(params, l_km, n_rounds, seed, false), n_rounds, seed);
}

McEstimate sample_mean_intensity(double intensity, long long n, std::uint64_t seed) {
  if (intensity < 0 || n < 1) throw std::invalid_argument("sample_mean_intensity: bad arguments");
  PhiloxStream rng(seed, 0);
  double limit = std::exp(-intensity);
  long long total = 0;
  for (long long i = 0; i < n; ++i) {
    int k = 0;
    double p = 1.0;
    for (;;) {
      p *= rng.next_double();
      if (p <= limit) break;
      ++k;
    }
    total += k;
  }
  double mean = double(total) / double(n);
  double se = std::sqrt(std::max(mean, 1e-300) / double(n));
  return {mean, se, n, seed};
}

}  // namespace iniqkd
