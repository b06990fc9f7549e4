#include <array>
#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "iniqkd/ad.hpp"
#include "iniqkd/events.hpp"
#include "iniqkd/mc.hpp"

using namespace iniqkd;

namespace {

double sigma_distance(const McEstimate& est, double analytic, double se_floor) {
  double se = std::max(est.std_err, se_floor);
  return se > 0 ? std::abs(est.value - analytic) / se : std::abs(est.value - analytic);
}

}  // namespace

TEST_CASE("counter-based generator known-answer vectors") {
  std::array<std::uint32_t, 4> zero = PhiloxStream::block(0, 0, 0);
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  std::array<std::uint32_t, 4> ones =
      PhiloxStream::block(~0ull, ~0ull, ~0ull);
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  std::array<std::uint32_t, 4> mapped = PhiloxStream::block(1, 2, 3);
  CHECK(mapped[0] == 0xde08bf52u);
  CHECK(mapped[1] == 0x663eff4fu);
  CHECK(mapped[2] == 0x8759c4e2u);
  CHECK(mapped[3] == 0xbdd5e548u);
}

TEST_CASE("stream draws are reproducible and stream-separated") {
  PhiloxStream a(42, 7), b(42, 7), c(42, 8);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 1000; ++i) {
    std::uint32_t x = a.next_u32(), y = b.next_u32();
    if (x != y) all_equal = false;
    if (x != c.next_u32()) any_diff = true;
  }
  CHECK(all_equal);
  CHECK(any_diff);

  PhiloxStream d(1, 1);
  for (int i = 0; i < 10000; ++i) {
    double u = d.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("block simulation matches the analytic transform") {
  const BellDiagonal state{0.81, 0.09, 0.09, 0.01};
  const int b = 2;
  const long long n = 200000;
  ADResult analytic = ad_transform(state, b);
  AdBlockEstimates est = simulate_ad_blocks(state, b, n, 99);
  CHECK(sigma_distance(est.p_succ, analytic.p_succ, 1e-9) < 4.0);
  const double lam[4] = {analytic.state_after.l0, analytic.state_after.l1,
                         analytic.state_after.l2, analytic.state_after.l3};
  for (int i = 0; i < 4; ++i) CHECK(sigma_distance(est.lam[i], lam[i], 1e-9) < 4.0);
  CHECK(sigma_distance(est.e_bit_after, analytic.e_bit_after, 1e-9) < 4.0);
  CHECK(est.p_succ.value == doctest::Approx(0.82).epsilon(0.01));
}

TEST_CASE("block simulation parallel and serial reductions agree bitwise") {
  const BellDiagonal state{0.7, 0.12, 0.13, 0.05};
  const long long n = (1 << 17) + 321;  // exercises an uneven tail shard
  AdBlockEstimates par = simulate_ad_blocks(state, 3, n, 5);
  AdBlockEstimates ser = simulate_ad_blocks_serial(state, 3, n, 5);
  CHECK(par.p_succ.value == ser.p_succ.value);
  CHECK(par.p_succ.std_err == ser.p_succ.std_err);
  for (int i = 0; i < 4; ++i) {
    CHECK(par.lam[i].value == ser.lam[i].value);
    CHECK(par.lam[i].n == ser.lam[i].n);
  }
  CHECK(par.e_bit_after.value == ser.e_bit_after.value);

  AdBlockEstimates other = simulate_ad_blocks(state, 3, n, 6);
  CHECK(par.p_succ.value != other.p_succ.value);
}

TEST_CASE("detection simulation matches the analytic statistics") {
  ProtocolParams p;
  p.e_d = 0.10;
  const double l = 25.0;
  const long long n = 4000000;
  EventStats analytic = overall_stats(p, l);
  DetectionEstimates est = simulate_detection(p, l, n, 2024);
  for (int e = 0; e < 3; ++e) {
    double w = e == 0 ? 1.0 : 2.0;
    double floor_q = w * std::sqrt(analytic.x[e].q / w / double(n));
    CHECK(sigma_distance(est.q[e], analytic.x[e].q, floor_q) < 4.0);
    if (est.e_bit[e].n >= 100) {
      double eb = analytic.x[e].e_bit;
      double floor_e = std::sqrt(eb * (1.0 - eb) / double(est.e_bit[e].n));
      CHECK(sigma_distance(est.e_bit[e], eb, floor_e) < 4.0);
    }
  }
}

TEST_CASE("detection simulation parallel and serial reductions agree bitwise") {
  ProtocolParams p;
  p.e_d = 0.30;
  const long long n = (1 << 21) + 777;
  DetectionEstimates par = simulate_detection(p, 15.0, n, 31);
  DetectionEstimates ser = simulate_detection_serial(p, 15.0, n, 31);
  for (int e = 0; e < 3; ++e) {
    CHECK(par.q[e].value == ser.q[e].value);
    CHECK(par.q[e].std_err == ser.q[e].std_err);
    CHECK(par.e_bit[e].value == ser.e_bit[e].value);
    CHECK(par.e_bit[e].n == ser.e_bit[e].n);
  }
}

TEST_CASE("poisson sampler recovers the mean intensity") {
  const double mu = 0.7;
  const long long n = 500000;
  McEstimate est = sample_mean_intensity(mu, n, 17);
  CHECK(std::abs(est.value - mu) / std::sqrt(mu / double(n)) < 4.0);
  McEstimate zero = sample_mean_intensity(0.0, 1000, 17);
  CHECK(zero.value == 0.0);
}
