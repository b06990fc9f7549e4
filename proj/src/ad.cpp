#include "iniqkd/ad.hpp"

#include <cmath>
#include <stdexcept>

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

double clamp0(double x) { return x < 0 ? 0.0 : x; }

}  // namespace

ADBlockOutcome ad_block_round(std::span<const std::uint8_t> x_block,
                              std::span<const std::uint8_t> y_block, int c) {
  if (x_block.size() != y_block.size() || x_block.empty())
    throw std::invalid_argument("ad_block_round: block length mismatch");
  std::uint8_t first = (x_block[0] ^ (c & 1)) ^ y_block[0];
  for (std::size_t i = 1; i < x_block.size(); ++i) {
    std::uint8_t d = (x_block[i] ^ (c & 1)) ^ y_block[i];
    if (d != first) return {};
  }
  return {true, x_block[0], y_block[0]};
}

double ad_success_probability(double e_bit, int b) {
  if (b < 1) throw std::invalid_argument("ad_success_probability: b must be >= 1");
  if (e_bit < 0 || e_bit > 1) {
    if (e_bit < -1e-12 || e_bit > 1 + 1e-12)
      throw std::domain_error("ad_success_probability: e_bit outside [0,1]");
    e_bit = e_bit < 0 ? 0 : 1;
  }
  return ipow(1.0 - e_bit, b) + ipow(e_bit, b);
}

ADResult ad_transform(const BellDiagonal& state, int b) {
  if (b < 1) throw std::invalid_argument("ad_transform: b must be >= 1");
  if (b == 1) return {1, 1.0, state, state.l2 + state.l3};

  double s01 = ipow(state.l0 + state.l1, b);
  double s23 = ipow(state.l2 + state.l3, b);
  double p = s01 + s23;
  if (!(p > 0)) throw std::domain_error("ad_transform: zero success probability");
  double d01 = ipow(state.l0 - state.l1, b);
  double d23 = ipow(state.l2 - state.l3, b);

  BellDiagonal t;
  t.l0 = clamp0((s01 + d01) / (2 * p));
  t.l1 = clamp0((s01 - d01) / (2 * p));
  t.l2 = clamp0((s23 + d23) / (2 * p));
  t.l3 = clamp0((s23 - d23) / (2 * p));
  double norm = t.l0 + t.l1 + t.l2 + t.l3;
  t.l0 /= norm;
  t.l1 /= norm;
  t.l2 /= norm;
  t.l3 /= norm;
  return {b, p, t, t.l2 + t.l3};
}

MinPrivacy worst_case_ad_privacy(const ErrorPair& err, int b) {
  Interval r = lambda3_range(err);
  if (r.empty()) throw std::domain_error("worst_case_ad_privacy: empty lambda3 range");

  auto eval = [&](double l3) {
    return privacy_term(ad_transform(bell_from_errors(err, l3), b).state_after);
  };

  if (r.hi - r.lo < 1e-15) return {eval(r.lo), r.lo};

  constexpr int kGrid = 1024;
  double best = eval(r.lo);
  int best_i = 0;
  for (int i = 1; i < kGrid; ++i) {
    double x = r.lo + (r.hi - r.lo) * i / (kGrid - 1);
    double v = eval(x);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }

  double a = r.lo + (r.hi - r.lo) * std::max(0, best_i - 1) / (kGrid - 1);
  double c = r.lo + (r.hi - r.lo) * std::min(kGrid - 1, best_i + 1) / (kGrid - 1);
  constexpr double kGolden = 0.6180339887498948482;
  double x1 = c - kGolden * (c - a);
  double x2 = a + kGolden * (c - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (c - a > 1e-12) {
    if (f1 < f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - kGolden * (c - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (c - a);
      f2 = eval(x2);
    }
  }
  double xm = 0.5 * (a + c);
  double fm = eval(xm);
  if (best < fm) return {best, r.lo + (r.hi - r.lo) * best_i / (kGrid - 1)};
  return {fm, xm};
}

}  // namespace iniqkd
