#pragma once

#include <cstdint>
#include <span>

#include "iniqkd/bell.hpp"

namespace iniqkd {

struct ADResult {
  int b = 1;
  double p_succ = 1;
  BellDiagonal state_after;
  double e_bit_after = 0;
};

struct ADBlockOutcome {
  bool accepted = false;
  std::uint8_t kept_x = 0;
  std::uint8_t kept_y = 0;
};

// One classical advantage-distillation round on a pair of b-bit blocks.
// Alice announces m = x xor c (c repeated); the block is accepted iff
// m xor y is constant, in which case both keep their first bits.
ADBlockOutcome ad_block_round(std::span<const std::uint8_t> x_block,
                              std::span<const std::uint8_t> y_block, int c);

// (1-e)^b + e^b
double ad_success_probability(double e_bit, int b);

// Post-selection map on the Bell-diagonal state for block size b.
ADResult ad_transform(const BellDiagonal& state, int b);

struct MinPrivacy {
  double value = 0;
  double lambda3 = 0;
};

// Minimum of privacy_term(ad_transform(bell_from_errors(err, l3), b)) over
// the feasible l3 interval. 1024-point coarse grid, then golden-section
// refinement of the best bracket down to 1e-12 interval width.
MinPrivacy worst_case_ad_privacy(const ErrorPair& err, int b);

}  // namespace iniqkd
