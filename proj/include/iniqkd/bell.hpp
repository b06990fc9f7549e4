#pragma once

namespace iniqkd {

// Shannon binary entropy in bits. Inputs are clamped into [0,1] when within
// 1e-12 of the boundary; anything further out throws std::domain_error.
double binary_entropy(double x);

// Two-qubit Bell-diagonal state, probabilities of the four Bell states.
struct BellDiagonal {
  double l0 = 1, l1 = 0, l2 = 0, l3 = 0;
};

struct ErrorPair {
  double e_bit = 0;
  double e_ph = 0;
};

struct Interval {
  double lo = 0, hi = 0;
  bool empty() const { return hi < lo; }
};

// Feasible lambda3 values for which bell_from_errors yields a valid state:
// [max(0, e_bit+e_ph-1), min(e_bit, e_ph)].
Interval lambda3_range(const ErrorPair& err);

// lambda2 = e_bit - l3, lambda1 = e_ph - l3, lambda0 = 1 - e_bit - e_ph + l3.
BellDiagonal bell_from_errors(const ErrorPair& err, double lambda3);

// 1 - (l0+l1) H(l0/(l0+l1)) - (l2+l3) H(l2/(l2+l3)), zero-weight terms drop.
double privacy_term(const BellDiagonal& s);

}  // namespace iniqkd
