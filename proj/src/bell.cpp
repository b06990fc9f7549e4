#include "iniqkd/bell.hpp"

#include <cmath>
#include <stdexcept>

namespace iniqkd {

namespace {
constexpr double kInvLn2 = 1.4426950408889634073599246810019;

double clamp01(double x, const char* what) {
  if (x < 0) {
    if (x < -1e-12) throw std::domain_error(std::string(what) + " below 0");
    return 0;
  }
  if (x > 1) {
    if (x > 1 + 1e-12) throw std::domain_error(std::string(what) + " above 1");
    return 1;
  }
  return x;
}

double xlogx(double x) {
  return x < 1e-300 ? 0.0 : x * std::log(x);
}
}  // namespace

double binary_entropy(double x) {
  x = clamp01(x, "binary_entropy argument");
  return -(xlogx(x) + xlogx(1 - x)) * kInvLn2;
}

Interval lambda3_range(const ErrorPair& err) {
  double eb = clamp01(err.e_bit, "e_bit");
  double ep = clamp01(err.e_ph, "e_ph");
  return {std::max(0.0, eb + ep - 1.0), std::min(eb, ep)};
}

BellDiagonal bell_from_errors(const ErrorPair& err, double lambda3) {
  Interval r = lambda3_range(err);
  if (r.empty() || lambda3 < r.lo - 1e-12 || lambda3 > r.hi + 1e-12)
    throw std::domain_error("lambda3 outside feasible range");
  lambda3 = std::min(std::max(lambda3, r.lo), r.hi);
  BellDiagonal s;
  s.l3 = lambda3;
  s.l2 = err.e_bit - lambda3;
  s.l1 = err.e_ph - lambda3;
  s.l0 = 1.0 - err.e_bit - err.e_ph + lambda3;
  return s;
}

double privacy_term(const BellDiagonal& s) {
  double w01 = s.l0 + s.l1;
  double w23 = s.l2 + s.l3;
  double t = 1.0;
  if (w01 > 0) t -= w01 * binary_entropy(s.l0 / w01);
  if (w23 > 0) t -= w23 * binary_entropy(s.l2 / w23);
  return t;
}

}  // namespace iniqkd
