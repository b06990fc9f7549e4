#include "iniqkd/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace iniqkd {

double misalignment_angle(double e_d) {
  if (e_d < 0 || e_d > 1) throw std::domain_error("misalignment_angle: e_d outside [0,1]");
  return std::asin(std::sqrt(e_d / 2.0));
}

double arm_transmittance(double alpha_db_per_km, double l_km) {
  if (l_km < 0) throw std::domain_error("arm_transmittance: negative distance");
  return std::pow(10.0, -alpha_db_per_km * l_km / 20.0);
}

RotationComponents rotation_components(double theta) {
  return {std::cos(theta) - std::sin(theta), std::cos(theta) + std::sin(theta)};
}

// Each party's diagonal coherent state rotates by theta and splits into H/V
// amplitude components: '+' -> (a_minus, a_plus), '-' -> (a_plus, -a_minus).
// Like-polarized components from the two parties interfere on the central
// 50:50 beam splitter with relative phase pi*delta + pi*(bit_a xor bit_b),
// giving detector intensity (mu*eta/4)(x^2 + y^2 +- 2 cos(phi) x y). The
// outputs of the H splitter feed H1/H2 and the V outputs feed V1/V2.
IntensityTable intensity_table(const ProtocolParams& params, double l_km) {
  // evaluation permits the vacuum limit mu = 0 (dark-count-only statistics);
  // configs still require mu > 0
  if (!(params.mu >= 0)) throw std::invalid_argument("mu must be >= 0");
  ProtocolParams check = params;
  check.mu = 1.0;
  if (auto e = check.validate()) throw std::invalid_argument(*e);
  double theta = misalignment_angle(params.e_d);
  RotationComponents rc = rotation_components(theta);
  double eta = arm_transmittance(params.alpha_db_per_km, l_km);

  IntensityTable t;
  t.mu_eta = params.mu * eta;
  double pref = t.mu_eta / 4.0;

  // amp[pol] = (H component, V component)
  const double amp[2][2] = {{rc.a_minus, rc.a_plus}, {rc.a_plus, -rc.a_minus}};

  for (int cls = 0; cls < 2; ++cls)
    t.phase[cls] = std::numbers::pi * (params.delta + cls);

  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb)
      for (int ka = 0; ka < 2; ++ka)
        for (int kb = 0; kb < 2; ++kb) {
          int cls = ka ^ kb;
          double c = std::cos(t.phase[cls]);
          double ah = amp[pa][0], av = amp[pa][1];
          double bh = amp[pb][0], bv = amp[pb][1];
          double* out = t.v[pa][pb][ka][kb];
          out[kH1] = pref * (ah * ah + bh * bh + 2 * c * ah * bh);
          out[kH2] = pref * (ah * ah + bh * bh - 2 * c * ah * bh);
          out[kV1] = pref * (av * av + bv * bv + 2 * c * av * bv);
          out[kV2] = pref * (av * av + bv * bv - 2 * c * av * bv);
          for (int d = 0; d < 4; ++d)
            if (out[d] < 0) out[d] = 0;  // -0 guard; the form is >= (|x|-|y|)^2
        }
  return t;
}

}  // namespace iniqkd
