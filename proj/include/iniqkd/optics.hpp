#pragma once

#include "iniqkd/params.hpp"

namespace iniqkd {

// theta = arcsin(sqrt(e_d/2)), symmetric for both parties.
double misalignment_angle(double e_d);

// eta = 10^(-alpha*l/20)
double arm_transmittance(double alpha_db_per_km, double l_km);

// Amplitude factors of a rotated diagonal-basis state.
struct RotationComponents {
  double a_minus = 1;  // cos(theta) - sin(theta)
  double a_plus = 1;   // cos(theta) + sin(theta)
};
RotationComponents rotation_components(double theta);

enum Detector { kH1 = 0, kH2 = 1, kV1 = 2, kV2 = 3 };

// Mean photon number at each of the four detectors for every
// (alice pol, bob pol, alice phase bit, bob phase bit) combination.
// Index order: [pol_a][pol_b][bit_a][bit_b][detector], pol 0='+', 1='-'.
struct IntensityTable {
  double v[2][2][2][2][4] = {};
  double mu_eta = 0;        // mu * eta, half the per-combination total
  double phase[2] = {0, 0}; // effective interference phase per phase-bit class
};

IntensityTable intensity_table(const ProtocolParams& params, double l_km);

}  // namespace iniqkd
