#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "iniqkd/optics.hpp"

using namespace iniqkd;

TEST_CASE("misalignment angle and rotation components") {
  CHECK(misalignment_angle(0.0) == 0.0);
  CHECK(misalignment_angle(0.10) == doctest::Approx(0.22551340589813122).epsilon(1e-12));
  CHECK_THROWS_AS(misalignment_angle(-0.1), std::domain_error);
  CHECK_THROWS_AS(misalignment_angle(1.1), std::domain_error);

  RotationComponents rc = rotation_components(misalignment_angle(0.5));
  CHECK(rc.a_minus * rc.a_minus == doctest::Approx(0.13397459621556135).epsilon(1e-12));

  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    RotationComponents r = rotation_components(misalignment_angle(u(rng)));
    CHECK(r.a_minus * r.a_minus + r.a_plus * r.a_plus == doctest::Approx(2.0).epsilon(1e-13));
  }
}

TEST_CASE("arm transmittance") {
  CHECK(arm_transmittance(0.2, 0.0) == 1.0);
  CHECK(arm_transmittance(0.2, 100.0) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK_THROWS_AS(arm_transmittance(0.2, -1.0), std::domain_error);
}

TEST_CASE("intensity table conserves total energy") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ProtocolParams p;
    p.e_d = u(rng);
    p.delta = u(rng);
    p.mu = 0.005 + 1.5 * u(rng);
    double l = 400.0 * u(rng);
    IntensityTable t = intensity_table(p, l);
    for (int pa = 0; pa < 2; ++pa)
      for (int pb = 0; pb < 2; ++pb)
        for (int ka = 0; ka < 2; ++ka)
          for (int kb = 0; kb < 2; ++kb) {
            const double* v = t.v[pa][pb][ka][kb];
            double sum = v[0] + v[1] + v[2] + v[3];
            CHECK(std::abs(sum - 2.0 * t.mu_eta) <= 1e-12 * std::max(1.0, 2.0 * t.mu_eta));
            for (int d = 0; d < 4; ++d) CHECK(v[d] >= 0.0);
          }
  }
}

TEST_CASE("aligned interferometer sends everything to the plus ports") {
  ProtocolParams p;
  p.mu = 0.2;
  IntensityTable t = intensity_table(p, 50.0);
  // equal phase bits, equal polarizations: H2 and V2 stay dark
  for (int pol = 0; pol < 2; ++pol) {
    const double* v = t.v[pol][pol][0][0];
    CHECK(v[kH2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v[kV2] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v[kH1] == doctest::Approx(t.mu_eta).epsilon(1e-12));
    CHECK(v[kV1] == doctest::Approx(t.mu_eta).epsilon(1e-12));
  }
  CHECK(t.phase[0] == 0.0);
}

TEST_CASE("opposite phase bits swap the detector pair roles at zero mismatch") {
  ProtocolParams p;
  p.e_d = 0.23;
  p.mu = 0.4;
  IntensityTable t = intensity_table(p, 120.0);
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb) {
      const double* same = t.v[pa][pb][0][0];
      const double* diff = t.v[pa][pb][0][1];
      CHECK(same[kH1] == doctest::Approx(diff[kH2]).epsilon(1e-12));
      CHECK(same[kH2] == doctest::Approx(diff[kH1]).epsilon(1e-12));
      CHECK(same[kV1] == doctest::Approx(diff[kV2]).epsilon(1e-12));
      CHECK(same[kV2] == doctest::Approx(diff[kV1]).epsilon(1e-12));
    }
  CHECK(t.phase[1] == doctest::Approx(std::acos(-1.0)).epsilon(1e-15));
}

TEST_CASE("phase-bit classes depend only on the parity") {
  ProtocolParams p;
  p.e_d = 0.15;
  p.delta = 0.2;
  p.mu = 0.1;
  IntensityTable t = intensity_table(p, 80.0);
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb)
      for (int d = 0; d < 4; ++d) {
        CHECK(t.v[pa][pb][0][0][d] == t.v[pa][pb][1][1][d]);
        CHECK(t.v[pa][pb][0][1][d] == t.v[pa][pb][1][0][d]);
      }
}

TEST_CASE("vacuum input yields an all-dark table") {
  ProtocolParams p;
  p.mu = 0.0;
  IntensityTable t = intensity_table(p, 10.0);
  CHECK(t.mu_eta == 0.0);
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb)
      for (int ka = 0; ka < 2; ++ka)
        for (int kb = 0; kb < 2; ++kb)
          for (int d = 0; d < 4; ++d) CHECK(t.v[pa][pb][ka][kb][d] == 0.0);
}

TEST_CASE("invalid parameters are rejected") {
  ProtocolParams p;
  p.mu = -0.1;
  CHECK_THROWS_AS(intensity_table(p, 10.0), std::invalid_argument);
  p.mu = 0.1;
  p.e_d = 1.5;
  CHECK_THROWS_AS(intensity_table(p, 10.0), std::invalid_argument);
}
