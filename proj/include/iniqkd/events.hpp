#pragma once

#include "iniqkd/optics.hpp"
#include "iniqkd/params.hpp"

namespace iniqkd {

// Threshold detector: 1 - (1-p_d) exp(-eta_d * I).
double click_probability(double intensity, double eta_d, double p_d);

// Upper bound on the eavesdropper's information from a beam-splitting
// attack with unambiguous state discrimination on the tapped fraction:
// 1 - (1/9)(exp(-2(1-eta)mu) + 2 exp(-(1-eta)mu))^2.
double eve_information(double mu, double eta);

// Statistics of one effective event for one phase-bit class.
struct EventClassStats {
  double q = 0;
  double e_ph = 0.5;
  double e_bit = 0.5;
  double sub_gain[2] = {0, 0};  // X1: (H1, H2); X2: (H1V1, H2V2); X3: (H1V2, H2V1)
};

// Per-event statistics: both phase-bit classes plus their 1/2-1/2 mixture.
struct EventDetail {
  EventClassStats cls[2];
  double q = 0;
  double e_ph = 0.5;
  double e_bit = 0.5;
};

EventDetail x1_stats(const IntensityTable& table, const ProtocolParams& params);
EventDetail x2_stats(const IntensityTable& table, const ProtocolParams& params);
EventDetail x3_stats(const IntensityTable& table, const ProtocolParams& params);

struct EventStats {
  EventDetail x[3];  // X1, X2, X3
};

EventStats overall_stats(const ProtocolParams& params, double l_km);

}  // namespace iniqkd
