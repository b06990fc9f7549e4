#include "iniqkd/events.hpp"

#include <cmath>
#include <stdexcept>

namespace iniqkd {

namespace {

// exp-rescaled e^{-I} cosh(I) and e^{-I} sinh(I) click-parity terms:
// C(I) = P(even incident photon number and a click), S(I) the odd twin.
double cterm(double I, double eta_d, double p_d) {
  return 0.5 * ((1 + std::exp(-2 * I)) -
                (1 - p_d) * (std::exp(-eta_d * I) + std::exp(-(2 - eta_d) * I)));
}

double sterm(double I, double eta_d, double p_d) {
  return 0.5 * ((1 - std::exp(-2 * I)) -
                (1 - p_d) * (std::exp(-eta_d * I) - std::exp(-(2 - eta_d) * I)));
}

struct Combo {
  int pa, pb;
  bool cross;  // mixed polarizations
};
constexpr Combo kCombos[4] = {{0, 0, false}, {0, 1, true}, {1, 0, true}, {1, 1, false}};

double ratio_or_half(double num, double den) { return den > 0 ? num / den : 0.5; }

}  // namespace

double click_probability(double intensity, double eta_d, double p_d) {
  if (intensity < 0) throw std::domain_error("click_probability: negative intensity");
  return 1.0 - (1.0 - p_d) * std::exp(-eta_d * intensity);
}

double eve_information(double mu, double eta) {
  if (mu < 0 || !(eta > 0) || eta > 1)
    throw std::domain_error("eve_information: mu >= 0 and eta in (0,1] required");
  double g = std::exp(-2 * (1 - eta) * mu) + 2 * std::exp(-(1 - eta) * mu);
  return 1.0 - g * g / 9.0;
}

EventDetail x1_stats(const IntensityTable& table, const ProtocolParams& params) {
  const double eta_d = params.eta_d, p_d = params.p_d;
  const double pref = (1 - p_d) * (1 - p_d) * (1 - p_d) / 4.0;
  EventDetail ev;
  for (int cls = 0; cls < 2; ++cls) {
    double qh1 = 0, qh2 = 0, ph1 = 0, ph2 = 0;
    for (const Combo& cb : kCombos) {
      const double* I = table.v[cb.pa][cb.pb][0][cls];
      double nc_h1_side = std::exp(-eta_d * (I[kH2] + I[kV1] + I[kV2]));
      double nc_h2_side = std::exp(-eta_d * (I[kH1] + I[kV1] + I[kV2]));
      qh1 += pref * nc_h1_side * (1 - (1 - p_d) * std::exp(-eta_d * I[kH1]));
      qh2 += pref * nc_h2_side * (1 - (1 - p_d) * std::exp(-eta_d * I[kH2]));
      ph1 += pref * nc_h1_side * cterm(I[kH1], eta_d, p_d);
      ph2 += pref * nc_h2_side * cterm(I[kH2], eta_d, p_d);
    }
    EventClassStats& s = ev.cls[cls];
    s.sub_gain[0] = qh1;
    s.sub_gain[1] = qh2;
    s.q = qh1 + qh2;
    s.e_ph = ratio_or_half(ph1 + ph2, s.q);
    s.e_bit = ratio_or_half(cls == 0 ? qh2 : qh1, s.q);
  }
  ev.q = 0.5 * (ev.cls[0].q + ev.cls[1].q);
  ev.e_ph = 0.5 * (ev.cls[0].e_ph + ev.cls[1].e_ph);
  ev.e_bit = 0.5 * (ev.cls[0].e_bit + ev.cls[1].e_bit);
  return ev;
}

namespace {

// Shared X2/X3 machinery. X3 is the V1<->V2 relabeling of X2: coincidence
// pairs (H1,V2)/(H2,V1), with the cross/parallel polarization roles in the
// Kronecker bit-error weights swapped accordingly.
EventDetail coincidence_stats(const IntensityTable& table, const ProtocolParams& params,
                              bool x3) {
  const double eta_d = params.eta_d, p_d = params.p_d;
  const double one_m = 1 - p_d;
  EventDetail ev;
  for (int cls = 0; cls < 2; ++cls) {
    double p_first[4], p_second[4];  // per combo: (H1,Vx) pair and its twin
    double eph_num = 0;
    for (int k = 0; k < 4; ++k) {
      const Combo& cb = kCombos[k];
      const double* I = table.v[cb.pa][cb.pb][0][cls];
      double a1 = I[kH1], a2 = x3 ? I[kV2] : I[kV1];
      double b1 = I[kH2], b2 = x3 ? I[kV1] : I[kV2];
      double cc_a1 = click_probability(a1, eta_d, p_d);
      double cc_a2 = click_probability(a2, eta_d, p_d);
      double cc_b1 = click_probability(b1, eta_d, p_d);
      double cc_b2 = click_probability(b2, eta_d, p_d);
      double nc_a = one_m * one_m * std::exp(-eta_d * (a1 + a2));
      double nc_b = one_m * one_m * std::exp(-eta_d * (b1 + b2));
      p_first[k] = cc_a1 * cc_a2 * nc_b;
      p_second[k] = cc_b1 * cc_b2 * nc_a;
      double q4 = one_m * one_m / 4.0;
      eph_num += q4 * std::exp(-eta_d * (b1 + b2)) *
                 (2 * sterm(a1, eta_d, p_d) * cterm(a2, eta_d, p_d) +
                  sterm(a2, eta_d, p_d) * cterm(a1, eta_d, p_d) +
                  cterm(a1, eta_d, p_d) * cterm(a2, eta_d, p_d));
      eph_num += q4 * std::exp(-eta_d * (a1 + a2)) *
                 (2 * sterm(b1, eta_d, p_d) * cterm(b2, eta_d, p_d) +
                  sterm(b2, eta_d, p_d) * cterm(b1, eta_d, p_d) +
                  cterm(b1, eta_d, p_d) * cterm(b2, eta_d, p_d));
    }
    double q1 = 0.5 * (p_first[0] + p_first[1] + p_first[2] + p_first[3]);
    double q2 = 0.5 * (p_second[0] + p_second[1] + p_second[2] + p_second[3]);
    EventClassStats& s = ev.cls[cls];
    s.sub_gain[0] = q1;
    s.sub_gain[1] = q2;
    s.q = q1 + q2;
    s.e_ph = ratio_or_half(eph_num, s.q);
    if (params.bit_error == BitErrorConvention::Paired) {
      s.e_bit = ratio_or_half(cls == 0 ? q2 : q1, s.q);
    } else {
      double num = 0;
      for (int k = 0; k < 4; ++k) {
        bool doubled = x3 ? !kCombos[k].cross : kCombos[k].cross;
        num += 0.25 * (doubled ? 2.0 : 1.0) * p_first[k];
      }
      s.e_bit = ratio_or_half(num, s.q);
    }
  }
  ev.q = 0.5 * (ev.cls[0].q + ev.cls[1].q);
  ev.e_ph = 0.5 * (ev.cls[0].e_ph + ev.cls[1].e_ph);
  ev.e_bit = 0.5 * (ev.cls[0].e_bit + ev.cls[1].e_bit);
  return ev;
}

}  // namespace

EventDetail x2_stats(const IntensityTable& table, const ProtocolParams& params) {
  return coincidence_stats(table, params, false);
}

EventDetail x3_stats(const IntensityTable& table, const ProtocolParams& params) {
  return coincidence_stats(table, params, true);
}

EventStats overall_stats(const ProtocolParams& params, double l_km) {
  IntensityTable table = intensity_table(params, l_km);
  EventStats st;
  st.x[0] = x1_stats(table, params);
  st.x[1] = x2_stats(table, params);
  st.x[2] = x3_stats(table, params);
  return st;
}

}  // namespace iniqkd
