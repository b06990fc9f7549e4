#pragma once

#include <string>
#include <vector>

#include "iniqkd/keyrate.hpp"
#include "iniqkd/params.hpp"

namespace iniqkd {

// One optimized KeyRatePoint per grid distance, assembled in grid order.
// Worker count only changes scheduling, never values or output bytes.
std::vector<KeyRatePoint> run_sweep(const SweepConfig& config);
std::vector<KeyRatePoint> run_sweep_serial(const SweepConfig& config);

MaxDistanceResult run_max_distance(const SweepConfig& config, bool use_ad);

// CSV with a fixed header; floats in shortest round-trip scientific notation.
// Non-finite values (PLOB at zero distance) and, when with_ad is false, the
// three advantage-distillation columns are left empty.
std::string sweep_csv(const std::vector<KeyRatePoint>& rows, bool with_ad);
void write_sweep_csv(const std::string& path, const std::vector<KeyRatePoint>& rows,
                     bool with_ad);
std::vector<KeyRatePoint> parse_sweep_csv(const std::string& text);

struct VerifyCheck {
  std::string name;
  double analytic = 0;
  double estimate = 0;
  double sigma = 0;  // |estimate - analytic| in standard errors
  bool pass = true;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double worst_sigma = 0;
  bool pass = true;
};

// Monte-Carlo cross-check of the analytic formulas on a fixed grid of
// distillation states and channel settings. A check fails above 4 sigma.
VerifyReport run_verify(const SweepConfig& config);
std::string verify_report_text(const VerifyReport& report);
std::string verify_report_csv(const VerifyReport& report);

}  // namespace iniqkd
