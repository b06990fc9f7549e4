#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "iniqkd/sweep.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  iniqkd::SweepConfig c;
  c.params.e_d = 0.30;
  c.l_min_km = 10;
  c.l_max_km = 250;
  c.l_step_km = 10;
  if (argc > 1) c.l_step_km = std::atof(argv[1]);
  if (argc > 2) c.workers = std::atoi(argv[2]);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<iniqkd::KeyRatePoint> serial = iniqkd::run_sweep_serial(c);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  std::vector<iniqkd::KeyRatePoint> parallel = iniqkd::run_sweep(c);
  double t_parallel = seconds_since(t0);

  std::string csv_serial = iniqkd::sweep_csv(serial, c.use_ad);
  std::string csv_parallel = iniqkd::sweep_csv(parallel, c.use_ad);
  bool identical = csv_serial == csv_parallel;

  std::printf("rows          %zu\n", serial.size());
  std::printf("serial        %.3f s\n", t_serial);
  std::printf("parallel      %.3f s (workers=%d)\n", t_parallel, c.workers);
  std::printf("speedup       %.2fx\n", t_parallel > 0 ? t_serial / t_parallel : 0.0);
  std::printf("byte-identical %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
