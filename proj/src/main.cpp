#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "iniqkd/config.hpp"
#include "iniqkd/sweep.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string preset;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<bool> use_ad;
  std::optional<int> b_max;
  std::optional<std::string> clamp;
  std::optional<std::string> ie_eta;
};

iniqkd::SweepConfig resolve_config(const CliArgs& a) {
  iniqkd::SweepConfig c;
  if (!a.preset.empty()) c = iniqkd::preset_config(a.preset);
  if (!a.config_path.empty()) c = iniqkd::load_config_file(a.config_path);
  if (a.out) c.out_path = *a.out;
  if (a.workers) c.workers = *a.workers;
  if (a.seed) c.seed = *a.seed;
  if (a.use_ad) c.use_ad = *a.use_ad;
  if (a.b_max) c.params.b_max = *a.b_max;
  if (a.clamp) {
    if (*a.clamp == "per-event") c.clamp = iniqkd::ClampMode::PerEvent;
    else if (*a.clamp == "total") c.clamp = iniqkd::ClampMode::Total;
    else throw std::runtime_error("config: bad value for clamp: '" + *a.clamp + "'");
  }
  if (a.ie_eta) {
    if (*a.ie_eta == "arm") c.ie_eta = iniqkd::EveEta::Arm;
    else if (*a.ie_eta == "arm-etad") c.ie_eta = iniqkd::EveEta::ArmEtaD;
    else throw std::runtime_error("config: bad value for ie-eta: '" + *a.ie_eta + "'");
  }
  if (auto err = c.validate()) throw std::runtime_error("config: " + *err);
  return c;
}

void add_common_options(CLI::App* cmd, CliArgs& a) {
  auto* cfg = cmd->add_option("--config", a.config_path, "Config file (key=value lines)");
  auto* pre = cmd->add_option("--preset", a.preset, "Named scenario preset");
  cfg->excludes(pre);
  pre->excludes(cfg);
  cmd->add_option("--out", a.out, "Output path (stdout when omitted)");
  cmd->add_option("--workers", a.workers, "Worker thread count (0: library default)");
  cmd->add_option("--seed", a.seed, "Monte-Carlo seed");
  cmd->add_option("--use-ad", a.use_ad, "Enable advantage distillation (true/false)");
  cmd->add_option("--b-max", a.b_max, "Maximum distillation block size");
  cmd->add_option("--clamp", a.clamp, "Negative-rate clamping: per-event|total")
      ->check(CLI::IsMember({"per-event", "total"}));
  cmd->add_option("--ie-eta", a.ie_eta, "Eavesdropper transmittance convention: arm|arm-etad")
      ->check(CLI::IsMember({"arm", "arm-etad"}));
}

int cmd_sweep(const CliArgs& args) {
  iniqkd::SweepConfig c = resolve_config(args);
  std::vector<iniqkd::KeyRatePoint> rows = iniqkd::run_sweep(c);
  std::string csv = iniqkd::sweep_csv(rows, c.use_ad);
  if (c.out_path.empty()) {
    std::cout << csv;
  } else {
    iniqkd::write_sweep_csv(c.out_path, rows, c.use_ad);
    std::cout << "wrote " << rows.size() << " rows to " << c.out_path << '\n';
  }
  return 0;
}

int cmd_max_distance(const CliArgs& args) {
  iniqkd::SweepConfig c = resolve_config(args);
  iniqkd::MaxDistanceResult r = iniqkd::run_max_distance(c, c.use_ad);
  std::cout << "distance_km=" << r.distance_km << " b_at_endpoint=" << r.b_at_endpoint
            << " mu_at_endpoint=" << r.mu_at_endpoint << '\n';
  if (!c.out_path.empty()) {
    bool fresh = !std::ifstream(c.out_path).good();
    std::ofstream out(c.out_path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("csv: cannot open '" + c.out_path + "' for append");
    if (fresh) out << "use_ad,distance_km,b_at_endpoint,mu_at_endpoint\n";
    out << (c.use_ad ? 1 : 0) << ',' << r.distance_km << ',' << r.b_at_endpoint << ','
        << r.mu_at_endpoint << '\n';
  }
  return 0;
}

int cmd_verify(const CliArgs& args) {
  iniqkd::SweepConfig c = resolve_config(args);
  iniqkd::VerifyReport report = iniqkd::run_verify(c);
  std::cout << iniqkd::verify_report_text(report);
  if (!c.out_path.empty()) {
    std::ofstream out(c.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open '" + c.out_path + "' for writing");
    out << iniqkd::verify_report_csv(report);
  }
  return report.pass ? 0 : 2;
}

int cmd_show_config(const CliArgs& args) {
  iniqkd::SweepConfig c = resolve_config(args);
  std::cout << iniqkd::config_to_text(c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secret key rates for the INI-QKD protocol, with and without advantage distillation"};
  app.require_subcommand(1);

  CliArgs args;
  CLI::App* sweep = app.add_subcommand("sweep", "Key-rate curve over a distance grid (CSV)");
  CLI::App* maxd = app.add_subcommand("max-distance", "Largest distance with positive rate");
  CLI::App* verify = app.add_subcommand("verify", "Monte-Carlo validation of the analytic model");
  CLI::App* showc = app.add_subcommand("show-config", "Echo the fully resolved configuration");
  for (CLI::App* cmd : {sweep, maxd, verify, showc}) add_common_options(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(args);
    if (maxd->parsed()) return cmd_max_distance(args);
    if (verify->parsed()) return cmd_verify(args);
    return cmd_show_config(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
