// romclose: offline/online driver for the closure pipeline.
//
//   romclose fom      --config cfg.json
//   romclose pod      --config cfg.json
//   romclose train    --config cfg.json
//   romclose simulate --config cfg.json --variant {grom,irom,d2vms}
//   romclose report   --config cfg.json [--format csv|json] [--against-projection]
//   romclose toy      --config cfg.json

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "romclose/error.hpp"
#include "romclose/pipeline.hpp"

namespace {

struct Options {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  std::string variant;
  std::vector<std::string> formats;
  bool against_projection = false;
};

void common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "pipeline config (JSON)")->required();
  cmd->add_option("--set", o.sets, "override a config field, KEY=VALUE (repeatable)");
  cmd->add_option("--out", o.out, "output directory (overrides output.directory)");
}

}  // namespace

int main(int argc, char** argv) {
  romclose::init_logging();

  CLI::App app{"romclose - POD/Galerkin ROMs with data-driven VMS closure"};
  app.require_subcommand(1);
  Options o;

  auto* fom = app.add_subcommand("fom", "run the Burgers full-order model and store snapshots");
  auto* pod = app.add_subcommand("pod", "build the POD basis from stored snapshots");
  auto* train = app.add_subcommand("train", "assemble Galerkin operators and fit the closure");
  auto* simulate = app.add_subcommand("simulate", "integrate one ROM variant");
  auto* report = app.add_subcommand("report", "compare stored ROM trajectories against the FOM");
  auto* toy = app.add_subcommand("toy", "run the three-mode toy closure pipeline");
  for (auto* c : {fom, pod, train, simulate, report, toy}) common(c, o);
  simulate->add_option("--variant", o.variant, "ROM variant")
      ->required()
      ->check(CLI::IsMember({"grom", "irom", "d2vms"}));
  for (auto* c : {report, toy})
    c->add_option("--format", o.formats, "report format(s)")->check(CLI::IsMember({"csv", "json"}));
  report->add_flag("--against-projection", o.against_projection,
                   "measure error against projected snapshots instead of raw snapshots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::vector<std::string> sets = o.sets;
    if (!o.out.empty()) sets.push_back("output.directory=\"" + o.out + "\"");
    if (!o.formats.empty()) {
      std::string list = "[";
      for (size_t i = 0; i < o.formats.size(); ++i) list += (i ? ",\"" : "\"") + o.formats[i] + "\"";
      sets.push_back("output.formats=" + list + "]");
    }
    if (o.against_projection) sets.push_back("report.against_projection=true");
    const romclose::PipelineConfig cfg = romclose::load_config(o.config, sets);

    if (fom->parsed()) romclose::cmd_fom(cfg);
    else if (pod->parsed()) romclose::cmd_pod(cfg);
    else if (train->parsed()) romclose::cmd_train(cfg);
    else if (simulate->parsed()) romclose::cmd_simulate(cfg, romclose::variant_from_string(o.variant));
    else if (report->parsed() || toy->parsed()) {
      const auto rep = report->parsed() ? romclose::cmd_report(cfg) : romclose::cmd_toy(cfg);
      for (const auto& v : rep.variants)
        std::cout << v.label << ": time-averaged error " << v.time_average << ", terminal "
                  << v.terminal << '\n';
      for (const auto& [name, value] : rep.ratios) std::cout << name << " = " << value << '\n';
    }
  } catch (const romclose::Error& e) {
    spdlog::error("{}", e.what());
    return romclose::exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    spdlog::error("IoFailure: {}", e.what());
    return 5;
  }
  return 0;
}
