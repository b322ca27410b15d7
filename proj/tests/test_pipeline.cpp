#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "romclose/artifact_io.hpp"
#include "romclose/error.hpp"
#include "romclose/pipeline.hpp"
#include "support.hpp"

using namespace romclose;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string config_error(const json& doc, const std::vector<std::string>& overrides = {}) {
  try {
    parse_config(doc, overrides);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
    return e.what();
  }
  FAIL("config accepted");
  return {};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ROMCLOSE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_json(const fs::path& p, const json& j) {
  std::ofstream(p) << j.dump(2);
  return p;
}

// Small and fast pipeline config.
json small_config(const fs::path& out) {
  return json{{"fom",
               {{"grid", {{"n_points", 64}}},
                {"viscosity", 0.05},
                {"dt", 2e-3},
                {"n_steps", 500},
                {"snapshot_stride", 5}}},
              {"pod", {{"rank", 6}}},
              {"rom", {{"r", 2}, {"dt", 2e-3}, {"n_steps", 500}}},
              {"output", {{"directory", out.string()}}}};
}

}  // namespace

TEST_CASE("default config parses to the benchmark") {
  const PipelineConfig cfg = parse_config(json::object());
  CHECK(cfg.grid.n_points == 512);
  CHECK(cfg.grid.domain_length == doctest::Approx(2 * M_PI));
  CHECK(cfg.fom.viscosity == 0.01);
  CHECK(cfg.pod_rank == 20);
  CHECK(cfg.rom_r == 4);
  CHECK_FALSE(cfg.ridge_lambda.has_value());

  const PipelineConfig shipped = load_config(fs::path(ROMCLOSE_SOURCE_DIR) / "configs" / "default.json");
  CHECK(shipped.hash() == cfg.hash());
}

TEST_CASE("config errors name the field") {
  CHECK(config_error({{"pod", {{"rnak", 3}}}}).find("/pod/rnak") != std::string::npos);
  CHECK(config_error({{"fom", {{"viscosity", "lots"}}}}).find("/fom/viscosity") != std::string::npos);
  CHECK(config_error({{"rom", {{"r", 2.5}}}}).find("/rom/r") != std::string::npos);
  CHECK(config_error({{"fom", {{"grid", {{"domain_length", "twopi"}}}}}}).find("/fom/grid/domain_length") !=
        std::string::npos);
  CHECK(config_error(json::object(), {"closure.lamda=1"}).find("/closure/lamda") != std::string::npos);
  CHECK(config_error(json::object(), {"novalue"}).size() > 0);
  try {
    load_config("/nonexistent/romclose.json");
    FAIL("missing config accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
  }
}

TEST_CASE("overrides") {
  const PipelineConfig cfg =
      parse_config(json::object(), {"rom.r=6", "closure.lambda=0.001", "fom.grid.domain_length=4pi",
                                    "output.directory=elsewhere"});
  CHECK(cfg.rom_r == 6);
  REQUIRE(cfg.ridge_lambda.has_value());
  CHECK(*cfg.ridge_lambda == 0.001);
  CHECK(cfg.grid.domain_length == doctest::Approx(4 * M_PI));
  CHECK(cfg.out_dir == "elsewhere");
  // The output section does not enter the hash.
  CHECK(parse_config(json::object(), {"output.directory=a"}).hash() ==
        parse_config(json::object(), {"output.directory=b"}).hash());
  CHECK(parse_config(json::object(), {"rom.r=3"}).hash() != parse_config(json::object()).hash());
}

TEST_CASE("stages refuse to run without upstream artifacts") {
  const auto dir = testing::scratch_dir("pipe_upstream");
  const PipelineConfig cfg = parse_config(small_config(dir));
  try {
    cmd_pod(cfg);
    FAIL("pod ran without snapshots");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UpstreamMissing);
  }
  CHECK(fs::is_empty(dir));
  CHECK_THROWS_AS(cmd_train(cfg), Error);
  CHECK_THROWS_AS(cmd_simulate(cfg, Variant::D2VMS), Error);
  CHECK(fs::is_empty(dir));
}

TEST_CASE("small pipeline end to end") {
  const auto dir = testing::scratch_dir("pipe_e2e");
  const PipelineConfig cfg = parse_config(small_config(dir));
  cmd_fom(cfg);
  cmd_pod(cfg);
  cmd_train(cfg);
  for (Variant v : {Variant::GROM, Variant::IROM, Variant::D2VMS}) cmd_simulate(cfg, v);
  const ErrorReport r = cmd_report(cfg);
  CHECK(r.variants.size() == 3);
  CHECK(fs::exists(dir / "report.csv"));
  CHECK(fs::exists(dir / "report.json"));
  const ErrorReport back = read_report_json(dir / "report.json");
  CHECK(back.ratios == r.ratios);
  CHECK(back.metadata.at("r") == 2.0);
  CHECK(back.metadata.at("R") == 6.0);

  const auto hash = cfg.hash();
  std::ifstream in(io::sidecar_path(dir / artifacts::kBasis));
  CHECK(json::parse(in).at("provenance").at("config_hash") == hash);

  SUBCASE("rank must stay below the basis rank") {
    const PipelineConfig bad = parse_config(small_config(dir), {"rom.r=6"});
    try {
      cmd_train(bad);
      FAIL("train accepted r = R");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ConfigInvalid);
    }
  }
}

TEST_CASE("toy pipeline") {
  const ErrorReport r = run_toy(ToyConfig{}, std::nullopt);
  REQUIRE(r.find("grom") != nullptr);
  REQUIRE(r.find("d2vms") != nullptr);
  REQUIRE(r.find("irom") != nullptr);
  CHECK(r.ratios.at("d2vms/grom") <= 0.5);
  CHECK(r.find("irom")->time_average <= 1e-6);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(ErrorKind::ConfigInvalid) == 2);
  CHECK(exit_code(ErrorKind::RankNotStrictlySmaller) == 2);
  CHECK(exit_code(ErrorKind::UpstreamMissing) == 3);
  CHECK(exit_code(ErrorKind::CflViolation) == 4);
  CHECK(exit_code(ErrorKind::NonFiniteState) == 4);
  CHECK(exit_code(ErrorKind::IoFailure) == 5);
}

TEST_CASE("command line") {
  const auto dir = testing::scratch_dir("pipe_cli");
  const fs::path good = write_json(dir / "good.json", small_config(dir / "out"));
  const fs::path bad = write_json(dir / "bad.json", json{{"pod", {{"rank", "many"}}}});
  CHECK(run_cli("pod --config " + bad.string()) == 2);
  CHECK(run_cli("fom --config " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("simulate --config " + good.string()) == 2);  // --variant missing
  CHECK(run_cli("pod --config " + good.string()) == 3);
  CHECK(run_cli("fom --config " + good.string()) == 0);
  CHECK(run_cli("pod --config " + good.string()) == 0);
  CHECK(run_cli("train --config " + good.string() + " --set rom.r=7") == 2);
  CHECK(run_cli("train --config " + good.string()) == 0);
  CHECK(run_cli("simulate --variant d2vms --config " + good.string()) == 0);
  CHECK(run_cli("report --format csv --config " + good.string()) == 0);
  CHECK(fs::exists(dir / "out" / "report.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "report.json"));
  CHECK(run_cli("fom --config " + good.string() + " --set fom.dt=0.5") == 4);
  CHECK(run_cli("toy --config " + good.string() + " --out " + (dir / "toy").string()) == 0);
  CHECK(fs::exists(dir / "toy" / "toy_report.json"));
}
