#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "hgcompton/errors.hpp"
#include "hgcompton/runner.hpp"
#include "hgcompton/version.hpp"

namespace {

int env_threads() {
  const char* s = std::getenv("HG_COMPTON_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1) return 1;
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hgcompton;

  CLI::App app{"Triple-differential Compton cross sections for Hermite-Gaussian beams"};
  app.set_version_flag("--version", std::string("hg-compton ") + kVersion);

  std::string config_path;
  app.add_option("config", config_path, "Path to the run config file")->required();

  std::string mode_str, out_path, units_str;
  app.add_option("--mode", mode_str, "Override scan.mode")
      ->check(CLI::IsMember({"angular", "spectrum", "validate", "kn-reference"}));
  app.add_option("--out", out_path, "Override the output file path");
  app.add_option("--units", units_str, "Override output.units")
      ->check(CLI::IsMember({"natural", "barn"}));
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: HG_COMPTON_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  RunOptions opt;
  if (!mode_str.empty()) {
    if (mode_str == "angular") opt.mode = RunMode::angular;
    else if (mode_str == "spectrum") opt.mode = RunMode::spectrum;
    else if (mode_str == "validate") opt.mode = RunMode::validate;
    else opt.mode = RunMode::kn_reference;
  }
  if (!out_path.empty()) opt.out = out_path;
  if (!units_str.empty())
    opt.units = units_str == "barn" ? OutputUnits::barn : OutputUnits::natural;
  opt.threads = threads > 0 ? threads : env_threads();

  try {
    const RunConfig cfg = load_config(config_path, opt);
    return run(cfg, opt);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "{\"error\":\"config parse\",\"what\":\"%s\"}\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "{\"error\":\"config validation\",\"what\":\"%s\"}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":\"fatal\",\"what\":\"%s\"}\n", e.what());
    return 3;
  }
}
