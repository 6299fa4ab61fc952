// Copyright 2026 The cbsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cbsq: build and check idealized second-quantized Hamiltonians of bosons
// with two-body composites.
//
//   cbsq solve-pair    --config c.json   composite_spectrum.json
//   cbsq spectrum      --config c.json   report.json, sector_<N>_eigs.csv
//   cbsq verify        --config c.json   verification.json
//   cbsq export-matrix --config c.json   term_<id>_sector_<N>.csv
//
// Exit status: 0 success, 1 configuration or usage error, 2 numerical
// failure, 3 verification failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "cbsq/cbsq.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;
constexpr int kMaxOracleN = 6;

int exit_code(cbsq_status status) {
  switch (status) {
    case CBSQ_OK: return kExitOk;
    case CBSQ_ERR_CONFIG:
    case CBSQ_ERR_INVALID_ARGUMENT:
    case CBSQ_ERR_IO: return kExitConfig;
    case CBSQ_ERR_VERIFICATION: return kExitVerification;
    case CBSQ_ERR_NUMERICAL:
    case CBSQ_ERR_INTERNAL: return kExitNumerical;
  }
  return kExitNumerical;
}

int report(cbsq_status status) {
  if (status != CBSQ_OK) std::fprintf(stderr, "cbsq: %s: %s\n", cbsq_status_name(status), cbsq_last_error());
  return exit_code(status);
}

struct Options {
  std::string config;
  std::optional<std::string> out_dir;
  int max_n = 4;
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

int run(const std::string& command, const Options& opt) {
  cbsq_model* model = nullptr;
  cbsq_status status = cbsq_model_from_config_file(opt.config.c_str(), &model);
  if (status != CBSQ_OK) return report(status);
  if (opt.seed) status = cbsq_model_randomize(model, *opt.seed);

  const char* dir = opt.out_dir ? opt.out_dir->c_str() : nullptr;
  const int threads = opt.threads > 0 ? opt.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (status == CBSQ_OK) {
    if (command == "solve-pair") {
      status = cbsq_run_solve_pair(model, dir);
    } else if (command == "spectrum") {
      status = cbsq_run_spectrum(model, dir, threads);
    } else if (command == "verify") {
      double diff = 0.0;
      status = cbsq_run_verify(model, dir, opt.max_n, threads, &diff);
      if (status == CBSQ_OK || status == CBSQ_ERR_VERIFICATION)
        std::printf("max_abs_diff %.3e (tolerance 1e-10)\n", diff);
    } else {
      status = cbsq_run_export(model, dir, threads);
    }
  }
  cbsq_model_free(model);
  return report(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Idealized second quantization for bosons with two-body composites", "cbsq"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(cbsq_version()));

  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file")->required();
    sub->add_option("--out-dir", opt.out_dir, "Output directory (overrides output.dir)");
    sub->add_option("--threads", opt.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", opt.seed, "Replace the model tensors with seeded random ones");
  };
  for (const char* name : {"solve-pair", "spectrum", "export-matrix"}) add_common(app.add_subcommand(name));
  auto* verify = app.add_subcommand("verify", "Compare every term against the permutation oracle");
  add_common(verify);
  verify->add_option("--max-n", opt.max_n, "Largest constituent number checked (at most 6)")
      ->check(CLI::Range(0, kMaxOracleN));
  app.get_subcommand("solve-pair")->description("Solve the pair problem and list the composite modes");
  app.get_subcommand("spectrum")->description("Assemble every sector up to n_max and report its lowest eigenvalues");
  app.get_subcommand("export-matrix")->description("Write every term block of every sector as row,col,value CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  return run(app.get_subcommands().front()->get_name(), opt);
}
