// Copyright 2026 The dsc-crypt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dsc/errors.h"
#include "dsc/harness.h"

namespace {

struct Invocation {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  bool corrupt_table = false;
};

void add_common(CLI::App* sub, Invocation& inv) {
  sub->add_option("config", inv.config, "JSON experiment config")->required();
  sub->add_option("--seed", inv.seed, "Override the master seed");
  sub->add_option("--out", inv.out, "Override the CSV output path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine post-encryption compression: regions, checks, sweeps"};
  app.require_subcommand(1);
  Invocation inv;
  CLI::App* analyze = app.add_subcommand("analyze", "Rate regions and witness");
  CLI::App* verify = app.add_subcommand("verify", "Exact identity checks");
  CLI::App* sweep = app.add_subcommand("sweep", "Blocklength sweep to CSV");
  for (CLI::App* sub : {analyze, verify, sweep}) add_common(sub, inv);
  verify->add_flag("--inject-corrupt-table", inv.corrupt_table,
                   "Replace one decoder entry by a duplicate (negative test)")
      ->group("");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : dsc::kExitConfigError;
  }

  try {
    dsc::ExperimentConfig cfg = dsc::load_config(inv.config);
    if (inv.seed) cfg.seed = *inv.seed;
    if (inv.out) cfg.output = *inv.out;
    if (analyze->parsed()) return dsc::cmd_analyze(cfg, std::cout);
    if (verify->parsed()) {
      return dsc::cmd_verify(cfg, std::cout, {.corrupt_table = inv.corrupt_table});
    }
    return dsc::cmd_sweep(cfg, std::cout);
  } catch (const dsc::ConfigError& e) {
    std::cerr << "config error in field '" << e.field() << "': " << e.what() << "\n";
    return dsc::kExitConfigError;
  } catch (const dsc::ResourceError& e) {
    std::cerr << "resource cap exceeded: " << e.what() << "\n";
    return dsc::kExitResourceError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dsc::kExitVerifyFailed;
  }
}
