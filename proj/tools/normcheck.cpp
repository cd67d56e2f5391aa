// Copyright 2026 The normcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// normcheck: decide whether a deterministic complete transducer preserves
// normality, build its output-frequency automaton, and simulate it.

#include <CLI11.hpp>

#include <cstddef>
#include <iostream>
#include <string>

#include "normcheck/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = normcheck::cli;

  CLI::App app{"Decide preservation of normality by finite-state transducers"};
  app.require_subcommand(1);

  std::string path, word, source;
  bool timing = false;
  cli::SimulateOptions sim;
  std::size_t run_n = 0;

  auto* check = app.add_subcommand("check", "decide preservation of normality");
  check->add_option("transducer", path, "transducer document")->required();
  check->add_flag("--timing", timing, "print size measure and wall time");

  auto* freq = app.add_subcommand("freq", "frequency of an output word on normal inputs");
  freq->add_option("transducer", path, "transducer document")->required();
  freq->add_option("word", word, "word over the output alphabet")->required();

  auto* build = app.add_subcommand("build", "emit the frequency automaton and its matrices");
  build->add_option("transducer", path, "transducer document")->required();
  build->add_flag("--timing", timing, "print size measure and wall time");

  auto* run = app.add_subcommand("run", "print the output on an input prefix");
  run->add_option("transducer", path, "transducer document")->required();
  run->add_option("source", source, "champernowne:<k> or file:<path>")->required();
  run->add_option("n", run_n, "number of input symbols")->required();

  auto* simulate = app.add_subcommand("simulate", "compare empirical and predicted frequencies");
  simulate->add_option("transducer", path, "transducer document")->required();
  simulate->add_option("source", source, "champernowne:<k> or file:<path>")->required();
  simulate->add_option("n", sim.n, "number of input symbols")->capture_default_str();
  simulate->add_option("max_len", sim.max_len, "longest block length (1..6)")->capture_default_str();
  simulate->add_option("--tolerance", sim.tolerance, "largest acceptable gap")->capture_default_str();
  simulate->add_flag("--csv", sim.csv, "comma-separated output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInvalid;
  }

  if (*check) return cli::cmd_check(path, std::cout, std::cerr, timing);
  if (*freq) return cli::cmd_freq(path, word, std::cout, std::cerr);
  if (*build) return cli::cmd_build(path, std::cout, std::cerr, timing);
  if (*run) return cli::cmd_run(path, source, run_n, std::cout, std::cerr);
  if (*simulate) return cli::cmd_simulate(path, source, sim, std::cout, std::cerr);
  return cli::kInvalid;
}
