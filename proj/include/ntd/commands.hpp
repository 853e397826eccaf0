// ntd/commands.hpp

// Copyright 2026  The ntd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// The command-line operations as library calls. Each command writes its
// outputs and a manifest.json into the output directory; `replay` re-runs a
// command from its manifest alone.
//
// Output layout:
//   decompose  W.mat H.mat Q.mat core.t3 loss_trace.txt manifest.json
//   pipeline   the decompose files plus tfb.t3 novelty.txt
//              boundary_bars.txt boundaries.txt
//   eval       eval_<tol>.txt eval_<tol>.json per tolerance, manifest.json
//   bench      bench.tsv manifest.json

#ifndef NTD_COMMANDS_HPP_
#define NTD_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ntd/segmentation.hpp"
#include "ntd/solver.hpp"
#include "ntd/tfb.hpp"

namespace ntd {

inline constexpr const char* kVersion = "0.1.0";

namespace cmd {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kArgumentError = 2,
  kParseError = 3,
  kDomainError = 4,
};

struct DecomposeOptions {
  fs::path tensor;
  // Directory holding W.mat, H.mat, Q.mat and core.t3 to start from.
  std::optional<fs::path> init_dir;
  SolverConfig solver;
  fs::path out;
};

struct MelOptions {
  Index n_filters = 80;
  double f_min = 80.0;
  double f_max = 16000.0;
  double sample_rate = 44100.0;
  Index n_fft = 2048;
};

enum class Feature { kMel, kNnlms };
// Whether the spectrogram file holds STFT power bins or Mel bands already.
enum class InputKind { kPower, kMel };

struct PipelineOptions {
  fs::path spectrogram;
  fs::path bars;
  Feature feature = Feature::kNnlms;
  InputKind input = InputKind::kPower;
  MelOptions mel;
  Index frames_per_bar = 96;
  SolverConfig solver{.max_iters = 1000};
  SegmentParams segment;
  fs::path out;
};

struct EvalOptions {
  fs::path est;
  fs::path ref;
  std::vector<double> tolerances{0.5, 3.0};
  bool trim_endpoints = true;
  fs::path out;
};

struct BenchOptions {
  Dims3 dims{80, 96, 100};
  Dims3 core_dims{32, 32, 32};
  std::vector<double> betas{1.0};
  std::size_t iters = 5;
  std::uint64_t seed = 0;
  bool allow_naive = false;
  fs::path out;
};

struct PipelineResult {
  Tensor3 tfb;
  SolveResult solve;
  std::vector<double> novelty;
  std::vector<Index> boundary_bars;
  std::vector<double> boundaries;
};

struct BenchRow {
  double beta = 0.0;
  std::string impl;  // "mu" or "naive"
  std::size_t iters = 0;
  double mean_seconds = 0.0;
  double min_seconds = 0.0;
  double final_loss = 0.0;
  // Largest relative per-iteration loss gap to the "mu" row; naive rows only.
  std::optional<double> max_rel_loss_gap;
};

SolveResult run_decompose(const DecomposeOptions& opts);
PipelineResult run_pipeline(const PipelineOptions& opts);
std::vector<EvalReport> run_eval(const EvalOptions& opts);
std::vector<BenchRow> run_bench(const BenchOptions& opts);
// Re-runs the command recorded in `manifest`, into `out` when given.
void run_replay(const fs::path& manifest, std::optional<fs::path> out);

// Parses argv-style arguments (without the program name), runs the command
// and maps errors to ExitCode values. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// "J,K,L" -> Dims3, and "a,b,c" -> list of reals.
Dims3 parse_dims(const std::string& text);
std::vector<double> parse_list(const std::string& text);

}  // namespace cmd
}  // namespace ntd

#endif  // NTD_COMMANDS_HPP_
