// src/cli.cpp

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

#include <algorithm>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "ntd/commands.hpp"
#include "ntd/errors.hpp"

namespace ntd::cmd {

namespace {

// Flag values kept as strings until the subcommand runs, so that malformed
// values surface as ArgumentError with our own wording.
struct SolverFlags {
  double beta = 1.0;
  std::string core_dims;
  double epsilon = 1e-12;
  std::size_t max_iters = 100;
  double rel_tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t loss_period = 1;
  bool clamp_data = false;

  void add_to(CLI::App* app, bool core_required) {
    app->add_option("--beta", beta, "beta-divergence parameter")
        ->capture_default_str();
    auto* core = app->add_option("--core-dims", core_dims,
                                 "core dimensions J',K',L'");
    if (core_required) core->required();
    app->add_option("--epsilon", epsilon, "lower clamp for all entries")
        ->capture_default_str();
    app->add_option("--max-iters", max_iters, "iteration budget")
        ->capture_default_str();
    app->add_option("--rel-tol", rel_tol,
                    "stop when the relative loss decrease falls below this")
        ->capture_default_str();
    app->add_option("--seed", seed, "random initialization seed")
        ->capture_default_str();
    app->add_option("--loss-period", loss_period,
                    "evaluate the loss every N iterations")
        ->capture_default_str();
    app->add_flag("--clamp-data", clamp_data,
                  "clamp data entries below epsilon up to epsilon");
  }

  SolverConfig config() const {
    SolverConfig c;
    c.beta = Beta(beta);
    c.core_dims = parse_dims(core_dims);
    c.epsilon = epsilon;
    c.max_iters = max_iters;
    c.rel_tol = rel_tol;
    c.seed = seed;
    c.loss_eval_period = loss_period;
    c.clamp_data = clamp_data;
    c.validate();
    return c;
  }
};

void print_reports(std::ostream& out, const std::vector<EvalReport>& reports) {
  for (const EvalReport& r : reports) {
    out << "tolerance=" << r.tolerance << " P=" << r.precision
        << " R=" << r.recall << " F=" << r.f_measure << " hits=" << r.hits;
    if (r.warning) out << " warning=\"" << r.warning_message << '"';
    out << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Nonnegative Tucker decomposition with beta-divergence", "ntd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // decompose
  auto* dec = app.add_subcommand("decompose", "factorize an NTD-T3 tensor");
  DecomposeOptions dec_opts;
  SolverFlags dec_flags;
  std::string dec_init;
  dec->add_option("tensor", dec_opts.tensor, "input tensor file")->required();
  dec->add_option("--init", dec_init,
                  "directory with W.mat, H.mat, Q.mat, core.t3 to start from");
  dec->add_option("--out", dec_opts.out, "output directory")->required();
  dec_flags.add_to(dec, true);

  // pipeline
  auto* pipe = app.add_subcommand(
      "pipeline", "spectrogram + bars -> bar tensor -> NTD -> boundaries");
  PipelineOptions pipe_opts;
  SolverFlags pipe_flags;
  pipe_flags.max_iters = 1000;
  std::string feature = "nnlms";
  std::string input_kind = "power";
  pipe->add_option("spectrogram", pipe_opts.spectrogram, "ntd-spec file")
      ->required();
  pipe->add_option("bars", pipe_opts.bars, "bar boundary times file")
      ->required();
  pipe->add_option("--feature", feature, "mel or nnlms")
      ->check(CLI::IsMember({"mel", "nnlms"}))
      ->capture_default_str();
  pipe->add_option("--input", input_kind,
                   "power (STFT bins, Mel bank applied) or mel (already Mel)")
      ->check(CLI::IsMember({"power", "mel"}))
      ->capture_default_str();
  pipe->add_option("--frames-per-bar", pipe_opts.frames_per_bar)
      ->capture_default_str();
  pipe->add_option("--n-mels", pipe_opts.mel.n_filters)->capture_default_str();
  pipe->add_option("--f-min", pipe_opts.mel.f_min)->capture_default_str();
  pipe->add_option("--f-max", pipe_opts.mel.f_max)->capture_default_str();
  pipe->add_option("--sample-rate", pipe_opts.mel.sample_rate)
      ->capture_default_str();
  pipe->add_option("--n-fft", pipe_opts.mel.n_fft)->capture_default_str();
  pipe->add_option("--kernel-half-width", pipe_opts.segment.kernel_half_width)
      ->capture_default_str();
  pipe->add_option("--peak-threshold", pipe_opts.segment.peak_threshold)
      ->capture_default_str();
  pipe->add_option("--min-peak", pipe_opts.segment.min_peak)
      ->capture_default_str();
  pipe->add_option("--out", pipe_opts.out, "output directory")->required();
  pipe_flags.add_to(pipe, true);

  // eval
  auto* ev = app.add_subcommand("eval", "score boundaries against a reference");
  EvalOptions ev_opts;
  std::string tolerances = "0.5,3.0";
  bool keep_endpoints = false;
  ev->add_option("est", ev_opts.est, "estimated boundaries file")->required();
  ev->add_option("ref", ev_opts.ref, "reference boundaries file")->required();
  ev->add_option("--tolerances", tolerances, "comma-separated seconds")
      ->capture_default_str();
  ev->add_flag("--keep-endpoints", keep_endpoints,
               "score the first and last boundary too");
  ev->add_option("--out", ev_opts.out, "output directory")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "time MU iterations");
  BenchOptions bench_opts;
  std::string bench_dims = "80,96,100";
  std::string bench_core = "32,32,32";
  std::string bench_betas = "1";
  bench->add_option("--dims", bench_dims, "data dimensions J,K,L")
      ->capture_default_str();
  bench->add_option("--core-dims", bench_core, "core dimensions")
      ->capture_default_str();
  bench->add_option("--betas", bench_betas, "comma-separated beta values")
      ->capture_default_str();
  bench->add_option("--iters", bench_opts.iters)->capture_default_str();
  bench->add_option("--seed", bench_opts.seed)->capture_default_str();
  bench->add_flag("--allow-naive", bench_opts.allow_naive,
                  "also time the Kronecker-materializing reference");
  bench->add_option("--out", bench_opts.out, "output directory")->required();

  // replay
  auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");
  std::string manifest;
  std::string replay_out;
  replay->add_option("manifest", manifest, "manifest.json")->required();
  replay->add_option("--out", replay_out, "output directory override");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kArgumentError;
  }

  try {
    if (dec->parsed()) {
      dec_opts.solver = dec_flags.config();
      if (!dec_init.empty()) dec_opts.init_dir = dec_init;
      const SolveResult r = run_decompose(dec_opts);
      out << "iterations=" << r.trace.iterations.back()
          << " loss=" << r.trace.losses.back() << '\n';
    } else if (pipe->parsed()) {
      pipe_opts.solver = pipe_flags.config();
      pipe_opts.feature = feature == "mel" ? Feature::kMel : Feature::kNnlms;
      pipe_opts.input = input_kind == "mel" ? InputKind::kMel : InputKind::kPower;
      const PipelineResult r = run_pipeline(pipe_opts);
      out << "boundaries:";
      for (double t : r.boundaries) out << ' ' << t;
      out << '\n';
    } else if (ev->parsed()) {
      ev_opts.tolerances = parse_list(tolerances);
      ev_opts.trim_endpoints = !keep_endpoints;
      print_reports(out, run_eval(ev_opts));
    } else if (bench->parsed()) {
      bench_opts.dims = parse_dims(bench_dims);
      bench_opts.core_dims = parse_dims(bench_core);
      bench_opts.betas = parse_list(bench_betas);
      for (const BenchRow& r : run_bench(bench_opts))
        out << "beta=" << r.beta << ' ' << r.impl << " mean_s=" << r.mean_seconds
            << " min_s=" << r.min_seconds << '\n';
    } else if (replay->parsed()) {
      std::optional<fs::path> dest;
      if (!replay_out.empty()) dest = replay_out;
      run_replay(manifest, dest);
    }
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kArgumentError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kDomainError;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kParseError;
  }
  return kOk;
}

}  // namespace ntd::cmd
