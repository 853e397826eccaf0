// src/commands.cpp

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

#include "ntd/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "ntd/errors.hpp"
#include "ntd/io.hpp"
#include "ntd/naive.hpp"

namespace ntd {

// Serialization of the option structs, used by manifests and replay.

void to_json(nlohmann::ordered_json& j, const Dims3& d) { j = {d.j, d.k, d.l}; }

void from_json(const nlohmann::ordered_json& j, Dims3& d) {
  d = Dims3{j.at(0).get<Index>(), j.at(1).get<Index>(), j.at(2).get<Index>()};
}

void to_json(nlohmann::ordered_json& j, const SolverConfig& c) {
  j = {{"beta", c.beta.value},
       {"epsilon", c.epsilon},
       {"core_dims", c.core_dims},
       {"max_iters", c.max_iters},
       {"rel_tol", c.rel_tol},
       {"seed", c.seed},
       {"loss_eval_period", c.loss_eval_period},
       {"clamp_data", c.clamp_data}};
}

void from_json(const nlohmann::ordered_json& j, SolverConfig& c) {
  c.beta = Beta(j.at("beta").get<double>());
  c.epsilon = j.at("epsilon").get<double>();
  c.core_dims = j.at("core_dims").get<Dims3>();
  c.max_iters = j.at("max_iters").get<std::size_t>();
  c.rel_tol = j.at("rel_tol").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.loss_eval_period = j.at("loss_eval_period").get<std::size_t>();
  c.clamp_data = j.at("clamp_data").get<bool>();
}

void to_json(nlohmann::ordered_json& j, const SegmentParams& p) {
  j = {{"kernel_half_width", p.kernel_half_width},
       {"peak_threshold", p.peak_threshold},
       {"min_peak", p.min_peak}};
}

void from_json(const nlohmann::ordered_json& j, SegmentParams& p) {
  p.kernel_half_width = j.at("kernel_half_width").get<Index>();
  p.peak_threshold = j.at("peak_threshold").get<double>();
  p.min_peak = j.at("min_peak").get<double>();
}

namespace cmd {

NLOHMANN_JSON_SERIALIZE_ENUM(Feature, {{Feature::kMel, "mel"},
                                       {Feature::kNnlms, "nnlms"}})
NLOHMANN_JSON_SERIALIZE_ENUM(InputKind, {{InputKind::kPower, "power"},
                                         {InputKind::kMel, "mel"}})

void to_json(nlohmann::ordered_json& j, const MelOptions& m) {
  j = {{"n_filters", m.n_filters},
       {"f_min", m.f_min},
       {"f_max", m.f_max},
       {"sample_rate", m.sample_rate},
       {"n_fft", m.n_fft}};
}

void from_json(const nlohmann::ordered_json& j, MelOptions& m) {
  m.n_filters = j.at("n_filters").get<Index>();
  m.f_min = j.at("f_min").get<double>();
  m.f_max = j.at("f_max").get<double>();
  m.sample_rate = j.at("sample_rate").get<double>();
  m.n_fft = j.at("n_fft").get<Index>();
}

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string abs_path(const fs::path& p) { return fs::absolute(p).string(); }

void prepare_out(const fs::path& out) {
  if (out.empty()) throw ArgumentError("an output directory is required");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ArgumentError("cannot create " + out.string() + ": " +
                              ec.message());
}

void write_manifest(const fs::path& out, const std::string& command,
                    Json inputs, Json options, double wall_seconds) {
  Json m;
  m["tool"] = "ntd";
  m["version"] = kVersion;
  m["command"] = command;
  m["inputs"] = std::move(inputs);
  m["options"] = std::move(options);
  m["out"] = abs_path(out);
  m["wall_seconds"] = wall_seconds;
  std::ofstream f(out / "manifest.json");
  f << m.dump(2) << '\n';
  if (!f) throw ArgumentError("cannot write manifest in " + out.string());
}

void write_loss_trace(const fs::path& path, const LossTrace& trace) {
  std::ofstream f(path);
  f.precision(17);
  f << "# iteration loss\n";
  for (std::size_t i = 0; i < trace.losses.size(); ++i)
    f << trace.iterations[i] << ' ' << trace.losses[i] << '\n';
  if (!f) throw ArgumentError("cannot write " + path.string());
}

void write_factors(const fs::path& out, const FactorSet& f) {
  io::write_matrix(out / "W.mat", f.w);
  io::write_matrix(out / "H.mat", f.h);
  io::write_matrix(out / "Q.mat", f.q);
  io::write_tensor(out / "core.t3", f.core);
}

FactorSet read_factors(const fs::path& dir) {
  return FactorSet{io::read_matrix(dir / "W.mat"), io::read_matrix(dir / "H.mat"),
                   io::read_matrix(dir / "Q.mat"), io::read_tensor(dir / "core.t3")};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string tolerance_tag(double tol) {
  std::ostringstream s;
  s << tol;
  return s.str();
}

}  // namespace

SolveResult run_decompose(const DecomposeOptions& opts) {
  const auto start = Clock::now();
  opts.solver.validate();
  prepare_out(opts.out);
  const Tensor3 x = io::read_tensor(opts.tensor);
  std::optional<FactorSet> init;
  if (opts.init_dir) init = read_factors(*opts.init_dir);
  SolveResult result = solve(x, opts.solver, std::move(init));

  write_factors(opts.out, result.factors);
  write_loss_trace(opts.out / "loss_trace.txt", result.trace);
  Json inputs = {{"tensor", abs_path(opts.tensor)}};
  if (opts.init_dir) inputs["init_dir"] = abs_path(*opts.init_dir);
  write_manifest(opts.out, "decompose", inputs, {{"solver", opts.solver}},
                 seconds_since(start));
  return result;
}

PipelineResult run_pipeline(const PipelineOptions& opts) {
  const auto start = Clock::now();
  opts.solver.validate();
  prepare_out(opts.out);
  Spectrogram spec = io::read_spectrogram(opts.spectrogram);
  const BarGrid bars(io::read_times(opts.bars));

  if (opts.input == InputKind::kPower) {
    const MelOptions& m = opts.mel;
    spec = apply_mel(spec, mel_filterbank(m.n_filters, m.f_min, m.f_max,
                                          m.sample_rate, m.n_fft));
  }
  if (opts.feature == Feature::kNnlms) spec = nnlms(spec);

  PipelineResult r;
  r.tfb = build_tfb(spec, bars, opts.frames_per_bar);
  if (!(r.tfb.max() > 0.0))
    throw ArgumentError(
        "the bar tensor is identically zero; there is nothing to decompose "
        "(an all-epsilon fit under beta <= 1 is degenerate)");

  SolverConfig cfg = opts.solver;
  // Ingestion clamps zeros away where the divergence needs strictly
  // positive data.
  if (cfg.beta.value <= 0.0) cfg.clamp_data = true;
  // Every bar starts from the same Q row, so bars with identical content
  // keep identical rows under the updates and only data separates them.
  FactorSet init = init_factors(r.tfb.dims(), cfg);
  init.q.rowwise() = init.q.row(0).eval();
  r.solve = solve(r.tfb, cfg, std::move(init));

  const Matrix sim = bar_autosimilarity(r.solve.factors.q);
  r.novelty = novelty_curve(sim, opts.segment.kernel_half_width);
  r.boundary_bars = segment_bars(sim, opts.segment);
  r.boundaries = bars_to_seconds(r.boundary_bars, bars);

  io::write_tensor(opts.out / "tfb.t3", r.tfb);
  write_factors(opts.out, r.solve.factors);
  write_loss_trace(opts.out / "loss_trace.txt", r.solve.trace);
  {
    std::ofstream f(opts.out / "novelty.txt");
    f.precision(17);
    for (double v : r.novelty) f << v << '\n';
  }
  {
    std::ofstream f(opts.out / "boundary_bars.txt");
    for (Index b : r.boundary_bars) f << b << '\n';
  }
  io::write_times(opts.out / "boundaries.txt", r.boundaries);

  Json options = {{"feature", opts.feature},
                  {"input", opts.input},
                  {"mel", opts.mel},
                  {"frames_per_bar", opts.frames_per_bar},
                  {"solver", opts.solver},
                  {"segment", opts.segment}};
  write_manifest(opts.out, "pipeline",
                 {{"spectrogram", abs_path(opts.spectrogram)},
                  {"bars", abs_path(opts.bars)}},
                 options, seconds_since(start));
  return r;
}

std::vector<EvalReport> run_eval(const EvalOptions& opts) {
  const auto start = Clock::now();
  if (opts.tolerances.empty()) throw ArgumentError("no tolerances given");
  prepare_out(opts.out);
  const std::vector<double> est = io::read_times(opts.est);
  const std::vector<double> ref = io::read_times(opts.ref);
  std::vector<EvalReport> reports;
  for (double tol : opts.tolerances) {
    reports.push_back(evaluate_boundaries(est, ref, tol, opts.trim_endpoints));
    const std::string tag = tolerance_tag(tol);
    std::ofstream(opts.out / ("eval_" + tag + ".txt"))
        << to_key_value(reports.back());
    std::ofstream(opts.out / ("eval_" + tag + ".json"))
        << to_json(reports.back()) << '\n';
  }
  write_manifest(opts.out, "eval",
                 {{"est", abs_path(opts.est)}, {"ref", abs_path(opts.ref)}},
                 {{"tolerances", opts.tolerances},
                  {"trim_endpoints", opts.trim_endpoints}},
                 seconds_since(start));
  return reports;
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  const auto start = Clock::now();
  if (opts.iters < 1) throw ArgumentError("bench needs at least one iteration");
  if (opts.betas.empty()) throw ArgumentError("bench needs at least one beta");
  if (opts.allow_naive &&
      naive::kronecker_entries(opts.dims, opts.core_dims) >
          naive::kMaxKroneckerEntries)
    throw ArgumentError(
        "--allow-naive refused: dims " + opts.dims.str() + " with core " +
        opts.core_dims.str() + " need a " +
        std::to_string(naive::kronecker_entries(opts.dims, opts.core_dims)) +
        "-entry Kronecker operator (limit " +
        std::to_string(naive::kMaxKroneckerEntries) + ")");
  prepare_out(opts.out);

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Tensor3 x(opts.dims);
  for (double& v : x.data()) v = dist(rng);

  std::vector<BenchRow> rows;
  for (double beta : opts.betas) {
    SolverConfig cfg;
    cfg.beta = Beta(beta);
    cfg.core_dims = opts.core_dims;
    cfg.max_iters = opts.iters;
    cfg.rel_tol = 0.0;
    cfg.seed = opts.seed;
    // beta <= 0 needs strictly positive data.
    cfg.clamp_data = beta <= 0.0;
    const FactorSet init = init_factors(opts.dims, cfg);
    const SolveResult mu = solve(x, cfg, init);

    BenchRow row{beta, "mu", mu.trace.iter_times.size(), 0.0, 0.0,
                 mu.trace.losses.back(), std::nullopt};
    const auto& t = mu.trace.iter_times;
    row.mean_seconds =
        std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
    row.min_seconds = *std::min_element(t.begin(), t.end());
    rows.push_back(row);

    if (!opts.allow_naive) continue;
    const Tensor3 xc = cfg.clamp_data ? clamp_min(x, cfg.epsilon) : x;
    FactorSet f = init;
    std::vector<double> times;
    double gap = 0.0;
    double loss = 0.0;
    for (std::size_t it = 1; it <= opts.iters; ++it) {
      const auto t0 = Clock::now();
      f = naive::iterate(xc, std::move(f), cfg);
      times.push_back(seconds_since(t0));
      loss = objective(xc, f.reconstruct(), cfg.beta);
      const double ref = mu.trace.losses[it];
      gap = std::max(gap, std::abs(loss - ref) /
                              std::max(std::abs(ref),
                                       std::numeric_limits<double>::min()));
    }
    rows.push_back(BenchRow{
        beta, "naive", times.size(),
        std::accumulate(times.begin(), times.end(), 0.0) /
            static_cast<double>(times.size()),
        *std::min_element(times.begin(), times.end()), loss, gap});
  }

  std::ofstream f(opts.out / "bench.tsv");
  f.precision(10);
  f << "beta\timpl\titers\tmean_s\tmin_s\tfinal_loss\tmax_rel_loss_gap\n";
  for (const BenchRow& r : rows) {
    f << r.beta << '\t' << r.impl << '\t' << r.iters << '\t' << r.mean_seconds
      << '\t' << r.min_seconds << '\t' << r.final_loss << '\t';
    if (r.max_rel_loss_gap)
      f << *r.max_rel_loss_gap;
    else
      f << '-';
    f << '\n';
  }
  write_manifest(opts.out, "bench", Json::object(),
                 {{"dims", opts.dims},
                  {"core_dims", opts.core_dims},
                  {"betas", opts.betas},
                  {"iters", opts.iters},
                  {"seed", opts.seed},
                  {"allow_naive", opts.allow_naive}},
                 seconds_since(start));
  return rows;
}

void run_replay(const fs::path& manifest, std::optional<fs::path> out) {
  std::ifstream in(manifest);
  if (!in) throw ParseError("cannot open " + manifest.string());
  Json m;
  try {
    m = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  }
  try {
    const std::string command = m.at("command").get<std::string>();
    const Json& in_paths = m.at("inputs");
    const Json& o = m.at("options");
    const fs::path dest = out ? *out : fs::path(m.at("out").get<std::string>());
    if (command == "decompose") {
      DecomposeOptions opts;
      opts.tensor = in_paths.at("tensor").get<std::string>();
      if (in_paths.contains("init_dir"))
        opts.init_dir = in_paths.at("init_dir").get<std::string>();
      opts.solver = o.at("solver").get<SolverConfig>();
      opts.out = dest;
      run_decompose(opts);
    } else if (command == "pipeline") {
      PipelineOptions opts;
      opts.spectrogram = in_paths.at("spectrogram").get<std::string>();
      opts.bars = in_paths.at("bars").get<std::string>();
      opts.feature = o.at("feature").get<Feature>();
      opts.input = o.at("input").get<InputKind>();
      opts.mel = o.at("mel").get<MelOptions>();
      opts.frames_per_bar = o.at("frames_per_bar").get<Index>();
      opts.solver = o.at("solver").get<SolverConfig>();
      opts.segment = o.at("segment").get<SegmentParams>();
      opts.out = dest;
      run_pipeline(opts);
    } else if (command == "eval") {
      EvalOptions opts;
      opts.est = in_paths.at("est").get<std::string>();
      opts.ref = in_paths.at("ref").get<std::string>();
      opts.tolerances = o.at("tolerances").get<std::vector<double>>();
      opts.trim_endpoints = o.at("trim_endpoints").get<bool>();
      opts.out = dest;
      run_eval(opts);
    } else if (command == "bench") {
      BenchOptions opts;
      opts.dims = o.at("dims").get<Dims3>();
      opts.core_dims = o.at("core_dims").get<Dims3>();
      opts.betas = o.at("betas").get<std::vector<double>>();
      opts.iters = o.at("iters").get<std::size_t>();
      opts.seed = o.at("seed").get<std::uint64_t>();
      opts.allow_naive = o.at("allow_naive").get<bool>();
      opts.out = dest;
      run_bench(opts);
    } else {
      throw ParseError(manifest.string() + ": unknown command '" + command +
                       "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  }
}

Dims3 parse_dims(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() != 3)
    throw ArgumentError("expected three comma-separated dims, got '" + text +
                        "'");
  Dims3 d;
  Index* slots[] = {&d.j, &d.k, &d.l};
  for (std::size_t i = 0; i < 3; ++i) {
    if (v[i] < 1 || v[i] != std::floor(v[i]))
      throw ArgumentError("dims must be positive integers, got '" + text + "'");
    *slots[i] = static_cast<Index>(v[i]);
  }
  return d;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ArgumentError("invalid number '" + item + "' in '" + text + "'");
    }
    if (used != item.size() || !std::isfinite(v))
      throw ArgumentError("invalid number '" + item + "' in '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

}  // namespace cmd
}  // namespace ntd
