// src/segmentation.cpp

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

#include "ntd/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ntd/errors.hpp"

namespace ntd {

namespace {

void check_sorted(std::span<const double> times, const char* what) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]))
      throw ArgumentError(std::string(what) + " boundaries must be finite");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw ArgumentError(std::string(what) +
                          " boundaries must be strictly increasing");
  }
}

std::span<const double> trimmed(std::span<const double> times) {
  if (times.size() <= 2) return {};
  return times.subspan(1, times.size() - 2);
}

}  // namespace

Matrix bar_autosimilarity(const Matrix& q) {
  Eigen::VectorXd norms = q.rowwise().norm();
  Matrix normalized = q;
  for (Index r = 0; r < q.rows(); ++r) {
    if (norms(r) > 0.0)
      normalized.row(r) /= norms(r);
    else
      normalized.row(r).setZero();
  }
  Matrix sim = normalized * normalized.transpose();
  // Exact symmetry and unit diagonal, independent of GEMM rounding.
  for (Index r = 0; r < sim.rows(); ++r) {
    sim(r, r) = norms(r) > 0.0 ? 1.0 : 0.0;
    for (Index c = r + 1; c < sim.cols(); ++c) sim(c, r) = sim(r, c);
  }
  return sim;
}

std::vector<double> novelty_curve(const Matrix& sim, Index kernel_half_width) {
  const Index n = sim.rows();
  std::vector<double> curve(static_cast<std::size_t>(n + 1), 0.0);
  for (Index i = 1; i < n; ++i) {
    const Index w = std::min({kernel_half_width, i, n - i});
    double acc = 0.0;
    for (Index u = -w; u < w; ++u) {
      for (Index v = -w; v < w; ++v) {
        const double sign = ((u < 0) == (v < 0)) ? 1.0 : -1.0;
        acc += sign * sim(i + u, i + v);
      }
    }
    curve[static_cast<std::size_t>(i)] =
        acc / static_cast<double>(4 * w * w);
  }
  return curve;
}

std::vector<Index> segment_bars(const Matrix& sim, const SegmentParams& params) {
  const Index n = sim.rows();
  if (n < 1 || sim.cols() != n)
    throw ArgumentError("similarity matrix must be square and non-empty");
  if (params.kernel_half_width < 1)
    throw ArgumentError("kernel_half_width must be >= 1");
  if (2 * params.kernel_half_width > n)
    throw ArgumentError("kernel of width " +
                        std::to_string(2 * params.kernel_half_width) +
                        " is wider than the " + std::to_string(n) +
                        "-bar similarity matrix");
  const double scale = sim.cwiseAbs().maxCoeff();
  if (!((sim - sim.transpose()).cwiseAbs().maxCoeff() <=
        1e-9 * std::max(scale, 1e-300)))
    throw ArgumentError("similarity matrix must be symmetric");

  const std::vector<double> curve = novelty_curve(sim, params.kernel_half_width);
  double mean = 0.0;
  if (n > 1)
    mean = std::accumulate(curve.begin() + 1, curve.end() - 1, 0.0) /
           static_cast<double>(n - 1);
  const double floor =
      std::max(params.peak_threshold * mean, params.min_peak * scale);

  std::vector<Index> out{0};
  for (Index i = 1; i < n; ++i) {
    const double c = curve[static_cast<std::size_t>(i)];
    const bool rising = c > curve[static_cast<std::size_t>(i - 1)];
    const bool not_falling_next = c >= curve[static_cast<std::size_t>(i + 1)];
    if (rising && not_falling_next && c > floor && c > 0.0) out.push_back(i);
  }
  out.push_back(n);
  return out;
}

std::vector<double> bars_to_seconds(std::span<const Index> boundaries,
                                    const BarGrid& bars) {
  std::vector<double> out;
  out.reserve(boundaries.size());
  for (Index b : boundaries) {
    if (b < 0 || b > bars.bar_count())
      throw ArgumentError("bar index " + std::to_string(b) +
                          " outside [0, " + std::to_string(bars.bar_count()) +
                          "]");
    out.push_back(bars.times()[static_cast<std::size_t>(b)]);
  }
  return out;
}

std::size_t count_hits(std::span<const double> est, std::span<const double> ref,
                       double tolerance) {
  // With equal-width windows, scanning both lists in order and pairing
  // greedily at the first feasible pair yields a maximum matching.
  std::size_t hits = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < est.size() && j < ref.size()) {
    if (std::abs(est[i] - ref[j]) <= tolerance) {
      ++hits;
      ++i;
      ++j;
    } else if (est[i] < ref[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return hits;
}

EvalReport evaluate_boundaries(std::span<const double> est,
                               std::span<const double> ref, double tolerance,
                               bool trim_endpoints) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance))
    throw ArgumentError("tolerance must be positive");
  check_sorted(est, "estimated");
  check_sorted(ref, "reference");
  if (trim_endpoints) {
    est = trimmed(est);
    ref = trimmed(ref);
  }

  EvalReport r;
  r.tolerance = tolerance;
  r.trimmed = trim_endpoints;
  r.est_count = est.size();
  r.ref_count = ref.size();
  r.hits = count_hits(est, ref, tolerance);
  if (est.empty() || ref.empty()) {
    r.warning = true;
    r.warning_message = est.empty() && ref.empty()
                            ? "no estimated and no reference boundaries"
                            : (est.empty() ? "no estimated boundaries"
                                           : "no reference boundaries");
  }
  if (!est.empty())
    r.precision = static_cast<double>(r.hits) / static_cast<double>(est.size());
  if (!ref.empty())
    r.recall = static_cast<double>(r.hits) / static_cast<double>(ref.size());
  if (r.precision + r.recall > 0.0)
    r.f_measure = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

std::string to_key_value(const EvalReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "precision=" << report.precision << '\n'
      << "recall=" << report.recall << '\n'
      << "f_measure=" << report.f_measure << '\n'
      << "tolerance=" << report.tolerance << '\n'
      << "hits=" << report.hits << '\n'
      << "est_count=" << report.est_count << '\n'
      << "ref_count=" << report.ref_count << '\n'
      << "trimmed=" << (report.trimmed ? "true" : "false") << '\n'
      << "warning=" << (report.warning ? report.warning_message : "") << '\n';
  return out.str();
}

std::string to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f_measure"] = report.f_measure;
  j["tolerance"] = report.tolerance;
  j["hits"] = report.hits;
  j["est_count"] = report.est_count;
  j["ref_count"] = report.ref_count;
  j["trimmed"] = report.trimmed;
  j["warning"] = report.warning ? nlohmann::ordered_json(report.warning_message)
                                : nlohmann::ordered_json(nullptr);
  return j.dump(2);
}

}  // namespace ntd
