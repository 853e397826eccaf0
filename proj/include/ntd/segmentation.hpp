// ntd/segmentation.hpp

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

// Bar-level segmentation from the bar factor Q and boundary scoring.
//
// Segmentation is a checkerboard-kernel novelty detector run along the
// diagonal of the cosine autosimilarity of the rows of Q.

#ifndef NTD_SEGMENTATION_HPP_
#define NTD_SEGMENTATION_HPP_

#include <span>
#include <string>
#include <vector>

#include "ntd/tensor.hpp"
#include "ntd/tfb.hpp"

namespace ntd {

// L x L cosine similarity between rows of q. Rows with zero norm have zero
// similarity to everything, themselves included.
Matrix bar_autosimilarity(const Matrix& q);

struct SegmentParams {
  // Bars on each side of a candidate boundary covered by the kernel.
  Index kernel_half_width = 4;
  // A peak must exceed this multiple of the mean novelty.
  double peak_threshold = 1.0;
  // ... and this fraction of the largest |similarity|.
  double min_peak = 0.01;
};

// Novelty at every boundary position 0..L (position i separates bars i-1
// and i). Each position uses the largest symmetric window that fits, at most
// kernel_half_width bars per side, normalized by its entry count; the two
// ends are 0. For similarities in [0, 1] values lie in [-1/2, 1/2].
std::vector<double> novelty_curve(const Matrix& sim, Index kernel_half_width);

// Sorted bar indices of the boundaries, always including 0 and L.
// Throws ArgumentError for a non-square or asymmetric matrix, or a kernel
// wider than the matrix.
std::vector<Index> segment_bars(const Matrix& sim, const SegmentParams& params);

// Maps bar index b to bars.times()[b].
std::vector<double> bars_to_seconds(std::span<const Index> boundaries,
                                    const BarGrid& bars);

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double tolerance = 0.0;
  std::size_t hits = 0;
  // Counts after endpoint trimming.
  std::size_t est_count = 0;
  std::size_t ref_count = 0;
  bool trimmed = true;
  // Set when either side is empty after trimming.
  bool warning = false;
  std::string warning_message;
};

// Largest one-to-one matching between est and ref where matched times differ
// by at most `tolerance`. Both inputs must be sorted.
std::size_t count_hits(std::span<const double> est, std::span<const double> ref,
                       double tolerance);

// Precision, recall and F at `tolerance` seconds. With `trim_endpoints` the
// first and last entries of each list (track start and end) are dropped
// before matching. Inputs must be strictly increasing.
EvalReport evaluate_boundaries(std::span<const double> est,
                               std::span<const double> ref, double tolerance,
                               bool trim_endpoints = true);

// "key=value" lines.
std::string to_key_value(const EvalReport& report);
// JSON object with precision, recall, f_measure, tolerance, hits, est_count,
// ref_count, trimmed, warning.
std::string to_json(const EvalReport& report);

}  // namespace ntd

#endif  // NTD_SEGMENTATION_HPP_
