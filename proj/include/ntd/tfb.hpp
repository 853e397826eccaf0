// ntd/tfb.hpp

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

// Time-frequency-bar tensors: a spectrogram cut at bar boundaries, each bar
// resampled to a fixed number of frames and stacked along the third mode.

#ifndef NTD_TFB_HPP_
#define NTD_TFB_HPP_

#include <vector>

#include "ntd/tensor.hpp"

namespace ntd {

// Nonnegative bands x frames power (or Mel) spectrogram. Frame f covers
// [f * hop, (f + 1) * hop) seconds.
struct Spectrogram {
  Matrix data;
  double hop_seconds = 0.0;

  Index bands() const { return data.rows(); }
  Index frames() const { return data.cols(); }
  double duration() const { return static_cast<double>(frames()) * hop_seconds; }
  // Throws ArgumentError on negative or non-finite data, or hop <= 0.
  void validate() const;
};

// Bar boundary times in seconds; bar b spans [times[b], times[b + 1]).
class BarGrid {
 public:
  // Requires at least two strictly increasing, finite times, the first >= 0.
  explicit BarGrid(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  Index bar_count() const { return static_cast<Index>(times_.size()) - 1; }

 private:
  std::vector<double> times_;
};

struct MelBank {
  Index n_filters = 0;
  double f_min = 0.0;
  double f_max = 0.0;
  double sample_rate = 0.0;
  Index n_fft = 0;
  // n_filters x (n_fft / 2 + 1).
  Matrix weights;
  // Hz, n_filters + 2 entries: lower edge, the n_filters centers, upper edge.
  std::vector<double> edges_hz;

  double center_hz(Index filter) const { return edges_hz[filter + 1]; }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Peak-one triangular filters whose edges and centers are equally spaced on
// the mel scale 2595 log10(1 + f / 700) between f_min and f_max. Filter i
// rises from edge i to its center and falls to zero at edge i + 2; bins are
// at k * sample_rate / n_fft.
MelBank mel_filterbank(Index n_filters, double f_min, double f_max,
                       double sample_rate, Index n_fft);

// weights * spec.data; time axis unchanged.
Spectrogram apply_mel(const Spectrogram& spec, const MelBank& bank);

// log(x + 1) entrywise.
Spectrogram nnlms(const Spectrogram& spec);

// Bands x frames_per_bar x bar_count tensor. Bar b is sampled at
// times[b] + (i + 0.5) * (times[b + 1] - times[b]) / frames_per_bar and each
// sample takes the frame whose interval contains it.
Tensor3 build_tfb(const Spectrogram& spec, const BarGrid& bars,
                  Index frames_per_bar = 96);

}  // namespace ntd

#endif  // NTD_TFB_HPP_
