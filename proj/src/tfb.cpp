// src/tfb.cpp

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

#include "ntd/tfb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ntd/errors.hpp"

namespace ntd {

void Spectrogram::validate() const {
  if (!(hop_seconds > 0.0) || !std::isfinite(hop_seconds))
    throw ArgumentError("spectrogram hop must be positive");
  if (data.size() == 0) throw ArgumentError("spectrogram is empty");
  if (!data.allFinite()) throw ArgumentError("spectrogram has non-finite entries");
  if (data.minCoeff() < 0.0)
    throw ArgumentError("spectrogram has negative entries");
}

BarGrid::BarGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2)
    throw ArgumentError("bar grid needs at least two boundaries");
  if (!std::isfinite(times_.front()) || times_.front() < 0.0)
    throw ArgumentError("first bar boundary must be a finite time >= 0");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!std::isfinite(times_[i]) || !(times_[i] > times_[i - 1]))
      throw ArgumentError("bar boundaries must be strictly increasing (index " +
                          std::to_string(i) + ")");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelBank mel_filterbank(Index n_filters, double f_min, double f_max,
                       double sample_rate, Index n_fft) {
  if (n_filters < 1) throw ArgumentError("n_filters must be >= 1");
  if (n_fft < 2) throw ArgumentError("n_fft must be >= 2");
  if (!(sample_rate > 0.0)) throw ArgumentError("sample rate must be positive");
  if (!(f_min >= 0.0) || !(f_min < f_max) || f_max > sample_rate / 2.0)
    throw ArgumentError("mel bank needs 0 <= f_min < f_max <= sample_rate/2");

  MelBank bank{n_filters, f_min, f_max, sample_rate, n_fft, {}, {}};
  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  const Index n_edges = n_filters + 2;
  bank.edges_hz.resize(static_cast<std::size_t>(n_edges));
  for (Index i = 0; i < n_edges; ++i)
    bank.edges_hz[static_cast<std::size_t>(i)] = mel_to_hz(
        mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                     static_cast<double>(n_edges - 1));
  // Pin the outer edges against round-off in the mel round trip.
  bank.edges_hz.front() = f_min;
  bank.edges_hz.back() = f_max;

  const Index n_bins = n_fft / 2 + 1;
  const double bin_hz = sample_rate / static_cast<double>(n_fft);
  bank.weights = Matrix::Zero(n_filters, n_bins);
  for (Index m = 0; m < n_filters; ++m) {
    const double left = bank.edges_hz[static_cast<std::size_t>(m)];
    const double center = bank.edges_hz[static_cast<std::size_t>(m + 1)];
    const double right = bank.edges_hz[static_cast<std::size_t>(m + 2)];
    for (Index k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * bin_hz;
      double w = 0.0;
      if (f > left && f <= center)
        w = (f - left) / (center - left);
      else if (f > center && f < right)
        w = (right - f) / (right - center);
      bank.weights(m, k) = w;
    }
  }
  return bank;
}

Spectrogram apply_mel(const Spectrogram& spec, const MelBank& bank) {
  spec.validate();
  if (spec.bands() != bank.weights.cols())
    throw ArgumentError("spectrogram has " + std::to_string(spec.bands()) +
                        " bands, mel bank expects " +
                        std::to_string(bank.weights.cols()));
  return {bank.weights * spec.data, spec.hop_seconds};
}

Spectrogram nnlms(const Spectrogram& spec) {
  spec.validate();
  return {spec.data.array().log1p().matrix(), spec.hop_seconds};
}

Tensor3 build_tfb(const Spectrogram& spec, const BarGrid& bars,
                  Index frames_per_bar) {
  spec.validate();
  if (frames_per_bar < 1) throw ArgumentError("frames_per_bar must be >= 1");
  const auto& times = bars.times();
  const double hop = spec.hop_seconds;
  const double span = spec.duration();
  const Index n_bars = bars.bar_count();

  // Bar edges more than this past the last frame are rejected; the slack
  // absorbs decimal round-off in boundary files.
  const double slack = 1e-9 * std::max(1.0, span);
  Tensor3 out(Dims3{spec.bands(), frames_per_bar, n_bars});
  for (Index b = 0; b < n_bars; ++b) {
    const double start = times[static_cast<std::size_t>(b)];
    const double end = times[static_cast<std::size_t>(b + 1)];
    if (end > span + slack)
      throw ArgumentError("bar " + std::to_string(b) + " ends at " +
                          std::to_string(end) +
                          " s, past the spectrogram end " +
                          std::to_string(span) + " s");
    if (end - start < hop * (1.0 - 1e-9))
      throw ArgumentError("bar " + std::to_string(b) +
                          " is shorter than one hop");
    const double start_frames = start / hop;
    const double step_frames = (end - start) / hop /
                               static_cast<double>(frames_per_bar);
    for (Index i = 0; i < frames_per_bar; ++i) {
      const double pos =
          start_frames + (static_cast<double>(i) + 0.5) * step_frames;
      const Index frame = std::clamp<Index>(static_cast<Index>(std::floor(pos)),
                                            0, spec.frames() - 1);
      for (Index band = 0; band < spec.bands(); ++band)
        out(band, i, b) = spec.data(band, frame);
    }
  }
  return out;
}

}  // namespace ntd
