// tests/fixtures.cpp

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


#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "ntd/io.hpp"

namespace fixture {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ntd_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Sections sectioned_spectrogram(const SectionSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> jitter(-spec.noise, spec.noise);

  int n_labels = 0;
  for (int label : spec.section_labels) n_labels = std::max(n_labels, label + 1);
  std::vector<ntd::Matrix> templates;
  for (int i = 0; i < n_labels; ++i) {
    ntd::Matrix t(spec.bands, spec.frames_per_bar);
    for (ntd::Index c = 0; c < t.cols(); ++c)
      for (ntd::Index r = 0; r < t.rows(); ++r) t(r, c) = 10.0 * unit(rng);
    templates.push_back(t);
  }

  const auto n_sections = static_cast<ntd::Index>(spec.section_labels.size());
  const ntd::Index n_bars = n_sections * spec.bars_per_section;
  Sections out;
  out.spectrogram.hop_seconds = spec.hop_seconds;
  out.spectrogram.data.resize(spec.bands, n_bars * spec.frames_per_bar);
  for (ntd::Index bar = 0; bar < n_bars; ++bar) {
    const int label = spec.section_labels[bar / spec.bars_per_section];
    for (ntd::Index c = 0; c < spec.frames_per_bar; ++c)
      for (ntd::Index r = 0; r < spec.bands; ++r)
        out.spectrogram.data(r, bar * spec.frames_per_bar + c) =
            templates[label](r, c) * (1.0 + jitter(rng));
  }
  const double bar_seconds =
      static_cast<double>(spec.frames_per_bar) * spec.hop_seconds;
  for (ntd::Index bar = 0; bar <= n_bars; ++bar)
    out.bar_times.push_back(static_cast<double>(bar) * bar_seconds);
  for (ntd::Index s = 1; s < n_sections; ++s)
    if (spec.section_labels[s] != spec.section_labels[s - 1])
      out.seams.push_back(s * spec.bars_per_section);
  return out;
}

void write_sections(const Sections& s, const fs::path& dir) {
  ntd::io::write_spectrogram(dir / "spectrogram.spec", s.spectrogram);
  ntd::io::write_times(dir / "bars.txt", s.bar_times);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixture
