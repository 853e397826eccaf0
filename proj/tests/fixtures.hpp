// tests/fixtures.hpp

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


// Synthetic inputs shared by the CLI suite and the acceptance binary.

#ifndef NTD_TESTS_FIXTURES_HPP_
#define NTD_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ntd/tfb.hpp"

namespace fixture {

namespace fs = std::filesystem;

// Fresh empty directory under the system temp dir.
fs::path scratch_dir(const std::string& name);

struct SectionSpec {
  ntd::Index bands = 16;
  ntd::Index frames_per_bar = 96;  // spectrogram frames per bar
  double hop_seconds = 0.01;
  std::vector<int> section_labels{0, 1, 0, 1};
  ntd::Index bars_per_section = 8;
  double noise = 0.01;  // relative, uniform in [-noise, noise]
  std::uint64_t seed = 0;
};

// Mel-domain spectrogram whose bars repeat one random template per label,
// with multiplicative noise, and the matching bar boundary times.
struct Sections {
  ntd::Spectrogram spectrogram;
  std::vector<double> bar_times;
  std::vector<ntd::Index> seams;  // bar indices where the label changes
};
Sections sectioned_spectrogram(const SectionSpec& spec);

// Writes spectrogram.spec and bars.txt into dir.
void write_sections(const Sections& s, const fs::path& dir);

std::string read_file(const fs::path& path);

}  // namespace fixture

#endif  // NTD_TESTS_FIXTURES_HPP_
