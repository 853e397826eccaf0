// ntd/io.hpp

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

// Text file formats. All readers raise ParseError with a line number.
//
//   tensor        "ntd-t3 J K L" then J*K*L values, C order (l fastest)
//   matrix        "ntd-mat ROWS COLS" then ROWS*COLS values, row-major
//   spectrogram   "ntd-spec v1 BANDS FRAMES HOP_SECONDS" then BANDS*FRAMES
//                 values, row-major (one band per line when written)
//   time list     one time in seconds per line, strictly increasing
//
// Values are whitespace separated and may span any number of lines. Blank
// lines and lines starting with '#' are skipped. Writers use 17 significant
// digits so a write/read cycle is exact.

#ifndef NTD_IO_HPP_
#define NTD_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ntd/tensor.hpp"

namespace ntd {

struct Spectrogram;

namespace io {

Tensor3 read_tensor(std::istream& in);
Tensor3 read_tensor(const std::filesystem::path& path);
void write_tensor(std::ostream& out, const Tensor3& t);
void write_tensor(const std::filesystem::path& path, const Tensor3& t);

// Matrices may hold any finite value; `nonnegative` rejects negatives.
Matrix read_matrix(std::istream& in, bool nonnegative = true);
Matrix read_matrix(const std::filesystem::path& path, bool nonnegative = true);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

Spectrogram read_spectrogram(std::istream& in);
Spectrogram read_spectrogram(const std::filesystem::path& path);
void write_spectrogram(std::ostream& out, const Spectrogram& s);
void write_spectrogram(const std::filesystem::path& path, const Spectrogram& s);

// An empty file yields an empty list. Unsorted or repeated times raise
// ParseError naming the offending line.
std::vector<double> read_times(std::istream& in);
std::vector<double> read_times(const std::filesystem::path& path);
void write_times(std::ostream& out, const std::vector<double>& times);
void write_times(const std::filesystem::path& path,
                 const std::vector<double>& times);

}  // namespace io
}  // namespace ntd

#endif  // NTD_IO_HPP_
