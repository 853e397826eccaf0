// tests/test_io.cpp

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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ntd/errors.hpp"
#include "ntd/io.hpp"
#include "ntd/tfb.hpp"
#include "oracles.hpp"

using namespace ntd;

namespace {

template <class Fn>
std::size_t parse_error_line(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("tensor text uses C order") {
  std::istringstream in("ntd-t3 2 2 2\n0 1 2 3\n4 5 6 7\n");
  const Tensor3 t = io::read_tensor(in);
  CHECK(t.dims() == Dims3{2, 2, 2});
  for (Index j = 0; j < 2; ++j)
    for (Index k = 0; k < 2; ++k)
      for (Index l = 0; l < 2; ++l) CHECK(t(j, k, l) == double(4 * j + 2 * k + l));
}

TEST_CASE("tensor round trip is exact") {
  oracle::Rng rng(1);
  const Tensor3 t = rng.tensor(Dims3{3, 4, 5}, 0.0, 1e3);
  std::stringstream buf;
  io::write_tensor(buf, t);
  CHECK(io::read_tensor(buf) == t);
}

TEST_CASE("tensor reader rejects bad values with line numbers") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return io::read_tensor(in);
  };
  CHECK(parse_error_line([&] { read("ntd-t3 1 1 2\n1\nnan\n"); }) == 3);
  CHECK(parse_error_line([&] { read("ntd-t3 1 1 2\n1\ninf\n"); }) == 3);
  CHECK(parse_error_line([&] { read("ntd-t3 1 1 2\n# note\n-1 2\n"); }) == 3);
  CHECK(parse_error_line([&] { read("ntd-t3 1 1 2\n1 abc\n"); }) == 2);
  CHECK(parse_error_line([&] { read("ntd-t3 1 1 2\n1\n"); }) > 0);
  CHECK(parse_error_line([&] { read("ntd-t3 1 1 1\n1 2\n"); }) == 2);
  CHECK(parse_error_line([&] { read("ntd-t3 0 1 1\n"); }) == 1);
  CHECK(parse_error_line([&] { read("tensor 1 1 1\n1\n"); }) == 1);
  CHECK_THROWS_AS(read(""), ParseError);
}

TEST_CASE("matrix round trip and sign policy") {
  oracle::Rng rng(2);
  const Matrix m = rng.matrix(3, 4, 0.0, 5.0);
  std::stringstream buf;
  io::write_matrix(buf, m);
  CHECK(io::read_matrix(buf) == m);

  std::istringstream neg("ntd-mat 1 2\n1 -2\n");
  CHECK_THROWS_AS(io::read_matrix(neg), ParseError);
  std::istringstream neg2("ntd-mat 1 2\n1 -2\n");
  CHECK(io::read_matrix(neg2, false)(0, 1) == -2.0);
}

TEST_CASE("spectrogram round trip and validation") {
  oracle::Rng rng(3);
  Spectrogram s{rng.matrix(4, 6), 0.01};
  std::stringstream buf;
  io::write_spectrogram(buf, s);
  const Spectrogram r = io::read_spectrogram(buf);
  CHECK(r.data == s.data);
  CHECK(r.hop_seconds == s.hop_seconds);

  std::istringstream bad_hop("ntd-spec v1 1 1 0\n1\n");
  CHECK_THROWS_AS(io::read_spectrogram(bad_hop), ParseError);
  std::istringstream bad_version("ntd-spec v2 1 1 0.1\n1\n");
  CHECK_THROWS_AS(io::read_spectrogram(bad_version), ParseError);
}

TEST_CASE("times files") {
  std::istringstream ok("0\n1.5\n# comment\n\n3.25\n");
  CHECK(io::read_times(ok) == std::vector<double>{0.0, 1.5, 3.25});
  std::istringstream empty("");
  CHECK(io::read_times(empty).empty());
  std::istringstream unsorted("0\n2\n1\n");
  CHECK(parse_error_line([&] { io::read_times(unsorted); }) == 3);
  std::istringstream dup("0\n2\n2\n");
  CHECK(parse_error_line([&] { io::read_times(dup); }) == 3);

  const std::vector<double> t{0.0, 0.1, 1.0 / 3.0};
  std::stringstream buf;
  io::write_times(buf, t);
  CHECK(io::read_times(buf) == t);
}

TEST_CASE("file errors carry the path and keep the line") {
  const auto dir = std::filesystem::temp_directory_path() / "ntd_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "bad.t3";
  {
    std::ofstream out(path);
    out << "ntd-t3 1 1 1\n-4\n";
  }
  try {
    io::read_tensor(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("bad.t3") != std::string::npos);
  }
  CHECK_THROWS_AS(io::read_tensor(dir / "missing.t3"), ParseError);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
