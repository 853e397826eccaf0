// tests/test_tfb.cpp

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

#include <algorithm>
#include <cmath>
#include <set>

#include "ntd/errors.hpp"
#include "ntd/tfb.hpp"
#include "oracles.hpp"

using namespace ntd;

TEST_SUITE("tfb") {

TEST_CASE("mel scale") {
  CHECK(hz_to_mel(0.0) == 0.0);
  CHECK(hz_to_mel(700.0) == doctest::Approx(2595.0 * std::log10(2.0)));
  for (double hz : {80.0, 440.0, 1000.0, 16000.0})
    CHECK(mel_to_hz(hz_to_mel(hz)) == doctest::Approx(hz).epsilon(1e-12));
}

TEST_CASE("reference configuration") {
  const MelBank bank = mel_filterbank(80, 80.0, 16000.0, 44100.0, 2048);
  REQUIRE(bank.weights.rows() == 80);
  REQUIRE(bank.weights.cols() == 1025);
  CHECK(bank.edges_hz.front() == 80.0);
  CHECK(bank.edges_hz.back() == 16000.0);
  const double bin_hz = 44100.0 / 2048.0;

  for (Index m = 0; m < 80; ++m) {
    CAPTURE(m);
    const auto row = bank.weights.row(m);
    CHECK(row.minCoeff() >= 0.0);
    CHECK(row.maxCoeff() > 0.0);
    CHECK(row.maxCoeff() <= 1.0);
    // rises then falls: exactly one local maximum
    Index argmax = 0;
    row.maxCoeff(&argmax);
    for (Index k = 1; k <= argmax; ++k) CHECK(row(k) >= row(k - 1));
    for (Index k = argmax + 1; k < row.size(); ++k) CHECK(row(k) <= row(k - 1));
    std::size_t peaks = 0;
    for (Index k = 0; k < row.size(); ++k) {
      const double prev = k > 0 ? row(k - 1) : 0.0;
      const double next = k + 1 < row.size() ? row(k + 1) : 0.0;
      if (row(k) > 0.0 && row(k) >= prev && row(k) > next) ++peaks;
    }
    CHECK(peaks == 1);
    // zero outside the neighbouring centres, support inside [f_min, f_max]
    for (Index k = 0; k < row.size(); ++k) {
      const double f = double(k) * bin_hz;
      if (row(k) > 0.0) {
        CHECK(f > bank.edges_hz[m]);
        CHECK(f < bank.edges_hz[m + 2]);
        CHECK(f > 80.0);
        CHECK(f < 16000.0);
      }
    }
    if (m > 0) CHECK(bank.center_hz(m) > bank.center_hz(m - 1));
  }
}

TEST_CASE("filter values follow the triangle formula") {
  const MelBank bank = mel_filterbank(10, 0.0, 4000.0, 8000.0, 256);
  const double bin_hz = 8000.0 / 256.0;
  for (Index m = 0; m < 10; ++m) {
    const double lo = bank.edges_hz[m], c = bank.edges_hz[m + 1],
                 hi = bank.edges_hz[m + 2];
    for (Index k = 0; k < bank.weights.cols(); ++k) {
      const double f = double(k) * bin_hz;
      const double expected =
          std::max(0.0, std::min((f - lo) / (c - lo), (hi - f) / (hi - c)));
      CHECK(bank.weights(m, k) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("mel bank argument checks") {
  CHECK_THROWS_AS(mel_filterbank(0, 80, 16000, 44100, 2048), ArgumentError);
  CHECK_THROWS_AS(mel_filterbank(80, 16000, 80, 44100, 2048), ArgumentError);
  CHECK_THROWS_AS(mel_filterbank(80, -1, 16000, 44100, 2048), ArgumentError);
  CHECK_THROWS_AS(mel_filterbank(80, 80, 30000, 44100, 2048), ArgumentError);
}

TEST_CASE("apply_mel") {
  const MelBank bank = mel_filterbank(12, 50.0, 4000.0, 16000.0, 512);
  oracle::Rng rng(1);
  SUBCASE("zero stays zero") {
    const Spectrogram s{Matrix::Zero(257, 5), 0.01};
    CHECK(apply_mel(s, bank).data == Matrix::Zero(12, 5));
  }
  SUBCASE("single frame matches a loop") {
    const Spectrogram s{rng.matrix(257, 1), 0.01};
    const Spectrogram m = apply_mel(s, bank);
    REQUIRE(m.bands() == 12);
    REQUIRE(m.frames() == 1);
    CHECK(m.hop_seconds == 0.01);
    for (Index f = 0; f < 12; ++f) {
      double acc = 0.0;
      for (Index k = 0; k < 257; ++k) acc += bank.weights(f, k) * s.data(k, 0);
      CHECK(m.data(f, 0) == doctest::Approx(acc).epsilon(1e-13));
    }
    CHECK(m.data.minCoeff() >= 0.0);
  }
  SUBCASE("band mismatch") {
    const Spectrogram s{Matrix::Ones(100, 3), 0.01};
    CHECK_THROWS_AS(apply_mel(s, bank), ArgumentError);
  }
}

TEST_CASE("nnlms") {
  Matrix d(1, 3);
  d << 0.0, std::exp(1.0) - 1.0, 3.0;
  const Spectrogram out = nnlms(Spectrogram{d, 0.1});
  CHECK(out.data(0, 0) == 0.0);
  CHECK(out.data(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out.data(0, 2) == doctest::Approx(std::log(4.0)).epsilon(1e-15));

  oracle::Rng rng(2);
  const Matrix a = rng.matrix(1, 1000, 0.0, 100.0);
  const Matrix b = rng.matrix(1, 1000, 0.0, 100.0);
  const Matrix la = nnlms(Spectrogram{a, 0.1}).data;
  const Matrix lb = nnlms(Spectrogram{b, 0.1}).data;
  for (Index i = 0; i < 1000; ++i) {
    if (a(0, i) < b(0, i)) CHECK(la(0, i) < lb(0, i));
    if (a(0, i) > b(0, i)) CHECK(la(0, i) > lb(0, i));
  }
  Matrix neg(1, 1);
  neg << -1.0;
  CHECK_THROWS_AS(nnlms(Spectrogram{neg, 0.1}), ArgumentError);
}

TEST_CASE("BarGrid validation") {
  CHECK_THROWS_AS(BarGrid({1.0}), ArgumentError);
  CHECK_THROWS_AS(BarGrid({-1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS(BarGrid({0.0, 2.0, 2.0}), ArgumentError);
  CHECK(BarGrid({0.0, 1.0, 2.5}).bar_count() == 2);
}

TEST_CASE("build_tfb") {
  const double hop = 0.01;
  SUBCASE("index arithmetic on a ramp") {
    Matrix d(2, 200);
    for (Index f = 0; f < 200; ++f) {
      d(0, f) = double(f);
      d(1, f) = double(2 * f);
    }
    const Tensor3 t = build_tfb(Spectrogram{d, hop}, BarGrid({0.0, 96 * hop}));
    REQUIRE(t.dims() == Dims3{2, 96, 1});
    for (Index i = 0; i < 96; ++i) {
      CHECK(t(0, i, 0) == double(i));
      CHECK(t(1, i, 0) == double(2 * i));
    }
  }
  SUBCASE("oversampled bars take evenly spaced frames") {
    Matrix d(1, 400);
    for (Index f = 0; f < 400; ++f) d(0, f) = double(f);
    const Tensor3 t =
        build_tfb(Spectrogram{d, hop}, BarGrid({1.0, 2.92, 3.99}), 96);
    REQUIRE(t.dims() == Dims3{1, 96, 2});
    for (Index b = 0; b < 2; ++b) {
      const double start = b == 0 ? 1.0 : 2.92;
      const double end = b == 0 ? 2.92 : 3.99;
      for (Index i = 0; i < 96; ++i) {
        const double when = start + (double(i) + 0.5) * (end - start) / 96.0;
        CHECK(t(0, i, b) == std::floor(when / hop + 1e-9));
      }
    }
  }
  SUBCASE("constant spectrogram") {
    const Tensor3 t = build_tfb(Spectrogram{Matrix::Constant(3, 500, 2.5), hop},
                                BarGrid({0.0, 1.3, 2.9, 4.4}), 16);
    CHECK(t.dims() == Dims3{3, 16, 3});
    CHECK(t.min() == 2.5);
    CHECK(t.max() == 2.5);
  }
  SUBCASE("identical bars give identical slices") {
    Matrix d(2, 300);
    oracle::Rng rng(3);
    const Matrix pattern = rng.matrix(2, 100);
    for (Index f = 0; f < 300; ++f) d.col(f) = pattern.col(f % 100);
    const Tensor3 t = build_tfb(Spectrogram{d, hop}, BarGrid({0.0, 1.0, 2.0, 3.0}));
    for (Index i = 0; i < 96; ++i)
      for (Index band = 0; band < 2; ++band) {
        CHECK(t(band, i, 0) == t(band, i, 1));
        CHECK(t(band, i, 1) == t(band, i, 2));
      }
  }
  SUBCASE("entries are spectrogram entries") {
    oracle::Rng rng(4);
    const Matrix d = rng.matrix(1, 321);
    const std::set<double> pool(d.data(), d.data() + d.size());
    const Tensor3 t = build_tfb(Spectrogram{d, hop}, BarGrid({0.05, 0.8, 1.7, 3.2}));
    for (double v : t.values()) CHECK(pool.count(v) == 1);
  }
  SUBCASE("nnlms commutes with slicing") {
    oracle::Rng rng(5);
    const Spectrogram s{rng.matrix(4, 250, 0.0, 50.0), hop};
    const BarGrid bars({0.1, 0.9, 1.6, 2.45});
    const Tensor3 a = build_tfb(nnlms(s), bars, 32);
    const Tensor3 raw = build_tfb(s, bars, 32);
    Tensor3 b = raw;
    for (double& v : b.data()) v = std::log1p(v);
    CHECK(a == b);
  }
  SUBCASE("span errors") {
    const Spectrogram s{Matrix::Ones(1, 100), hop};
    CHECK_THROWS_AS(build_tfb(s, BarGrid({0.0, 1.5})), ArgumentError);
    CHECK_THROWS_AS(build_tfb(s, BarGrid({0.0, 0.005})), ArgumentError);
    CHECK_THROWS_AS(build_tfb(s, BarGrid({0.0, 0.5}), 0), ArgumentError);
    CHECK_NOTHROW(build_tfb(s, BarGrid({0.0, 1.0})));
    try {
      build_tfb(s, BarGrid({0.0, 0.5, 1.2}));
    } catch (const ArgumentError& e) {
      CHECK(std::string(e.what()).find("bar 1") != std::string::npos);
    }
  }
}

}  // TEST_SUITE
