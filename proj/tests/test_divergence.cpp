// tests/test_divergence.cpp

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

#include <cmath>

#include "ntd/divergence.hpp"
#include "ntd/errors.hpp"
#include "oracles.hpp"

using namespace ntd;

TEST_SUITE("divergence") {

TEST_CASE("Beta rejects non-finite values") {
  CHECK_THROWS_AS(Beta(std::nan("")), ArgumentError);
  CHECK_THROWS_AS(static_cast<void>(Beta(HUGE_VAL)), ArgumentError);
  CHECK(Beta(0.0).is_itakura_saito());
  CHECK(Beta(1.0).is_kullback_leibler());
}

TEST_CASE("closed-form values") {
  CHECK(beta_div(3.0, 1.0, Beta(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(beta_div(2.0, 1.0, Beta(1.0)) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
  CHECK(beta_div(2.0, 1.0, Beta(0.0)) ==
        doctest::Approx(2.0 - std::log(2.0) - 1.0).epsilon(1e-15));
  // generic branch: (x^b + (b-1) y^b - b x y^(b-1)) / (b (b-1)) at b = 3
  CHECK(beta_div(2.0, 1.0, Beta(3.0)) ==
        doctest::Approx((8.0 + 2.0 - 3.0 * 2.0) / 6.0).epsilon(1e-15));
  CHECK(beta_div(0.0, 1.5, Beta(1.0)) == 1.5);
}

TEST_CASE("identity of indiscernibles and nonnegativity") {
  oracle::Rng rng(1);
  for (double b : {-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (int i = 0; i < 500; ++i) {
      const double x = rng.uniform(0.01, 10.0);
      const double y = rng.uniform(0.01, 10.0);
      CHECK(beta_div(x, x, Beta(b)) == 0.0);
      CHECK(beta_div(x, y, Beta(b)) >= 0.0);
      CHECK(beta_div(x, y, Beta(b)) > 0.0);
    }
  }
}

TEST_CASE("degree-beta homogeneity") {
  oracle::Rng rng(2);
  const double lambda = 2.5;
  for (double b : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (int i = 0; i < 200; ++i) {
      const double x = rng.uniform(0.01, 10.0);
      const double y = rng.uniform(0.01, 10.0);
      const double lhs = beta_div(lambda * x, lambda * y, Beta(b));
      const double rhs = std::pow(lambda, b) * beta_div(x, y, Beta(b));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(rhs, 1e-300));
    }
  }
}

TEST_CASE("Itakura-Saito scale invariance") {
  oracle::Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(0.01, 10.0);
    const double y = rng.uniform(0.01, 10.0);
    const double lambda = rng.uniform(0.1, 100.0);
    CHECK(beta_div(lambda * x, lambda * y, Beta(0.0)) ==
          doctest::Approx(beta_div(x, y, Beta(0.0))).epsilon(1e-12));
  }
}

TEST_CASE("near-diagonal values follow the quadratic leading term") {
  for (double b : {-0.5, 0.0, 0.5, 1.0, 1.5, 3.0}) {
    for (double y : {0.3, 1.0, 7.0}) {
      const double x = y * (1.0 + 1e-6);
      const double lead = 0.5 * std::pow(y, b - 2.0) * (x - y) * (x - y);
      CHECK(beta_div(x, y, Beta(b)) == doctest::Approx(lead).epsilon(1e-5));
    }
  }
  // both evaluation paths agree where they meet
  for (double b : {0.0, 0.5, 1.0, 3.0}) {
    const double y = 2.0;
    const double inside = beta_div(y * std::exp(0.0999999), y, Beta(b));
    const double outside = beta_div(y * std::exp(0.1000001), y, Beta(b));
    CHECK(inside == doctest::Approx(outside).epsilon(1e-5));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(beta_div(1.0, 0.0, Beta(1.0)), DomainError);
  CHECK_THROWS_AS(beta_div(1.0, -1.0, Beta(2.0)), DomainError);
  CHECK_THROWS_AS(beta_div(-1.0, 1.0, Beta(2.0)), DomainError);
  CHECK_THROWS_AS(beta_div(0.0, 1.0, Beta(0.0)), DomainError);
  CHECK(beta_div(0.0, 2.0, Beta(2.0)) == 2.0);
}

TEST_CASE("objective") {
  oracle::Rng rng(4);
  const Tensor3 t = rng.tensor(Dims3{3, 4, 5}, 0.1, 1.0);
  for (double b : {0.0, 1.0, 2.0, 3.0}) CHECK(objective(t, t, Beta(b)) == 0.0);

  CHECK(objective(Tensor3(Dims3{1, 1, 1}, 2.0), Tensor3(Dims3{1, 1, 1}, 1.0),
                  Beta(1.0)) ==
        doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));

  const Tensor3 u = rng.tensor(Dims3{3, 4, 5}, 0.1, 1.0);
  double direct = 0.0;
  for (Index j = 0; j < 3; ++j)
    for (Index k = 0; k < 4; ++k)
      for (Index l = 0; l < 5; ++l) direct += beta_div(t(j, k, l), u(j, k, l), Beta(0.5));
  CHECK(objective(t, u, Beta(0.5)) == doctest::Approx(direct).epsilon(1e-13));

  CHECK_THROWS_AS(objective(t, Tensor3(Dims3{3, 4, 4}, 1.0), Beta(1.0)),
                  ArgumentError);
  Tensor3 z = t;
  z(2, 1, 3) = 0.0;
  try {
    objective(z, u, Beta(0.0));
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("(2, 1, 3)") != std::string::npos);
  }
}

TEST_CASE("objective is continuous at beta 0 and 1") {
  oracle::Rng rng(5);
  const Tensor3 x = rng.tensor(Dims3{4, 4, 4}, 0.1, 2.0);
  const Tensor3 y = rng.tensor(Dims3{4, 4, 4}, 0.1, 2.0);
  for (double b : {0.0, 1.0}) {
    const double at = objective(x, y, Beta(b));
    for (double delta : {1e-6, -1e-6})
      CHECK(std::abs(objective(x, y, Beta(b + delta)) - at) <= 1e-4 * (1.0 + at));
  }
}

TEST_CASE("gamma exponent table") {
  CHECK(gamma_exponent(Beta(-1.0)) == 1.0 / 3.0);
  CHECK(gamma_exponent(Beta(0.0)) == 0.5);
  CHECK(gamma_exponent(Beta(0.5)) == 1.0 / 1.5);
  CHECK(gamma_exponent(Beta(1.0)) == 1.0);
  CHECK(gamma_exponent(Beta(1.5)) == 1.0);
  CHECK(gamma_exponent(Beta(2.0)) == 1.0);
  CHECK(gamma_exponent(Beta(2.5)) == 1.0 / 1.5);
  CHECK(gamma_exponent(Beta(3.0)) == 0.5);
}

}  // TEST_SUITE
