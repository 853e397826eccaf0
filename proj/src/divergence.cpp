// src/divergence.cpp

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

#include "ntd/divergence.hpp"

#include <cmath>
#include <string>

#include "ntd/errors.hpp"

namespace ntd {

namespace {

// Unchecked kernel; callers validate the domain.
// d(x|y) = y^b phi(log(x/y)) with phi(u) = sum_{n>=2} c_n u^n / n! and
// c_n = 1 + b + ... + b^(n-2). Used near x == y where the closed forms cancel.
inline double near_diagonal(double y, double b, double u) {
  double sum = 0.0;
  double c = 1.0;        // c_n
  double b_pow = 1.0;    // b^(n-2)
  double u_term = u * u / 2.0;  // u^n / n!
  for (int n = 2; n < 200; ++n) {
    const double term = c * u_term;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    b_pow *= b;
    c += b_pow;
    u_term *= u / (n + 1);
  }
  return std::pow(y, b) * sum;
}

inline double beta_div_unchecked(double x, double y, double b) {
  if (x == y) return 0.0;
  if (b == 2.0) {
    const double d = x - y;
    return 0.5 * d * d;
  }
  if (x > 0.0) {
    const double u = std::log(x / y);
    if (std::abs(u) < 0.1) return near_diagonal(y, b, u);
  }
  if (b == 0.0) {
    const double r = x / y;
    return r - std::log(r) - 1.0;
  }
  if (b == 1.0) {
    if (x == 0.0) return y;
    return x * std::log(x / y) + (y - x);
  }
  return (std::pow(x, b) + (b - 1.0) * std::pow(y, b) -
          b * x * std::pow(y, b - 1.0)) /
         (b * (b - 1.0));
}

inline bool in_domain(double x, double y, double b) {
  if (!(y > 0.0) || !(x >= 0.0) || !std::isfinite(x) || !std::isfinite(y))
    return false;
  if (x == 0.0 && b <= 0.0) return false;
  return true;
}

}  // namespace

Beta::Beta(double v) : value(v) {
  if (!std::isfinite(v)) throw ArgumentError("beta must be finite");
}

double beta_div(double x, double y, Beta beta) {
  if (!in_domain(x, y, beta.value))
    throw DomainError("beta divergence undefined for x=" + std::to_string(x) +
                      ", y=" + std::to_string(y) +
                      ", beta=" + std::to_string(beta.value));
  // Round-off in the generic form can leave tiny negatives near x == y.
  return std::max(0.0, beta_div_unchecked(x, y, beta.value));
}

double objective(const Tensor3& x, const Tensor3& approx, Beta beta) {
  if (x.dims() != approx.dims())
    throw ArgumentError("objective: shape mismatch " + x.dims().str() +
                        " vs " + approx.dims().str());
  const Dims3& d = x.dims();
  const double b = beta.value;
  double total = 0.0;
  for (Index l = 0; l < d.l; ++l) {
    for (Index k = 0; k < d.k; ++k) {
      for (Index j = 0; j < d.j; ++j) {
        const double xv = x(j, k, l);
        const double yv = approx(j, k, l);
        if (!in_domain(xv, yv, b))
          throw DomainError("beta divergence undefined at (" +
                            std::to_string(j) + ", " + std::to_string(k) +
                            ", " + std::to_string(l) +
                            "): x=" + std::to_string(xv) +
                            ", y=" + std::to_string(yv));
        total += std::max(0.0, beta_div_unchecked(xv, yv, b));
      }
    }
  }
  return total;
}

double gamma_exponent(Beta beta) {
  const double b = beta.value;
  if (b < 1.0) return 1.0 / (2.0 - b);
  if (b <= 2.0) return 1.0;
  return 1.0 / (b - 1.0);
}

}  // namespace ntd
