// ntd/divergence.hpp

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

#ifndef NTD_DIVERGENCE_HPP_
#define NTD_DIVERGENCE_HPP_

#include "ntd/tensor.hpp"

namespace ntd {

// The beta parameter. Branches are picked by exact comparison: 0 gives
// Itakura-Saito, 1 gives Kullback-Leibler, anything else the generic form
// (2 is half the squared Euclidean distance).
struct Beta {
  double value = 1.0;

  constexpr Beta() = default;
  explicit Beta(double v);

  bool is_itakura_saito() const { return value == 0.0; }
  bool is_kullback_leibler() const { return value == 1.0; }
};

// d_beta(x | y) for x >= 0, y > 0.
// DomainError when y <= 0, or when x == 0 under beta = 0. For beta = 1 the
// x = 0 term uses 0 log 0 = 0. For generic beta <= 0 with x = 0 the x^beta
// term is undefined (or infinite) and also raises DomainError.
double beta_div(double x, double y, Beta beta);

// Sum of beta_div over all entries, accumulated in storage order so repeated
// calls are bit-identical. The error message names the offending (j, k, l).
double objective(const Tensor3& x, const Tensor3& approx, Beta beta);

// MU exponent: 1/(2-beta) below 1, 1 on [1, 2], 1/(beta-1) above 2.
double gamma_exponent(Beta beta);

}  // namespace ntd

#endif  // NTD_DIVERGENCE_HPP_
