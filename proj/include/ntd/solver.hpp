// ntd/solver.hpp

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

// Nonnegative Tucker decomposition X ~ G x1 W x2 H x3 Q under the
// beta-divergence, fitted by multiplicative updates. One iteration updates
// W, H, Q and then the core, each step using the freshest values of the
// others; every updated entry is clamped below by epsilon.

#ifndef NTD_SOLVER_HPP_
#define NTD_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ntd/divergence.hpp"
#include "ntd/tensor.hpp"

namespace ntd {

struct SolverConfig {
  Beta beta{1.0};
  double epsilon = 1e-12;
  Dims3 core_dims{1, 1, 1};
  std::size_t max_iters = 100;
  // Stop once (previous - current) / previous loss drops below this over one
  // evaluation period.
  double rel_tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t loss_eval_period = 1;
  // Replace data entries below epsilon by epsilon before fitting. Needed for
  // beta <= 0 when the data has zeros.
  bool clamp_data = false;

  // Throws ArgumentError on epsilon <= 0, empty core dims, negative rel_tol
  // or a zero evaluation period.
  void validate() const;
};

struct FactorSet {
  Matrix w;  // J x J'
  Matrix h;  // K x K'
  Matrix q;  // L x L'
  Tensor3 core;

  const Matrix& factor(int mode) const;
  Matrix& factor(int mode);
  Tensor3 reconstruct() const { return multiway_product(core, w, h, q); }
  // Throws ArgumentError unless the factors fit `data_dims` and the core.
  void check_conforms(Dims3 data_dims) const;
  double min_entry() const;

  friend bool operator==(const FactorSet& a, const FactorSet& b) {
    return a.w == b.w && a.h == b.h && a.q == b.q && a.core == b.core;
  }
};

struct LossTrace {
  // Iteration index of each recorded loss; the first entry (index 0) is the
  // loss of the starting point.
  std::vector<std::size_t> iterations;
  std::vector<double> losses;
  // Wall-clock seconds per iteration.
  std::vector<double> iter_times;
  std::optional<std::size_t> converged_at;
};

struct SolveResult {
  FactorSet factors;
  LossTrace trace;
};

// Entries i.i.d. uniform on [epsilon, 1], drawn in the order W, H, Q, core
// from a 64-bit Mersenne Twister seeded with cfg.seed.
FactorSet init_factors(Dims3 data_dims, const SolverConfig& cfg);

// One MU step on the factor of `mode` (1 = W, 2 = H, 3 = Q) with everything
// else held fixed. Returns the new factor.
Matrix update_mode_factor(const Tensor3& x, const FactorSet& f, int mode,
                          const SolverConfig& cfg);

// One MU step on the core with all factors held fixed.
Tensor3 update_core(const Tensor3& x, const FactorSet& f,
                    const SolverConfig& cfg);

// W, H, Q, then core.
FactorSet iterate(const Tensor3& x, FactorSet f, const SolverConfig& cfg);

// Runs iterate until max_iters or the relative-decrease rule fires. Without
// `init` the starting point is init_factors(x.dims(), cfg).
SolveResult solve(const Tensor3& x, const SolverConfig& cfg,
                  std::optional<FactorSet> init = std::nullopt);

// The multiplicative ratio (numerator / denominator)^gamma that the next
// update would apply to each entry of the mode factor or the core. Equal
// to one at interior stationary points.
Matrix mode_factor_ratio(const Tensor3& x, const FactorSet& f, int mode,
                         const SolverConfig& cfg);
Tensor3 core_ratio(const Tensor3& x, const FactorSet& f,
                   const SolverConfig& cfg);

}  // namespace ntd

#endif  // NTD_SOLVER_HPP_
