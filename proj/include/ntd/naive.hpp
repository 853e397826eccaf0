// ntd/naive.hpp

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

// Reference MU iteration that materializes the Kronecker products. Only the
// benchmark uses it, as a timing and correctness baseline for small sizes;
// the solver never calls into this file.

#ifndef NTD_NAIVE_HPP_
#define NTD_NAIVE_HPP_

#include "ntd/solver.hpp"

namespace ntd::naive {

// Largest Kronecker operator (rows * cols entries) the reference will build.
inline constexpr Index kMaxKroneckerEntries = Index{1} << 24;

// Entries of the largest Kronecker product an iteration would form:
// (J*K*L) x (J'*K'*L') for the core update.
Index kronecker_entries(Dims3 data_dims, Dims3 core_dims);

Matrix kronecker(const Matrix& a, const Matrix& b);

// One W, H, Q, core sweep using X_(n) = U_n G_(n) (Kronecker of the other
// factors)^T and vec(X) = (Q kron H kron W) vec(G). Throws ArgumentError
// when the operator would exceed kMaxKroneckerEntries.
FactorSet iterate(const Tensor3& x, FactorSet f, const SolverConfig& cfg);

}  // namespace ntd::naive

#endif  // NTD_NAIVE_HPP_
