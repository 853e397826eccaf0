// src/naive.cpp

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

#include "ntd/naive.hpp"

#include <cmath>
#include <string>

#include "ntd/errors.hpp"

namespace ntd::naive {

namespace {

// x^p with x^0 == 1 for every x.
Eigen::ArrayXXd pow_or_one(const Eigen::ArrayXXd& x, double p) {
  if (p == 0.0) return Eigen::ArrayXXd::Ones(x.rows(), x.cols());
  return x.pow(p);
}

Matrix mu_ratio(const Matrix& m, const Matrix& u, const Matrix& v, double beta,
                double gamma) {
  const Eigen::ArrayXXd approx = (u * v).array();
  const Matrix num =
      (pow_or_one(approx, beta - 2.0) * m.array()).matrix() * v.transpose();
  const Matrix den = pow_or_one(approx, beta - 1.0).matrix() * v.transpose();
  return (num.array() / den.array()).pow(gamma).matrix();
}

}  // namespace

Index kronecker_entries(Dims3 data_dims, Dims3 core_dims) {
  return data_dims.size() * core_dims.size();
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

FactorSet iterate(const Tensor3& x, FactorSet f, const SolverConfig& cfg) {
  cfg.validate();
  f.check_conforms(x.dims());
  if (kronecker_entries(x.dims(), f.core.dims()) > kMaxKroneckerEntries)
    throw ArgumentError(
        "naive reference refuses to materialize a Kronecker operator of " +
        std::to_string(kronecker_entries(x.dims(), f.core.dims())) +
        " entries (limit " + std::to_string(kMaxKroneckerEntries) + ")");
  const double beta = cfg.beta.value;
  const double gamma = gamma_exponent(cfg.beta);
  const Dims3 dims = x.dims();
  const Dims3 cdims = f.core.dims();

  for (int mode = 1; mode <= 3; ++mode) {
    Matrix kron;
    if (mode == 1) kron = kronecker(f.q, f.h);
    if (mode == 2) kron = kronecker(f.q, f.w);
    if (mode == 3) kron = kronecker(f.h, f.w);
    const Matrix v = matricize(f.core, mode) * kron.transpose();
    Matrix& u = f.factor(mode);
    u = (u.array() * mu_ratio(matricize(x, mode), u, v, beta, gamma).array())
            .max(cfg.epsilon)
            .matrix();
  }

  const Matrix big = kronecker(kronecker(f.q, f.h), f.w);
  const Eigen::Map<const Eigen::VectorXd> xv(x.data().data(), dims.size());
  Eigen::VectorXd g =
      Eigen::Map<const Eigen::VectorXd>(f.core.data().data(), cdims.size());
  const Eigen::ArrayXd approx = (big * g).array();
  const Eigen::VectorXd num =
      big.transpose() *
      ((beta == 2.0 ? Eigen::ArrayXd(Eigen::ArrayXd::Ones(approx.size()))
                    : Eigen::ArrayXd(approx.pow(beta - 2.0))) *
       xv.array())
          .matrix();
  const Eigen::VectorXd den =
      big.transpose() * (beta == 1.0 ? Eigen::ArrayXd(Eigen::ArrayXd::Ones(approx.size()))
                                     : Eigen::ArrayXd(approx.pow(beta - 1.0)))
                            .matrix();
  g = (g.array() * (num.array() / den.array()).pow(gamma)).max(cfg.epsilon);
  f.core = Tensor3(cdims, std::vector<double>(g.data(), g.data() + g.size()));
  return f;
}

}  // namespace ntd::naive
