// src/solver.cpp

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

#include "ntd/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ntd/errors.hpp"

namespace ntd {

namespace {

std::span<double> span_of(Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

std::span<const double> span_of(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

// The data tensor together with its mode-2 and mode-3 unfoldings, which are
// reused by every factor update of a run. The mode-1 unfolding is a view.
class Unfolded {
 public:
  explicit Unfolded(const Tensor3& x)
      : x_(x), mode2_(matricize(x, 2)), mode3_(matricize(x, 3)) {}

  const Tensor3& tensor() const { return x_; }
  Eigen::Ref<const Matrix> mode(int m) const {
    switch (m) {
      case 1:
        return x_.as_mode1();
      case 2:
        return mode2_;
      default:
        return mode3_;
    }
  }

 private:
  const Tensor3& x_;
  Matrix mode2_;
  Matrix mode3_;
};

// V for the update of `mode`: the core multiplied by the two other factors,
// unfolded along `mode`.
Matrix core_times_others(const FactorSet& f, int mode) {
  switch (mode) {
    case 1:
      return contracted_unfolding(f.core, f.h, f.q, 1);
    case 2:
      return contracted_unfolding(f.core, f.w, f.q, 2);
    default:
      return contracted_unfolding(f.core, f.w, f.h, 3);
  }
}

// (([(UV)^(beta-2) . M] V^T) / ((UV)^(beta-1) V^T))^gamma.
// (UV)^(beta-2) is formed as (UV)^(beta-1) / UV, so beta = 2 never touches
// 0^0 and beta = 1 needs no pow at all.
Matrix factor_ratio(const Eigen::Ref<const Matrix>& m, const Matrix& u,
                    const Matrix& v, double beta, double gamma) {
  Matrix approx = u * v;
  Matrix num;
  Matrix den;
  if (beta == 2.0) {
    num.noalias() = m * v.transpose();
    den.noalias() = approx * v.transpose();
  } else if (beta == 1.0) {
    Matrix scaled = m;
    kernels::divide_inplace(span_of(scaled), span_of(approx));
    num.noalias() = scaled * v.transpose();
    den = Eigen::VectorXd::Ones(u.rows()) * v.rowwise().sum().transpose();
  } else {
    Matrix powered = approx;
    kernels::power_inplace(span_of(powered), beta - 1.0);
    Matrix scaled = powered;
    kernels::divide_inplace(span_of(scaled), span_of(approx));
    kernels::multiply_inplace(span_of(scaled), span_of(m));
    num.noalias() = scaled * v.transpose();
    den.noalias() = powered * v.transpose();
  }
  kernels::divide_inplace(span_of(num), span_of(den));
  kernels::power_inplace(span_of(num), gamma);
  return num;
}

Matrix factor_ratio(const Unfolded& x, const FactorSet& f, int mode,
                    double beta, double gamma) {
  return factor_ratio(x.mode(mode), f.factor(mode), core_times_others(f, mode),
                      beta, gamma);
}

// (N x1 W^T x2 H^T x3 Q^T) / (D x1 W^T x2 H^T x3 Q^T), raised to gamma, with
// N = approx^(beta-2) . X and D = approx^(beta-1).
Tensor3 core_ratio_impl(const Tensor3& x, const FactorSet& f, double beta,
                        double gamma) {
  Tensor3 approx = f.reconstruct();
  Tensor3 num;
  Tensor3 den;
  if (beta == 2.0) {
    num = multiway_product_transposed(x, f.w, f.h, f.q);
    den = multiway_product_transposed(approx, f.w, f.h, f.q);
  } else if (beta == 1.0) {
    Tensor3 scaled = x;
    kernels::divide_inplace(scaled.data(), approx.data());
    num = multiway_product_transposed(scaled, f.w, f.h, f.q);
    // The all-ones tensor contracts to the outer product of column sums.
    const Eigen::VectorXd sw = f.w.colwise().sum().transpose();
    const Eigen::VectorXd sh = f.h.colwise().sum().transpose();
    const Eigen::VectorXd sq = f.q.colwise().sum().transpose();
    den = Tensor3(f.core.dims());
    const Dims3& d = den.dims();
    for (Index c = 0; c < d.l; ++c)
      for (Index b = 0; b < d.k; ++b)
        for (Index a = 0; a < d.j; ++a) den(a, b, c) = sw(a) * sh(b) * sq(c);
  } else {
    Tensor3 powered = approx;
    kernels::power_inplace(powered.data(), beta - 1.0);
    Tensor3 scaled = powered;
    kernels::divide_inplace(scaled.data(), approx.data());
    kernels::multiply_inplace(scaled.data(), x.data());
    num = multiway_product_transposed(scaled, f.w, f.h, f.q);
    den = multiway_product_transposed(powered, f.w, f.h, f.q);
  }
  kernels::divide_inplace(num.data(), den.data());
  kernels::power_inplace(num.data(), gamma);
  return num;
}

Matrix apply_ratio(const Matrix& u, Matrix ratio, double eps) {
  ratio.array() *= u.array();
  kernels::clamp_min_inplace(span_of(ratio), eps);
  return ratio;
}

Tensor3 apply_ratio(const Tensor3& g, Tensor3 ratio, double eps) {
  kernels::multiply_inplace(ratio.data(), g.data());
  kernels::clamp_min_inplace(ratio.data(), eps);
  return ratio;
}

void iterate_inplace(const Unfolded& x, FactorSet& f, const SolverConfig& cfg) {
  const double beta = cfg.beta.value;
  const double gamma = gamma_exponent(cfg.beta);
  for (int mode = 1; mode <= 3; ++mode)
    f.factor(mode) = apply_ratio(f.factor(mode),
                                 factor_ratio(x, f, mode, beta, gamma),
                                 cfg.epsilon);
  f.core = apply_ratio(f.core, core_ratio_impl(x.tensor(), f, beta, gamma),
                       cfg.epsilon);
}

void check_data(const Tensor3& x) {
  if (!x.all_finite()) throw ArgumentError("data tensor has non-finite entries");
  if (x.min() < 0.0) throw ArgumentError("data tensor has negative entries");
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ArgumentError("epsilon must be positive");
  if (core_dims.j < 1 || core_dims.k < 1 || core_dims.l < 1)
    throw ArgumentError("core dims must be >= 1, got " + core_dims.str());
  if (!(rel_tol >= 0.0)) throw ArgumentError("rel_tol must be >= 0");
  if (loss_eval_period < 1)
    throw ArgumentError("loss_eval_period must be >= 1");
}

const Matrix& FactorSet::factor(int mode) const {
  check_mode(mode);
  return mode == 1 ? w : (mode == 2 ? h : q);
}

Matrix& FactorSet::factor(int mode) {
  check_mode(mode);
  return mode == 1 ? w : (mode == 2 ? h : q);
}

void FactorSet::check_conforms(Dims3 data_dims) const {
  const Dims3& c = core.dims();
  if (w.rows() != data_dims.j || h.rows() != data_dims.k ||
      q.rows() != data_dims.l || w.cols() != c.j || h.cols() != c.k ||
      q.cols() != c.l)
    throw ArgumentError("factor set (W " + std::to_string(w.rows()) + "x" +
                        std::to_string(w.cols()) + ", H " +
                        std::to_string(h.rows()) + "x" +
                        std::to_string(h.cols()) + ", Q " +
                        std::to_string(q.rows()) + "x" +
                        std::to_string(q.cols()) + ", core " + c.str() +
                        ") does not conform to data " + data_dims.str());
}

double FactorSet::min_entry() const {
  return std::min({w.minCoeff(), h.minCoeff(), q.minCoeff(), core.min()});
}

FactorSet init_factors(Dims3 data_dims, const SolverConfig& cfg) {
  cfg.validate();
  if (data_dims.j < 1 || data_dims.k < 1 || data_dims.l < 1)
    throw ArgumentError("data dims must be positive, got " + data_dims.str());
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(cfg.epsilon, 1.0);
  auto fill = [&](std::span<double> values) {
    for (double& v : values) v = dist(rng);
  };
  const Dims3& c = cfg.core_dims;
  FactorSet f{Matrix(data_dims.j, c.j), Matrix(data_dims.k, c.k),
              Matrix(data_dims.l, c.l), Tensor3(c)};
  fill(span_of(f.w));
  fill(span_of(f.h));
  fill(span_of(f.q));
  fill(f.core.data());
  return f;
}

Matrix update_mode_factor(const Tensor3& x, const FactorSet& f, int mode,
                          const SolverConfig& cfg) {
  check_mode(mode);
  cfg.validate();
  f.check_conforms(x.dims());
  return apply_ratio(f.factor(mode), mode_factor_ratio(x, f, mode, cfg),
                     cfg.epsilon);
}

Tensor3 update_core(const Tensor3& x, const FactorSet& f,
                    const SolverConfig& cfg) {
  cfg.validate();
  f.check_conforms(x.dims());
  return apply_ratio(f.core, core_ratio(x, f, cfg), cfg.epsilon);
}

Matrix mode_factor_ratio(const Tensor3& x, const FactorSet& f, int mode,
                         const SolverConfig& cfg) {
  check_mode(mode);
  f.check_conforms(x.dims());
  return factor_ratio(matricize(x, mode), f.factor(mode),
                      core_times_others(f, mode), cfg.beta.value,
                      gamma_exponent(cfg.beta));
}

Tensor3 core_ratio(const Tensor3& x, const FactorSet& f,
                   const SolverConfig& cfg) {
  f.check_conforms(x.dims());
  return core_ratio_impl(x, f, cfg.beta.value, gamma_exponent(cfg.beta));
}

FactorSet iterate(const Tensor3& x, FactorSet f, const SolverConfig& cfg) {
  cfg.validate();
  f.check_conforms(x.dims());
  const Unfolded unfolded(x);
  iterate_inplace(unfolded, f, cfg);
  return f;
}

SolveResult solve(const Tensor3& x_in, const SolverConfig& cfg,
                  std::optional<FactorSet> init) {
  cfg.validate();
  check_data(x_in);
  const Tensor3 x = cfg.clamp_data ? clamp_min(x_in, cfg.epsilon) : x_in;

  SolveResult result{init ? std::move(*init) : init_factors(x.dims(), cfg), {}};
  FactorSet& f = result.factors;
  LossTrace& trace = result.trace;
  f.check_conforms(x.dims());

  auto record = [&](std::size_t it) {
    double loss;
    try {
      loss = objective(x, f.reconstruct(), cfg.beta);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at iteration " +
                            std::to_string(it),
                        it);
    }
    if (!std::isfinite(loss))
      throw DomainError("non-finite loss at iteration " + std::to_string(it),
                        it);
    trace.iterations.push_back(it);
    trace.losses.push_back(loss);
    return loss;
  };

  double previous = record(0);
  if (cfg.max_iters == 0) return result;

  const Unfolded unfolded(x);
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    const auto start = std::chrono::steady_clock::now();
    try {
      iterate_inplace(unfolded, f, cfg);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at iteration " +
                            std::to_string(it),
                        it);
    }
    trace.iter_times.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count());

    if (it % cfg.loss_eval_period != 0 && it != cfg.max_iters) continue;
    const double current = record(it);
    const double decrease =
        (previous - current) /
        std::max(previous, std::numeric_limits<double>::min());
    if (decrease < cfg.rel_tol) {
      trace.converged_at = it;
      break;
    }
    previous = current;
  }
  return result;
}

}  // namespace ntd
