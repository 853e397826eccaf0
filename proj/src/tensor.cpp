// src/tensor.cpp

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

#include "ntd/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ntd/errors.hpp"

namespace ntd {

namespace {

std::string shape_str(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_same(const Tensor3& a, const Tensor3& b, const char* op) {
  if (a.dims() != b.dims())
    throw ArgumentError(std::string(op) + ": shape mismatch " +
                        a.dims().str() + " vs " + b.dims().str());
}

void check_same(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ArgumentError(std::string(op) + ": shape mismatch " + shape_str(a) +
                        " vs " + shape_str(b));
}

std::span<double> span_of(Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

std::span<const double> span_of(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

// Shared body of mode_product and mode_product_transposed. `m` is applied
// as an (out_extent x dims[mode]) operator, possibly as a transpose view.
template <typename Op>
Tensor3 apply_mode(const Tensor3& t, const Op& m, int mode) {
  const Dims3& d = t.dims();
  Tensor3 out(d.with(mode, m.rows()));
  switch (mode) {
    case 1:
      out.as_mode1().noalias() = m * t.as_mode1();
      break;
    case 2:
      for (Index l = 0; l < d.l; ++l)
        out.frontal(l).noalias() = t.frontal(l) * m.transpose();
      break;
    case 3:
      out.as_mode3_transposed().noalias() =
          t.as_mode3_transposed() * m.transpose();
      break;
  }
  return out;
}

}  // namespace

Index Dims3::operator[](int mode) const {
  check_mode(mode);
  return mode == 1 ? j : (mode == 2 ? k : l);
}

Dims3 Dims3::with(int mode, Index extent) const {
  check_mode(mode);
  Dims3 d = *this;
  (mode == 1 ? d.j : (mode == 2 ? d.k : d.l)) = extent;
  return d;
}

std::string Dims3::str() const {
  return std::to_string(j) + "x" + std::to_string(k) + "x" + std::to_string(l);
}

void check_mode(int mode) {
  if (mode < 1 || mode > 3)
    throw ArgumentError("mode must be 1, 2 or 3, got " + std::to_string(mode));
}

Tensor3::Tensor3(Dims3 dims, double fill)
    : dims_(dims), data_(static_cast<std::size_t>(dims.size()), fill) {
  if (dims.j <= 0 || dims.k <= 0 || dims.l <= 0)
    throw ArgumentError("tensor dims must be positive, got " + dims.str());
}

Tensor3::Tensor3(Dims3 dims, std::vector<double> data)
    : dims_(dims), data_(std::move(data)) {
  if (dims.j <= 0 || dims.k <= 0 || dims.l <= 0)
    throw ArgumentError("tensor dims must be positive, got " + dims.str());
  if (static_cast<Index>(data_.size()) != dims.size())
    throw ArgumentError("tensor data length " + std::to_string(data_.size()) +
                        " does not match dims " + dims.str());
}

Tensor3 Tensor3::from_row_major(Dims3 dims, std::span<const double> values) {
  Tensor3 t(dims);
  if (static_cast<Index>(values.size()) != dims.size())
    throw ArgumentError("tensor data length " + std::to_string(values.size()) +
                        " does not match dims " + dims.str());
  std::size_t n = 0;
  for (Index j = 0; j < dims.j; ++j)
    for (Index k = 0; k < dims.k; ++k)
      for (Index l = 0; l < dims.l; ++l) t(j, k, l) = values[n++];
  return t;
}

std::vector<double> Tensor3::to_row_major() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (Index j = 0; j < dims_.j; ++j)
    for (Index k = 0; k < dims_.k; ++k)
      for (Index l = 0; l < dims_.l; ++l) out.push_back((*this)(j, k, l));
  return out;
}

Tensor3::ConstMatrixMap Tensor3::as_mode1() const {
  return {data_.data(), dims_.j, dims_.k * dims_.l};
}
Tensor3::MatrixMap Tensor3::as_mode1() {
  return {data_.data(), dims_.j, dims_.k * dims_.l};
}
Tensor3::ConstMatrixMap Tensor3::as_mode3_transposed() const {
  return {data_.data(), dims_.j * dims_.k, dims_.l};
}
Tensor3::MatrixMap Tensor3::as_mode3_transposed() {
  return {data_.data(), dims_.j * dims_.k, dims_.l};
}
Tensor3::ConstMatrixMap Tensor3::frontal(Index l) const {
  return {data_.data() + l * dims_.j * dims_.k, dims_.j, dims_.k};
}
Tensor3::MatrixMap Tensor3::frontal(Index l) {
  return {data_.data() + l * dims_.j * dims_.k, dims_.j, dims_.k};
}

double Tensor3::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Tensor3::max() const { return *std::max_element(data_.begin(), data_.end()); }
double Tensor3::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }
bool Tensor3::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix matricize(const Tensor3& t, int mode) {
  check_mode(mode);
  const Dims3& d = t.dims();
  switch (mode) {
    case 1:
      return t.as_mode1();
    case 2: {
      Matrix out(d.k, d.j * d.l);
      for (Index l = 0; l < d.l; ++l)
        out.middleCols(l * d.j, d.j) = t.frontal(l).transpose();
      return out;
    }
    default:
      return t.as_mode3_transposed().transpose();
  }
}

Tensor3 fold(const Matrix& m, int mode, Dims3 dims) {
  check_mode(mode);
  const Index rows = dims[mode];
  if (m.rows() != rows || m.cols() * rows != dims.size())
    throw ArgumentError("fold: matrix " + shape_str(m) +
                        " does not conform to dims " + dims.str() +
                        " on mode " + std::to_string(mode));
  Tensor3 out(dims);
  switch (mode) {
    case 1:
      out.as_mode1() = m;
      break;
    case 2:
      for (Index l = 0; l < dims.l; ++l)
        out.frontal(l) = m.middleCols(l * dims.j, dims.j).transpose();
      break;
    case 3:
      out.as_mode3_transposed() = m.transpose();
      break;
  }
  return out;
}

Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode) {
  check_mode(mode);
  if (m.cols() != t.dims()[mode])
    throw ArgumentError("mode_product: matrix " + shape_str(m) +
                        " does not conform to mode " + std::to_string(mode) +
                        " of " + t.dims().str());
  return apply_mode(t, m, mode);
}

Tensor3 mode_product_transposed(const Tensor3& t, const Matrix& m, int mode) {
  check_mode(mode);
  if (m.rows() != t.dims()[mode])
    throw ArgumentError("mode_product_transposed: matrix " + shape_str(m) +
                        " does not conform to mode " + std::to_string(mode) +
                        " of " + t.dims().str());
  return apply_mode(t, m.transpose(), mode);
}

Tensor3 multiway_product(const Tensor3& g, const Matrix& w, const Matrix& h,
                         const Matrix& q) {
  const Dims3& d = g.dims();
  if (w.cols() != d.j || h.cols() != d.k || q.cols() != d.l)
    throw ArgumentError("multiway_product: factors " + shape_str(w) + ", " +
                        shape_str(h) + ", " + shape_str(q) +
                        " do not conform to core " + d.str());
  return mode_product(mode_product(mode_product(g, w, 1), h, 2), q, 3);
}

Tensor3 multiway_product_transposed(const Tensor3& g, const Matrix& w,
                                    const Matrix& h, const Matrix& q) {
  const Dims3& d = g.dims();
  if (w.rows() != d.j || h.rows() != d.k || q.rows() != d.l)
    throw ArgumentError("multiway_product_transposed: factors " +
                        shape_str(w) + ", " + shape_str(h) + ", " +
                        shape_str(q) + " do not conform to " + d.str());
  return mode_product_transposed(
      mode_product_transposed(mode_product_transposed(g, w, 1), h, 2), q, 3);
}

Matrix contracted_unfolding(const Tensor3& g, const Matrix& a, const Matrix& b,
                            int mode) {
  check_mode(mode);
  const int first = mode == 1 ? 2 : 1;
  const int second = mode == 3 ? 2 : 3;
  if (a.cols() != g.dims()[first] || b.cols() != g.dims()[second])
    throw ArgumentError("contracted_unfolding: matrices " + shape_str(a) +
                        " and " + shape_str(b) + " do not conform to core " +
                        g.dims().str() + " for mode " + std::to_string(mode));
  return matricize(mode_product(mode_product(g, a, first), b, second), mode);
}

namespace kernels {

void power_inplace(std::span<double> x, double p) {
  if (p == 0.0) {
    std::fill(x.begin(), x.end(), 1.0);
    return;
  }
  if (p < 0.0) {
    for (double v : x)
      if (!(v > 0.0))
        throw DomainError("power with negative exponent " + std::to_string(p) +
                          " on a non-positive entry");
  }
  if (p == 1.0) return;
  if (p == -1.0) {
    for (double& v : x) v = 1.0 / v;
  } else if (p == 2.0) {
    for (double& v : x) v *= v;
  } else if (p == -2.0) {
    for (double& v : x) v = 1.0 / (v * v);
  } else if (p == 0.5) {
    for (double& v : x) v = std::sqrt(v);
  } else {
    for (double& v : x) v = std::pow(v, p);
  }
}

void multiply_inplace(std::span<double> x, std::span<const double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] *= y[i];
}

void divide_inplace(std::span<double> x, std::span<const double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] == 0.0)
      throw DomainError("division by a zero entry at linear index " +
                        std::to_string(i));
    x[i] /= y[i];
  }
}

void clamp_min_inplace(std::span<double> x, double floor) {
  for (double& v : x) v = std::max(v, floor);
}

}  // namespace kernels

Tensor3 power(const Tensor3& t, double p) {
  Tensor3 out = t;
  kernels::power_inplace(out.data(), p);
  return out;
}

Matrix power(const Matrix& m, double p) {
  Matrix out = m;
  kernels::power_inplace(span_of(out), p);
  return out;
}

Tensor3 multiply(const Tensor3& a, const Tensor3& b) {
  check_same(a, b, "multiply");
  Tensor3 out = a;
  kernels::multiply_inplace(out.data(), b.data());
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  check_same(a, b, "multiply");
  Matrix out = a;
  kernels::multiply_inplace(span_of(out), span_of(b));
  return out;
}

Tensor3 divide(const Tensor3& a, const Tensor3& b) {
  check_same(a, b, "divide");
  Tensor3 out = a;
  kernels::divide_inplace(out.data(), b.data());
  return out;
}

Matrix divide(const Matrix& a, const Matrix& b) {
  check_same(a, b, "divide");
  Matrix out = a;
  kernels::divide_inplace(span_of(out), span_of(b));
  return out;
}

Tensor3 clamp_min(const Tensor3& t, double floor) {
  Tensor3 out = t;
  kernels::clamp_min_inplace(out.data(), floor);
  return out;
}

Matrix clamp_min(const Matrix& m, double floor) {
  Matrix out = m;
  kernels::clamp_min_inplace(span_of(out), floor);
  return out;
}

}  // namespace ntd
