// ntd/tensor.hpp

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

// Dense third-order tensors and the contractions used by the Tucker solver.
//
// Storage is column-major: entry (j, k, l) lives at j + J * (k + K * l), so
// the mode-1 unfolding and the (J*K) x L reshaping are plain views of the
// data. Unfoldings follow the Kolda-Bader column convention: the remaining
// indices vary with the lower-numbered mode fastest, e.g. column k + K * l of
// X_(1), column j + J * l of X_(2) and column j + J * k of X_(3).
//
// No function in this header forms a Kronecker product.

#ifndef NTD_TENSOR_HPP_
#define NTD_TENSOR_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace ntd {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;

struct Dims3 {
  Index j = 0;
  Index k = 0;
  Index l = 0;

  Index size() const { return j * k * l; }
  // 1-based, mode must be 1, 2 or 3.
  Index operator[](int mode) const;
  Dims3 with(int mode, Index extent) const;
  std::string str() const;

  friend bool operator==(const Dims3&, const Dims3&) = default;
};

// Throws ArgumentError unless mode is 1, 2 or 3.
void check_mode(int mode);

class Tensor3 {
 public:
  using ConstMatrixMap = Eigen::Map<const Matrix>;
  using MatrixMap = Eigen::Map<Matrix>;

  Tensor3() = default;
  explicit Tensor3(Dims3 dims, double fill = 0.0);
  // `data` is in the internal column-major order.
  Tensor3(Dims3 dims, std::vector<double> data);

  // C order: j slowest, l fastest (the order used by files and numpy).
  static Tensor3 from_row_major(Dims3 dims, std::span<const double> values);
  std::vector<double> to_row_major() const;

  const Dims3& dims() const { return dims_; }
  Index size() const { return dims_.size(); }

  double operator()(Index j, Index k, Index l) const {
    return data_[static_cast<std::size_t>(j + dims_.j * (k + dims_.k * l))];
  }
  double& operator()(Index j, Index k, Index l) {
    return data_[static_cast<std::size_t>(j + dims_.j * (k + dims_.k * l))];
  }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }
  const std::vector<double>& values() const { return data_; }

  // J x (K*L): identical to the mode-1 unfolding.
  ConstMatrixMap as_mode1() const;
  MatrixMap as_mode1();
  // (J*K) x L.
  ConstMatrixMap as_mode3_transposed() const;
  MatrixMap as_mode3_transposed();
  // Frontal slice l as a J x K matrix.
  ConstMatrixMap frontal(Index l) const;
  MatrixMap frontal(Index l);

  double min() const;
  double max() const;
  double sum() const;
  bool all_finite() const;

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  Dims3 dims_{};
  std::vector<double> data_;
};

// Mode-n unfolding, shape (dims[mode], product of the other two).
Matrix matricize(const Tensor3& t, int mode);

// Inverse of matricize.
Tensor3 fold(const Matrix& m, int mode, Dims3 dims);

// t x_mode m. Requires m.cols() == t.dims()[mode].
Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode);

// Same, with m transposed (t x_mode m^T), without copying m.
Tensor3 mode_product_transposed(const Tensor3& t, const Matrix& m, int mode);

// g x1 w x2 h x3 q, applied in mode order 1, 2, 3.
Tensor3 multiway_product(const Tensor3& g, const Matrix& w, const Matrix& h,
                         const Matrix& q);

// g x1 w^T x2 h^T x3 q^T, applied in mode order 1, 2, 3.
Tensor3 multiway_product_transposed(const Tensor3& g, const Matrix& w,
                                    const Matrix& h, const Matrix& q);

// Unfolding along `mode` of g multiplied on its two other modes by a and b
// (in increasing mode order): for mode 1 this is (g x2 a x3 b)_(1), for
// mode 2 (g x1 a x3 b)_(2), for mode 3 (g x1 a x2 b)_(3).
Matrix contracted_unfolding(const Tensor3& g, const Matrix& a, const Matrix& b,
                            int mode);

// Elementwise kernels. Binary operations require equal shapes.
// power(x, 0) is the constant one without evaluating 0^0; a negative
// exponent requires strictly positive input (DomainError otherwise).
// divide throws DomainError on a zero denominator entry.
Tensor3 power(const Tensor3& t, double p);
Matrix power(const Matrix& m, double p);
Tensor3 multiply(const Tensor3& a, const Tensor3& b);
Matrix multiply(const Matrix& a, const Matrix& b);
Tensor3 divide(const Tensor3& a, const Tensor3& b);
Matrix divide(const Matrix& a, const Matrix& b);
Tensor3 clamp_min(const Tensor3& t, double floor);
Matrix clamp_min(const Matrix& m, double floor);

namespace kernels {
// In-place span forms used by the solver to avoid temporaries.
void power_inplace(std::span<double> x, double p);
void multiply_inplace(std::span<double> x, std::span<const double> y);
void divide_inplace(std::span<double> x, std::span<const double> y);
void clamp_min_inplace(std::span<double> x, double floor);
}  // namespace kernels

}  // namespace ntd

#endif  // NTD_TENSOR_HPP_
