// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

#include <Eigen/Core>

namespace noisypaper {

/// Square array used for the fixed-size cofactor determinants.
template <std::size_t N>
using SquareArray = std::array<std::array<double, N>, N>;

double determinant(const SquareArray<1>& m) noexcept;
double determinant(const SquareArray<2>& m) noexcept;
double determinant(const SquareArray<3>& m) noexcept;
double determinant(const SquareArray<4>& m) noexcept;

/// Cofactor determinant of a 1x1..4x4 matrix. Larger inputs throw RangeError.
double determinant(const Eigen::MatrixXd& m);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& m);

/// Product of the diagonal. Upper-bounds the determinant of a PSD matrix, so
/// det / hadamard_scale is a scale-free degeneracy measure in [0, 1].
double hadamard_scale(const Eigen::MatrixXd& m) noexcept;

/// A symmetric covariance matrix of dimension 1..4.
///
/// Construction rejects non-square, oversized, or visibly asymmetric input
/// (RangeError); the PSD property is queried rather than enforced, because
/// empirical and derived covariances are legitimately checked later.
class CovMatrix {
 public:
  CovMatrix() = default;
  explicit CovMatrix(Eigen::MatrixXd m);
  CovMatrix(std::initializer_list<std::initializer_list<double>> rows);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

  double determinant() const { return noisypaper::determinant(m_); }
  double min_eigenvalue() const { return noisypaper::min_eigenvalue(m_); }

  /// Eigenvalues >= -tol * max(diagonal).
  bool is_psd(double tol = 1e-10) const;

  /// Principal submatrix on the given (ordered) index list.
  CovMatrix principal(std::span<const int> idx) const;

  friend bool operator==(const CovMatrix& a, const CovMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace noisypaper
