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

#include "noisypaper/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "noisypaper/errors.hpp"

namespace noisypaper {

double determinant(const SquareArray<1>& m) noexcept { return m[0][0]; }

double determinant(const SquareArray<2>& m) noexcept {
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

double determinant(const SquareArray<3>& m) noexcept {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double determinant(const SquareArray<4>& m) noexcept {
  // Expansion along the first row.
  double det = 0.0;
  double sign = 1.0;
  for (std::size_t col = 0; col < 4; ++col) {
    SquareArray<3> sub{};
    for (std::size_t r = 1; r < 4; ++r) {
      std::size_t c3 = 0;
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == col) continue;
        sub[r - 1][c3++] = m[r][c];
      }
    }
    det += sign * m[0][col] * determinant(sub);
    sign = -sign;
  }
  return det;
}

namespace {

template <std::size_t N>
SquareArray<N> to_array(const Eigen::MatrixXd& m) {
  SquareArray<N> a{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      a[i][j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return a;
}

}  // namespace

double determinant(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::RangeError, "determinant of a non-square matrix");
  switch (m.rows()) {
    case 1: return determinant(to_array<1>(m));
    case 2: return determinant(to_array<2>(m));
    case 3: return determinant(to_array<3>(m));
    case 4: return determinant(to_array<4>(m));
    default:
      throw Error(ErrorKind::RangeError,
                  "cofactor determinant supports 1..4 dimensions, got " +
                      std::to_string(m.rows()));
  }
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double hadamard_scale(const Eigen::MatrixXd& m) noexcept {
  double s = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) s *= m(i, i);
  return s;
}

CovMatrix::CovMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1 || m_.rows() > 4)
    throw Error(ErrorKind::RangeError, "covariance must be square with dimension 1..4");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
      if (!std::isfinite(m_(i, j)) || std::abs(m_(i, j) - m_(j, i)) > 1e-12 * scale)
        throw Error(ErrorKind::RangeError, "covariance is not symmetric");
      m_(j, i) = m_(i, j);
    }
  }
}

CovMatrix::CovMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : CovMatrix([&] {
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd m(n, n);
        Eigen::Index i = 0;
        for (const auto& row : rows) {
          if (static_cast<Eigen::Index>(row.size()) != n)
            throw Error(ErrorKind::RangeError, "covariance rows must all have length dim");
          Eigen::Index j = 0;
          for (double v : row) m(i, j++) = v;
          ++i;
        }
        return m;
      }()) {}

bool CovMatrix::is_psd(double tol) const {
  const double scale = std::max(m_.diagonal().maxCoeff(), 0.0);
  return min_eigenvalue() >= -tol * std::max(scale, 1e-300);
}

CovMatrix CovMatrix::principal(std::span<const int> idx) const {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) sub(a, b) = m_(idx[a], idx[b]);
  return CovMatrix(std::move(sub));
}

}  // namespace noisypaper
