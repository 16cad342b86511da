// Copyright 2026 The qsync Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>
#include <numbers>

#include <Eigen/Dense>

namespace qsync {

template <typename Scalar>
using BasicComplex = std::complex<Scalar>;

template <typename Scalar, int Rows, int Cols = Rows>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Rows, Cols>;

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix3c = Eigen::Matrix3cd;
using Matrix4c = Eigen::Matrix4cd;

/// Dense density matrix of runtime dimension (2 for a qubit, 3 for the spin,
/// 4 for the encoded two-qubit register).
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Throws std::invalid_argument unless rho is Hermitian, unit trace and has
/// smallest eigenvalue >= -psd_tol.
void check_density_matrix(const Eigen::Ref<const Eigen::MatrixXcd>& rho, double tol = 1e-12,
                          double psd_tol = 1e-10);

bool is_density_matrix(const Eigen::Ref<const Eigen::MatrixXcd>& rho, double tol = 1e-12,
                       double psd_tol = 1e-10);

template <typename Derived>
typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / 2.0;
}

template <typename Derived>
typename Derived::RealScalar purity(const Eigen::MatrixBase<Derived>& rho) {
  return (rho * rho).trace().real();
}

/// Trace distance (1/2)||a - b||_1 between two Hermitian matrices.
double trace_distance(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                      const Eigen::Ref<const Eigen::MatrixXcd>& b);

/// Largest singular value.
double operator_norm(const Eigen::Ref<const Eigen::MatrixXcd>& m);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace qsync
