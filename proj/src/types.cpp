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

#include "qsync/types.hpp"

#include <sstream>
#include <stdexcept>

namespace qsync {

namespace {

std::string describe_violation(const Eigen::Ref<const Eigen::MatrixXcd>& rho, double tol,
                               double psd_tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return "matrix is not square";
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    std::ostringstream os;
    os << "not Hermitian (deviation " << herm << ")";
    return os.str();
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os << "trace " << tr << " differs from 1";
    return os.str();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian_part(rho.eval()),
                                                         Eigen::EigenvaluesOnly);
  const double smallest = solver.eigenvalues().minCoeff();
  if (smallest < -psd_tol) {
    std::ostringstream os;
    os << "smallest eigenvalue " << smallest << " is negative";
    return os.str();
  }
  return {};
}

}  // namespace

void check_density_matrix(const Eigen::Ref<const Eigen::MatrixXcd>& rho, double tol,
                          double psd_tol) {
  if (auto why = describe_violation(rho, tol, psd_tol); !why.empty()) {
    throw std::invalid_argument("invalid density matrix: " + why);
  }
}

bool is_density_matrix(const Eigen::Ref<const Eigen::MatrixXcd>& rho, double tol,
                       double psd_tol) {
  return describe_violation(rho, tol, psd_tol).empty();
}

double trace_distance(const Eigen::Ref<const Eigen::MatrixXcd>& a,
                      const Eigen::Ref<const Eigen::MatrixXcd>& b) {
  const Eigen::MatrixXcd diff = hermitian_part((a - b).eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double operator_norm(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two paired points");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw std::invalid_argument("loglog_slope: non-positive value");
    design(i, 0) = std::log(x[i]);
    design(i, 1) = 1.0;
    rhs(i) = std::log(y[i]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return coef(0);
}

}  // namespace qsync
