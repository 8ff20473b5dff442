/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/states.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace memchan {

namespace {

std::string residual_msg(const std::string& what, const std::string& invariant,
                         double residual, double tol) {
  std::ostringstream oss;
  oss << what << ": " << invariant << " violated (residual " << residual
      << ", tolerance " << tol << ")";
  return oss.str();
}

}  // namespace

DensityOperator::DensityOperator(Cmat matrix, double tolerance)
    : mat_(std::move(matrix)), tol_(tolerance) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw dimension_error("DensityOperator: matrix must be square, d >= 1");
  }
  const double herm = max_abs(Cmat(mat_ - mat_.adjoint()));
  if (herm > tol_) {
    throw validation_error("hermitian", herm,
                           residual_msg("DensityOperator", "hermiticity", herm, tol_));
  }
  const double tr_res = std::abs(mat_.trace() - complexd(1.0, 0.0));
  if (tr_res > tol_) {
    throw validation_error("unit-trace", tr_res,
                           residual_msg("DensityOperator", "unit trace", tr_res, tol_));
  }
  const EighResult eig = eigh(mat_, tol_);
  const double min_eig = eig.eigenvalues(mat_.rows() - 1);
  if (min_eig < -tol_) {
    throw validation_error("positive-semidefinite", -min_eig,
                           residual_msg("DensityOperator", "positivity", -min_eig, tol_));
  }
}

DensityOperator DensityOperator::pure(const Cvec& ket, double tolerance) {
  const double norm = ket.norm();
  if (std::abs(norm - 1.0) > tolerance) {
    throw validation_error("unit-norm", std::abs(norm - 1.0),
                           "DensityOperator::pure: ket is not normalized");
  }
  return DensityOperator(ket * ket.adjoint(), tolerance);
}

DensityOperator DensityOperator::maximally_mixed(Eigen::Index d) {
  return DensityOperator(Cmat::Identity(d, d) / static_cast<double>(d));
}

DensityOperator DensityOperator::diagonal(const Rvec& probs, double tolerance) {
  Cmat m = Cmat::Zero(probs.size(), probs.size());
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    m(i, i) = probs(i);
  }
  return DensityOperator(std::move(m), tolerance);
}

UnitaryOperator::UnitaryOperator(Cmat matrix, double tolerance)
    : mat_(std::move(matrix)), tol_(tolerance) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw dimension_error("UnitaryOperator: matrix must be square, d >= 1");
  }
  const Cmat gram = mat_.adjoint() * mat_;
  const double res = max_abs(Cmat(gram - Cmat::Identity(mat_.rows(), mat_.cols())));
  if (res > tol_) {
    throw validation_error("unitary", res,
                           residual_msg("UnitaryOperator", "U†U = I", res, tol_));
  }
}

DensityOperator validate_density(const Cmat& m, double tolerance) {
  return DensityOperator(m, tolerance);
}

UnitaryOperator validate_unitary(const Cmat& m, double tolerance) {
  return UnitaryOperator(m, tolerance);
}

namespace {

// Shared eigenvalue-based entropy; expects eigenvalues of a unit-trace PSD
// matrix up to `tol` noise.
double entropy_from_eigenvalues(const Rvec& lambda, double tol) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    double l = lambda(i);
    if (l < 0.0) {
      if (l < -tol) {
        throw validation_error("positive-semidefinite", -l,
                               "entropy: eigenvalue below -tolerance");
      }
      l = 0.0;
    }
    if (l > 1.0) l = 1.0;
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_from_eigenvalues(eigh(rho.matrix(), rho.tolerance()).eigenvalues,
                                  rho.tolerance());
}

double von_neumann_entropy(const Cmat& rho, double tol) {
  return entropy_from_eigenvalues(eigh(rho, tol).eigenvalues, tol);
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& omega) {
  if (rho.dim() != omega.dim()) {
    throw dimension_error("relative_entropy: dimension mismatch");
  }
  const double tol = std::max(rho.tolerance(), omega.tolerance());
  const EighResult wq = eigh(omega.matrix(), tol);

  // Weight of rho outside the support of omega decides the +infinity case.
  double tr_rho_log_omega = 0.0;
  double kernel_weight = 0.0;
  for (Eigen::Index i = 0; i < wq.eigenvalues.size(); ++i) {
    const double mu = wq.eigenvalues(i);
    const Cvec v = wq.eigenvectors.col(i);
    const double overlap = std::real((v.adjoint() * rho.matrix() * v)(0, 0));
    if (mu <= tol) {
      kernel_weight += std::max(overlap, 0.0);
    } else {
      tr_rho_log_omega += overlap * std::log2(mu);
    }
  }
  if (kernel_weight > tol) {
    return std::numeric_limits<double>::infinity();
  }

  const double value = -von_neumann_entropy(rho) - tr_rho_log_omega;
  // Klein's inequality guarantees nonnegativity; clip pure numerical noise.
  if (value < 0.0 && value > -1e-9) return 0.0;
  return value;
}

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

}  // namespace memchan
