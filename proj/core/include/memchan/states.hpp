/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_STATES_HPP
#define MEMCHAN_STATES_HPP

#include "memchan/core.hpp"

namespace memchan {

//------------------------------------------------------------------------------
// Density operators
//------------------------------------------------------------------------------

// Positive semidefinite, unit-trace, Hermitian matrix. Construction validates
// all three invariants within `tolerance`; a failed invariant throws
// validation_error carrying the measured residual.
class DensityOperator {
 public:
  explicit DensityOperator(Cmat matrix, double tolerance = default_tolerance());

  const Cmat& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double tolerance() const { return tol_; }

  static DensityOperator pure(const Cvec& ket,
                              double tolerance = default_tolerance());
  static DensityOperator maximally_mixed(Eigen::Index d);
  // Diagonal state from a probability vector.
  static DensityOperator diagonal(const Rvec& probs,
                                  double tolerance = default_tolerance());

 private:
  Cmat mat_;
  double tol_;
};

//------------------------------------------------------------------------------
// Unitary operators
//------------------------------------------------------------------------------

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Cmat matrix, double tolerance = default_tolerance());

  const Cmat& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double tolerance() const { return tol_; }

 private:
  Cmat mat_;
  double tol_;
};

// Named validators (same checks as the constructors).
DensityOperator validate_density(const Cmat& m,
                                 double tolerance = default_tolerance());
UnitaryOperator validate_unitary(const Cmat& m,
                                 double tolerance = default_tolerance());

//------------------------------------------------------------------------------
// Entropies (base-2 logarithms throughout: entropies are in bits)
//------------------------------------------------------------------------------

// S(rho) = -sum_i l_i log2 l_i with 0 log 0 := 0. Eigenvalues in
// [-tolerance, 0) are clamped to 0 so PSD noise cannot produce NaN.
double von_neumann_entropy(const DensityOperator& rho);

// Entropy of a raw Hermitian unit-trace matrix (no state validation); used
// where the caller already knows the matrix is a state up to numerics.
double von_neumann_entropy(const Cmat& rho, double tol = default_tolerance());

// S(rho||omega) = Tr[rho (log rho - log omega)] in bits. Returns +infinity
// when the support of rho is not contained in the support of omega.
double relative_entropy(const DensityOperator& rho, const DensityOperator& omega);

// Binary entropy h(p) = -p log2 p - (1-p) log2 (1-p).
double binary_entropy(double p);

}  // namespace memchan

#endif  // MEMCHAN_STATES_HPP
