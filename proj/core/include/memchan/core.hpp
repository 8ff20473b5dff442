/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_CORE_HPP
#define MEMCHAN_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace memchan {

using complexd = std::complex<double>;
using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;
using Rvec = Eigen::VectorXd;

// Global default numeric tolerance (1e-9 unless overridden, e.g. from the
// MEMCHAN_TOLERANCE environment variable by the CLI). Set once at startup;
// individual calls can pass an explicit tolerance instead.
double default_tolerance();
void set_default_tolerance(double tol);

//------------------------------------------------------------------------------
// Errors
//------------------------------------------------------------------------------

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Incompatible operator/space dimensions.
struct dimension_error : error {
  using error::error;
};

// A state/unitary/channel invariant failed; carries which invariant and the
// measured residual so borderline inputs are diagnosable.
struct validation_error : error {
  std::string invariant;
  double residual;
  validation_error(std::string inv, double res, const std::string& msg)
      : error(msg), invariant(std::move(inv)), residual(res) {}
};

// A caller violated an operation precondition (e.g. harness on a nonunital
// channel).
struct precondition_error : error {
  using error::error;
};

//------------------------------------------------------------------------------
// Elementary matrix helpers
//------------------------------------------------------------------------------

inline Cmat dagger(const Cmat& m) { return m.adjoint(); }

// Largest entrywise modulus; the residual metric used by all validators.
inline double max_abs(const Cmat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Cmat identity_matrix(Eigen::Index d);
Cmat pauli_x();
Cmat pauli_y();
Cmat pauli_z();

//------------------------------------------------------------------------------
// Bipartite product space (memory factor first, system factor second)
//------------------------------------------------------------------------------

enum class Factor { memory = 0, system = 1 };

class ProductSpace {
 public:
  ProductSpace(Eigen::Index dim_memory, Eigen::Index dim_system);

  Eigen::Index dim_memory() const { return dim_memory_; }
  Eigen::Index dim_system() const { return dim_system_; }
  Eigen::Index total_dim() const { return dim_memory_ * dim_system_; }
  Eigen::Index dim(Factor f) const {
    return f == Factor::memory ? dim_memory_ : dim_system_;
  }

  bool operator==(const ProductSpace& other) const = default;

 private:
  Eigen::Index dim_memory_;
  Eigen::Index dim_system_;
};

//------------------------------------------------------------------------------
// Tensor product and partial trace
//------------------------------------------------------------------------------

// Kronecker product, (a⊗b)[(i*rb+k),(j*cb+l)] = a(i,j)*b(k,l). The first
// argument is the memory factor under the ProductSpace convention.
Cmat tensor(const Cmat& a, const Cmat& b);

// Reduced matrix on the kept factor of a bipartite square matrix. Preserves
// the total trace. Throws dimension_error when the factor dimensions do not
// multiply to the matrix dimension.
Cmat partial_trace(const Cmat& m, const ProductSpace& space, Factor keep);

//------------------------------------------------------------------------------
// Hermitian eigendecomposition
//------------------------------------------------------------------------------

struct EighResult {
  Rvec eigenvalues;   // sorted descending
  Cmat eigenvectors;  // orthonormal columns, matching order
};

// Eigendecomposition of a Hermitian matrix (backed by Eigen's self-adjoint
// solver). Throws validation_error when the input is not Hermitian within
// tolerance.
EighResult eigh(const Cmat& m, double tol = default_tolerance());

// Sum of |eigenvalues| of a Hermitian matrix (Schatten 1-norm).
double trace_norm(const Cmat& hermitian, double tol = default_tolerance());

}  // namespace memchan

#endif  // MEMCHAN_CORE_HPP
