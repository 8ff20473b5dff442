/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/core.hpp"

#include <atomic>
#include <sstream>

namespace memchan {

namespace {
std::atomic<double> g_default_tolerance{1e-9};
}

double default_tolerance() { return g_default_tolerance.load(); }

void set_default_tolerance(double tol) {
  if (!(tol > 0.0)) {
    throw error("default tolerance must be positive");
  }
  g_default_tolerance.store(tol);
}

Cmat identity_matrix(Eigen::Index d) { return Cmat::Identity(d, d); }

Cmat pauli_x() {
  Cmat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Cmat pauli_y() {
  Cmat m(2, 2);
  m << 0, complexd(0, -1), complexd(0, 1), 0;
  return m;
}

Cmat pauli_z() {
  Cmat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ProductSpace::ProductSpace(Eigen::Index dim_memory, Eigen::Index dim_system)
    : dim_memory_(dim_memory), dim_system_(dim_system) {
  if (dim_memory < 1 || dim_system < 1) {
    throw dimension_error("ProductSpace factors must have dimension >= 1");
  }
}

Cmat tensor(const Cmat& a, const Cmat& b) {
  Cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Cmat partial_trace(const Cmat& m, const ProductSpace& space, Factor keep) {
  const Eigen::Index dm = space.dim_memory();
  const Eigen::Index ds = space.dim_system();
  if (m.rows() != m.cols()) {
    throw dimension_error("partial_trace: matrix is not square");
  }
  if (m.rows() != space.total_dim()) {
    std::ostringstream oss;
    oss << "partial_trace: matrix dimension " << m.rows()
        << " does not equal factor product " << dm << "*" << ds;
    throw dimension_error(oss.str());
  }

  if (keep == Factor::system) {
    // trace out memory: out(s,s') = sum_m m[(m,s),(m,s')]
    Cmat out = Cmat::Zero(ds, ds);
    for (Eigen::Index s = 0; s < ds; ++s) {
      for (Eigen::Index t = 0; t < ds; ++t) {
        complexd acc = 0;
        for (Eigen::Index k = 0; k < dm; ++k) {
          acc += m(k * ds + s, k * ds + t);
        }
        out(s, t) = acc;
      }
    }
    return out;
  }
  // trace out system: out(m,m') = sum_s m[(m,s),(m',s)]
  Cmat out = Cmat::Zero(dm, dm);
  for (Eigen::Index k = 0; k < dm; ++k) {
    for (Eigen::Index l = 0; l < dm; ++l) {
      complexd acc = 0;
      for (Eigen::Index s = 0; s < ds; ++s) {
        acc += m(k * ds + s, l * ds + s);
      }
      out(k, l) = acc;
    }
  }
  return out;
}

EighResult eigh(const Cmat& m, double tol) {
  if (m.rows() != m.cols()) {
    throw dimension_error("eigh: matrix is not square");
  }
  const double herm_residual = max_abs(Cmat(m - m.adjoint()));
  if (herm_residual > tol) {
    throw validation_error("hermitian", herm_residual,
                           "eigh: input is not Hermitian (residual " +
                               std::to_string(herm_residual) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Cmat> solver(m);
  if (solver.info() != Eigen::Success) {
    throw error("eigh: eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index d = m.rows();
  EighResult out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

double trace_norm(const Cmat& hermitian, double tol) {
  return eigh(hermitian, tol).eigenvalues.cwiseAbs().sum();
}

}  // namespace memchan
