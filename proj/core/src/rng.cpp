/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/rng.hpp"

#include <cmath>

namespace memchan {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  // 53 random bits into [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

int Rng::uniform_int(int n) {
  return static_cast<int>(next_u64() % static_cast<uint64_t>(n));
}

Rng Rng::child(uint64_t tag) const {
  uint64_t s = state_ ^ (0xd2b74407b1ce6e93ULL * (tag + 1));
  // burn one round so children starting from equal states diverge
  splitmix64(s);
  return Rng(s);
}

Cmat random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Cmat g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = complexd(rng.normal(), rng.normal());
    }
  }
  return g;
}

UnitaryOperator random_unitary(Eigen::Index d, Rng& rng) {
  const Cmat g = random_gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Cmat> qr(g);
  Cmat q = qr.householderQ();
  // Fix column phases against the R diagonal so the result does not depend on
  // Householder sign conventions.
  const Cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const complexd rjj = r(j, j);
    if (std::abs(rjj) > 0.0) {
      q.col(j) *= rjj / std::abs(rjj);
    }
  }
  return UnitaryOperator(std::move(q));
}

DensityOperator random_density(Eigen::Index d, Rng& rng) {
  const Cmat g = random_gaussian_matrix(d, d, rng);
  Cmat w = g * g.adjoint();
  w /= w.trace().real();
  // symmetrize away rounding asymmetry before validation
  w = (w + Cmat(w.adjoint())) / 2.0;
  return DensityOperator(std::move(w));
}

DensityOperator random_pure(Eigen::Index d, Rng& rng) {
  Cvec ket(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    ket(i) = complexd(rng.normal(), rng.normal());
  }
  ket /= ket.norm();
  return DensityOperator::pure(ket);
}

std::vector<double> random_prob_vector(int k, Rng& rng) {
  std::vector<double> p(k);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    p[i] = -std::log(1.0 - rng.uniform());
    sum += p[i];
  }
  for (int i = 0; i < k; ++i) p[i] /= sum;
  return p;
}

DensityOperator random_density_with_diagonal(const std::vector<double>& diag,
                                             Rng& rng) {
  const Eigen::Index d = static_cast<Eigen::Index>(diag.size());
  const Cmat g = random_gaussian_matrix(d, d, rng);
  Cmat w = g * g.adjoint();
  // scale rows/columns so the diagonal matches exactly: the congruence
  // D W D with D = diag(sqrt(p_i / w_ii)) stays PSD
  Cmat out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const double scale = std::sqrt(diag[static_cast<size_t>(i)] *
                                     diag[static_cast<size_t>(j)] /
                                     (w(i, i).real() * w(j, j).real()));
      out(i, j) = w(i, j) * scale;
    }
  }
  out = (out + Cmat(out.adjoint())) / 2.0;
  return DensityOperator(std::move(out));
}

}  // namespace memchan
