/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_RNG_HPP
#define MEMCHAN_RNG_HPP

#include <cstdint>
#include <vector>

#include "memchan/states.hpp"

namespace memchan {

// Deterministic, splittable generator (splitmix64 core, Box-Muller normals).
// Hand-rolled rather than <random> so that seeded results are bit-identical
// across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();
  double uniform();              // [0, 1)
  double normal();               // standard normal
  int uniform_int(int n);        // uniform over {0, ..., n-1}

  // Independent child stream; children with distinct tags never collide with
  // each other or with the parent.
  Rng child(uint64_t tag) const;

 private:
  uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Complex matrix with i.i.d. standard complex Gaussian entries.
Cmat random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Unitary obtained by QR orthonormalization of a seeded Gaussian matrix.
// Reproducible and adequately spread for property tests; no exact Haar claim.
UnitaryOperator random_unitary(Eigen::Index d, Rng& rng);

// Full-rank random density operator G G† / Tr[G G†].
DensityOperator random_density(Eigen::Index d, Rng& rng);

DensityOperator random_pure(Eigen::Index d, Rng& rng);

// Probability vector of length k, uniform over the simplex interior.
std::vector<double> random_prob_vector(int k, Rng& rng);

// Random density operator with a prescribed diagonal; off-diagonal coherences
// come from a random PSD correlation profile.
DensityOperator random_density_with_diagonal(const std::vector<double>& diag,
                                             Rng& rng);

}  // namespace memchan

#endif  // MEMCHAN_RNG_HPP
