/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_TOMOGRAPHY_HPP
#define MEMCHAN_TOMOGRAPHY_HPP

#include <array>

#include "memchan/device.hpp"

namespace memchan {

//------------------------------------------------------------------------------
// Six-probe qubit process tomography against a (possibly memoryful) device
//------------------------------------------------------------------------------

// The six eigenstates of σx, σy, σz as pure states, in the fixed order
// +x, −x, +y, −y, +z, −z. They average to the total mixture.
std::array<DensityOperator, 6> pauli_probes();

Eigen::Vector3d bloch_vector(const DensityOperator& rho);
DensityOperator state_from_bloch(const Eigen::Vector3d& r);

struct ProbeStrategy {
  enum class Kind { sequential, randomized };
  Kind kind = Kind::sequential;
  int shots_per_probe = 100;  // N; total uses = 6N either way
  uint64_t seed = 0;          // drives the randomized ordering and sampling
};

enum class TomographyMode { exact, sampled };

struct TomographyResult {
  Eigen::Matrix3d bloch_map = Eigen::Matrix3d::Zero();
  Eigen::Vector3d bloch_shift = Eigen::Vector3d::Zero();
  std::array<Eigen::Vector3d, 6> probe_means{};  // mean output Bloch per probe
  std::array<int, 6> probe_counts{};             // uses seen per probe
  ChoiMatrix raw_choi{2, Cmat()};  // from the affine fit; may be non-CP
  bool cp = false;                 // raw Choi PSD within tolerance?
  bool projected = false;          // nearest-CP projection applied
  std::optional<KrausChannel> estimated;  // present iff cp (or projected)
  double dist_to_identity = 0.0;          // Choi distances on the raw/projected
  double dist_to_depolarizing = 0.0;      //   estimate, flagged via `cp`
  ProbeStrategy strategy;
  TomographyMode mode = TomographyMode::exact;
};

// Feeds 6N probes through the device in strategy order (sequential: all N of
// probe 1, then probe 2, …, with the memory carried across blocks; randomized:
// 6N uniform seeded draws). Exact mode records exact output Bloch vectors;
// sampled mode draws one Pauli measurement per use, shots split evenly over
// the three axes. The affine Bloch map is fit by least squares over the six
// (input, mean output) pairs and converted to a Choi matrix. Non-CP estimates
// are reported raw unless `project_to_cp` asks for the clipped projection.
// `reset_each_use` restores the initial memory before every use (the
// memoryless reference model).
TomographyResult run_tomography(const MemoryDevice& dev,
                                const ProbeStrategy& strategy,
                                TomographyMode mode,
                                bool reset_each_use = false,
                                bool project_to_cp = false);

struct StrategyComparison {
  TomographyResult sequential;
  TomographyResult randomized;
  double inter_estimate_distance = 0.0;  // Choi distance between the estimates
};

// Runs both probe orderings with the same shot budget and seed.
StrategyComparison compare_strategies(const MemoryDevice& dev,
                                      int shots_per_probe, uint64_t seed,
                                      TomographyMode mode = TomographyMode::exact,
                                      bool reset_each_use = false);

// Choi matrix of the qubit channel with Bloch action r ↦ Mr + c.
ChoiMatrix choi_from_bloch_affine(const Eigen::Matrix3d& map,
                                  const Eigen::Vector3d& shift);

}  // namespace memchan

#endif  // MEMCHAN_TOMOGRAPHY_HPP
