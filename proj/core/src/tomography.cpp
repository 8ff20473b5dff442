/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/tomography.hpp"

#include <cmath>

#include "memchan/rng.hpp"

namespace memchan {

namespace {
constexpr Eigen::Index kMaxUses = 1000000;  // transcript cap for one run
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

std::array<DensityOperator, 6> pauli_probes() {
  Cvec plus(2), minus(2), plus_i(2), minus_i(2), zero(2), one(2);
  plus << kInvSqrt2, kInvSqrt2;
  minus << kInvSqrt2, -kInvSqrt2;
  plus_i << kInvSqrt2, complexd(0, kInvSqrt2);
  minus_i << kInvSqrt2, complexd(0, -kInvSqrt2);
  zero << 1, 0;
  one << 0, 1;
  return {DensityOperator::pure(plus),   DensityOperator::pure(minus),
          DensityOperator::pure(plus_i), DensityOperator::pure(minus_i),
          DensityOperator::pure(zero),   DensityOperator::pure(one)};
}

Eigen::Vector3d bloch_vector(const DensityOperator& rho) {
  if (rho.dim() != 2) {
    throw dimension_error("bloch_vector: qubit states only");
  }
  Eigen::Vector3d r;
  r(0) = (pauli_x() * rho.matrix()).trace().real();
  r(1) = (pauli_y() * rho.matrix()).trace().real();
  r(2) = (pauli_z() * rho.matrix()).trace().real();
  return r;
}

DensityOperator state_from_bloch(const Eigen::Vector3d& r) {
  Cmat m = 0.5 * (Cmat::Identity(2, 2) + r(0) * pauli_x() + r(1) * pauli_y() +
                  r(2) * pauli_z());
  return DensityOperator(std::move(m));
}

ChoiMatrix choi_from_bloch_affine(const Eigen::Matrix3d& map,
                                  const Eigen::Vector3d& shift) {
  const std::array<Cmat, 3> sigma = {pauli_x(), pauli_y(), pauli_z()};
  const Cmat id2 = Cmat::Identity(2, 2);
  // C = (1/4)[I⊗I + (c·σ)⊗I + Σ_j ( Σ_k M_kj σ_k ) ⊗ σ_jᵀ]
  Cmat c = tensor(id2, id2);
  for (int k = 0; k < 3; ++k) {
    c += shift(k) * tensor(sigma[static_cast<size_t>(k)], id2);
  }
  for (int j = 0; j < 3; ++j) {
    Cmat image = Cmat::Zero(2, 2);
    for (int k = 0; k < 3; ++k) {
      image += map(k, j) * sigma[static_cast<size_t>(k)];
    }
    c += tensor(image, Cmat(sigma[static_cast<size_t>(j)].transpose()));
  }
  return ChoiMatrix{2, c / 4.0};
}

namespace {

// Measurement axes cycle x, y, z within each probe's shot budget.
struct BlochAccumulator {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();  // exact mode
  Eigen::Vector3d outcome_sum = Eigen::Vector3d::Zero();
  Eigen::Vector3i shots = Eigen::Vector3i::Zero();
  int uses = 0;
};

void record_use(BlochAccumulator& acc, const DensityOperator& output,
                TomographyMode mode, Rng& sampler) {
  const Eigen::Vector3d r = bloch_vector(output);
  if (mode == TomographyMode::exact) {
    acc.sum += r;
    ++acc.uses;
    return;
  }
  const int axis = acc.uses % 3;
  ++acc.uses;
  const double p_up = (1.0 + r(axis)) / 2.0;
  const double outcome = sampler.uniform() < p_up ? 1.0 : -1.0;
  acc.outcome_sum(axis) += outcome;
  acc.shots(axis) += 1;
}

Eigen::Vector3d mean_bloch(const BlochAccumulator& acc, TomographyMode mode) {
  if (mode == TomographyMode::exact) {
    return acc.uses > 0 ? Eigen::Vector3d(acc.sum / acc.uses)
                        : Eigen::Vector3d::Zero();
  }
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  for (int axis = 0; axis < 3; ++axis) {
    if (acc.shots(axis) > 0) r(axis) = acc.outcome_sum(axis) / acc.shots(axis);
  }
  return r;
}

}  // namespace

TomographyResult run_tomography(const MemoryDevice& dev,
                                const ProbeStrategy& strategy,
                                TomographyMode mode, bool reset_each_use,
                                bool project_to_cp) {
  if (dev.dim_system() != 2) {
    throw dimension_error("run_tomography: qubit-system devices only");
  }
  if (strategy.shots_per_probe < 1) {
    throw precondition_error("run_tomography: shots_per_probe must be >= 1");
  }
  const Eigen::Index total_uses =
      static_cast<Eigen::Index>(strategy.shots_per_probe) * 6;
  if (total_uses > kMaxUses) {
    throw precondition_error("run_tomography: 6N exceeds the transcript cap");
  }

  const std::array<DensityOperator, 6> probes = pauli_probes();
  Rng rng(strategy.seed);
  Rng order_rng = rng.child(1);
  Rng sample_rng = rng.child(2);

  std::array<BlochAccumulator, 6> acc;
  MemoryDevice current = dev;

  auto feed = [&](int probe_index) {
    if (reset_each_use) current = dev;
    UseResult r = use_once(current, probes[static_cast<size_t>(probe_index)]);
    record_use(acc[static_cast<size_t>(probe_index)], r.output, mode,
               sample_rng);
    current = std::move(r.next);
  };

  if (strategy.kind == ProbeStrategy::Kind::sequential) {
    for (int p = 0; p < 6; ++p) {
      for (int i = 0; i < strategy.shots_per_probe; ++i) feed(p);
    }
  } else {
    for (Eigen::Index i = 0; i < total_uses; ++i) feed(order_rng.uniform_int(6));
  }

  TomographyResult result;
  result.strategy = strategy;
  result.mode = mode;

  // least-squares affine fit over the recorded (input, mean output) pairs
  std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> pairs;
  for (int p = 0; p < 6; ++p) {
    result.probe_counts[static_cast<size_t>(p)] =
        acc[static_cast<size_t>(p)].uses;
    result.probe_means[static_cast<size_t>(p)] =
        mean_bloch(acc[static_cast<size_t>(p)], mode);
    if (acc[static_cast<size_t>(p)].uses == 0) continue;  // unseen probe
    pairs.emplace_back(bloch_vector(probes[static_cast<size_t>(p)]),
                       result.probe_means[static_cast<size_t>(p)]);
  }
  Eigen::MatrixXd design(3 * pairs.size(), 12);
  Eigen::VectorXd rhs(3 * pairs.size());
  design.setZero();
  for (size_t p = 0; p < pairs.size(); ++p) {
    for (int k = 0; k < 3; ++k) {
      const Eigen::Index row = static_cast<Eigen::Index>(3 * p) + k;
      design.block(row, 3 * k, 1, 3) = pairs[p].first.transpose();
      design(row, 9 + k) = 1.0;
      rhs(row) = pairs[p].second(k);
    }
  }
  const Eigen::VectorXd theta =
      design.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

  for (int k = 0; k < 3; ++k) {
    result.bloch_map.row(k) = theta.segment(3 * k, 3).transpose();
    result.bloch_shift(k) = theta(9 + k);
  }
  result.raw_choi = choi_from_bloch_affine(result.bloch_map, result.bloch_shift);

  const double tol = default_tolerance();
  EighResult eig = eigh(result.raw_choi.matrix, tol);
  result.cp = eig.eigenvalues.minCoeff() >= -tol;

  ChoiMatrix effective = result.raw_choi;
  if (!result.cp && project_to_cp) {
    // clip negative eigenvalues, renormalize the trace
    Cmat proj = Cmat::Zero(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
      const double lambda = std::max(eig.eigenvalues(i), 0.0);
      proj += lambda * eig.eigenvectors.col(i) *
              eig.eigenvectors.col(i).adjoint();
    }
    proj /= proj.trace().real();
    effective = ChoiMatrix{2, std::move(proj)};
    result.projected = true;
  }
  if (result.cp) {
    result.estimated = choi_to_kraus(effective, 10 * tol);
  } else if (result.projected) {
    // clipping + trace renormalization can leave the map slightly
    // non-trace-preserving; only attach a Kraus form when it validates
    try {
      result.estimated = choi_to_kraus(effective, 10 * tol);
    } catch (const validation_error&) {
    }
  }

  result.dist_to_identity =
      choi_distance(effective, kraus_to_choi(identity_channel(2)));
  result.dist_to_depolarizing =
      choi_distance(effective, kraus_to_choi(depolarizing(1.0)));
  return result;
}

StrategyComparison compare_strategies(const MemoryDevice& dev,
                                      int shots_per_probe, uint64_t seed,
                                      TomographyMode mode,
                                      bool reset_each_use) {
  StrategyComparison cmp;
  ProbeStrategy seq{ProbeStrategy::Kind::sequential, shots_per_probe, seed};
  ProbeStrategy rnd{ProbeStrategy::Kind::randomized, shots_per_probe, seed};
  cmp.sequential = run_tomography(dev, seq, mode, reset_each_use);
  cmp.randomized = run_tomography(dev, rnd, mode, reset_each_use);
  cmp.inter_estimate_distance =
      choi_distance(cmp.sequential.raw_choi, cmp.randomized.raw_choi);
  return cmp;
}

}  // namespace memchan
