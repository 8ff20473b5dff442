/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/repeatability.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "memchan/rng.hpp"
#include "memchan/tomography.hpp"

namespace memchan {

MemoryDevice controlled_u_device(const RandomUnitarySpec& spec,
                                 const std::optional<Cmat>& memory_override) {
  const Eigen::Index dm = spec.term_count();
  const Eigen::Index ds = spec.system_dim();

  Cmat u = Cmat::Zero(dm * ds, dm * ds);
  for (Eigen::Index j = 0; j < dm; ++j) {
    u.block(j * ds, j * ds, ds, ds) = spec.unitaries()[static_cast<size_t>(j)].matrix();
  }

  Cmat xi;
  if (memory_override) {
    xi = *memory_override;
    if (xi.rows() != dm || xi.cols() != dm) {
      throw dimension_error(
          "controlled_u_device: memory override dimension mismatch");
    }
    for (Eigen::Index j = 0; j < dm; ++j) {
      const double drift =
          std::abs(xi(j, j) - complexd(spec.probs()[static_cast<size_t>(j)], 0.0));
      if (drift > 1e-12) {
        throw validation_error(
            "memory-diagonal", drift,
            "controlled_u_device: memory diagonal must equal the mixing "
            "probabilities");
      }
    }
  } else {
    xi = Cmat::Zero(dm, dm);
    for (Eigen::Index j = 0; j < dm; ++j) {
      xi(j, j) = spec.probs()[static_cast<size_t>(j)];
    }
  }

  // DensityOperator validation rejects overrides that are not PSD
  return MemoryDevice(UnitaryOperator(std::move(u)), ProductSpace(dm, ds),
                      DensityOperator(std::move(xi)));
}

InputSource InputSource::fixed_state(DensityOperator state) {
  return InputSource(Kind::fixed, std::move(state), 0);
}

InputSource InputSource::seeded_random(uint64_t seed) {
  return InputSource(Kind::seeded_random, std::nullopt, seed);
}

InputSource InputSource::worst_of_set() {
  return InputSource(Kind::worst_of_set, std::nullopt, 0);
}

namespace {

std::vector<DensityOperator> probe_set_with_mixture() {
  const std::array<DensityOperator, 6> probes = pauli_probes();
  std::vector<DensityOperator> set(probes.begin(), probes.end());
  set.push_back(DensityOperator::maximally_mixed(2));
  return set;
}

double deviation_from_target(const MemoryDevice& dev, const ChoiMatrix& target) {
  return choi_distance(kraus_to_choi(induced_channel(dev)), target);
}

}  // namespace

RepeatabilityReport check_repeatable(const MemoryDevice& dev,
                                     const KrausChannel& target, int n,
                                     const InputSource& source,
                                     double threshold) {
  if (target.dim() != dev.dim_system()) {
    throw dimension_error("check_repeatable: target/system dimension mismatch");
  }
  if (source.kind() == InputSource::Kind::fixed &&
      source.fixed().dim() != dev.dim_system()) {
    throw dimension_error("check_repeatable: fixed input dimension mismatch");
  }
  if (source.kind() == InputSource::Kind::worst_of_set && dev.dim_system() != 2) {
    throw precondition_error(
        "check_repeatable: worst-of-set inputs require a qubit system");
  }

  const ChoiMatrix target_choi = kraus_to_choi(target);
  std::vector<DensityOperator> probe_set;
  if (source.kind() == InputSource::Kind::worst_of_set) {
    probe_set = probe_set_with_mixture();
  }
  Rng rng(source.seed());

  RepeatabilityReport report;
  report.n_requested = n;
  report.threshold = threshold;

  MemoryDevice current = dev;
  for (int step = 1; step <= n; ++step) {
    const double dev_k = deviation_from_target(current, target_choi);
    report.per_step_deviation.push_back(dev_k);
    if (dev_k > report.max_choi_deviation) report.max_choi_deviation = dev_k;
    if (dev_k > threshold && !report.first_deviating_step) {
      report.first_deviating_step = step;
    }
    if (step == n) break;  // last deviation measured, no further drive needed

    switch (source.kind()) {
      case InputSource::Kind::fixed:
        current = use_once(current, source.fixed()).next;
        break;
      case InputSource::Kind::seeded_random:
        current = use_once(current, random_density(dev.dim_system(), rng)).next;
        break;
      case InputSource::Kind::worst_of_set: {
        // lookahead: feed the probe that drives the next channel farthest
        double worst = -1.0;
        const MemoryDevice* base = &current;
        MemoryDevice best = use_once(*base, probe_set.front()).next;
        for (const DensityOperator& probe : probe_set) {
          MemoryDevice next = use_once(*base, probe).next;
          const double d = deviation_from_target(next, target_choi);
          if (d > worst) {
            worst = d;
            best = std::move(next);
          }
        }
        current = std::move(best);
        break;
      }
    }
  }
  return report;
}

DiagonalPreservationReport diagonal_preservation_check(const MemoryDevice& dev,
                                                       int samples,
                                                       uint64_t seed,
                                                       double tolerance) {
  const Eigen::Index dm = dev.dim_memory();
  const Eigen::Index ds = dev.dim_system();
  const Cmat& u = dev.unitary().matrix();

  // precondition: block-diagonal in the memory basis (controlled-U form)
  double off_block = 0.0;
  for (Eigen::Index j = 0; j < dm; ++j) {
    for (Eigen::Index k = 0; k < dm; ++k) {
      if (j == k) continue;
      off_block = std::max(off_block,
                           max_abs(Cmat(u.block(j * ds, k * ds, ds, ds))));
    }
  }
  if (off_block > dev.unitary().tolerance()) {
    std::ostringstream oss;
    oss << "diagonal_preservation_check: unitary is not controlled-U "
           "(off-block residual "
        << off_block << ")";
    throw precondition_error(oss.str());
  }

  Rng rng(seed);
  DiagonalPreservationReport report;
  report.samples = samples;
  report.tolerance = tolerance;

  const Rvec initial_diag = dev.memory().matrix().diagonal().real();
  MemoryDevice current = dev;
  for (int i = 0; i < samples; ++i) {
    current = use_once(current, random_density(ds, rng)).next;
    const Rvec diag = current.memory().matrix().diagonal().real();
    report.max_drift =
        std::max(report.max_drift, (diag - initial_diag).cwiseAbs().maxCoeff());
  }
  report.passed = report.max_drift <= tolerance;
  return report;
}

namespace {

// floor with the non-strict-inequality tie rule: ratios within 1e-12 of an
// integer report that integer and set the tie flag.
std::pair<long, bool> floor_with_tie(double ratio) {
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) <= 1e-12 * std::max(1.0, std::abs(ratio))) {
    return {static_cast<long>(rounded), true};
  }
  return {static_cast<long>(std::floor(ratio)), false};
}

// Entropy deficit of a qubit channel as a function of the input Bloch
// vector, using the channel's affine Bloch representation.
struct BlochDeficit {
  Eigen::Matrix3d map;
  Eigen::Vector3d shift;

  double operator()(const Eigen::Vector3d& r) const {
    const double rin = std::min(r.norm(), 1.0);
    const double rout = std::min((map * r + shift).norm(), 1.0);
    return binary_entropy((1.0 + rin) / 2.0) -
           binary_entropy((1.0 + rout) / 2.0);
  }
};

BlochDeficit bloch_deficit(const KrausChannel& ch) {
  BlochDeficit f;
  const std::array<Cmat, 3> sigma = {pauli_x(), pauli_y(), pauli_z()};
  const Cmat ei = apply_to_matrix(ch, Cmat::Identity(2, 2));
  for (int k = 0; k < 3; ++k) {
    f.shift(k) = 0.5 * (sigma[static_cast<size_t>(k)] * ei).trace().real();
    for (int j = 0; j < 3; ++j) {
      const Cmat ej = apply_to_matrix(ch, sigma[static_cast<size_t>(j)]);
      f.map(k, j) = 0.5 * (sigma[static_cast<size_t>(k)] * ej).trace().real();
    }
  }
  return f;
}

// 201³ cube grid filtered to the Bloch ball, then shrinking-step coordinate
// refinement around the best point.
double max_deficit_qubit(const KrausChannel& ch) {
  const BlochDeficit f = bloch_deficit(ch);
  constexpr int kGrid = 201;
  double best = -1.0;
  Eigen::Vector3d best_r = Eigen::Vector3d::Zero();
  for (int ix = 0; ix < kGrid; ++ix) {
    const double x = -1.0 + 2.0 * ix / (kGrid - 1);
    for (int iy = 0; iy < kGrid; ++iy) {
      const double y = -1.0 + 2.0 * iy / (kGrid - 1);
      const double xy2 = x * x + y * y;
      if (xy2 > 1.0) continue;
      for (int iz = 0; iz < kGrid; ++iz) {
        const double z = -1.0 + 2.0 * iz / (kGrid - 1);
        if (xy2 + z * z > 1.0) continue;
        const Eigen::Vector3d r(x, y, z);
        const double d = f(r);
        if (d > best) {
          best = d;
          best_r = r;
        }
      }
    }
  }

  double step = 2.0 / (kGrid - 1);
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis) {
      for (double sign : {-1.0, 1.0}) {
        Eigen::Vector3d cand = best_r;
        cand(axis) += sign * step;
        if (cand.norm() > 1.0) cand /= cand.norm();
        const double d = f(cand);
        if (d > best) {
          best = d;
          best_r = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }
  return best;
}

}  // namespace

BoundReport repeatability_bound(const KrausChannel& ch, Eigen::Index mem_dim,
                                double tolerance) {
  if (mem_dim < 1) {
    throw dimension_error("repeatability_bound: mem_dim must be >= 1");
  }
  BoundReport report;
  report.mem_dim = mem_dim;
  report.delta_at_mixture =
      entropy_deficit(ch, DensityOperator::maximally_mixed(ch.dim()));
  if (ch.dim() == 2) {
    report.delta_max_estimate = max_deficit_qubit(ch);
  } else {
    report.delta_max_estimate = report.delta_at_mixture;
    report.delta_max_is_lower_bound = true;
  }

  const double log_dim = std::log2(static_cast<double>(mem_dim));
  if (report.delta_at_mixture > tolerance) {
    auto [n, tie] = floor_with_tie(log_dim / report.delta_at_mixture);
    report.n_max_mixture = n;
    report.mixture_tie = tie;
  }
  if (report.delta_max_estimate > tolerance) {
    auto [n, tie] = floor_with_tie(log_dim / report.delta_max_estimate);
    report.n_max_estimate = n;
    report.estimate_tie = tie;
  }
  return report;
}

EntropyChainReport entropy_chain_check(const UsageTranscript& t,
                                       Eigen::Index mem_dim, double slack) {
  const int n = static_cast<int>(t.steps());
  if (n < 1) {
    throw precondition_error("entropy_chain_check: transcript is empty");
  }
  // the accumulated bound is only meaningful for one fixed input state
  for (size_t k = 1; k < t.inputs.size(); ++k) {
    const double diff =
        max_abs(Cmat(t.inputs[k].matrix() - t.inputs[0].matrix()));
    if (diff > 1e-9) {
      std::ostringstream oss;
      oss << "entropy_chain_check: inputs are not constant (step " << (k + 1)
          << " deviates by " << diff << ")";
      throw precondition_error(oss.str());
    }
  }

  EntropyChainReport report;
  report.steps = n;
  report.slack = slack;
  report.bound_bits = std::log2(static_cast<double>(mem_dim));
  report.passed = true;

  double accumulated = 0.0;
  for (int k = 0; k < n; ++k) {
    accumulated += t.input_entropies[static_cast<size_t>(k)] -
                   t.output_entropies[static_cast<size_t>(k)];
    const double gain = t.memory_entropies[static_cast<size_t>(k) + 1] -
                        t.memory_entropies[0];
    report.accumulated_deficit.push_back(accumulated);
    report.memory_entropy_gain.push_back(gain);
    const bool ok =
        accumulated <= gain + slack && gain <= report.bound_bits + slack;
    if (!ok && report.passed) {
      report.passed = false;
      report.violated_prefix = k + 1;
    }
  }
  return report;
}

MemoryDevice shift_register_device(const MemoryDevice& inner, int n,
                                   Eigen::Index dim_cap) {
  if (n < 1) {
    throw precondition_error("shift_register_device: n must be >= 1");
  }
  const Eigen::Index m = inner.dim_memory();
  const Eigen::Index ds = inner.dim_system();

  double total = static_cast<double>(ds);
  for (int i = 0; i < n; ++i) {
    total *= static_cast<double>(m);
    if (total > static_cast<double>(dim_cap)) {
      std::ostringstream oss;
      oss << "shift_register_device: total dimension " << m << "^" << n << "*"
          << ds << " exceeds cap " << dim_cap;
      throw dimension_error(oss.str());
    }
  }
  if (n == 1) return inner;

  Eigen::Index mem_total = 1;
  for (int i = 0; i < n; ++i) mem_total *= m;
  const Eigen::Index dim = mem_total * ds;

  // interaction on slot 1 and the system, identity on slots 2..n:
  // index (a, rest, s) with a the slot-1 digit and rest the remaining slots
  const Cmat& u_inner = inner.unitary().matrix();
  const Eigen::Index rest = mem_total / m;
  Cmat act = Cmat::Zero(dim, dim);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      for (Eigen::Index s = 0; s < ds; ++s) {
        for (Eigen::Index sp = 0; sp < ds; ++sp) {
          const complexd amp = u_inner(a * ds + s, b * ds + sp);
          if (amp == complexd(0.0, 0.0)) continue;
          for (Eigen::Index r = 0; r < rest; ++r) {
            act((a * rest + r) * ds + s, (b * rest + r) * ds + sp) = amp;
          }
        }
      }
    }
  }

  // cyclic left shift of the memory slots: (x₁,…,x_n) → (x₂,…,x_n,x₁)
  Cmat shift = Cmat::Zero(dim, dim);
  for (Eigen::Index idx = 0; idx < mem_total; ++idx) {
    const Eigen::Index first = idx / rest;
    const Eigen::Index others = idx % rest;
    const Eigen::Index shifted = others * m + first;
    for (Eigen::Index s = 0; s < ds; ++s) {
      shift(shifted * ds + s, idx * ds + s) = 1.0;
    }
  }

  Cmat device_u = shift * act;

  // ξ^⊗n memory
  Cmat mem = inner.memory().matrix();
  for (int i = 1; i < n; ++i) {
    mem = tensor(mem, inner.memory().matrix());
  }
  mem = (mem + Cmat(mem.adjoint())) / 2.0;

  return MemoryDevice(UnitaryOperator(std::move(device_u)),
                      ProductSpace(mem_total, ds),
                      DensityOperator(std::move(mem)));
}

UnitalityScanReport mixed_memory_unitality_check(const UnitaryOperator& u,
                                                 const ProductSpace& space,
                                                 int samples, uint64_t seed,
                                                 double tolerance) {
  if (u.dim() != space.total_dim()) {
    throw dimension_error(
        "mixed_memory_unitality_check: unitary/space dimension mismatch");
  }
  const DensityOperator mixture =
      DensityOperator::maximally_mixed(space.dim_memory());

  UnitalityScanReport report;
  report.tolerance = tolerance;

  auto check_one = [&](const UnitaryOperator& candidate) {
    const MemoryDevice dev(candidate, space, mixture);
    const UnitalityCheck res = is_unital(induced_channel(dev), tolerance);
    report.max_residual = std::max(report.max_residual, res.residual);
    ++report.checked;
  };

  check_one(u);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    check_one(random_unitary(space.total_dim(), rng));
  }
  report.all_unital = report.max_residual <= tolerance;
  return report;
}

}  // namespace memchan
