/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/device.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace memchan {

MemoryDevice::MemoryDevice(UnitaryOperator unitary, ProductSpace space,
                           DensityOperator memory)
    : unitary_(std::move(unitary)),
      space_(space),
      memory_(std::move(memory)) {
  if (unitary_.dim() != space_.total_dim()) {
    throw dimension_error(
        "MemoryDevice: unitary dimension must equal dim_M * dim_S");
  }
  if (memory_.dim() != space_.dim_memory()) {
    throw dimension_error("MemoryDevice: memory state dimension mismatch");
  }
}

MemoryDevice MemoryDevice::with_memory(DensityOperator memory) const {
  return MemoryDevice(unitary_, space_, std::move(memory));
}

UseResult use_once(const MemoryDevice& dev, const DensityOperator& input) {
  if (input.dim() != dev.dim_system()) {
    throw dimension_error("use_once: input dimension mismatch");
  }
  const Cmat& u = dev.unitary().matrix();
  const Cmat joint_in = tensor(dev.memory().matrix(), input.matrix());
  Cmat joint = u * joint_in * u.adjoint();
  joint = (joint + Cmat(joint.adjoint())) / 2.0;

  const double tol = std::max(dev.memory().tolerance(), input.tolerance());
  Cmat out = partial_trace(joint, dev.space(), Factor::system);
  Cmat mem = partial_trace(joint, dev.space(), Factor::memory);
  DensityOperator output(std::move(out), tol);
  DensityOperator next_memory(std::move(mem), tol);
  return UseResult{std::move(output), dev.with_memory(std::move(next_memory))};
}

namespace {

// Kraus factors (⟨i|⊗I) U (|e⟩⊗I) for a memory-side sandwich: the system
// block picked out by bra index i and the ket vector e.
Cmat memory_sandwich(const Cmat& u, Eigen::Index dm, Eigen::Index ds,
                     Eigen::Index bra_index, const Cvec& ket) {
  Cmat block = Cmat::Zero(ds, ds);
  for (Eigen::Index mp = 0; mp < dm; ++mp) {
    const complexd amp = ket(mp);
    if (amp == complexd(0.0, 0.0)) continue;
    for (Eigen::Index s = 0; s < ds; ++s) {
      for (Eigen::Index sp = 0; sp < ds; ++sp) {
        block(s, sp) += amp * u(bra_index * ds + s, mp * ds + sp);
      }
    }
  }
  return block;
}

// Symmetric construction on the system side: (I⊗⟨i|) U (I⊗|f⟩), an operator
// on the memory factor.
Cmat system_sandwich(const Cmat& u, Eigen::Index dm, Eigen::Index ds,
                     Eigen::Index bra_index, const Cvec& ket) {
  Cmat block = Cmat::Zero(dm, dm);
  for (Eigen::Index sp = 0; sp < ds; ++sp) {
    const complexd amp = ket(sp);
    if (amp == complexd(0.0, 0.0)) continue;
    for (Eigen::Index m = 0; m < dm; ++m) {
      for (Eigen::Index mp = 0; mp < dm; ++mp) {
        block(m, mp) += amp * u(m * ds + bra_index, mp * ds + sp);
      }
    }
  }
  return block;
}

}  // namespace

KrausChannel induced_channel(const MemoryDevice& dev) {
  const Eigen::Index dm = dev.dim_memory();
  const Eigen::Index ds = dev.dim_system();
  const Cmat& u = dev.unitary().matrix();
  const EighResult mem = eigh(dev.memory().matrix(), dev.memory().tolerance());

  std::vector<Cmat> kraus;
  for (Eigen::Index j = 0; j < dm; ++j) {
    double lambda = mem.eigenvalues(j);
    if (lambda <= 0.0) continue;
    if (lambda > 1.0) lambda = 1.0;
    const Cvec e = mem.eigenvectors.col(j);
    for (Eigen::Index i = 0; i < dm; ++i) {
      kraus.push_back(std::sqrt(lambda) * memory_sandwich(u, dm, ds, i, e));
    }
  }
  return KrausChannel(ds, std::move(kraus), dev.memory().tolerance());
}

KrausChannel memory_map(const MemoryDevice& dev, const DensityOperator& input) {
  if (input.dim() != dev.dim_system()) {
    throw dimension_error("memory_map: input dimension mismatch");
  }
  const Eigen::Index dm = dev.dim_memory();
  const Eigen::Index ds = dev.dim_system();
  const Cmat& u = dev.unitary().matrix();
  const EighResult in = eigh(input.matrix(), input.tolerance());

  std::vector<Cmat> kraus;
  for (Eigen::Index j = 0; j < ds; ++j) {
    double mu = in.eigenvalues(j);
    if (mu <= 0.0) continue;
    if (mu > 1.0) mu = 1.0;
    const Cvec f = in.eigenvectors.col(j);
    for (Eigen::Index i = 0; i < ds; ++i) {
      kraus.push_back(std::sqrt(mu) * system_sandwich(u, dm, ds, i, f));
    }
  }
  return KrausChannel(dm, std::move(kraus), input.tolerance());
}

UsageTranscript run_sequence(const MemoryDevice& dev,
                             const std::vector<DensityOperator>& inputs,
                             const TranscriptOptions& options) {
  UsageTranscript t;
  t.dim_memory = dev.dim_memory();
  t.dim_system = dev.dim_system();
  t.memory_states.push_back(dev.memory());
  t.memory_entropies.push_back(von_neumann_entropy(dev.memory()));

  MemoryDevice current = dev;
  for (size_t k = 0; k < inputs.size(); ++k) {
    try {
      if (options.record_channels) {
        t.induced_channels.push_back(induced_channel(current));
      }
      UseResult r = use_once(current, inputs[k]);
      t.inputs.push_back(inputs[k]);
      t.input_entropies.push_back(von_neumann_entropy(inputs[k]));
      t.outputs.push_back(r.output);
      t.output_entropies.push_back(von_neumann_entropy(r.output));
      t.memory_states.push_back(r.next.memory());
      t.memory_entropies.push_back(von_neumann_entropy(r.next.memory()));
      current = std::move(r.next);
    } catch (const error& e) {
      std::ostringstream oss;
      oss << "run_sequence: step " << (k + 1) << ": " << e.what();
      throw error(oss.str());
    }
  }
  return t;
}

double transcript_chain_residual(const UsageTranscript& t,
                                 const MemoryDevice& dev) {
  if (dev.dim_memory() != t.dim_memory || dev.dim_system() != t.dim_system) {
    throw dimension_error("transcript_chain_residual: device/transcript mismatch");
  }
  double worst = 0.0;
  for (size_t k = 0; k < t.inputs.size(); ++k) {
    const KrausChannel f = memory_map(dev, t.inputs[k]);
    const Cmat expected = apply_to_matrix(f, t.memory_states[k].matrix());
    worst = std::max(worst,
                     max_abs(Cmat(expected - t.memory_states[k + 1].matrix())));
  }
  return worst;
}

std::vector<double> transcript_channel_drift(const UsageTranscript& t) {
  std::vector<double> drift;
  if (t.induced_channels.empty()) return drift;
  const ChoiMatrix first = kraus_to_choi(t.induced_channels.front());
  drift.reserve(t.induced_channels.size());
  for (const KrausChannel& ch : t.induced_channels) {
    drift.push_back(choi_distance(kraus_to_choi(ch), first));
  }
  return drift;
}

MemoryDevice swap_device(const DensityOperator& xi) {
  if (xi.dim() != 2) {
    throw dimension_error("swap_device: memory state must be a qubit");
  }
  Cmat u = Cmat::Zero(4, 4);
  // |m,s⟩ → |s,m⟩
  for (Eigen::Index m = 0; m < 2; ++m) {
    for (Eigen::Index s = 0; s < 2; ++s) {
      u(s * 2 + m, m * 2 + s) = 1.0;
    }
  }
  return MemoryDevice(UnitaryOperator(std::move(u)), ProductSpace(2, 2), xi);
}

MemoryDevice amplitude_damping_device(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw validation_error("damping-range", gamma,
                           "amplitude_damping_device: gamma outside [0, 1]");
  }
  const double c = std::sqrt(1.0 - gamma);
  const double s = std::sqrt(gamma);
  // basis |m s⟩ in order 00, 01, 10, 11: the system excitation decays into
  // the memory qubit
  Cmat u = Cmat::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = c;
  u(2, 1) = s;
  u(1, 2) = -s;
  u(2, 2) = c;
  u(3, 3) = 1.0;
  Cvec ground(2);
  ground << 1.0, 0.0;
  return MemoryDevice(UnitaryOperator(std::move(u)), ProductSpace(2, 2),
                      DensityOperator::pure(ground));
}

}  // namespace memchan
