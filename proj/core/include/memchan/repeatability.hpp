/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_REPEATABILITY_HPP
#define MEMCHAN_REPEATABILITY_HPP

#include <optional>

#include "memchan/device.hpp"

namespace memchan {

//------------------------------------------------------------------------------
// Controlled-U dilation of random unitary channels
//------------------------------------------------------------------------------

// Builds the device with U = Σ_j |j⟩⟨j| ⊗ U_j and memory diagonal equal to
// the mixing probabilities. With `memory_override` the initial memory may
// carry coherences, but its diagonal must still match the probabilities; the
// induced channel is the random unitary channel of the spec either way.
MemoryDevice controlled_u_device(const RandomUnitarySpec& spec,
                                 const std::optional<Cmat>& memory_override =
                                     std::nullopt);

//------------------------------------------------------------------------------
// Repeatability verification
//------------------------------------------------------------------------------

// How inputs are drawn while driving the memory during a repeatability run.
class InputSource {
 public:
  enum class Kind { fixed, seeded_random, worst_of_set };

  static InputSource fixed_state(DensityOperator state);
  static InputSource seeded_random(uint64_t seed);
  // Greedy adversarial draw over the six Pauli eigenstates plus I/2: at each
  // step the probe whose one-step lookahead maximizes the next deviation is
  // fed. Qubit systems only.
  static InputSource worst_of_set();

  Kind kind() const { return kind_; }
  const DensityOperator& fixed() const { return *fixed_; }
  uint64_t seed() const { return seed_; }

 private:
  InputSource(Kind kind, std::optional<DensityOperator> fixed, uint64_t seed)
      : kind_(kind), fixed_(std::move(fixed)), seed_(seed) {}
  Kind kind_;
  std::optional<DensityOperator> fixed_;
  uint64_t seed_ = 0;
};

struct RepeatabilityReport {
  int n_requested = 0;
  double max_choi_deviation = 0.0;
  std::optional<int> first_deviating_step;  // 1-based, deviation > threshold
  std::vector<double> per_step_deviation;   // length n_requested
  double threshold = 0.0;
};

// Runs n uses, drawing inputs from `source`; per_step_deviation[k] is the
// Choi distance between the channel induced by the memory before use k+1 and
// `target`. Deterministic for a given seed.
RepeatabilityReport check_repeatable(const MemoryDevice& dev,
                                     const KrausChannel& target, int n,
                                     const InputSource& source,
                                     double threshold = 1e-8);

//------------------------------------------------------------------------------
// Diagonal preservation of controlled-U memories
//------------------------------------------------------------------------------

struct DiagonalPreservationReport {
  int samples = 0;
  double max_drift = 0.0;  // max_j |⟨j|ξ_k|j⟩ − ξ_jj| over the whole run
  bool passed = false;
  double tolerance = 0.0;
};

// Feeds `samples` seeded random inputs through a controlled-U device and
// measures how far the memory diagonal moves from its initial value.
// Requires the unitary to be block diagonal in the memory basis.
DiagonalPreservationReport diagonal_preservation_check(
    const MemoryDevice& dev, int samples, uint64_t seed,
    double tolerance = 1e-10);

//------------------------------------------------------------------------------
// Finite-memory impossibility bound for nonunital channels
//------------------------------------------------------------------------------

struct BoundReport {
  double delta_at_mixture = 0.0;    // Δ(I/d), the complete-mixture witness
  double delta_max_estimate = 0.0;  // maximized deficit (qubits), else Δ(I/d)
  Eigen::Index mem_dim = 0;
  std::optional<long> n_max_mixture;   // nullopt = unbounded
  std::optional<long> n_max_estimate;  // nullopt = unbounded
  bool mixture_tie = false;    // log2(dim)/Δ within 1e-12 of an integer
  bool estimate_tie = false;
  bool delta_max_is_lower_bound = false;  // true when dim > 2 (witness only)
};

// n·Δ ≤ log₂ dim H_M: greatest n a memory of dimension mem_dim could support.
// For qubit channels Δ is additionally maximized over a Bloch-ball grid
// (201³ cube points filtered to the ball) with local refinement; for larger
// systems only the complete-mixture witness is evaluated.
BoundReport repeatability_bound(const KrausChannel& ch, Eigen::Index mem_dim,
                                double tolerance = default_tolerance());

//------------------------------------------------------------------------------
// Entropy chain audit (accumulated deficit vs memory entropy gain)
//------------------------------------------------------------------------------

struct EntropyChainReport {
  int steps = 0;
  double bound_bits = 0.0;                  // log₂ mem_dim
  std::vector<double> accumulated_deficit;  // prefix sums of S(ϱ_k) − S(E_k[ϱ_k])
  std::vector<double> memory_entropy_gain;  // S(ξ_{n+1}) − S(ξ₁) per prefix
  std::optional<int> violated_prefix;       // smallest violating n, 1-based
  bool passed = false;
  double slack = 0.0;
};

// For a constant-input transcript, checks for every prefix length n that
// Σ_{k≤n} Δ_k ≤ S(ξ_{n+1}) − S(ξ₁) + slack ≤ log₂ mem_dim + slack, with Δ_k
// taken from the recorded per-step entropies. Requires a constant input
// sequence; precondition_error otherwise.
EntropyChainReport entropy_chain_check(const UsageTranscript& t,
                                       Eigen::Index mem_dim,
                                       double slack = 1e-9);

//------------------------------------------------------------------------------
// Shift-register construction: exact n-repeatability for any inner device
//------------------------------------------------------------------------------

// Memory ξ^⊗n over n slots; each use lets the inner unitary act on slot 1 and
// the system, then cyclically shifts the slots one to the left so a fresh ξ
// faces the next input. Uses 1…n implement the inner device's step-1 channel
// exactly; use n+1 meets a collided slot. Throws when the total dimension
// dim_ξⁿ · dim_S exceeds `dim_cap`.
MemoryDevice shift_register_device(const MemoryDevice& inner, int n,
                                   Eigen::Index dim_cap = 4096);

//------------------------------------------------------------------------------
// Total-mixture memories force unital induced channels
//------------------------------------------------------------------------------

struct UnitalityScanReport {
  int checked = 0;
  double max_residual = 0.0;
  bool all_unital = false;
  double tolerance = 0.0;
};

// Checks the given unitary plus `samples` seeded random unitaries of the same
// shape: with memory I/dim_M every induced channel must be unital.
UnitalityScanReport mixed_memory_unitality_check(
    const UnitaryOperator& u, const ProductSpace& space, int samples,
    uint64_t seed, double tolerance = default_tolerance());

}  // namespace memchan

#endif  // MEMCHAN_REPEATABILITY_HPP
