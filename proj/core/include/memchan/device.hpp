/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_DEVICE_HPP
#define MEMCHAN_DEVICE_HPP

#include <vector>

#include "memchan/channel.hpp"

namespace memchan {

//------------------------------------------------------------------------------
// Unitary memory model: a fixed interaction unitary on memory⊗system plus a
// current memory state. Immutable; each use returns the successor device.
//------------------------------------------------------------------------------

class MemoryDevice {
 public:
  MemoryDevice(UnitaryOperator unitary, ProductSpace space,
               DensityOperator memory);

  const UnitaryOperator& unitary() const { return unitary_; }
  const ProductSpace& space() const { return space_; }
  const DensityOperator& memory() const { return memory_; }
  Eigen::Index dim_memory() const { return space_.dim_memory(); }
  Eigen::Index dim_system() const { return space_.dim_system(); }

  MemoryDevice with_memory(DensityOperator memory) const;

 private:
  UnitaryOperator unitary_;
  ProductSpace space_;
  DensityOperator memory_;
};

struct UseResult {
  DensityOperator output;
  MemoryDevice next;
};

// One use: output = Tr_M[U(ξ⊗ϱ)U†], successor memory = Tr_S[U(ξ⊗ϱ)U†].
UseResult use_once(const MemoryDevice& dev, const DensityOperator& input);

// The channel the device currently implements: Kraus operators
// K_(i,j) = √λ_j (⟨i|⊗I) U (|e_j⟩⊗I) over an eigenbasis ξ = Σ λ_j|e_j⟩⟨e_j|
// of the memory; zero-eigenvalue directions are dropped.
KrausChannel induced_channel(const MemoryDevice& dev);

// The map the memory undergoes for a fixed input, F_ϱ[ξ] = Tr_S[U(ξ⊗ϱ)U†],
// as a Kraus channel on the memory space (built from an eigenbasis of ϱ).
KrausChannel memory_map(const MemoryDevice& dev, const DensityOperator& input);

//------------------------------------------------------------------------------
// Multi-use transcripts
//------------------------------------------------------------------------------

struct TranscriptOptions {
  // Kraus extraction per step costs an eigendecomposition; switch off for
  // long runs where only states/entropies matter.
  bool record_channels = true;
};

// Per-use record of a device run: n inputs/outputs, n+1 memory states, the
// induced channel before each use, and entropy bookkeeping in bits.
struct UsageTranscript {
  Eigen::Index dim_memory = 0;
  Eigen::Index dim_system = 0;
  std::vector<DensityOperator> inputs;
  std::vector<DensityOperator> outputs;
  std::vector<DensityOperator> memory_states;    // length n+1, ξ₁ first
  std::vector<KrausChannel> induced_channels;    // empty if not recorded
  std::vector<double> memory_entropies;          // length n+1, S(ξ_k)
  std::vector<double> input_entropies;           // length n
  std::vector<double> output_entropies;          // length n

  Eigen::Index steps() const {
    return static_cast<Eigen::Index>(inputs.size());
  }
};

// Folds use_once over an uncorrelated input sequence (the model assumption:
// each input is an independent fresh state). A failure at step k is rethrown
// with the step index attached.
UsageTranscript run_sequence(const MemoryDevice& dev,
                             const std::vector<DensityOperator>& inputs,
                             const TranscriptOptions& options = {});

// Worst memory-chain residual: max over k of the deviation between the
// recorded ξ_{k+1} and the memory map of step k applied to ξ_k. The device
// supplies the interaction unitary; its memory state is ignored.
double transcript_chain_residual(const UsageTranscript& t,
                                 const MemoryDevice& dev);

// Per-step Choi distance of each recorded induced channel to the first one.
std::vector<double> transcript_channel_drift(const UsageTranscript& t);

//------------------------------------------------------------------------------
// Stock devices
//------------------------------------------------------------------------------

// Two-qubit SWAP interaction with memory ξ: each use emits the stored state
// and stores the input.
MemoryDevice swap_device(const DensityOperator& xi);

// Dilation of qubit amplitude damping: qubit environment as memory, starting
// in |0⟩⟨0|, no reset between uses.
MemoryDevice amplitude_damping_device(double gamma);

}  // namespace memchan

#endif  // MEMCHAN_DEVICE_HPP
