/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_CHANNEL_HPP
#define MEMCHAN_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "memchan/states.hpp"

namespace memchan {

//------------------------------------------------------------------------------
// Kraus and Choi representations
//------------------------------------------------------------------------------

// CPTP map as a finite Kraus list {K_i}. Construction checks trace
// preservation, sum K†K = I, within tolerance.
class KrausChannel {
 public:
  KrausChannel(Eigen::Index dim, std::vector<Cmat> kraus,
               double tolerance = default_tolerance());

  Eigen::Index dim() const { return dim_; }
  const std::vector<Cmat>& kraus() const { return kraus_; }
  double tolerance() const { return tol_; }
  double tp_residual() const { return tp_residual_; }

 private:
  Eigen::Index dim_;
  std::vector<Cmat> kraus_;
  double tol_;
  double tp_residual_;
};

// Normalized Choi state (E ⊗ id)[|Ω⟩⟨Ω|] with |Ω⟩ = Σ|ii⟩/√d, output factor
// first. Channels are equal iff their Choi matrices coincide.
struct ChoiMatrix {
  Eigen::Index dim;
  Cmat matrix;  // d² × d²
};

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);

// Linear action Σ K m K† on an arbitrary (not necessarily state) matrix.
Cmat apply_to_matrix(const KrausChannel& ch, const Cmat& m);

ChoiMatrix kraus_to_choi(const KrausChannel& ch);

// Kraus form recovered from a CP Choi matrix (eigenvalue decomposition);
// throws validation_error if the Choi has an eigenvalue below -tolerance.
KrausChannel choi_to_kraus(const ChoiMatrix& choi,
                           double tolerance = default_tolerance());

// Half the trace norm of the Choi difference; 0 iff channels coincide, 1 for
// maximally distinguishable (e.g. identity vs an orthogonal unitary).
double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b);
double choi_distance(const KrausChannel& a, const KrausChannel& b);

//------------------------------------------------------------------------------
// Structural predicates and deficits
//------------------------------------------------------------------------------

struct UnitalityCheck {
  bool unital;
  double residual;  // max |Σ K K† − I|
};

UnitalityCheck is_unital(const KrausChannel& ch,
                         double tolerance = default_tolerance());

// Entropy deficit Δ(ϱ) = S(ϱ) − S(E[ϱ]) in bits; positive values witness
// nonunitality.
double entropy_deficit(const KrausChannel& ch, const DensityOperator& rho);

//------------------------------------------------------------------------------
// Random unitary channels
//------------------------------------------------------------------------------

// Mixture Σ_j p_j U_j ϱ U_j†. Probabilities must form a distribution within
// 1e-12 and the unitaries must share one dimension.
class RandomUnitarySpec {
 public:
  RandomUnitarySpec(std::vector<double> probs,
                    std::vector<UnitaryOperator> unitaries);

  const std::vector<double>& probs() const { return probs_; }
  const std::vector<UnitaryOperator>& unitaries() const { return unitaries_; }
  Eigen::Index system_dim() const { return unitaries_.front().dim(); }
  Eigen::Index term_count() const {
    return static_cast<Eigen::Index>(probs_.size());
  }

 private:
  std::vector<double> probs_;
  std::vector<UnitaryOperator> unitaries_;
};

KrausChannel random_unitary_channel(const RandomUnitarySpec& spec);

//------------------------------------------------------------------------------
// Standard channel constructors
//------------------------------------------------------------------------------

KrausChannel identity_channel(Eigen::Index dim);
// Qubit amplitude damping with decay probability gamma in [0, 1].
KrausChannel amplitude_damping(double gamma);
// Qubit depolarizing, E[ϱ] = (1−p)ϱ + p I/2.
KrausChannel depolarizing(double p);
// Constant map E[ϱ] = ξ Tr[ϱ], built from rank-1 Kraus operators.
KrausChannel constant_channel(const DensityOperator& xi);

//------------------------------------------------------------------------------
// Entropy-monotonicity harness for unital channels
//------------------------------------------------------------------------------

struct MonotonicityReport {
  int samples = 0;
  double worst_margin = 0.0;  // min over samples of S(E[ϱ]) − S(ϱ)
  int worst_sample = -1;
  bool all_passed = false;
  double slack = 0.0;
};

// Checks S(E[ϱ]) ≥ S(ϱ) − slack on seeded random states. Requires a unital
// channel; precondition_error otherwise.
MonotonicityReport unital_monotonicity_harness(const KrausChannel& ch,
                                               int samples, uint64_t seed,
                                               double slack = 1e-9);

}  // namespace memchan

#endif  // MEMCHAN_CHANNEL_HPP
