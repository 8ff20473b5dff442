/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <doctest.h>

#include "memchan/repeatability.hpp"
#include "memchan/rng.hpp"
#include "support/oracles.hpp"

using namespace memchan;

namespace {

double diff(const Cmat& a, const Cmat& b) { return max_abs(Cmat(a - b)); }

RandomUnitarySpec dephasing_spec() {
  return RandomUnitarySpec({0.5, 0.5}, {UnitaryOperator(Cmat::Identity(2, 2)),
                                        UnitaryOperator(pauli_z())});
}

RandomUnitarySpec random_spec(Eigen::Index dim, int max_terms, Rng& rng) {
  const int terms = 2 + rng.uniform_int(max_terms - 1);
  std::vector<UnitaryOperator> us;
  for (int j = 0; j < terms; ++j) us.push_back(random_unitary(dim, rng));
  return RandomUnitarySpec(random_prob_vector(terms, rng), std::move(us));
}

DensityOperator plus_state() {
  Cvec ket(2);
  ket << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityOperator::pure(ket);
}

DensityOperator ground_state() {
  Cvec ket(2);
  ket << 1.0, 0.0;
  return DensityOperator::pure(ket);
}

std::vector<DensityOperator> constant_inputs(const DensityOperator& rho, int n) {
  return std::vector<DensityOperator>(static_cast<size_t>(n), rho);
}

// independent 1-D maximization of the amplitude-damping deficit: for a Bloch
// radius R the best input sits on the +z axis and the output radius is
// γ + (1−γ)... for γ = 1/2 exactly (R+1)/2, so Δ(R) has a closed form that a
// golden-section search can maximize without touching the library grid.
double ad_half_deficit_maximum_oracle() {
  auto f = [](double r) {
    return oracle::binary_entropy((1.0 + r) / 2.0) -
           oracle::binary_entropy(0.75 + 0.25 * r);
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int iter = 0; iter < 200; ++iter) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return f((a + b) / 2.0);
}

}  // namespace

//------------------------------------------------------------------------------
// controlled_u_device
//------------------------------------------------------------------------------

TEST_CASE("controlled_u_device: singleton identity spec acts as identity forever") {
  const RandomUnitarySpec spec({1.0}, {UnitaryOperator(Cmat::Identity(2, 2))});
  const MemoryDevice dev = controlled_u_device(spec);
  const RepeatabilityReport report = check_repeatable(
      dev, identity_channel(2), 10, InputSource::seeded_random(7));
  CHECK(report.max_choi_deviation <= 1e-12);
  CHECK_FALSE(report.first_deviating_step.has_value());
}

TEST_CASE("controlled_u_device: induced channel equals the spec's mixture") {
  Rng rng(301);
  for (int trial = 0; trial < 10; ++trial) {
    const RandomUnitarySpec spec = random_spec(2, 4, rng);
    const MemoryDevice dev = controlled_u_device(spec);
    CHECK(choi_distance(induced_channel(dev), random_unitary_channel(spec)) <=
          1e-10);
  }
}

TEST_CASE("controlled_u_device: coherent memory leaves the channel untouched") {
  Cmat xi(2, 2);
  xi << 0.5, 0.3, 0.3, 0.5;
  const MemoryDevice dev = controlled_u_device(dephasing_spec(), xi);
  const KrausChannel target = random_unitary_channel(dephasing_spec());
  const RepeatabilityReport report =
      check_repeatable(dev, target, 20, InputSource::seeded_random(9));
  CHECK(report.max_choi_deviation <= 1e-10);
}

TEST_CASE("controlled_u_device: rejects bad memory overrides") {
  Cmat not_psd(2, 2);
  not_psd << 0.5, 0.6, 0.6, 0.5;
  CHECK_THROWS_AS(controlled_u_device(dephasing_spec(), not_psd),
                  validation_error);
  Cmat wrong_diag(2, 2);
  wrong_diag << 0.6, 0.0, 0.0, 0.4;
  CHECK_THROWS_AS(controlled_u_device(dephasing_spec(), wrong_diag),
                  validation_error);
}

//------------------------------------------------------------------------------
// check_repeatable
//------------------------------------------------------------------------------

TEST_CASE("check_repeatable: random unitary dilations on seeded specs") {
  Rng rng(311);
  for (int trial = 0; trial < 5; ++trial) {
    const RandomUnitarySpec spec = random_spec(2, 4, rng);
    const MemoryDevice dev = controlled_u_device(spec);
    const RepeatabilityReport report =
        check_repeatable(dev, random_unitary_channel(spec), 50,
                         InputSource::seeded_random(rng.next_u64()));
    CHECK(report.max_choi_deviation <= 1e-10);
    CHECK_FALSE(report.first_deviating_step.has_value());
    CHECK(report.per_step_deviation.size() == 50);
  }
}

TEST_CASE("check_repeatable: SWAP with pure memory deviates at step two") {
  const MemoryDevice dev = swap_device(ground_state());
  const KrausChannel target = constant_channel(ground_state());
  const RepeatabilityReport report = check_repeatable(
      dev, target, 2, InputSource::fixed_state(DensityOperator::maximally_mixed(2)));
  CHECK(report.per_step_deviation[0] <= 1e-12);
  CHECK(report.per_step_deviation[1] > 0.4);
  REQUIRE(report.first_deviating_step.has_value());
  CHECK(*report.first_deviating_step == 2);
}

TEST_CASE("check_repeatable: amplitude damping dilation drifts at step two") {
  const MemoryDevice dev = amplitude_damping_device(0.5);
  const RepeatabilityReport report = check_repeatable(
      dev, amplitude_damping(0.5), 3,
      InputSource::fixed_state(DensityOperator::maximally_mixed(2)));
  CHECK(report.per_step_deviation[0] <= 1e-12);
  REQUIRE(report.first_deviating_step.has_value());
  CHECK(*report.first_deviating_step == 2);
}

TEST_CASE("check_repeatable: worst-of-set drives input-dependent drift") {
  const MemoryDevice dev = swap_device(ground_state());
  const KrausChannel target = constant_channel(ground_state());
  const RepeatabilityReport report =
      check_repeatable(dev, target, 3, InputSource::worst_of_set());
  REQUIRE(report.first_deviating_step.has_value());
  CHECK(*report.first_deviating_step == 2);
  // the adversarial probe pushes the deviation to the far end of the ball
  CHECK(report.max_choi_deviation > 0.9);
}

TEST_CASE("check_repeatable: deterministic under a fixed seed") {
  const MemoryDevice dev = amplitude_damping_device(0.3);
  const auto r1 = check_repeatable(dev, amplitude_damping(0.3), 5,
                                   InputSource::seeded_random(42));
  const auto r2 = check_repeatable(dev, amplitude_damping(0.3), 5,
                                   InputSource::seeded_random(42));
  for (int k = 0; k < 5; ++k) {
    CHECK(r1.per_step_deviation[k] == r2.per_step_deviation[k]);
  }
}

//------------------------------------------------------------------------------
// diagonal preservation (controlled-U memories)
//------------------------------------------------------------------------------

TEST_CASE("diagonal_preservation_check: holds for random controlled-U devices") {
  Rng rng(321);
  for (int trial = 0; trial < 5; ++trial) {
    const MemoryDevice dev = controlled_u_device(random_spec(2, 3, rng));
    const DiagonalPreservationReport report =
        diagonal_preservation_check(dev, 50, rng.next_u64());
    CHECK(report.passed);
    CHECK(report.max_drift <= 1e-10);
  }
}

TEST_CASE("diagonal_preservation_check: equal blocks freeze the whole memory") {
  Rng rng(322);
  const UnitaryOperator u = random_unitary(2, rng);
  const RandomUnitarySpec spec({0.5, 0.5}, {u, u});
  Cmat xi(2, 2);
  xi << 0.5, complexd(0.2, 0.1), complexd(0.2, -0.1), 0.5;
  MemoryDevice dev = controlled_u_device(spec, xi);
  for (int step = 0; step < 10; ++step) {
    dev = use_once(dev, random_density(2, rng)).next;
  }
  CHECK(diff(dev.memory().matrix(), xi) <= 1e-12);
}

TEST_CASE("diagonal preservation: coherences pick up the factor Tr[U_j ϱ U_k†]") {
  Rng rng(323);
  const RandomUnitarySpec spec = random_spec(2, 2, rng);
  Cmat xi(2, 2);
  xi << spec.probs()[0], complexd(0.1, 0.05), complexd(0.1, -0.05),
      spec.probs()[1];
  const MemoryDevice dev = controlled_u_device(spec, xi);
  const DensityOperator rho = random_density(2, rng);
  const Cmat next = use_once(dev, rho).next.memory().matrix();
  const complexd factor = (spec.unitaries()[0].matrix() * rho.matrix() *
                           spec.unitaries()[1].matrix().adjoint())
                              .trace();
  CHECK(std::abs(next(0, 1) - xi(0, 1) * factor) <= 1e-12);
}

TEST_CASE("diagonal_preservation_check: rejects non-controlled unitaries") {
  const MemoryDevice dev = swap_device(ground_state());
  CHECK_THROWS_AS(diagonal_preservation_check(dev, 10, 1), precondition_error);
}

//------------------------------------------------------------------------------
// repeatability bound
//------------------------------------------------------------------------------

TEST_CASE("repeatability_bound: unital channels are unbounded") {
  const BoundReport report =
      repeatability_bound(random_unitary_channel(dephasing_spec()), 2);
  CHECK(report.delta_at_mixture <= 1e-9);
  CHECK_FALSE(report.n_max_mixture.has_value());
  CHECK_FALSE(report.n_max_estimate.has_value());
}

TEST_CASE("repeatability_bound: amplitude damping with a qubit memory") {
  const BoundReport report = repeatability_bound(amplitude_damping(0.5), 2);
  const double expected = 1.0 - oracle::binary_entropy(0.75);
  CHECK(report.delta_at_mixture == doctest::Approx(expected).epsilon(1e-6));
  REQUIRE(report.n_max_mixture.has_value());
  CHECK(*report.n_max_mixture == 5);

  // the maximized deficit beats the mixture witness; check it against an
  // independent 1-D golden-section oracle
  const double oracle_max = ad_half_deficit_maximum_oracle();
  CHECK(report.delta_max_estimate >= report.delta_at_mixture);
  CHECK(report.delta_max_estimate ==
        doctest::Approx(oracle_max).epsilon(1e-4));
  REQUIRE(report.n_max_estimate.has_value());
  CHECK(*report.n_max_estimate == 3);
  CHECK_FALSE(report.delta_max_is_lower_bound);
}

TEST_CASE("repeatability_bound: constant channel to a pure state") {
  const BoundReport report =
      repeatability_bound(constant_channel(ground_state()), 2);
  CHECK(report.delta_at_mixture == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(report.n_max_mixture.has_value());
  CHECK(*report.n_max_mixture == 1);
  CHECK(report.mixture_tie);  // log₂2 / 1 sits exactly on an integer
}

TEST_CASE("repeatability_bound: trivial memory supports no nonunital use") {
  const BoundReport report = repeatability_bound(amplitude_damping(0.5), 1);
  REQUIRE(report.n_max_mixture.has_value());
  CHECK(*report.n_max_mixture == 0);
}

//------------------------------------------------------------------------------
// entropy chain
//------------------------------------------------------------------------------

TEST_CASE("entropy_chain_check: dephasing dilation with a constant |+⟩ input") {
  const MemoryDevice dev = controlled_u_device(dephasing_spec());
  const UsageTranscript t = run_sequence(dev, constant_inputs(plus_state(), 20));
  const EntropyChainReport report = entropy_chain_check(t, dev.dim_memory());
  CHECK(report.passed);
  // unital channel: deficits never accumulate above zero
  for (double acc : report.accumulated_deficit) CHECK(acc <= 1e-9);
}

TEST_CASE("entropy_chain_check: amplitude damping dilation, constant mixture") {
  const MemoryDevice dev = amplitude_damping_device(0.5);
  const UsageTranscript t = run_sequence(
      dev, constant_inputs(DensityOperator::maximally_mixed(2), 10));
  const EntropyChainReport report = entropy_chain_check(t, dev.dim_memory());
  CHECK(report.passed);
  CHECK(report.bound_bits == doctest::Approx(1.0));
  // the memory entropy gain stays under log₂ dim H_M
  for (double gain : report.memory_entropy_gain) CHECK(gain <= 1.0 + 1e-9);
}

TEST_CASE("entropy_chain_check: SWAP with constant pure inputs") {
  const MemoryDevice dev = swap_device(ground_state());
  const UsageTranscript t = run_sequence(dev, constant_inputs(plus_state(), 6));
  const EntropyChainReport report = entropy_chain_check(t, 2);
  CHECK(report.passed);
}

TEST_CASE("entropy_chain_check: rejects non-constant input sequences") {
  const MemoryDevice dev = swap_device(ground_state());
  std::vector<DensityOperator> inputs{plus_state(),
                                      DensityOperator::maximally_mixed(2)};
  const UsageTranscript t = run_sequence(dev, inputs);
  CHECK_THROWS_AS(entropy_chain_check(t, 2), precondition_error);
}

//------------------------------------------------------------------------------
// shift register
//------------------------------------------------------------------------------

TEST_CASE("shift_register_device: n = 1 returns the inner device") {
  const MemoryDevice inner = amplitude_damping_device(0.5);
  const MemoryDevice reg = shift_register_device(inner, 1);
  CHECK(diff(reg.unitary().matrix(), inner.unitary().matrix()) == 0.0);
}

TEST_CASE("shift_register_device: AD dilation is exactly 4-repeatable") {
  const MemoryDevice reg =
      shift_register_device(amplitude_damping_device(0.5), 4);
  CHECK(reg.dim_memory() == 16);
  const RepeatabilityReport report = check_repeatable(
      reg, amplitude_damping(0.5), 5,
      InputSource::fixed_state(DensityOperator::maximally_mixed(2)));
  for (int k = 0; k < 4; ++k) CHECK(report.per_step_deviation[k] <= 1e-10);
  CHECK(report.per_step_deviation[4] >= 1e-3);
  REQUIRE(report.first_deviating_step.has_value());
  CHECK(*report.first_deviating_step == 5);
}

TEST_CASE("shift_register_device: SWAP inner device is exactly 3-repeatable") {
  Rng rng(341);
  const MemoryDevice reg = shift_register_device(swap_device(ground_state()), 3);
  const RepeatabilityReport report = check_repeatable(
      reg, constant_channel(ground_state()), 4,
      InputSource::seeded_random(rng.next_u64()));
  for (int k = 0; k < 3; ++k) CHECK(report.per_step_deviation[k] <= 1e-10);
  CHECK(report.per_step_deviation[3] >= 1e-3);
}

TEST_CASE("shift_register_device: size cap is enforced") {
  CHECK_THROWS_AS(shift_register_device(amplitude_damping_device(0.5), 20),
                  dimension_error);
}

//------------------------------------------------------------------------------
// nonunital instances: the deviation arrives before the entropy budget ends
//------------------------------------------------------------------------------

TEST_CASE("nonunital devices: deviation arrives by step n_max + 1") {
  struct Instance {
    MemoryDevice dev;
    KrausChannel target;
  };
  Rvec skew(2);
  skew << 0.9, 0.1;
  std::vector<Instance> instances;
  instances.push_back({amplitude_damping_device(0.5), amplitude_damping(0.5)});
  instances.push_back(
      {swap_device(ground_state()), constant_channel(ground_state())});
  instances.push_back({swap_device(DensityOperator::diagonal(skew)),
                       constant_channel(DensityOperator::diagonal(skew))});

  for (const Instance& inst : instances) {
    const UnitalityCheck u = is_unital(inst.target);
    REQUIRE_FALSE(u.unital);
    const BoundReport bound =
        repeatability_bound(inst.target, inst.dev.dim_memory());
    REQUIRE(bound.n_max_mixture.has_value());
    const int horizon = static_cast<int>(*bound.n_max_mixture) + 1;
    const RepeatabilityReport report = check_repeatable(
        inst.dev, inst.target, horizon + 1,
        InputSource::fixed_state(DensityOperator::maximally_mixed(2)));
    REQUIRE(report.first_deviating_step.has_value());
    CHECK(*report.first_deviating_step <= horizon);
  }
}

//------------------------------------------------------------------------------
// total-mixture memories
//------------------------------------------------------------------------------

TEST_CASE("mixed_memory_unitality_check: SWAP with I/2 induces a unital map") {
  const MemoryDevice dev = swap_device(DensityOperator::maximally_mixed(2));
  const UnitalityScanReport report = mixed_memory_unitality_check(
      dev.unitary(), dev.space(), 0, 0);
  CHECK(report.all_unital);
  // and the induced channel is precisely the constant map to I/2
  CHECK(choi_distance(induced_channel(dev),
                      constant_channel(DensityOperator::maximally_mixed(2))) <=
        1e-12);
}

TEST_CASE("mixed_memory_unitality_check: uniform controlled-U mixtures") {
  // a uniform mixing distribution means the controlled-U memory IS I/dim_M
  const RandomUnitarySpec twirl(
      {0.25, 0.25, 0.25, 0.25},
      {UnitaryOperator(Cmat::Identity(2, 2)), UnitaryOperator(pauli_x()),
       UnitaryOperator(pauli_y()), UnitaryOperator(pauli_z())});
  const MemoryDevice dev = controlled_u_device(twirl);
  const UnitalityScanReport report =
      mixed_memory_unitality_check(dev.unitary(), dev.space(), 0, 0);
  CHECK(report.all_unital);
}

TEST_CASE("mixed_memory_unitality_check: seeded random interactions") {
  Rng rng(351);
  const UnitaryOperator u = random_unitary(4, rng);
  const UnitalityScanReport report =
      mixed_memory_unitality_check(u, ProductSpace(2, 2), 100, 0xFEED);
  CHECK(report.checked == 101);
  CHECK(report.all_unital);
  CHECK(report.max_residual <= 1e-9);
}
