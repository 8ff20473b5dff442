/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "memchan/channel.hpp"

#include <cmath>
#include <sstream>

#include "memchan/rng.hpp"

namespace memchan {

KrausChannel::KrausChannel(Eigen::Index dim, std::vector<Cmat> kraus,
                           double tolerance)
    : dim_(dim), kraus_(std::move(kraus)), tol_(tolerance) {
  if (dim_ < 1) {
    throw dimension_error("KrausChannel: dimension must be >= 1");
  }
  if (kraus_.empty()) {
    throw validation_error("nonempty-kraus", 0.0,
                           "KrausChannel: Kraus list is empty");
  }
  for (const Cmat& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw dimension_error("KrausChannel: Kraus operator dimension mismatch");
    }
  }
  Cmat sum = Cmat::Zero(dim_, dim_);
  for (const Cmat& k : kraus_) {
    sum += k.adjoint() * k;
  }
  tp_residual_ = max_abs(Cmat(sum - Cmat::Identity(dim_, dim_)));
  if (tp_residual_ > tol_) {
    std::ostringstream oss;
    oss << "KrausChannel: trace preservation violated (residual "
        << tp_residual_ << ", tolerance " << tol_ << ")";
    throw validation_error("trace-preserving", tp_residual_, oss.str());
  }
}

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != ch.dim()) {
    throw dimension_error("apply: channel/state dimension mismatch");
  }
  Cmat out = apply_to_matrix(ch, rho.matrix());
  out = (out + Cmat(out.adjoint())) / 2.0;
  return DensityOperator(std::move(out), rho.tolerance());
}

Cmat apply_to_matrix(const KrausChannel& ch, const Cmat& m) {
  if (m.rows() != ch.dim() || m.cols() != ch.dim()) {
    throw dimension_error("apply_to_matrix: dimension mismatch");
  }
  Cmat out = Cmat::Zero(ch.dim(), ch.dim());
  for (const Cmat& k : ch.kraus()) {
    out += k * m * k.adjoint();
  }
  return out;
}

ChoiMatrix kraus_to_choi(const KrausChannel& ch) {
  const Eigen::Index d = ch.dim();
  ChoiMatrix choi{d, Cmat::Zero(d * d, d * d)};
  // C[(m,i),(n,j)] = (1/d) ⟨m| E[|i⟩⟨j|] |n⟩, output factor first
  for (const Cmat& k : ch.kraus()) {
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index n = 0; n < d; ++n) {
          for (Eigen::Index j = 0; j < d; ++j) {
            choi.matrix(m * d + i, n * d + j) +=
                k(m, i) * std::conj(k(n, j)) / static_cast<double>(d);
          }
        }
      }
    }
  }
  return choi;
}

KrausChannel choi_to_kraus(const ChoiMatrix& choi, double tolerance) {
  const Eigen::Index d = choi.dim;
  const EighResult eig = eigh(choi.matrix, tolerance);
  std::vector<Cmat> kraus;
  for (Eigen::Index a = 0; a < eig.eigenvalues.size(); ++a) {
    const double lambda = eig.eigenvalues(a);
    if (lambda < -tolerance) {
      throw validation_error("completely-positive", -lambda,
                             "choi_to_kraus: Choi matrix is not PSD");
    }
    // keep every strictly positive direction; dropping near-tolerance weights
    // would show up as a trace-preservation deficit in the rebuilt channel
    if (lambda <= 0.0) continue;
    Cmat k(d, d);
    const double scale = std::sqrt(static_cast<double>(d) * lambda);
    for (Eigen::Index m = 0; m < d; ++m) {
      for (Eigen::Index i = 0; i < d; ++i) {
        k(m, i) = scale * eig.eigenvectors(m * d + i, a);
      }
    }
    kraus.push_back(std::move(k));
  }
  return KrausChannel(d, std::move(kraus), tolerance);
}

double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.dim != b.dim) {
    throw dimension_error("choi_distance: dimension mismatch");
  }
  return 0.5 * trace_norm(Cmat(a.matrix - b.matrix));
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
  return choi_distance(kraus_to_choi(a), kraus_to_choi(b));
}

UnitalityCheck is_unital(const KrausChannel& ch, double tolerance) {
  Cmat sum = Cmat::Zero(ch.dim(), ch.dim());
  for (const Cmat& k : ch.kraus()) {
    sum += k * k.adjoint();
  }
  const double residual = max_abs(Cmat(sum - Cmat::Identity(ch.dim(), ch.dim())));
  return UnitalityCheck{residual <= tolerance, residual};
}

double entropy_deficit(const KrausChannel& ch, const DensityOperator& rho) {
  return von_neumann_entropy(rho) - von_neumann_entropy(apply(ch, rho));
}

RandomUnitarySpec::RandomUnitarySpec(std::vector<double> probs,
                                     std::vector<UnitaryOperator> unitaries)
    : probs_(std::move(probs)), unitaries_(std::move(unitaries)) {
  if (probs_.empty() || probs_.size() != unitaries_.size()) {
    throw dimension_error(
        "RandomUnitarySpec: probs and unitaries must be nonempty, equal length");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (p < 0.0 || p > 1.0) {
      throw validation_error("probability-range", p,
                             "RandomUnitarySpec: p_j outside [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw validation_error("probability-sum", std::abs(sum - 1.0),
                           "RandomUnitarySpec: probabilities do not sum to 1");
  }
  const Eigen::Index d = unitaries_.front().dim();
  for (const UnitaryOperator& u : unitaries_) {
    if (u.dim() != d) {
      throw dimension_error("RandomUnitarySpec: unitary dimension mismatch");
    }
  }
}

KrausChannel random_unitary_channel(const RandomUnitarySpec& spec) {
  std::vector<Cmat> kraus;
  for (size_t j = 0; j < spec.probs().size(); ++j) {
    kraus.push_back(std::sqrt(spec.probs()[j]) * spec.unitaries()[j].matrix());
  }
  return KrausChannel(spec.system_dim(), std::move(kraus));
}

KrausChannel identity_channel(Eigen::Index dim) {
  return KrausChannel(dim, {Cmat::Identity(dim, dim)});
}

KrausChannel amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw validation_error("damping-range", gamma,
                           "amplitude_damping: gamma outside [0, 1]");
  }
  Cmat k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  return KrausChannel(2, {k0, k1});
}

KrausChannel depolarizing(double p) {
  if (p < 0.0 || p > 1.0) {
    throw validation_error("depolarizing-range", p,
                           "depolarizing: p outside [0, 1]");
  }
  std::vector<Cmat> kraus;
  kraus.push_back(std::sqrt(1.0 - 3.0 * p / 4.0) * Cmat::Identity(2, 2));
  if (p > 0.0) {
    kraus.push_back(std::sqrt(p / 4.0) * pauli_x());
    kraus.push_back(std::sqrt(p / 4.0) * pauli_y());
    kraus.push_back(std::sqrt(p / 4.0) * pauli_z());
  }
  return KrausChannel(2, std::move(kraus));
}

KrausChannel constant_channel(const DensityOperator& xi) {
  const Eigen::Index d = xi.dim();
  const EighResult eig = eigh(xi.matrix(), xi.tolerance());
  std::vector<Cmat> kraus;
  for (Eigen::Index i = 0; i < d; ++i) {
    double lambda = eig.eigenvalues(i);
    if (lambda <= 0.0) continue;  // null directions contribute nothing
    if (lambda > 1.0) lambda = 1.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      // √λ_i |e_i⟩⟨j|
      Cmat k = Cmat::Zero(d, d);
      k.col(j) = std::sqrt(lambda) * eig.eigenvectors.col(i);
      kraus.push_back(std::move(k));
    }
  }
  return KrausChannel(d, std::move(kraus), xi.tolerance());
}

MonotonicityReport unital_monotonicity_harness(const KrausChannel& ch,
                                               int samples, uint64_t seed,
                                               double slack) {
  const UnitalityCheck u = is_unital(ch);
  if (!u.unital) {
    std::ostringstream oss;
    oss << "unital_monotonicity_harness: channel is not unital (residual "
        << u.residual << ")";
    throw precondition_error(oss.str());
  }
  Rng rng(seed);
  MonotonicityReport report;
  report.samples = samples;
  report.slack = slack;
  report.all_passed = true;
  bool first = true;
  for (int i = 0; i < samples; ++i) {
    const DensityOperator rho = random_density(ch.dim(), rng);
    const double margin =
        von_neumann_entropy(apply(ch, rho)) - von_neumann_entropy(rho);
    if (first || margin < report.worst_margin) {
      report.worst_margin = margin;
      report.worst_sample = i;
      first = false;
    }
    if (margin < -slack) report.all_passed = false;
  }
  return report;
}

}  // namespace memchan
