#pragma once

#include <variant>

#include "ovesim/analytics.hpp"
#include "ovesim/rng.hpp"
#include "ovesim/states.hpp"
#include "ovesim/tomography.hpp"

namespace ovesim {

/// Outcome records per strategy family.
struct TomoPairCounts {
  MubCounts psi;
  MubCounts phi;
};

struct ProjectionCounts {
  MubCounts tomo;      // tomography of phi
  long successes = 0;  // projections of psi onto the reconstruction
  long trials = 0;
};

struct BinaryCounts {
  long k = 0;  // antisymmetric / "fail" outcomes
  long trials = 0;
};

struct OstCounts {
  long fails = 0;
  long passes = 0;
  long consumed = 0;  // pairs consumed; n or n+1 under PPNRD accounting
};

struct AdaptiveCounts {
  BinaryCounts pilot;
  bool tp_branch = false;
  ProjectionCounts tp;  // meaningful when tp_branch
  BinaryCounts scm;     // meaningful when !tp_branch
};

using RunCounts = std::variant<TomoPairCounts, ProjectionCounts, BinaryCounts,
                               OstCounts, AdaptiveCounts>;

/// One strategy execution. The estimate is the raw estimator value and may
/// lie outside [0,1]; clamp_estimate is a separate post-processor so that
/// variance benchmarks see the estimator the closed-form theory describes.
struct EstimationRun {
  Strategy strategy;
  double estimate = 0.0;
  long copies_used = 0;
  RunCounts counts;
};

/// Tomography of both states (n copies each, n/3 per Pauli basis), estimate
/// |<psi~|phi~>|^2.
EstimationRun run_tt(const FixedOverlapPair& pair, long n, RandomStream& rng);

/// Tomography of phi with n copies, then n projections of psi onto the
/// reconstruction; estimate k/n.
EstimationRun run_tp(const FixedOverlapPair& pair, long n, RandomStream& rng);

/// Singlet projections on n pairs: k ~ Binomial(n, (1-c)/2), estimate 1-2k/n.
EstimationRun run_scm(const FixedOverlapPair& pair, long n, RandomStream& rng);

/// Optical swap test on n pairs. With ppnrd, detected outcomes arrive
/// sequentially (fail consumes one pair, pass consumes two; the budget may
/// close at n+1 when the final pass is drawn with one pair left) and the
/// estimate is (1 - 2 k_f/n)/gamma. Without ppnrd, k_f is binomial in the
/// unbalanced fail probability and the corrected estimator is applied.
EstimationRun run_ost(const FixedOverlapPair& pair, long n,
                      const OstPhysics& physics, RandomStream& rng);

/// Two-step adaptive strategy: an SCM pilot on floor(alpha*n) pairs picks
/// TP (pilot estimate < c_t) or SCM for the remaining pairs; the final
/// estimate maximizes the product of the two step likelihoods over [0,1].
EstimationRun run_adaptive(const FixedOverlapPair& pair, long n, double alpha,
                           double c_t, RandomStream& rng);

/// Antisymmetric-projection strategy for qudit pairs; the outcome law is
/// Binomial(n, (1-c)/2) independent of the dimension.
EstimationRun run_scm_qudit(const FixedOverlapPair& pair, long n,
                            RandomStream& rng);

/// Clamp-to-[0,1] post-processor for raw estimates.
double clamp_estimate(double estimate);

/// Probabilities of the four Schur projectors {|00>, |11>, |Psi+>, |Psi->}
/// on a qubit pair, computed from the amplitudes.
struct SchurProbabilities {
  double p1;
  double p2;
  double p_plus;
  double p_minus;
};
SchurProbabilities schur_projector_probabilities(const PureState& psi,
                                                 const PureState& phi);

/// Antisymmetric-subspace probability for a qudit pair via the amplitude
/// formula sum_{i<j} |a_i b_j - a_j b_i|^2 / 2; equals (1 - c)/2.
double antisymmetric_probability(const PureState& psi, const PureState& phi);

}  // namespace ovesim
