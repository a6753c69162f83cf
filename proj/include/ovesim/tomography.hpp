#pragma once

#include <array>
#include <span>
#include <vector>

#include "ovesim/rng.hpp"
#include "ovesim/states.hpp"

namespace ovesim {

/// Counts of the +1 outcome for each Pauli basis, with n_per_basis copies
/// consumed per basis.
struct MubCounts {
  long n_x = 0;
  long n_y = 0;
  long n_z = 0;
  long n_per_basis = 0;
};

/// (p_x, p_y, p_z): probabilities of the +1 outcome when measuring sigma_x,
/// sigma_y, sigma_z on a qubit. p_x = |<psi|+>|^2, p_y = |<psi|L>|^2,
/// p_z = |<psi|0>|^2.
std::array<double, 3> mub_probabilities(const PureState& psi);

/// Splits n_total copies evenly over the three Pauli bases and draws the
/// three outcome counts as independent binomials. n_total must be divisible
/// by 3 (no silent flooring).
MubCounts simulate_mub_counts(const PureState& psi, long n_total,
                              RandomStream& rng);

/// Closed-form approximate maximum-likelihood reconstruction:
///   sqrt(Z)|0> + sqrt(1-Z) (X+iY)/sqrt(X^2+Y^2) |1>
/// with Z = n_z/N', X = 2 n_x/N' - 1, Y = 2 n_y/N' - 1. The degenerate
/// direction X = Y = 0 deterministically takes phase factor +1.
PureState reconstruct(const MubCounts& counts);

struct KappaFit {
  double kappa = 0.0;
  double std_error = 0.0;
  std::vector<long> n_grid;
};

/// Monte Carlo estimate of the scaled average infidelity: for each n in
/// n_grid, averages 1 - |<psi|psi~>|^2 over Haar-random qubits and repeated
/// tomography runs, then least-squares fits 1 - F = kappa / n (no intercept).
KappaFit estimate_kappa(std::span<const long> n_grid, long samples_per_point,
                        long repeats, RandomStream& rng);

}  // namespace ovesim
