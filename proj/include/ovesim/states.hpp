#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ovesim/rng.hpp"

namespace ovesim {

using Complex = std::complex<double>;

/// Construction-level tolerance for normalization / unitarity / fixed-overlap
/// invariants.
inline constexpr double kConstructionTol = 1e-12;

/// Normalized pure state of dimension d >= 2. Global phase is unconstrained;
/// every consumer works with phase-invariant quantities only.
struct PureState {
  std::vector<Complex> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }
  double norm_sq() const;

  /// Computational basis vector |k> in dimension d.
  static PureState basis(std::size_t d, std::size_t k);
};

/// Validates normalization (within kConstructionTol) and d >= 2.
PureState make_pure_state(std::vector<Complex> amplitudes);

/// Euler-angle parameterization of SU(2): theta in [0, pi], beta and omega
/// in [0, 2*pi).
struct Su2Params {
  double theta;
  double beta;
  double omega;
};

using Matrix2c = std::array<std::array<Complex, 2>, 2>;

/// The 2x2 special unitary matrix for the given angles.
Matrix2c su2_matrix(const Su2Params& p);

PureState apply_su2(const Matrix2c& u, const PureState& s);

/// A (psi, phi) pair with exactly fixed squared overlap c, plus the sampling
/// parameters that produced it. `u` and `phase` are set by the qubit sampler;
/// the qudit sampler leaves `u` empty and `phase` zero.
struct FixedOverlapPair {
  PureState psi;
  PureState phi;
  double c;
  double phase = 0.0;
  std::optional<Su2Params> u;
};

/// Haar-distributed SU(2) element: beta, omega uniform on [0, 2*pi) and
/// theta with density sin(theta)/2 via inverse CDF theta = acos(1 - 2u).
/// Draw order: beta, omega, theta.
Su2Params haar_su2(RandomStream& rng);

/// Deterministic pair construction from explicit sampling parameters:
/// psi = U|0>, phi = U(sqrt(c)|0> + e^{i*phase} sqrt(1-c)|1>).
FixedOverlapPair make_fixed_overlap_pair(const Su2Params& u, double phase,
                                         double c);

/// psi = U|0>, phi = U(sqrt(c)|0> + e^{i*phase} sqrt(1-c)|1>) with U Haar on
/// SU(2) and phase uniform on [0, 2*pi). |<psi|phi>|^2 = c up to rounding.
FixedOverlapPair sample_pair(double c, RandomStream& rng);

/// Haar-random psi in dimension d; phi = sqrt(c) psi + sqrt(1-c) psi_perp
/// with psi_perp Haar-random in the subspace orthogonal to psi (Gram-Schmidt
/// of a Gaussian vector). The unsquared overlap is real: <psi|phi> = sqrt(c).
FixedOverlapPair sample_qudit_pair(double c, std::size_t d, RandomStream& rng);

Complex inner_product(const PureState& a, const PureState& b);

/// Squared overlap |<a|b>|^2. Dimensions must match.
double overlap(const PureState& a, const PureState& b);

}  // namespace ovesim
