#pragma once

#include <cstdint>
#include <string_view>

#include "ovesim/rng.hpp"

namespace ovesim {

enum class Strategy { Tt, Tp, Scm, Ost, Adaptive, ScmQudit };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view tag);

/// Beam-splitter / detector model of the optical swap test.
struct OstPhysics {
  double gamma = 1.0;  // internal-mode indistinguishability, (0, 1]
  double eta = 0.5;    // beam-splitter reflectivity, (0, 1)
  bool ppnrd = true;   // pseudo photon-number-resolving detection
};

void validate(const OstPhysics& physics);

struct TheoryParams {
  double kappa = 11.0 / 8.0;
  double gamma = 1.0;
  double eta = 0.5;
  long dim = 2;
};

/// Asymptotic average variance v(c, n) per strategy:
///   TT  -> 4 k c(1-c) / n
///   TP  -> (2k + 1) c(1-c) / n
///   SCM -> (1 - c^2) / n          (dimension independent; ScmQudit aliases)
///   OST -> (3 - G c)(1 - G^2 c^2) / (2 n G^2)
double theory_variance(Strategy s, double c, long n, const TheoryParams& p);

struct SeparableDecomposition {
  double tomography;  // 2 k c(1-c) / ((d-1) n)
  double projection;  // c(1-c) / n
};

/// Error decomposition of the separable strategies: v_tt = 2 * tomography,
/// v_tp = tomography + projection.
SeparableDecomposition decompose_separable(double c, long n,
                                           const TheoryParams& p);

/// Sample count and seed for the Monte Carlo TP Fisher information.
struct TpFisherOptions {
  long samples = 200000;
  std::uint64_t seed = 0x7150f15e;
};

/// Per-pair Fisher information of the overlap.
///   SCM -> 1 / (1 - c^2)
///   OST -> effective FI 2 G^2 / ((3 - G c)(1 - G^2 c^2))
///   TT  -> leading term 1 / (4 k c(1-c))
///   TP  -> Monte Carlo average of the binomial FI over the Gaussian
///          tomography-error model (no closed form).
/// Endpoints are singular: c in (0,1) for TT/TP, c in [0,1) for SCM/OST.
double fisher_information(Strategy s, double c, long n, const TheoryParams& p,
                          const TpFisherOptions& opts = {});

/// Probability of the "fail" outcome of a HOMI swap test with reflectivity
/// eta and indistinguishability gamma: 1 - 2*eta + 2*eta^2 - 2*eta*(1-eta)*gamma*c.
double homi_fail_probability(double c, const OstPhysics& physics);

/// Unbiased inversion of homi_fail_probability given k_f fails out of n.
double corrected_ost_estimator(long k_f, long n, const OstPhysics& physics);

/// Sufficient-copy d-dimensional variances for the separable strategies with
/// a user-supplied scaled infidelity kappa_d (kappa_d = d-1 for optimal joint
/// tomography; O(d) for independent, O(4^q q) for local qubit measurements).
double highdim_variance(Strategy s, double c, long n, long d, double kappa_d);

/// Exact limited-copy mean squared error of TT/TP under optimal joint
/// tomography; dominated by a constant bias term when n ~ d.
double limited_copy_mse(Strategy s, double c, long n, long d);

/// Root of theory_variance_a(c) = theory_variance_b(c) on (0,1) by bisection
/// to 1e-9. Throws NoCrossoverError when the scaled curves do not cross.
double crossover(Strategy a, Strategy b, const TheoryParams& p);

/// Chebyshev copy overhead: ceil(f_s(c) / (eta_prob * epsilon^2)) with
/// f_s the scaled average variance.
long long copy_overhead(Strategy s, double c, double epsilon, double eta_prob,
                        const TheoryParams& p);

}  // namespace ovesim
