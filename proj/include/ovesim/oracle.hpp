#pragma once

#include <functional>
#include <vector>

#include "ovesim/analytics.hpp"
#include "ovesim/rng.hpp"
#include "ovesim/states.hpp"

namespace ovesim {

/// Result of an exact enumeration: first two moments of the estimator and
/// the number of enumerated outcomes. `variance` is the mean squared error
/// about the pair's exact overlap.
struct ExactResult {
  double mean = 0.0;
  double variance = 0.0;
  long long support_size = 0;
};

/// Exact TT mean squared error for one pair by summing over all tomography
/// outcomes of both states. Bounded to n/3 <= 4 so the (N'+1)^6 cross product
/// stays small.
ExactResult exact_tt_variance(const FixedOverlapPair& pair, long n);

/// Exact TP mean squared error; the inner binomial expectation collapses to
/// p(1-p)/n + (p-c)^2, leaving a single sum over tomography outcomes of phi.
/// Bounded to n/3 <= 10.
ExactResult exact_tp_variance(const FixedOverlapPair& pair, long n);

struct OstPmfEntry {
  long k_f;
  double probability;
};

/// Full PPNRD fail-count distribution for an even budget n at effective
/// overlap gamma*c. Probabilities sum to 1 within 1e-10.
std::vector<OstPmfEntry> exact_ost_pmf(double c, double gamma, long n);

/// Mean and variance of the PPNRD estimator (1 - 2 k_f/n)/gamma computed by
/// direct summation of exact_ost_pmf. `variance` here is the second central
/// moment; the mean differs from c by O(1/n).
ExactResult exact_ost_moments(double c, double gamma, long n);

/// Closed-form SCM moments: mean c, variance (1-c^2)/n.
ExactResult exact_scm_moments(double c, long n);

struct EnsembleAverage {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo average of point_fn over Haar/phase-sampled pairs at fixed c.
/// Evaluation parallelizes over samples; the summation is compensated and in
/// index order, so the result is identical for any worker-thread count.
EnsembleAverage average_over_ensemble(
    const std::function<double(const FixedOverlapPair&)>& point_fn, double c,
    long samples, RandomStream& rng);

}  // namespace ovesim
