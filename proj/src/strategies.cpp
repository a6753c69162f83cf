#include "ovesim/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ovesim/errors.hpp"

namespace ovesim {

namespace {

long draw_binomial(RandomStream& rng, long trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<long>(trials, p)(rng);
}

void check_tomography_budget(long n) {
  if (n <= 0 || n % 3 != 0) {
    throw ConfigError("tomography-based strategies need a positive copy count "
                      "divisible by 3, got " + std::to_string(n));
  }
}

/// Maximizes f on [lo, hi] by golden-section search; f must be unimodal.
double golden_section_max(double lo, double hi,
                          const std::function<double(double)>& f, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

EstimationRun run_tt(const FixedOverlapPair& pair, long n, RandomStream& rng) {
  check_tomography_budget(n);
  TomoPairCounts counts;
  counts.psi = simulate_mub_counts(pair.psi, n, rng);
  counts.phi = simulate_mub_counts(pair.phi, n, rng);
  const double estimate =
      overlap(reconstruct(counts.psi), reconstruct(counts.phi));
  return {Strategy::Tt, estimate, n, counts};
}

EstimationRun run_tp(const FixedOverlapPair& pair, long n, RandomStream& rng) {
  check_tomography_budget(n);
  ProjectionCounts counts;
  counts.tomo = simulate_mub_counts(pair.phi, n, rng);
  const double p = overlap(pair.psi, reconstruct(counts.tomo));
  counts.trials = n;
  counts.successes = draw_binomial(rng, n, p);
  const double estimate =
      static_cast<double>(counts.successes) / static_cast<double>(n);
  return {Strategy::Tp, estimate, n, counts};
}

EstimationRun run_scm(const FixedOverlapPair& pair, long n, RandomStream& rng) {
  if (n < 1) throw ConfigError("SCM needs at least one pair");
  BinaryCounts counts{draw_binomial(rng, n, 0.5 * (1.0 - pair.c)), n};
  const double estimate =
      1.0 - 2.0 * static_cast<double>(counts.k) / static_cast<double>(n);
  return {Strategy::Scm, estimate, n, counts};
}

EstimationRun run_ost(const FixedOverlapPair& pair, long n,
                      const OstPhysics& physics, RandomStream& rng) {
  validate(physics);
  if (n < 2 || n % 2 != 0) {
    throw ConfigError("OST needs an even pair budget >= 2, got " +
                      std::to_string(n));
  }

  if (!physics.ppnrd) {
    const double p_f = homi_fail_probability(pair.c, physics);
    OstCounts counts;
    counts.fails = draw_binomial(rng, n, p_f);
    counts.passes = n - counts.fails;
    counts.consumed = n;
    const double estimate = corrected_ost_estimator(counts.fails, n, physics);
    return {Strategy::Ost, estimate, counts.consumed, counts};
  }

  // PPNRD: only detected events are observed. A detected fail consumes one
  // pair, a detected pass consumes two, and the last pass may overshoot the
  // budget by one pair.
  const double gc = physics.gamma * pair.c;
  const double p_fail_detected = (2.0 - 2.0 * gc) / (3.0 - gc);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  OstCounts counts;
  while (counts.consumed < n) {
    if (unit(rng) < p_fail_detected) {
      ++counts.fails;
      counts.consumed += 1;
    } else {
      ++counts.passes;
      counts.consumed += 2;
    }
  }
  const double estimate =
      (1.0 - 2.0 * static_cast<double>(counts.fails) / static_cast<double>(n)) /
      physics.gamma;
  return {Strategy::Ost, estimate, counts.consumed, counts};
}

EstimationRun run_adaptive(const FixedOverlapPair& pair, long n, double alpha,
                           double c_t, RandomStream& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("adaptive alpha must lie in (0,1)");
  }
  // floor(alpha * n), robust to the quotient landing a rounding error below
  // an integer (e.g. alpha = 1/30, n = 900 must give exactly 30).
  const long pilot_pairs =
      static_cast<long>(std::floor(alpha * static_cast<double>(n) + 1e-9));
  const long rest = n - pilot_pairs;
  if (pilot_pairs < 1 || rest < 3) {
    throw ConfigError("adaptive budget too small for a pilot plus second step");
  }

  AdaptiveCounts counts;
  counts.pilot.trials = pilot_pairs;
  counts.pilot.k = draw_binomial(rng, pilot_pairs, 0.5 * (1.0 - pair.c));
  const double pilot_estimate =
      1.0 - 2.0 * static_cast<double>(counts.pilot.k) /
                static_cast<double>(pilot_pairs);

  double estimate;
  if (pilot_estimate < c_t) {
    counts.tp_branch = true;
    // The remaining pairs supply `rest` copies of phi for tomography (rounded
    // down to a multiple of 3) and `rest` copies of psi for projection.
    const long tomo_copies = 3 * (rest / 3);
    counts.tp.tomo = simulate_mub_counts(pair.phi, tomo_copies, rng);
    const double p = overlap(pair.psi, reconstruct(counts.tp.tomo));
    counts.tp.trials = rest;
    counts.tp.successes = draw_binomial(rng, rest, p);

    // Joint likelihood of the SCM pilot, Binomial(k1; m1, (1-c)/2), and the
    // projection step approximated as Binomial(k; m2, c).
    const double k1 = static_cast<double>(counts.pilot.k);
    const double m1k1 = static_cast<double>(pilot_pairs - counts.pilot.k);
    const double k = static_cast<double>(counts.tp.successes);
    const double m2k = static_cast<double>(rest - counts.tp.successes);
    const auto log_likelihood = [&](double c) {
      double ll = 0.0;
      if (k1 + m2k > 0.0) ll += (k1 + m2k) * std::log(1.0 - c);
      if (m1k1 > 0.0) ll += m1k1 * std::log(1.0 + c);
      if (k > 0.0) ll += k * std::log(c);
      return ll;
    };
    estimate = golden_section_max(0.0, 1.0, log_likelihood, 1e-9);
    // Interior maximum may sit exactly at a boundary the search cannot reach.
    if (log_likelihood(0.0) >= log_likelihood(estimate)) estimate = 0.0;
    if (log_likelihood(1.0) >= log_likelihood(estimate)) estimate = 1.0;
  } else {
    counts.tp_branch = false;
    counts.scm.trials = rest;
    counts.scm.k = draw_binomial(rng, rest, 0.5 * (1.0 - pair.c));
    // SCM + SCM: the likelihood maximum pools the counts.
    estimate = 1.0 - 2.0 * static_cast<double>(counts.pilot.k + counts.scm.k) /
                         static_cast<double>(n);
  }
  return {Strategy::Adaptive, estimate, n, counts};
}

EstimationRun run_scm_qudit(const FixedOverlapPair& pair, long n,
                            RandomStream& rng) {
  if (n < 1) throw ConfigError("SCM needs at least one pair");
  BinaryCounts counts{draw_binomial(rng, n, 0.5 * (1.0 - pair.c)), n};
  const double estimate =
      1.0 - 2.0 * static_cast<double>(counts.k) / static_cast<double>(n);
  return {Strategy::ScmQudit, estimate, n, counts};
}

double clamp_estimate(double estimate) {
  return std::clamp(estimate, 0.0, 1.0);
}

SchurProbabilities schur_projector_probabilities(const PureState& psi,
                                                 const PureState& phi) {
  if (psi.dim() != 2 || phi.dim() != 2) {
    throw DomainError("Schur projector probabilities need qubit states");
  }
  const Complex b1 = psi.amplitudes[0], b2 = psi.amplitudes[1];
  const Complex d1 = phi.amplitudes[0], d2 = phi.amplitudes[1];
  SchurProbabilities p;
  p.p1 = std::norm(b1 * d1);
  p.p2 = std::norm(b2 * d2);
  p.p_plus = 0.5 * std::norm(b2 * d1 + b1 * d2);
  p.p_minus = 0.5 * std::norm(b2 * d1 - b1 * d2);
  return p;
}

double antisymmetric_probability(const PureState& psi, const PureState& phi) {
  if (psi.dim() != phi.dim()) {
    throw DomainError("antisymmetric probability needs equal dimensions");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    for (std::size_t j = i + 1; j < psi.dim(); ++j) {
      total += 0.5 * std::norm(psi.amplitudes[i] * phi.amplitudes[j] -
                               psi.amplitudes[j] * phi.amplitudes[i]);
    }
  }
  return total;
}

}  // namespace ovesim
