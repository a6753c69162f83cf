#include "ovesim/oracle.hpp"

#include <cmath>
#include <string>

#include "ovesim/errors.hpp"
#include "ovesim/parallel.hpp"
#include "ovesim/tomography.hpp"

namespace ovesim {

namespace {

struct WeightedState {
  PureState state;
  double probability;
};

std::vector<double> binomial_pmf(long n, double p) {
  // Stable enough at the tiny n used for enumeration.
  std::vector<double> pmf(n + 1);
  for (long k = 0; k <= n; ++k) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(n - k + 1.0);
    double lp = lc;
    if (k > 0) lp += k * std::log(p);
    if (k < n) lp += (n - k) * std::log1p(-p);
    if (p == 0.0) {
      pmf[k] = (k == 0) ? 1.0 : 0.0;
    } else if (p == 1.0) {
      pmf[k] = (k == n) ? 1.0 : 0.0;
    } else {
      pmf[k] = std::exp(lp);
    }
  }
  return pmf;
}

/// All (n_x, n_y, n_z) tomography outcomes of `state` with N' = n/3 copies
/// per basis, each with its reconstruction and probability.
std::vector<WeightedState> enumerate_tomography(const PureState& state,
                                                long n_prime) {
  const auto [px, py, pz] = mub_probabilities(state);
  const auto pmf_x = binomial_pmf(n_prime, px);
  const auto pmf_y = binomial_pmf(n_prime, py);
  const auto pmf_z = binomial_pmf(n_prime, pz);
  std::vector<WeightedState> out;
  out.reserve((n_prime + 1) * (n_prime + 1) * (n_prime + 1));
  for (long nx = 0; nx <= n_prime; ++nx) {
    for (long ny = 0; ny <= n_prime; ++ny) {
      for (long nz = 0; nz <= n_prime; ++nz) {
        const MubCounts counts{nx, ny, nz, n_prime};
        out.push_back({reconstruct(counts), pmf_x[nx] * pmf_y[ny] * pmf_z[nz]});
      }
    }
  }
  return out;
}

void check_tomography_budget(long n, long max_n_prime, const char* what) {
  if (n <= 0 || n % 3 != 0) {
    throw ConfigError(std::string(what) +
                      " needs a positive copy count divisible by 3");
  }
  if (n / 3 > max_n_prime) {
    throw EnumerationBoundError(std::string(what) + " enumeration bound is n/3 <= " +
                                std::to_string(max_n_prime) + ", got n = " +
                                std::to_string(n));
  }
}

}  // namespace

ExactResult exact_tt_variance(const FixedOverlapPair& pair, long n) {
  check_tomography_budget(n, 4, "exact_tt_variance");
  const long n_prime = n / 3;
  const auto psi_outcomes = enumerate_tomography(pair.psi, n_prime);
  const auto phi_outcomes = enumerate_tomography(pair.phi, n_prime);

  double mean = 0.0;
  double mse = 0.0;
  for (const WeightedState& a : psi_outcomes) {
    for (const WeightedState& b : phi_outcomes) {
      const double w = a.probability * b.probability;
      const double est = overlap(a.state, b.state);
      mean += w * est;
      const double err = est - pair.c;
      mse += w * err * err;
    }
  }
  const long long side = static_cast<long long>(psi_outcomes.size());
  return {mean, mse, side * side};
}

ExactResult exact_tp_variance(const FixedOverlapPair& pair, long n) {
  check_tomography_budget(n, 10, "exact_tp_variance");
  const long n_prime = n / 3;
  const auto phi_outcomes = enumerate_tomography(pair.phi, n_prime);

  double mean = 0.0;
  double mse = 0.0;
  const double nd = static_cast<double>(n);
  for (const WeightedState& b : phi_outcomes) {
    const double p = overlap(pair.psi, b.state);
    mean += b.probability * p;
    // E_k[(k/n - c)^2] = p(1-p)/n + (p-c)^2 for k ~ Binomial(n, p).
    mse += b.probability * (p * (1.0 - p) / nd + (p - pair.c) * (p - pair.c));
  }
  return {mean, mse, static_cast<long long>(phi_outcomes.size())};
}

std::vector<OstPmfEntry> exact_ost_pmf(double c, double gamma, long n) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("overlap c must lie in [0,1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0,1]");
  if (n < 2 || n % 2 != 0) throw DomainError("OST pmf needs an even n >= 2");
  if (n > 10000) {
    throw EnumerationBoundError("OST pmf enumeration bound is n <= 10000");
  }

  const double gc = gamma * c;
  const double q = (2.0 - 2.0 * gc) / (3.0 - gc);   // detected fail
  const double x = (1.0 + gc) / (3.0 - gc);         // detected pass
  std::vector<OstPmfEntry> pmf;
  pmf.reserve(n + 1);
  if (q == 0.0) {
    // Perfect bunching: every detected event is a pass.
    for (long kf = 0; kf <= n; ++kf) pmf.push_back({kf, kf == 0 ? 1.0 : 0.0});
    return pmf;
  }
  const double lq = std::log(q);
  const double lx = std::log(x);
  for (long kf = 0; kf <= n; ++kf) {
    // Even k_f: k_f + 2 k_p = n over (n+k_f)/2 detected events in any order.
    // Odd k_f: the budget closes at n+1 and the last event is a pass.
    long events_choose;
    long pass_exponent;
    if (kf % 2 == 0) {
      events_choose = (n + kf) / 2;
      pass_exponent = (n - kf) / 2;
    } else {
      events_choose = (n + kf - 1) / 2;
      pass_exponent = (n - kf + 1) / 2;
    }
    const double lc = std::lgamma(events_choose + 1.0) -
                      std::lgamma(kf + 1.0) -
                      std::lgamma(events_choose - kf + 1.0);
    pmf.push_back({kf, std::exp(lc + kf * lq + pass_exponent * lx)});
  }
  return pmf;
}

ExactResult exact_ost_moments(double c, double gamma, long n) {
  const auto pmf = exact_ost_pmf(c, gamma, n);
  double mean = 0.0;
  double second = 0.0;
  const double nd = static_cast<double>(n);
  for (const OstPmfEntry& e : pmf) {
    const double est = (1.0 - 2.0 * static_cast<double>(e.k_f) / nd) / gamma;
    mean += e.probability * est;
    second += e.probability * est * est;
  }
  return {mean, second - mean * mean, static_cast<long long>(pmf.size())};
}

ExactResult exact_scm_moments(double c, long n) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("overlap c must lie in [0,1]");
  if (n < 1) throw DomainError("copy count must be >= 1");
  return {c, (1.0 - c * c) / static_cast<double>(n), n + 1};
}

EnsembleAverage average_over_ensemble(
    const std::function<double(const FixedOverlapPair&)>& point_fn, double c,
    long samples, RandomStream& rng) {
  if (samples < 100) {
    throw ConfigError("ensemble averaging needs at least 100 samples");
  }
  const std::uint64_t base = rng();
  std::vector<double> values(samples);
  parallel_for(samples, [&](long i) {
    RandomStream stream = derive_stream(base, {static_cast<std::uint64_t>(i)});
    values[i] = point_fn(sample_pair(c, stream));
  });

  // Compensated (Kahan) sums in index order: reproducible across thread counts.
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double mean = sum / static_cast<double>(samples);
  double sq = 0.0, sq_comp = 0.0;
  for (double v : values) {
    const double d = (v - mean) * (v - mean) - sq_comp;
    const double t = sq + d;
    sq_comp = (t - sq) - d;
    sq = t;
  }
  const double var = sq / static_cast<double>(samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(samples))};
}

}  // namespace ovesim
