#include "ovesim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ovesim/errors.hpp"

namespace ovesim {

std::array<double, 3> mub_probabilities(const PureState& psi) {
  if (psi.dim() != 2) throw DomainError("MUB tomography needs a qubit");
  const Complex a = psi.amplitudes[0];
  const Complex b = psi.amplitudes[1];
  // Clamp away the last-ulp excursions of |<psi|.>|^2 outside [0,1].
  auto prob = [](double p) { return std::clamp(p, 0.0, 1.0); };
  const double px = prob(0.5 * std::norm(a + b));
  const double py = prob(0.5 * std::norm(a - Complex{0.0, 1.0} * b));
  const double pz = prob(std::norm(a));
  return {px, py, pz};
}

MubCounts simulate_mub_counts(const PureState& psi, long n_total,
                              RandomStream& rng) {
  if (n_total <= 0 || n_total % 3 != 0) {
    throw ConfigError("tomography copy count must be a positive multiple of 3, got " +
                      std::to_string(n_total));
  }
  const auto [px, py, pz] = mub_probabilities(psi);
  const long n_prime = n_total / 3;
  MubCounts counts;
  counts.n_per_basis = n_prime;
  counts.n_x = std::binomial_distribution<long>(n_prime, px)(rng);
  counts.n_y = std::binomial_distribution<long>(n_prime, py)(rng);
  counts.n_z = std::binomial_distribution<long>(n_prime, pz)(rng);
  return counts;
}

PureState reconstruct(const MubCounts& counts) {
  const double np = static_cast<double>(counts.n_per_basis);
  const double z = static_cast<double>(counts.n_z) / np;
  const double x = 2.0 * static_cast<double>(counts.n_x) / np - 1.0;
  const double y = 2.0 * static_cast<double>(counts.n_y) / np - 1.0;
  const double r = std::hypot(x, y);
  const Complex phase = (r > 0.0) ? Complex{x / r, y / r} : Complex{1.0, 0.0};
  PureState s;
  s.amplitudes = {Complex{std::sqrt(z), 0.0}, std::sqrt(1.0 - z) * phase};
  return s;
}

KappaFit estimate_kappa(std::span<const long> n_grid, long samples_per_point,
                        long repeats, RandomStream& rng) {
  if (samples_per_point < 100) {
    throw ConfigError("estimate_kappa needs at least 100 samples per point");
  }
  if (repeats < 1) throw ConfigError("estimate_kappa needs repeats >= 1");

  std::vector<double> mean_infidelity;
  std::vector<double> std_err;
  for (long n : n_grid) {
    if (n < 30 || n % 3 != 0) {
      throw ConfigError("kappa grid entries must be multiples of 3 and >= 30");
    }
    double sum = 0.0;
    double sum_sq = 0.0;
    const long total = samples_per_point * repeats;
    for (long s = 0; s < samples_per_point; ++s) {
      const Matrix2c u = su2_matrix(haar_su2(rng));
      const PureState psi = apply_su2(u, PureState::basis(2, 0));
      for (long r = 0; r < repeats; ++r) {
        const MubCounts counts = simulate_mub_counts(psi, n, rng);
        const double infid = 1.0 - overlap(psi, reconstruct(counts));
        sum += infid;
        sum_sq += infid * infid;
      }
    }
    const double mean = sum / static_cast<double>(total);
    const double var =
        (sum_sq - static_cast<double>(total) * mean * mean) /
        static_cast<double>(total - 1);
    mean_infidelity.push_back(mean);
    std_err.push_back(std::sqrt(std::max(var, 0.0) / static_cast<double>(total)));
  }

  // Least squares for y = kappa * x with x = 1/n; the standard error
  // propagates the per-point Monte Carlo errors.
  double sxy = 0.0, sxx = 0.0, var_num = 0.0;
  for (std::size_t i = 0; i < mean_infidelity.size(); ++i) {
    const double x = 1.0 / static_cast<double>(n_grid[i]);
    sxy += x * mean_infidelity[i];
    sxx += x * x;
    var_num += x * x * std_err[i] * std_err[i];
  }
  KappaFit fit;
  fit.kappa = sxy / sxx;
  fit.std_error = std::sqrt(var_num) / sxx;
  fit.n_grid.assign(n_grid.begin(), n_grid.end());
  return fit;
}

}  // namespace ovesim
