#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "ovesim/errors.hpp"
#include "ovesim/states.hpp"

using namespace ovesim;

namespace {

double ks_statistic_uniform(std::vector<double> samples, double lo, double hi) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = (samples[i] - lo) / (hi - lo);
    d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    d = std::max(d, std::abs(cdf - static_cast<double>(i + 1) / n));
  }
  return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("su2 matrix at zero angles is the identity") {
  const Matrix2c u = su2_matrix(Su2Params{0.0, 0.0, 0.0});
  CHECK(std::abs(u[0][0] - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(u[1][1] - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(u[0][1]) < 1e-15);
  CHECK(std::abs(u[1][0]) < 1e-15);
}

TEST_CASE("haar su2 samples are unitary with unit determinant") {
  RandomStream rng = derive_stream(41, {1});
  for (int i = 0; i < 500; ++i) {
    const Su2Params p = haar_su2(rng);
    CHECK(p.theta >= 0.0);
    CHECK(p.theta <= std::acos(-1.0));
    CHECK(p.beta >= 0.0);
    CHECK(p.beta < 2.0 * std::acos(-1.0));
    const Matrix2c u = su2_matrix(p);
    // rows orthonormal
    const double r0 = std::norm(u[0][0]) + std::norm(u[0][1]);
    const double r1 = std::norm(u[1][0]) + std::norm(u[1][1]);
    const Complex cross =
        u[0][0] * std::conj(u[1][0]) + u[0][1] * std::conj(u[1][1]);
    CHECK(std::abs(r0 - 1.0) < 1e-12);
    CHECK(std::abs(r1 - 1.0) < 1e-12);
    CHECK(std::abs(cross) < 1e-12);
    const Complex det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    CHECK(std::abs(det - Complex{1.0, 0.0}) < 1e-12);
  }
}

TEST_CASE("haar mean of |U00|^2 matches the quadrature value 1/2") {
  // Oracle: integral of cos^2(theta/2) * sin(theta)/2 over [0, pi] by
  // Simpson's rule.
  const int steps = 2000;
  const double pi = std::acos(-1.0);
  const double h = pi / steps;
  auto f = [&](double th) {
    return std::cos(th / 2.0) * std::cos(th / 2.0) * std::sin(th) / 2.0;
  };
  double integral = f(0.0) + f(pi);
  for (int i = 1; i < steps; ++i) {
    integral += (i % 2 ? 4.0 : 2.0) * f(i * h);
  }
  integral *= h / 3.0;
  CHECK(integral == doctest::Approx(0.5).epsilon(1e-9));

  RandomStream rng = derive_stream(41, {2});
  const int samples = 100000;
  double mean = 0.0;
  for (int i = 0; i < samples; ++i) {
    mean += std::norm(su2_matrix(haar_su2(rng))[0][0]);
  }
  mean /= samples;
  CHECK(std::abs(mean - integral) < 0.01);
}

TEST_CASE("cos(theta) of haar su2 draws is uniform on [-1,1]") {
  RandomStream rng = derive_stream(41, {3});
  std::vector<double> samples(100000);
  for (double& s : samples) s = std::cos(haar_su2(rng).theta);
  CHECK(ks_statistic_uniform(std::move(samples), -1.0, 1.0) < 0.01);
}

TEST_CASE("sampled pairs have exactly the requested overlap") {
  RandomStream rng = derive_stream(41, {4});
  for (int grid = 0; grid <= 10; ++grid) {
    const double c = grid / 10.0;
    for (int i = 0; i < 200; ++i) {
      const FixedOverlapPair pair = sample_pair(c, rng);
      CHECK(std::abs(overlap(pair.psi, pair.phi) - c) < 1e-12);
      CHECK(std::abs(pair.psi.norm_sq() - 1.0) < 1e-12);
      CHECK(std::abs(pair.phi.norm_sq() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("pair edge cases") {
  RandomStream rng = derive_stream(41, {5});
  SUBCASE("c = 1 gives phi equal to psi up to global phase") {
    const FixedOverlapPair pair = sample_pair(1.0, rng);
    CHECK(overlap(pair.psi, pair.phi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("c = 0 gives orthogonal states") {
    const FixedOverlapPair pair = sample_pair(0.0, rng);
    CHECK(std::abs(inner_product(pair.psi, pair.phi)) < 1e-12);
  }
  SUBCASE("identity frame, zero phase, c = 0.25") {
    const FixedOverlapPair pair =
        make_fixed_overlap_pair(Su2Params{0.0, 0.0, 0.0}, 0.0, 0.25);
    CHECK(std::abs(pair.psi.amplitudes[0] - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(pair.phi.amplitudes[0] - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(pair.phi.amplitudes[1] - Complex{std::sqrt(0.75), 0.0}) <
          1e-15);
    CHECK(overlap(pair.psi, pair.phi) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("c outside [0,1] is rejected") {
    CHECK_THROWS_AS(sample_pair(-0.1, rng), DomainError);
    CHECK_THROWS_AS(sample_pair(1.1, rng), DomainError);
  }
}

TEST_CASE("overlap basics") {
  const PureState zero = PureState::basis(2, 0);
  const PureState one = PureState::basis(2, 1);
  const PureState plus = make_pure_state(
      {Complex{1.0 / std::sqrt(2.0), 0.0}, Complex{1.0 / std::sqrt(2.0), 0.0}});
  CHECK(overlap(zero, zero) == doctest::Approx(1.0));
  CHECK(overlap(zero, one) == doctest::Approx(0.0));
  CHECK(overlap(zero, plus) == doctest::Approx(0.5));
  CHECK_THROWS_AS(overlap(zero, PureState::basis(3, 0)), DomainError);
}

TEST_CASE("make_pure_state validates") {
  CHECK_THROWS_AS(make_pure_state({Complex{1.0, 0.0}}), DomainError);
  CHECK_THROWS_AS(make_pure_state({Complex{1.0, 0.0}, Complex{0.5, 0.0}}),
                  DomainError);
}

TEST_CASE("qudit pairs") {
  RandomStream rng = derive_stream(41, {6});
  SUBCASE("fixed overlap in d = 4") {
    for (int i = 0; i < 200; ++i) {
      const FixedOverlapPair pair = sample_qudit_pair(0.3, 4, rng);
      CHECK(std::abs(overlap(pair.psi, pair.phi) - 0.3) < 1e-12);
      CHECK(std::abs(pair.phi.norm_sq() - 1.0) < 1e-12);
      // real-valued unsquared overlap convention
      const Complex ip = inner_product(pair.psi, pair.phi);
      CHECK(std::abs(ip.imag()) < 1e-12);
      CHECK(ip.real() == doctest::Approx(std::sqrt(0.3)).epsilon(1e-10));
    }
  }
  SUBCASE("c = 1 collapses phi onto psi") {
    const FixedOverlapPair pair = sample_qudit_pair(1.0, 5, rng);
    CHECK(overlap(pair.psi, pair.phi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(sample_qudit_pair(0.5, 1, rng), DomainError);
    CHECK_THROWS_AS(sample_qudit_pair(1.5, 3, rng), DomainError);
  }
}

TEST_CASE("d=2 qudit sampling matches the qubit sampler marginals") {
  RandomStream rng_a = derive_stream(41, {7});
  RandomStream rng_b = derive_stream(41, {8});
  const int samples = 100000;
  const PureState e0 = PureState::basis(2, 0);
  std::vector<double> qudit_psi(samples), qubit_psi(samples);
  std::vector<double> qudit_phi(samples), qubit_phi(samples);
  for (int i = 0; i < samples; ++i) {
    const FixedOverlapPair a = sample_qudit_pair(0.5, 2, rng_a);
    const FixedOverlapPair b = sample_pair(0.5, rng_b);
    qudit_psi[i] = overlap(a.psi, e0);
    qubit_psi[i] = overlap(b.psi, e0);
    qudit_phi[i] = overlap(a.phi, e0);
    qubit_phi[i] = overlap(b.phi, e0);
  }
  CHECK(ks_statistic_two_sample(qudit_psi, qubit_psi) < 0.02);
  CHECK(ks_statistic_two_sample(qudit_phi, qubit_phi) < 0.02);
}
