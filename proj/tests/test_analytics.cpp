#include <cmath>

#include <doctest.h>

#include "ovesim/analytics.hpp"
#include "ovesim/errors.hpp"

using namespace ovesim;

namespace {
const TheoryParams kDefaults{};
const double kGrid[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}  // namespace

TEST_CASE("strategy tags round trip") {
  for (Strategy s : {Strategy::Tt, Strategy::Tp, Strategy::Scm, Strategy::Ost,
                     Strategy::Adaptive, Strategy::ScmQudit}) {
    CHECK(strategy_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(strategy_from_string("swap"), DomainError);
}

TEST_CASE("table of scaled variances") {
  const long n = 900;
  CHECK(n * theory_variance(Strategy::Tt, 0.5, n, kDefaults) ==
        doctest::Approx(1.375).epsilon(1e-12));
  CHECK(theory_variance(Strategy::Scm, 1.0, n, kDefaults) == 0.0);
  CHECK(n * theory_variance(Strategy::Ost, 0.0, n, kDefaults) ==
        doctest::Approx(1.5).epsilon(1e-12));
  const TheoryParams imperfect{11.0 / 8.0, 0.965, 0.5, 2};
  CHECK(n * theory_variance(Strategy::Ost, 0.5, n, imperfect) ==
        doctest::Approx((3.0 - 0.4825) * (1.0 - 0.965 * 0.965 * 0.25) /
                        (2.0 * 0.965 * 0.965)));
  CHECK_THROWS_AS(theory_variance(Strategy::Adaptive, 0.5, n, kDefaults),
                  DomainError);
  CHECK_THROWS_AS(theory_variance(Strategy::Scm, 1.5, n, kDefaults),
                  DomainError);
}

TEST_CASE("separable decomposition identities") {
  const long n = 900;
  const SeparableDecomposition d = decompose_separable(0.5, n, kDefaults);
  CHECK(n * d.tomography == doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(n * d.projection == doctest::Approx(0.25).epsilon(1e-12));

  for (double c : kGrid) {
    const SeparableDecomposition dec = decompose_separable(c, n, kDefaults);
    const double v_tt = theory_variance(Strategy::Tt, c, n, kDefaults);
    const double v_tp = theory_variance(Strategy::Tp, c, n, kDefaults);
    CHECK(std::abs(2.0 * dec.tomography - v_tt) <= 1e-15);
    CHECK(std::abs(dec.tomography + dec.projection - v_tp) <= 1e-15);
  }

  SUBCASE("endpoints vanish") {
    for (double c : {0.0, 1.0}) {
      const SeparableDecomposition dec = decompose_separable(c, n, kDefaults);
      CHECK(dec.tomography == 0.0);
      CHECK(dec.projection == 0.0);
    }
  }
  SUBCASE("tomography part scales as 1/(d-1)") {
    TheoryParams p12 = kDefaults;
    p12.dim = 12;
    const SeparableDecomposition d2 = decompose_separable(0.5, n, kDefaults);
    const SeparableDecomposition d12 = decompose_separable(0.5, n, p12);
    CHECK(d12.tomography == doctest::Approx(d2.tomography / 11.0).epsilon(1e-12));
    CHECK(d12.projection == d2.projection);
  }
}

TEST_CASE("fisher information closed forms") {
  CHECK(fisher_information(Strategy::Scm, 0.0, 900, kDefaults) ==
        doctest::Approx(1.0));
  CHECK(fisher_information(Strategy::Ost, 0.0, 900, kDefaults) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(fisher_information(Strategy::Tt, 0.5, 900, kDefaults) ==
        doctest::Approx(1.0 / (4.0 * 11.0 / 8.0 * 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(fisher_information(Strategy::Scm, 1.0, 900, kDefaults),
                  DomainError);
  CHECK_THROWS_AS(fisher_information(Strategy::Tt, 0.0, 900, kDefaults),
                  DomainError);
}

TEST_CASE("cramer-rao reciprocity for the joint strategies") {
  const long n = 900;
  const TheoryParams imperfect{11.0 / 8.0, 0.965, 0.5, 2};
  for (double c : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    for (const TheoryParams& p : {kDefaults, imperfect}) {
      const double scm = fisher_information(Strategy::Scm, c, n, p) *
                         theory_variance(Strategy::Scm, c, n, p) * n;
      const double ost = fisher_information(Strategy::Ost, c, n, p) *
                         theory_variance(Strategy::Ost, c, n, p) * n;
      CHECK(std::abs(scm - 1.0) < 1e-12);
      CHECK(std::abs(ost - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("ost variance factorization") {
  const long n = 900;
  const TheoryParams p{11.0 / 8.0, 0.965, 0.5, 2};
  for (double c : kGrid) {
    const double g = p.gamma;
    const double factored = (3.0 - g * c) / 2.0 *
                            ((1.0 - g * g) / (n * g * g) +
                             (1.0 - c * c) / static_cast<double>(n));
    CHECK(std::abs(factored - theory_variance(Strategy::Ost, c, n, p)) < 1e-12);
  }
}

TEST_CASE("ideal ost dominates scm") {
  for (double c : {0.0, 0.2, 0.5, 0.8, 0.99}) {
    const double ost = theory_variance(Strategy::Ost, c, 900, kDefaults);
    const double scm = theory_variance(Strategy::Scm, c, 900, kDefaults);
    CHECK(ost == doctest::Approx((3.0 - c) * (1.0 - c * c) / 1800.0));
    CHECK(ost >= scm);
  }
}

TEST_CASE("tp fisher information saturates the cramer-rao bound at c = 0.5") {
  TpFisherOptions opts;
  opts.samples = 100000;
  opts.seed = 2024;
  const double fi = fisher_information(Strategy::Tp, 0.5, 900, kDefaults, opts);
  const double bound = 1.0 / ((2.0 * 11.0 / 8.0 + 1.0) * 0.25);
  CHECK(std::abs(fi - bound) / bound < 0.03);
}

TEST_CASE("homi fail probability") {
  CHECK(homi_fail_probability(1.0, OstPhysics{1.0, 0.5, true}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(homi_fail_probability(0.0, OstPhysics{1.0, 0.5, true}) ==
        doctest::Approx(0.5));
  // independent arithmetic: 1 - 1.06 + 0.5618 - 0.4982*0.965 = 0.021037
  CHECK(homi_fail_probability(1.0, OstPhysics{0.965, 0.53, false}) ==
        doctest::Approx(0.021037).epsilon(1e-9));
}

TEST_CASE("corrected ost estimator") {
  SUBCASE("balanced ideal case reduces to 1 - 2k/n") {
    const OstPhysics ideal{1.0, 0.5, false};
    for (long k : {0L, 3L, 10L}) {
      CHECK(corrected_ost_estimator(k, 10, ideal) ==
            doctest::Approx(1.0 - 2.0 * k / 10.0).epsilon(1e-12));
    }
  }
  SUBCASE("inverts the fail probability") {
    const OstPhysics physics{0.965, 0.53, false};
    const double c = 0.5;
    const long n = 100000;
    const double k_f = homi_fail_probability(c, physics) * n;
    // nearest integer count leaves an O(1/n) gap
    CHECK(std::abs(corrected_ost_estimator(
                       static_cast<long>(std::llround(k_f)), n, physics) -
                   c) < 1e-4);
  }
  SUBCASE("arithmetic example at k_f = 0") {
    const OstPhysics physics{0.965, 0.53, false};
    const double expected = (1.0 - 1.06 + 0.5618) / (0.4982 * 0.965);
    CHECK(corrected_ost_estimator(0, 900, physics) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("high-dimensional variances") {
  CHECK(highdim_variance(Strategy::Tt, 0.5, 900, 2, 11.0 / 8.0) ==
        doctest::Approx(theory_variance(Strategy::Tt, 0.5, 900, kDefaults)));
  CHECK(highdim_variance(Strategy::Tp, 0.5, 900, 2, 11.0 / 8.0) ==
        doctest::Approx(theory_variance(Strategy::Tp, 0.5, 900, kDefaults)));
  // optimal joint tomography kappa_d = d - 1
  for (long d : {3L, 8L}) {
    CHECK(highdim_variance(Strategy::Tt, 0.3, 900, d, d - 1.0) ==
          doctest::Approx(4.0 * 0.3 * 0.7 / 900.0).epsilon(1e-12));
    CHECK(highdim_variance(Strategy::Tp, 0.3, 900, d, d - 1.0) ==
          doctest::Approx(3.0 * 0.3 * 0.7 / 900.0).epsilon(1e-12));
  }
  CHECK(1200 * highdim_variance(Strategy::Tt, 0.5, 1200, 4, 3.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(highdim_variance(Strategy::Scm, 0.5, 900, 4, 3.0),
                  DomainError);
}

TEST_CASE("limited-copy mean squared error") {
  SUBCASE("frozen small case") {
    CHECK(limited_copy_mse(Strategy::Tt, 1.0, 2, 2) == doctest::Approx(0.21));
  }
  SUBCASE("tp approaches 3c(1-c)/n in the sufficient-copy limit") {
    const double c = 0.5;
    for (long d : {5L, 8L}) {
      const long n = 100 * d;
      const double mse = limited_copy_mse(Strategy::Tp, c, n, d);
      const double target = 3.0 * c * (1.0 - c) / static_cast<double>(n);
      CHECK(std::abs(mse - target) / target < 0.01);
    }
  }
  SUBCASE("tt constant bias at alpha = 1 approaches 9 c^2 / 16") {
    const double c = 0.8;
    const long d = 20000;
    const double mse = limited_copy_mse(Strategy::Tt, c, d, d);
    CHECK(std::abs(mse - 9.0 * c * c / 16.0) < 1e-3);
  }
}

TEST_CASE("variance crossovers") {
  SUBCASE("tp and scm intersect at 4/11") {
    const double c = crossover(Strategy::Tp, Strategy::Scm, kDefaults);
    CHECK(std::abs(c - 4.0 / 11.0) < 1e-9);
  }
  SUBCASE("tt and scm intersect at 1/4.5") {
    // 5.5 c (1-c) = 1 - c^2  =>  5.5 c = 1 + c  =>  c = 2/9
    const double c = crossover(Strategy::Tt, Strategy::Scm, kDefaults);
    CHECK(std::abs(c - 1.0 / 4.5) < 1e-9);
  }
  SUBCASE("identical or non-crossing curves are rejected") {
    CHECK_THROWS_AS(crossover(Strategy::Scm, Strategy::Scm, kDefaults),
                    NoCrossoverError);
    CHECK_THROWS_AS(crossover(Strategy::Tt, Strategy::Tp, kDefaults),
                    NoCrossoverError);
  }
}

TEST_CASE("copy overhead") {
  CHECK(copy_overhead(Strategy::Scm, 0.5, 0.01, 0.05, kDefaults) == 150000);
  CHECK(copy_overhead(Strategy::Scm, 1.0, 0.01, 0.05, kDefaults) == 0);
  const long long base = copy_overhead(Strategy::Tt, 0.3, 0.02, 0.1, kDefaults);
  const long long refined =
      copy_overhead(Strategy::Tt, 0.3, 0.01, 0.1, kDefaults);
  CHECK(refined == 4 * base);
  CHECK_THROWS_AS(copy_overhead(Strategy::Scm, 0.5, 0.0, 0.05, kDefaults),
                  DomainError);
}
