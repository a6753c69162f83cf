#include "ovesim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ovesim/errors.hpp"
#include "ovesim/parallel.hpp"

namespace ovesim {

namespace {

void check_c_range(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainError("overlap c must lie in [0,1], got " + std::to_string(c));
  }
}

void check_theory_params(const TheoryParams& p) {
  if (!(p.kappa > 0.0)) throw DomainError("kappa must be positive");
  if (!(p.gamma > 0.0 && p.gamma <= 1.0)) throw DomainError("gamma must lie in (0,1]");
  if (!(p.eta > 0.0 && p.eta < 1.0)) throw DomainError("eta must lie in (0,1)");
  if (p.dim < 2) throw DomainError("dim must be >= 2");
}

/// Monte Carlo evaluation of the TP Fisher information. The tomography error
/// enters the projection probability as p = c + sqrt(c(1-c)) t with
/// t ~ Normal(0, 2 kappa / n); the outcome count k is binomial in p. The FI
/// of the resulting mixture over k is sum_k P'(k)^2 / P(k), differentiating
/// under the t-average at fixed t-distribution.
double tp_fisher_information(double c, long n, const TheoryParams& p,
                             const TpFisherOptions& opts) {
  if (opts.samples < 100000) {
    throw ConfigError("TP Fisher information needs >= 1e5 Monte Carlo samples");
  }
  const double sigma = std::sqrt(2.0 * p.kappa / static_cast<double>(n));
  const double root = std::sqrt(c * (1.0 - c));
  const long s_count = opts.samples;

  RandomStream rng = derive_stream(opts.seed, {static_cast<std::uint64_t>(n)});
  std::normal_distribution<double> gauss(0.0, sigma);
  std::vector<double> lp(s_count), lq(s_count), inv_p(s_count), inv_q(s_count),
      dpdc(s_count);
  constexpr double kClamp = 1e-12;
  for (long s = 0; s < s_count; ++s) {
    const double t = gauss(rng);
    const double ps = std::clamp(c + root * t, kClamp, 1.0 - kClamp);
    lp[s] = std::log(ps);
    lq[s] = std::log1p(-ps);
    inv_p[s] = 1.0 / ps;
    inv_q[s] = 1.0 / (1.0 - ps);
    dpdc[s] = 1.0 + t * (1.0 - 2.0 * c) / (2.0 * root);
  }

  // log C(n, k) table.
  std::vector<double> lchoose(n + 1);
  for (long k = 0; k <= n; ++k) {
    lchoose[k] = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                 std::lgamma(n - k + 1.0);
  }

  std::vector<double> contribution(n + 1, 0.0);
  parallel_for(n + 1, [&](long k) {
    double prob = 0.0;
    double dprob = 0.0;
    const double lc = lchoose[k];
    const double kd = static_cast<double>(k);
    const double nk = static_cast<double>(n - k);
    for (long s = 0; s < s_count; ++s) {
      const double w = std::exp(lc + kd * lp[s] + nk * lq[s]);
      prob += w;
      dprob += w * (kd * inv_p[s] - nk * inv_q[s]) * dpdc[s];
    }
    prob /= static_cast<double>(s_count);
    dprob /= static_cast<double>(s_count);
    if (prob > 1e-300) contribution[k] = dprob * dprob / prob;
  });

  double total = 0.0;
  for (double v : contribution) total += v;
  return total / static_cast<double>(n);  // per state pair
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Tt: return "tt";
    case Strategy::Tp: return "tp";
    case Strategy::Scm: return "scm";
    case Strategy::Ost: return "ost";
    case Strategy::Adaptive: return "adaptive";
    case Strategy::ScmQudit: return "scm_qudit";
  }
  throw DomainError("unknown strategy tag");
}

Strategy strategy_from_string(std::string_view tag) {
  if (tag == "tt") return Strategy::Tt;
  if (tag == "tp") return Strategy::Tp;
  if (tag == "scm") return Strategy::Scm;
  if (tag == "ost") return Strategy::Ost;
  if (tag == "adaptive") return Strategy::Adaptive;
  if (tag == "scm_qudit") return Strategy::ScmQudit;
  throw DomainError("unknown strategy tag: " + std::string(tag));
}

void validate(const OstPhysics& physics) {
  if (!(physics.gamma > 0.0 && physics.gamma <= 1.0)) {
    throw ConfigError("OST gamma must lie in (0,1]");
  }
  if (!(physics.eta > 0.0 && physics.eta < 1.0)) {
    throw ConfigError("OST eta must lie in (0,1)");
  }
  // The PPNRD outcome distribution is derived at balanced splitting only.
  if (physics.ppnrd && std::abs(physics.eta - 0.5) > 1e-12) {
    throw ConfigError("PPNRD detection requires eta = 0.5");
  }
}

double theory_variance(Strategy s, double c, long n, const TheoryParams& p) {
  check_c_range(c);
  check_theory_params(p);
  if (n < 1) throw DomainError("copy count must be >= 1");
  const double nd = static_cast<double>(n);
  switch (s) {
    case Strategy::Tt:
      return 4.0 * p.kappa * c * (1.0 - c) / nd;
    case Strategy::Tp:
      return (2.0 * p.kappa + 1.0) * c * (1.0 - c) / nd;
    case Strategy::Scm:
    case Strategy::ScmQudit:
      return (1.0 - c * c) / nd;
    case Strategy::Ost: {
      const double g = p.gamma;
      return (3.0 - g * c) * (1.0 - g * g * c * c) / (2.0 * nd * g * g);
    }
    default:
      throw DomainError("no closed-form variance for strategy '" +
                        std::string(to_string(s)) + "'");
  }
}

SeparableDecomposition decompose_separable(double c, long n,
                                           const TheoryParams& p) {
  check_c_range(c);
  check_theory_params(p);
  const double nd = static_cast<double>(n);
  const double dm1 = static_cast<double>(p.dim - 1);
  return {2.0 * p.kappa * c * (1.0 - c) / (dm1 * nd), c * (1.0 - c) / nd};
}

double fisher_information(Strategy s, double c, long n, const TheoryParams& p,
                          const TpFisherOptions& opts) {
  check_theory_params(p);
  switch (s) {
    case Strategy::Scm:
    case Strategy::ScmQudit:
      if (!(c >= 0.0 && c < 1.0)) throw DomainError("SCM FI is singular at c = 1");
      return 1.0 / (1.0 - c * c);
    case Strategy::Ost: {
      if (!(c >= 0.0 && c < 1.0)) throw DomainError("OST FI is singular at c = 1");
      const double g = p.gamma;
      return 2.0 * g * g / ((3.0 - g * c) * (1.0 - g * g * c * c));
    }
    case Strategy::Tt:
      if (!(c > 0.0 && c < 1.0)) throw DomainError("TT FI is singular at c = 0, 1");
      return 1.0 / (4.0 * p.kappa * c * (1.0 - c));
    case Strategy::Tp:
      if (!(c > 0.0 && c < 1.0)) throw DomainError("TP FI is singular at c = 0, 1");
      return tp_fisher_information(c, n, p, opts);
    default:
      throw DomainError("no Fisher information for strategy '" +
                        std::string(to_string(s)) + "'");
  }
}

double homi_fail_probability(double c, const OstPhysics& physics) {
  check_c_range(c);
  if (!(physics.gamma > 0.0 && physics.gamma <= 1.0) ||
      !(physics.eta > 0.0 && physics.eta < 1.0)) {
    throw ConfigError("invalid OST physics parameters");
  }
  const double eta = physics.eta;
  return 1.0 - 2.0 * eta + 2.0 * eta * eta -
         2.0 * eta * (1.0 - eta) * physics.gamma * c;
}

double corrected_ost_estimator(long k_f, long n, const OstPhysics& physics) {
  if (n < 1 || k_f < 0 || k_f > n) throw DomainError("k_f must lie in [0, n]");
  const double eta = physics.eta;
  const double denom = 2.0 * eta * (1.0 - eta) * physics.gamma;
  return (1.0 - 2.0 * eta + 2.0 * eta * eta) / denom -
         static_cast<double>(k_f) / (static_cast<double>(n) * denom);
}

double highdim_variance(Strategy s, double c, long n, long d, double kappa_d) {
  check_c_range(c);
  if (d < 2) throw DomainError("dim must be >= 2");
  if (!(kappa_d > 0.0)) throw DomainError("kappa_d must be positive");
  const double nd = static_cast<double>(n);
  const double dm1 = static_cast<double>(d - 1);
  switch (s) {
    case Strategy::Tt:
      return 4.0 * kappa_d * c * (1.0 - c) / (dm1 * nd);
    case Strategy::Tp:
      return (2.0 * kappa_d / dm1 + 1.0) * c * (1.0 - c) / nd;
    default:
      throw DomainError("high-dimensional variance is defined for tt and tp only");
  }
}

double limited_copy_mse(Strategy s, double c, long n, long d) {
  check_c_range(c);
  if (n < 1) throw DomainError("copy count must be >= 1");
  if (d < 2) throw DomainError("dim must be >= 2");
  const double N = static_cast<double>(n);
  const double D = static_cast<double>(d);
  switch (s) {
    case Strategy::Tt: {
      const double inner =
          (c * (c * D - 2.0) * (D + 1.0) + 2.0) * (2.0 * N + D + 1.0) +
          2.0 * c * (1.0 - c) * N * N;
      const double denom = (N + D) * (N + D) * (N + D + 1.0) * (N + D + 1.0);
      return (2.0 * N + D) * inner / denom;
    }
    case Strategy::Tp: {
      const double num = c * c * (D * D * N + D * N - 3.0 * N * N + N) +
                         c * (3.0 * N * N - D * N - 5.0 * N) + 3.0 * N + D - 1.0;
      return num / (N * (N + D) * (N + D + 1.0));
    }
    default:
      throw DomainError("limited-copy MSE is defined for tt and tp only");
  }
}

double crossover(Strategy a, Strategy b, const TheoryParams& p) {
  // n = 1 gives the scaled (n-independent) variance.
  const auto diff = [&](double c) {
    return theory_variance(a, c, 1, p) - theory_variance(b, c, 1, p);
  };
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  double flo = diff(lo);
  double fhi = diff(hi);
  if (flo == 0.0 || fhi == 0.0 || (flo > 0.0) == (fhi > 0.0)) {
    throw NoCrossoverError("scaled variance curves do not cross on (0,1)");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = diff(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

long long copy_overhead(Strategy s, double c, double epsilon, double eta_prob,
                        const TheoryParams& p) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(eta_prob > 0.0 && eta_prob < 1.0)) {
    throw DomainError("eta_prob must lie in (0,1)");
  }
  const double scaled = theory_variance(s, c, 1, p);
  const double q = scaled / (eta_prob * epsilon * epsilon);
  // Guard against the quotient landing a rounding error above an integer.
  return static_cast<long long>(std::max(0.0, std::ceil(q - 1e-9)));
}

}  // namespace ovesim
