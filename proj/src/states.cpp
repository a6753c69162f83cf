#include "ovesim/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ovesim/errors.hpp"

namespace ovesim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_overlap_arg(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw DomainError("overlap c must lie in [0,1], got " + std::to_string(c));
  }
}

}  // namespace

double PureState::norm_sq() const {
  double s = 0.0;
  for (const Complex& a : amplitudes) s += std::norm(a);
  return s;
}

PureState PureState::basis(std::size_t d, std::size_t k) {
  PureState s;
  s.amplitudes.assign(d, Complex{0.0, 0.0});
  s.amplitudes.at(k) = Complex{1.0, 0.0};
  return s;
}

PureState make_pure_state(std::vector<Complex> amplitudes) {
  if (amplitudes.size() < 2) {
    throw DomainError("pure state needs dimension >= 2");
  }
  PureState s{std::move(amplitudes)};
  if (std::abs(s.norm_sq() - 1.0) > kConstructionTol) {
    throw DomainError("pure state amplitudes are not normalized");
  }
  return s;
}

Matrix2c su2_matrix(const Su2Params& p) {
  const double ch = std::cos(p.theta / 2.0);
  const double sh = std::sin(p.theta / 2.0);
  const Complex em = std::polar(1.0, (p.beta - p.omega) / 2.0);
  const Complex ep = std::polar(1.0, (p.beta + p.omega) / 2.0);
  return Matrix2c{{{em * ch, -std::conj(ep) * sh},
                   {ep * sh, std::conj(em) * ch}}};
}

PureState apply_su2(const Matrix2c& u, const PureState& s) {
  if (s.dim() != 2) throw DomainError("su2 application needs a qubit");
  PureState out;
  out.amplitudes = {u[0][0] * s.amplitudes[0] + u[0][1] * s.amplitudes[1],
                    u[1][0] * s.amplitudes[0] + u[1][1] * s.amplitudes[1]};
  return out;
}

Su2Params haar_su2(RandomStream& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Su2Params p;
  p.beta = angle(rng);
  p.omega = angle(rng);
  p.theta = std::acos(1.0 - 2.0 * unit(rng));
  return p;
}

FixedOverlapPair make_fixed_overlap_pair(const Su2Params& params, double phase,
                                         double c) {
  check_overlap_arg(c);
  const Matrix2c u = su2_matrix(params);
  const double sc = std::sqrt(c);
  const double ss = std::sqrt(1.0 - c);
  const Complex e = std::polar(1.0, phase);

  FixedOverlapPair pair;
  pair.psi.amplitudes = {u[0][0], u[1][0]};
  pair.phi.amplitudes = {u[0][0] * sc + u[0][1] * e * ss,
                         u[1][0] * sc + u[1][1] * e * ss};
  pair.c = c;
  pair.phase = phase;
  pair.u = params;
  return pair;
}

FixedOverlapPair sample_pair(double c, RandomStream& rng) {
  check_overlap_arg(c);
  const Su2Params params = haar_su2(rng);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const double phase = angle(rng);
  return make_fixed_overlap_pair(params, phase, c);
}

FixedOverlapPair sample_qudit_pair(double c, std::size_t d, RandomStream& rng) {
  check_overlap_arg(c);
  if (d < 2) throw DomainError("qudit dimension must be >= 2");

  std::normal_distribution<double> gauss(0.0, 1.0);
  auto gaussian_vector = [&] {
    std::vector<Complex> v(d);
    for (Complex& a : v) a = Complex{gauss(rng), gauss(rng)};
    return v;
  };
  auto normalize = [](std::vector<Complex>& v) {
    double n = 0.0;
    for (const Complex& a : v) n += std::norm(a);
    n = std::sqrt(n);
    for (Complex& a : v) a /= n;
    return n;
  };

  std::vector<Complex> psi = gaussian_vector();
  while (normalize(psi) < 1e-100) psi = gaussian_vector();

  // Gram-Schmidt a fresh Gaussian vector against psi; the result is Haar in
  // the (d-1)-dimensional orthogonal subspace.
  std::vector<Complex> perp;
  for (;;) {
    perp = gaussian_vector();
    Complex proj{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) proj += std::conj(psi[i]) * perp[i];
    for (std::size_t i = 0; i < d; ++i) perp[i] -= proj * psi[i];
    if (normalize(perp) > 1e-8) break;
  }

  const double sc = std::sqrt(c);
  const double ss = std::sqrt(1.0 - c);
  FixedOverlapPair pair;
  pair.psi.amplitudes = psi;
  pair.phi.amplitudes.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    pair.phi.amplitudes[i] = sc * psi[i] + ss * perp[i];
  }
  pair.c = c;
  return pair;
}

Complex inner_product(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("inner product of states with different dimensions");
  }
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) {
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return s;
}

double overlap(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a, b));
}

}  // namespace ovesim
