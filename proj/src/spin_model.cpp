#include "geophase/spin_model.hpp"

#include <cmath>

#include "geophase/errors.hpp"

namespace geophase::spin {

namespace {

double sign_of(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }

Spinor spinor(Complex up, Complex down) {
  Spinor s(2);
  s << up, down;
  return s;
}

}  // namespace

double SpinParams::alpha() const { return alpha_of(*this); }
double SpinParams::period() const { return 2.0 * kPi / omega; }
double SpinParams::beta_rate() const {
  const double a = alpha();
  return 2.0 * mu_b * std::cos(a) + omega * std::cos(theta - a);
}

void validate(const SpinParams& p) {
  if (!std::isfinite(p.mu_b) || !std::isfinite(p.omega) || !std::isfinite(p.theta) ||
      !std::isfinite(p.big_theta)) {
    throw ContractError("SpinParams: non-finite parameter");
  }
  if (p.omega == 0.0) throw ContractError("SpinParams: omega must be non-zero");
}

HamiltonianTrajectory hamiltonian(const SpinParams& p) {
  validate(p);
  const double mu_b = p.mu_b, omega = p.omega, theta = p.theta;
  return HamiltonianTrajectory(2, [mu_b, omega, theta](double t) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const Complex off = st * std::polar(1.0, -omega * t);
    Matrix h(2, 2);
    h << -mu_b * ct, -mu_b * off, -mu_b * std::conj(off), mu_b * ct;
    return h;
  });
}

double alpha_of(const SpinParams& p) {
  const double num = p.omega * std::sin(p.theta);
  const double den = 2.0 * p.mu_b + p.omega * std::cos(p.theta);
  if (den == 0.0) return num >= 0.0 ? kPi / 2 : -kPi / 2;
  return std::atan2(num, den);
}

SpinorPair v_basis(const SpinParams& p, double t) {
  const Complex ph = std::polar(1.0, -p.omega * t);
  const double c = std::cos(0.5 * p.theta), s = std::sin(0.5 * p.theta);
  return {spinor(c * ph, s), spinor(s * ph, -c)};
}

SpinorPair w_basis(const SpinParams& p, double t) {
  const Complex ph = std::polar(1.0, -p.omega * t);
  const double half = 0.5 * (p.theta - p.alpha());
  const double c = std::cos(half), s = std::sin(half);
  return {spinor(c * ph, s), spinor(s * ph, -c)};
}

double w_energy(const SpinParams& p, Branch b) { return -sign_of(b) * p.mu_b * std::cos(p.alpha()); }

double w_connection(const SpinParams& p, Branch b) {
  return 0.5 * p.omega * (1.0 + sign_of(b) * std::cos(p.theta - p.alpha()));
}

SpinorPair exact_amplitudes(const SpinParams& p, double t) {
  SpinorPair w = w_basis(p, t);
  // psi = w exp{-i [<w,Hw> - <w,i dw/dt>] t}
  const auto factor = [&](Branch b) {
    return std::polar(1.0, -(w_energy(p, b) - w_connection(p, b)) * t);
  };
  w.plus *= factor(Branch::plus);
  w.minus *= factor(Branch::minus);
  return w;
}

double geometric_phase(const SpinParams& p, Branch b) {
  return wrap_angle(-kPi * (1.0 - sign_of(b) * std::cos(p.theta - p.alpha())));
}

double solid_angle(const SpinParams& p) { return 2.0 * kPi * (1.0 - std::cos(p.theta - p.alpha())); }

std::array<double, 3> bloch_vector(const Spinor& v) {
  if (v.size() != 2) throw DimensionError("bloch_vector: state must have two components");
  const Complex a = v[0], b = v[1];
  const Complex ab = std::conj(a) * b;
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)};
}

double spherical_polygon_area(std::span<const std::array<double, 3>> points) {
  using P = std::array<double, 3>;
  const std::size_t n = points.size();
  if (n < 3) return 0.0;
  const auto dot = [](const P& a, const P& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
  const auto cross = [](const P& a, const P& b) {
    return P{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };

  // Fan of signed triangles from a reference point away from the path.
  P ref{0.0, 0.0, 0.0};
  for (const P& q : points) {
    for (int i = 0; i < 3; ++i) ref[i] += q[i];
  }
  double len = std::sqrt(dot(ref, ref));
  if (len < 1e-6 * static_cast<double>(n)) {
    // Path balanced around the origin (a great circle): any pole of the
    // circle will do; take the normal of the first non-degenerate chord pair.
    ref = cross(points[0], points[n / 3]);
    len = std::sqrt(dot(ref, ref));
  }
  for (double& c : ref) c /= len;

  double area = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const P& a = points[j];
    const P& b = points[(j + 1) % n];
    // Van Oosterom-Strackee: tan(E/2) = r.(a x b) / (1 + r.a + a.b + b.r)
    const double triple = dot(ref, cross(a, b));
    const double denom = 1.0 + dot(ref, a) + dot(a, b) + dot(b, ref);
    area += 2.0 * std::atan2(triple, denom);
  }
  area = std::fmod(area, 4.0 * kPi);
  if (area < 0.0) area += 4.0 * kPi;
  return area;
}

double interference_value(const SpinParams& p) {
  return 1.0 + std::cos(p.mu_b * std::cos(p.alpha()) * p.period() - 0.5 * solid_angle(p));
}

SpinorPair tilde_basis(const SpinParams& p, double t) {
  const SpinorPair w = w_basis(p, t);
  const double c = std::cos(0.5 * p.big_theta), s = std::sin(0.5 * p.big_theta);
  const Complex e = std::polar(1.0, -p.beta_rate() * t);
  return {c * w.plus + s * e * w.minus, -s * std::conj(e) * w.plus + c * w.minus};
}

double tilde_energy(const SpinParams& p, Branch b, double t) {
  const double a = p.alpha();
  return -sign_of(b) * p.mu_b *
         (std::cos(a) * std::cos(p.big_theta) -
          std::sin(a) * std::sin(p.big_theta) * std::cos(p.beta_rate() * t));
}

double tilde_connection(const SpinParams& p, Branch b, double t) {
  const double a = p.alpha();
  return sign_of(b) * p.mu_b *
             (std::cos(a) * (1.0 - std::cos(p.big_theta)) +
              std::sin(a) * std::sin(p.big_theta) * std::cos(p.beta_rate() * t)) +
         w_connection(p, b);
}

Complex tilde_phase_factor(const SpinParams& p, Branch b, double t) {
  return std::polar(1.0, -(w_energy(p, b) - w_connection(p, b)) * t);
}

SpinorPair mixed_amplitudes(const SpinParams& p, double t) {
  const SpinorPair psi = exact_amplitudes(p, t);
  const double c = std::cos(0.5 * p.big_theta), s = std::sin(0.5 * p.big_theta);
  return {c * psi.plus + s * psi.minus, -s * psi.plus + c * psi.minus};
}

std::pair<double, double> mixture_weights(const SpinParams& p) {
  const double c = std::cos(0.5 * p.big_theta), s = std::sin(0.5 * p.big_theta);
  return {c * c, s * s};
}

Complex mixed_trace(const SpinParams& p) {
  const SpinorPair start = exact_amplitudes(p, 0.0);
  const SpinorPair end = exact_amplitudes(p, p.period());
  const auto [wp, wm] = mixture_weights(p);
  return wp * inner(start.plus, end.plus) + wm * inner(start.minus, end.minus);
}

}  // namespace geophase::spin
