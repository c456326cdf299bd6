#include <gtest/gtest.h>

#include <random>

#include "geophase/errors.hpp"
#include "geophase/gauge.hpp"
#include "geophase/phases.hpp"
#include "geophase/spin_model.hpp"
#include "oracles.hpp"

using namespace geophase;
using oracle::phase_distance;

namespace {

HamiltonianTrajectory constant(const Matrix& h) {
  return HamiltonianTrajectory(h.rows(), [h](double) { return h; });
}

struct SpinRun {
  spin::SpinParams p;
  HamiltonianTrajectory h;
  PropagatorPath u;
  AmplitudePath plus;
  AmplitudePath minus;
};

SpinRun run_spin(double mu_b, double omega, double theta, std::size_t steps = 20000) {
  const spin::SpinParams p{mu_b, omega, theta, 0.0};
  auto h = spin::hamiltonian(p);
  auto u = propagate(h, TimeGrid(0.0, p.period(), steps));
  const spin::SpinorPair w0 = spin::w_basis(p, 0.0);
  auto plus = amplitude_path(u, w0.plus);
  auto minus = amplitude_path(u, w0.minus);
  return {p, std::move(h), std::move(u), std::move(plus), std::move(minus)};
}

AmplitudePath regauged(const AmplitudePath& psi, const TrigPolynomial& a) {
  AmplitudePath out = psi;
  for (std::size_t j = 0; j < out.states.size(); ++j) out.states[j] *= std::polar(1.0, a.value(psi.grid.node(j)));
  return out;
}

}  // namespace

TEST(TotalPhase, Eigenstate) {
  const double e = 0.6, horizon = 7.0;
  const PropagatorPath u = propagate(constant(e * pauli::z()), TimeGrid(0.0, horizon, 100));
  const TotalPhase tp = total_phase(amplitude_path(u, Vector::Unit(2, 0)));
  EXPECT_NEAR(phase_distance(tp.angle, -e * horizon), 0.0, 1e-12);
  EXPECT_NEAR(tp.magnitude, 1.0, 1e-12);
}

TEST(TotalPhase, IdentityPath) {
  const PropagatorPath u = propagate(constant(Matrix::Zero(2, 2)), TimeGrid(0.0, 1.0, 10));
  const TotalPhase tp = total_phase(amplitude_path(u, Vector::Unit(2, 1)));
  EXPECT_NEAR(tp.angle, 0.0, 1e-15);
  EXPECT_NEAR(tp.magnitude, 1.0, 1e-14);
}

TEST(TotalPhase, SpinPeriodClosedForm) {
  const SpinRun r = run_spin(1.0, 1.0, kPi / 3);
  const double a = oracle::alpha_by_bisection(1.0, 1.0, kPi / 3);
  const double c = std::cos(kPi / 3 - a);
  const double expected = std::cos(a) * r.p.period() + kPi * (1 + c);
  const TotalPhase tp = total_phase(r.plus);
  EXPECT_LE(phase_distance(tp.angle, expected), 1e-6);
  EXPECT_NEAR(tp.magnitude, 1.0, 1e-10);
}

TEST(TotalPhase, OrthogonalEndpointsAreUndefined) {
  // exp(-i (pi/2) sx) takes |0> to -i|1>.
  const PropagatorPath u = propagate(constant(kPi / 2 * pauli::x()), TimeGrid(0.0, 1.0, 16));
  const AmplitudePath psi = amplitude_path(u, Vector::Unit(2, 0));
  EXPECT_THROW(total_phase(psi), UndefinedPhaseError);
  EXPECT_THROW(geometric_phase_pure(psi), UndefinedPhaseError);
}

TEST(TotalPhase, GaugeCovariance) {
  const SpinRun r = run_spin(0.7, 1.9, 1.0, 4000);
  std::mt19937_64 rng(4);
  const double base = total_phase(r.plus).angle;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = TrigPolynomial::random(r.p.period() * 1.7, 1.0, rng);
    const double shift = a.value(r.p.period()) - a.value(0.0);
    EXPECT_LE(phase_distance(total_phase(regauged(r.plus, a)).angle, base + shift), 1e-10);
  }
}

TEST(DynamicalPhase, Eigenstate) {
  const double e = -1.25, horizon = 2.0;
  const auto h = constant(e * pauli::z());
  const PropagatorPath u = propagate(h, TimeGrid(0.0, horizon, 5000));
  const AmplitudePath psi = amplitude_path(u, Vector::Unit(2, 0));
  EXPECT_NEAR(dynamical_phase(psi, h), -e * horizon, 1e-11);
  EXPECT_NEAR(kinematic_dynamical_phase(psi), -e * horizon, 1e-6);
}

TEST(DynamicalPhase, VanishesInSpecialCase) {
  const SpinRun r = run_spin(1.0, 4.0, 2 * kPi / 3);
  EXPECT_NEAR(dynamical_phase(r.plus, r.h), 0.0, 1e-8);
  EXPECT_NEAR(dynamical_phase(r.minus, r.h), 0.0, 1e-8);
}

TEST(DynamicalPhase, GenericSpinClosedForm) {
  for (auto [mu_b, omega, theta] : {std::tuple{1.0, 1.0, kPi / 3}, std::tuple{2.5, 0.7, 2.2},
                                    std::tuple{0.3, 3.0, 0.4}}) {
    const SpinRun r = run_spin(mu_b, omega, theta);
    const double a = oracle::alpha_by_bisection(mu_b, omega, theta);
    const double expected = mu_b * std::cos(a) * r.p.period();
    // 1e-7 absolute at order-one phases; longer runs accumulate proportionally.
    const double tol = 1e-7 * std::max(1.0, std::abs(expected) / 10.0);
    EXPECT_NEAR(dynamical_phase(r.plus, r.h), expected, tol);
    EXPECT_NEAR(dynamical_phase(r.minus, r.h), -expected, tol);
    EXPECT_NEAR(kinematic_dynamical_phase(r.plus), expected, 1e-6 * std::max(1.0, std::abs(expected)));
  }
}

TEST(GeometricPhase, EigenstateHasNone) {
  const auto h = constant(0.9 * pauli::x());
  const PropagatorPath u = propagate(h, TimeGrid(0.0, 5.0, 100));
  const Vector v = Vector::Ones(2) / std::sqrt(2.0);
  EXPECT_NEAR(geometric_phase_pure(amplitude_path(u, v)), 0.0, 1e-8);
}

TEST(GeometricPhase, SpecialCaseGolden) {
  // muB = 1, omega = 4, theta = 2 pi / 3: alpha = pi/2, cos(theta - alpha) = sqrt(3)/2.
  // Branch plus: -pi (1 - sqrt(3)/2) = -0.420893607238...
  const double golden_plus = -0.420893607238;
  const SpinRun r = run_spin(1.0, 4.0, 2 * kPi / 3);
  EXPECT_NEAR(geometric_phase_pure(r.plus), golden_plus, 1e-6);
  EXPECT_NEAR(geometric_phase_pure(r.minus), -golden_plus, 1e-6);
}

TEST(GeometricPhase, SpinSweepMatchesClosedForm) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> scale(0.1, 10.0), angle(0.05, kPi - 0.05);
  for (int trial = 0; trial < 10; ++trial) {
    const double mu_b = scale(rng), omega = scale(rng), theta = angle(rng);
    const SpinRun r = run_spin(mu_b, omega, theta);
    const double c = std::cos(theta - oracle::alpha_by_bisection(mu_b, omega, theta));
    EXPECT_LE(phase_distance(geometric_phase_pure(r.plus), -kPi * (1 - c)), 1e-6);
    EXPECT_LE(phase_distance(geometric_phase_pure(r.minus), -kPi * (1 + c)), 1e-6);
  }
}

TEST(GeometricPhase, EqualsTotalMinusDynamical) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> coupling(0.2, 3.0), rate(0.5, 3.0), angle(0.1, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double mu_b = coupling(rng), omega = rate(rng), theta = angle(rng);
    // Grid fine enough that muB dt <= 1e-4.
    const double period = 2 * kPi / omega;
    const auto steps = static_cast<std::size_t>(std::max(20000.0, std::ceil(1e4 * mu_b * period)));
    const SpinRun r = run_spin(mu_b, omega, theta, steps);
    const PhaseReport rep = phase_report(r.plus, r.h);
    EXPECT_LE(phase_distance(rep.geometric, rep.total - rep.dynamical), 1e-12);
    EXPECT_LE(phase_distance(geometric_phase_pure(r.plus), rep.total - rep.dynamical), 1e-8);
    EXPECT_LE(rep.overlap_magnitude, 1.0 + 1e-12);
  }
}

TEST(GeometricPhase, DiscretizationsAgreeAtSecondOrder) {
  const auto gap = [](std::size_t n) {
    const SpinRun r = run_spin(4.0, 0.8, 1.3, n);
    const PhaseReport rep = phase_report(r.plus, r.h);
    return phase_distance(geometric_phase_pure(r.plus), rep.total - rep.dynamical);
  };
  EXPECT_NEAR(gap(4000) / gap(8000), 4.0, 0.8);
}

TEST(GeometricPhase, GaugeInvariance) {
  const SpinRun r = run_spin(1.3, 2.1, 0.8, 4000);
  const double base = geometric_phase_pure(r.plus);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    // Periodic over the horizon and not.
    const double period = trial % 2 ? r.p.period() : 1.37 * r.p.period();
    const auto a = TrigPolynomial::random(period, 2.0, rng);
    EXPECT_LE(phase_distance(geometric_phase_pure(regauged(r.plus, a)), base), 1e-8);
  }
}

TEST(ParallelTransport, EigenstateBecomesConstant) {
  const PropagatorPath u = propagate(constant(1.1 * pauli::z()), TimeGrid(0.0, 2.0, 200));
  const AmplitudePath bar = parallel_transport_amplitude(amplitude_path(u, Vector::Unit(2, 1)));
  for (const Vector& v : bar.states) EXPECT_LE((v - Vector::Unit(2, 1)).norm(), 1e-8);
}

TEST(ParallelTransport, IdempotentAndTransported) {
  const SpinRun r = run_spin(1.0, 1.5, 1.1, 8000);
  const AmplitudePath bar = parallel_transport_amplitude(r.plus);
  const AmplitudePath bar2 = parallel_transport_amplitude(bar);
  for (std::size_t j = 0; j < bar.states.size(); ++j) EXPECT_LE((bar.states[j] - bar2.states[j]).norm(), 1e-10);
  const double h_norm = r.h(0.0).norm();
  EXPECT_LE(transport_residual(bar), 1e-6 * h_norm);
  const double closing = std::arg(inner(bar.initial(), bar.final()));
  EXPECT_LE(phase_distance(closing, geometric_phase_pure(r.plus)), 1e-8);
}

TEST(AdiabaticPhase, ConstantHamiltonian) {
  const double e0 = -0.4;
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = e0;
  h(1, 1) = 1.0;
  const AdiabaticPhase ap = adiabatic_phase(constant(h), TimeGrid(0.0, 3.0, 30), 0);
  EXPECT_NEAR(ap.geometric, 0.0, 1e-14);
  EXPECT_NEAR(ap.dynamical, -e0 * 3.0, 1e-12);
}

TEST(AdiabaticPhase, SpinLoopIsHalfSolidAngle) {
  // Lower level follows the field; its loop phase is minus half the cone's solid angle.
  const double theta = kPi / 3;
  const spin::SpinParams p{50.0, 1.0, theta, 0.0};
  const AdiabaticPhase ap = adiabatic_phase(spin::hamiltonian(p), TimeGrid(0.0, p.period(), 4000), 0);
  EXPECT_LE(phase_distance(ap.geometric, -kPi * (1 - std::cos(theta))), 1e-6);
  EXPECT_NEAR(ap.dynamical, 50.0 * p.period(), 1e-9);
  const AdiabaticPhase upper = adiabatic_phase(spin::hamiltonian(p), TimeGrid(0.0, p.period(), 4000), 1);
  EXPECT_LE(phase_distance(upper.geometric, -kPi * (1 + std::cos(theta))), 1e-6);
}

TEST(AdiabaticPhase, ApproachesExactWithinTwoPercent) {
  const double theta = kPi / 3;
  const SpinRun r = run_spin(50.0, 1.0, theta);
  const double exact = geometric_phase_pure(r.plus);
  const AdiabaticPhase ap = adiabatic_phase(r.h, r.u.grid, 0);
  EXPECT_LE(phase_distance(ap.geometric, exact), 0.02 * std::abs(exact));
}

TEST(AdiabaticPhase, Errors) {
  EXPECT_THROW(adiabatic_phase(constant(Matrix::Identity(2, 2)), TimeGrid(0.0, 1.0, 10), 0), DegeneracyError);
  const spin::SpinParams p{1.0, 1.0, 1.0, 0.0};
  EXPECT_THROW(adiabatic_phase(spin::hamiltonian(p), TimeGrid(0.0, 0.5 * p.period(), 100), 0), ContractError);
}
