#include <gtest/gtest.h>

#include <random>

#include "geophase/errors.hpp"
#include "geophase/gauge.hpp"
#include "geophase/mixed.hpp"
#include "geophase/spin_model.hpp"
#include "oracles.hpp"

using namespace geophase;
using oracle::phase_distance;

namespace {

BasisFrame w_frame(const spin::SpinParams& p, std::size_t steps) {
  return sample_frame(TimeGrid(0.0, p.period(), steps), 2, [&](std::size_t k, double t) {
    const spin::SpinorPair w = spin::w_basis(p, t);
    return k == 0 ? w.plus : w.minus;
  });
}

BasisFrame v_frame(const spin::SpinParams& p, std::size_t steps) {
  return sample_frame(TimeGrid(0.0, p.period(), steps), 2, [&](std::size_t k, double t) {
    const spin::SpinorPair v = spin::v_basis(p, t);
    return k == 0 ? v.plus : v.minus;
  });
}

BasisFrame constant_frame(const TimeGrid& grid, const Matrix& columns) {
  return sample_frame(grid, static_cast<std::size_t>(columns.cols()),
                      [&](std::size_t k, double) { return Vector(columns.col(static_cast<Eigen::Index>(k))); });
}

double frame_distance(const BasisFrame& a, const BasisFrame& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.labels(); ++k)
    for (std::size_t j = 0; j < a.grid.size(); ++j) worst = std::max(worst, (a.at(k, j) - b.at(k, j)).norm());
  return worst;
}

}  // namespace

TEST(TrigPolynomialTest, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = TrigPolynomial::random(2.5, 1.0, rng);
    for (double t : {0.0, 0.3, 1.7, 2.5}) {
      const double h = 1e-5;
      EXPECT_NEAR(f.derivative(t), (f.value(t + h) - f.value(t - h)) / (2 * h), 1e-6);
    }
    EXPECT_NEAR(f.value(0.0), f.value(2.5), 1e-12);
  }
}

TEST(TrigPolynomialTest, DegreeLimit) {
  EXPECT_THROW(TrigPolynomial(1.0, 0.0, std::vector<double>(7, 0.1), {}), DimensionError);
  EXPECT_THROW(TrigPolynomial(0.0, 0.0, {}, {}), ContractError);
}

TEST(FrameFromAmplitudes, ConstantAndEigenstatePaths) {
  const TimeGrid grid(0.0, 2.0, 40);
  const Vector v = Vector::Unit(2, 0);
  AmplitudePath still{grid, std::vector<Vector>(grid.size(), v)};
  AmplitudePath rotating = still;
  for (std::size_t j = 0; j < grid.size(); ++j) rotating.states[j] *= std::exp(-kI * 0.8 * grid.node(j));
  const std::vector<AmplitudePath> paths{still, rotating};
  // Two identical labels are not orthonormal; check each separately.
  for (const auto& p : paths) {
    const BasisFrame f = frame_from_amplitudes(std::span<const AmplitudePath>(&p, 1));
    for (const Vector& x : f.vectors[0]) EXPECT_LE((x - v).norm(), 1e-14);
  }
  EXPECT_THROW(frame_from_amplitudes(paths), ContractError);
}

TEST(FrameFromAmplitudes, SpinAmplitudesAreGaugeEquivalentToW) {
  const spin::SpinParams p{1.0, 1.0, kPi / 3, 0.0};
  const PropagatorPath u = propagate(spin::hamiltonian(p), TimeGrid(0.0, p.period(), 20000));
  const spin::SpinorPair w0 = spin::w_basis(p, 0.0);
  const std::vector<AmplitudePath> paths{amplitude_path(u, w0.plus), amplitude_path(u, w0.minus)};
  const BasisFrame f = frame_from_amplitudes(paths);
  for (std::size_t j = 0; j < u.grid.size(); j += 97) {
    const spin::SpinorPair w = spin::w_basis(p, u.grid.node(j));
    EXPECT_NEAR(std::abs(inner(f.at(0, j), w.plus)), 1.0, 1e-7);
    EXPECT_NEAR(std::abs(inner(f.at(1, j), w.minus)), 1.0, 1e-7);
    const Complex o = inner(f.at(0, 0), f.at(0, j));
    EXPECT_NEAR(o.imag(), 0.0, 1e-12);
    EXPECT_GT(o.real(), 0.0);
  }
}

TEST(FrameFromAmplitudes, OrthogonalityCrossing) {
  // Rabi flip: |<psi(0), psi(t)>| = |cos t| vanishes at t = pi/2, a grid node.
  const TimeGrid grid(0.0, kPi, 8);
  const PropagatorPath u = propagate(HamiltonianTrajectory(2, [](double) { return pauli::x(); }), grid);
  const std::vector<AmplitudePath> paths{amplitude_path(u, Vector::Unit(2, 0))};
  EXPECT_THROW(frame_from_amplitudes(paths), OrthogonalityCrossingError);
}

TEST(ApplyGauge, ZeroConstantAndInverse) {
  const spin::SpinParams p{0.8, 1.3, 1.0, 0.0};
  const BasisFrame f = w_frame(p, 500);
  EXPECT_EQ(frame_distance(apply_gauge(f, GaugeFunction::zero(2)), f), 0.0);

  const GaugeFunction konst({{[](double) { return 0.4; }, [](double) { return 0.0; }},
                             {[](double) { return -1.0; }, [](double) { return 0.0; }}});
  const BasisFrame c = apply_gauge(f, konst);
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    EXPECT_LE((c.at(0, j) - std::polar(1.0, 0.4) * f.at(0, j)).norm(), 1e-15);
    EXPECT_LE((c.at(1, j) - std::polar(1.0, -1.0) * f.at(1, j)).norm(), 1e-15);
  }

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const GaugeFunction g = GaugeFunction::random(2, p.period(), 2.0, rng);
    EXPECT_LE(frame_distance(apply_gauge(apply_gauge(f, g), g.negated()), f), 1e-12);
  }
  EXPECT_THROW(apply_gauge(f, GaugeFunction::zero(3)), DimensionError);
}

TEST(Connection, ClosedForms) {
  const spin::SpinParams p{1.0, 1.0, kPi / 3, 0.0};
  const double c = std::cos(p.theta - p.alpha());
  const BasisFrame w = w_frame(p, 4000);
  for (double a : connection(w, 0)) EXPECT_NEAR(a, 0.5 * p.omega * (1 + c), 1e-6);
  for (double a : connection(w, 1)) EXPECT_NEAR(a, 0.5 * p.omega * (1 - c), 1e-6);
  const BasisFrame v = v_frame(p, 4000);
  for (double a : connection(v, 0)) EXPECT_NEAR(a, 0.5 * p.omega * (1 + std::cos(p.theta)), 1e-6);
  const BasisFrame still = constant_frame(TimeGrid(0.0, 1.0, 10), Matrix::Identity(3, 3));
  for (double a : connection(still, 2)) EXPECT_EQ(a, 0.0);
}

TEST(ParallelTransportFrame, FlatIdempotentAndHolonomy) {
  const spin::SpinParams p{1.0, 1.0, kPi / 3, 0.0};
  const double c = std::cos(p.theta - p.alpha());
  const BasisFrame w = w_frame(p, 4000);
  const BasisFrame bar = parallel_transport_frame(w);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto a = connection(bar, k);
    for (std::size_t j = 1; j + 1 < a.size(); ++j) EXPECT_LE(std::abs(a[j]), 1e-6);
  }
  EXPECT_LE(frame_distance(parallel_transport_frame(bar), bar), 1e-8);
  const double hol_plus = std::arg(inner(bar.at(0, 0), bar.vectors[0].back()));
  const double hol_minus = std::arg(inner(bar.at(1, 0), bar.vectors[1].back()));
  EXPECT_LE(phase_distance(hol_plus, -kPi * (1 - c)), 1e-6);
  EXPECT_LE(phase_distance(hol_minus, -kPi * (1 + c)), 1e-6);

  const BasisFrame still = constant_frame(TimeGrid(0.0, 1.0, 10), Matrix::Identity(2, 2));
  EXPECT_LE(frame_distance(parallel_transport_frame(still), still), 1e-10);
  EXPECT_EQ(holonomy(still, 0), Complex(1.0, 0.0));
}

TEST(Holonomy, HemisphereAndGaugeInvariance) {
  // cos(theta - alpha) = 0 at theta = pi/2 + alpha; pick omega = 1, muB = 1.
  // Solve numerically for theta with theta - alpha = pi/2.
  double lo = kPi / 2, hi = kPi - 1e-6;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double a = oracle::alpha_by_bisection(1.0, 1.0, mid);
    (mid - a < kPi / 2 ? lo : hi) = mid;
  }
  const spin::SpinParams p{1.0, 1.0, 0.5 * (lo + hi), 0.0};
  ASSERT_NEAR(std::cos(p.theta - p.alpha()), 0.0, 1e-12);
  const BasisFrame w = w_frame(p, 4000);
  EXPECT_LE(std::abs(holonomy(w, 0) - Complex(-1.0, 0.0)), 1e-6);

  std::mt19937_64 rng(3);
  const Complex base = holonomy(w, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const GaugeFunction g = GaugeFunction::random(2, 1.6 * p.period(), 1.5, rng);
    EXPECT_LE(std::abs(holonomy(apply_gauge(w, g), 0) - base), 1e-8);
  }
}

TEST(EffectiveHamiltonian, InstantaneousBasis) {
  const spin::SpinParams p{1.2, 0.9, 1.1, 0.0};
  const auto h = spin::hamiltonian(p);
  const EffectiveHamiltonianPath eff = effective_hamiltonian(v_frame(p, 4000), h);
  const double s = std::sin(p.theta), c = std::cos(p.theta), w = p.omega;
  for (std::size_t j = 0; j < eff.matrices.size(); j += 50) {
    const Matrix& m = eff.matrices[j];
    EXPECT_NEAR(std::abs(m(0, 0) - (-p.mu_b - (1 + c) * w / 2)), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(m(1, 1) - (p.mu_b - (1 - c) * w / 2)), 0.0, 1e-6);
    EXPECT_NEAR(std::abs(m(0, 1) - (-s * w / 2)), 0.0, 1e-6);
    EXPECT_LE(hermiticity_defect(m), 1e-7);
  }
}

TEST(EffectiveHamiltonian, RotatedBasisIsDiagonal) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> scale(0.1, 10.0), angle(0.05, kPi - 0.05);
  for (int trial = 0; trial < 10; ++trial) {
    const spin::SpinParams p{scale(rng), scale(rng), angle(rng), 0.0};
    const EffectiveHamiltonianPath eff = effective_hamiltonian(w_frame(p, 20000), spin::hamiltonian(p));
    for (std::size_t j = 0; j < eff.matrices.size(); j += 500) {
      EXPECT_LE(std::abs(eff.matrices[j](0, 1)), 1e-6);
      EXPECT_LE(std::abs(eff.matrices[j](1, 0)), 1e-6);
    }
  }
}

TEST(EffectiveHamiltonian, ConstantEigenframe) {
  std::mt19937_64 rng(5);
  const Matrix h = oracle::random_hermitian(3, rng);
  const EigenSystem es = hermitian_eigen(h);
  const BasisFrame f = constant_frame(TimeGrid(0.0, 1.0, 10), es.vectors);
  const EffectiveHamiltonianPath eff = effective_hamiltonian(f, HamiltonianTrajectory(3, [h](double) { return h; }));
  const Matrix expected = es.values.cast<Complex>().asDiagonal();
  for (const Matrix& m : eff.matrices) EXPECT_LE((m - expected).norm(), 1e-12);
}

TEST(UniversalConstraint, Examples) {
  const TimeGrid grid(0.0, 2.0, 100);
  const auto sin_t = GaugeFunction::Component{[](double t) { return std::sin(t); },
                                              [](double t) { return std::cos(t); }};
  const auto sin_shift = GaugeFunction::Component{[](double t) { return std::sin(t) + 3.0; },
                                                  [](double t) { return std::cos(t); }};
  const auto zero = GaugeFunction::Component{[](double) { return 0.0; }, [](double) { return 0.0; }};
  EXPECT_TRUE(check_universal_hamiltonian_constraint(GaugeFunction({sin_t, sin_t}), grid));
  EXPECT_TRUE(check_universal_hamiltonian_constraint(GaugeFunction({sin_t, sin_shift}), grid));
  EXPECT_FALSE(check_universal_hamiltonian_constraint(GaugeFunction({sin_t, zero}), grid));
}

TEST(FrameTrace, MatchesPropagatorAndIsGaugeInvariant) {
  std::mt19937_64 rng(6);
  const Matrix a = oracle::random_hermitian(3, rng), b = oracle::random_hermitian(3, rng);
  const HamiltonianTrajectory h(3, [a, b](double t) -> Matrix { return a + std::sin(1.3 * t) * b; });
  const PropagatorPath u = propagate(h, TimeGrid(0.0, 2.0, 8000));
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density_matrix(3, rng);
    const Ensemble e = ensemble_of(rho);
    const std::vector<AmplitudePath> paths = constituent_paths(u, e);
    BasisFrame frame{u.grid, {}};
    for (const auto& p : paths) frame.vectors.push_back(p.states);
    const Complex direct = (u.final() * rho.matrix()).trace();
    const Complex from_frame = frame_trace(frame, e.weights(), h);
    EXPECT_LE(std::abs(from_frame - direct), 1e-6);
    for (int g = 0; g < 5; ++g) {
      const GaugeFunction gf = GaugeFunction::random(3, 2.9, 2.0, rng);
      EXPECT_LE(std::abs(frame_trace(apply_gauge(frame, gf), e.weights(), h) - from_frame), 1e-8);
    }
  }
}

TEST(AmplitudesFromFrame, RebuildUpToConstantPhase) {
  const spin::SpinParams p{1.0, 2.0, 0.9, 0.0};
  const auto h = spin::hamiltonian(p);
  const BasisFrame w = w_frame(p, 8000);
  const std::vector<AmplitudePath> base = amplitudes_from_frame(w, h);
  std::mt19937_64 rng(7);
  const GaugeFunction g = GaugeFunction::random(2, 1.4 * p.period(), 1.0, rng);
  const std::vector<AmplitudePath> moved = amplitudes_from_frame(apply_gauge(w, g), h);
  for (std::size_t k = 0; k < 2; ++k) {
    const double a0 = g.value(k, 0.0);
    for (std::size_t j = 0; j < w.grid.size(); j += 100) {
      const Complex o = inner(base[k].states[j], moved[k].states[j]);
      EXPECT_NEAR(std::abs(o), 1.0, 1e-8);
      EXPECT_LE(phase_distance(std::arg(o), a0), 1e-8);
    }
    const spin::SpinorPair exact = spin::exact_amplitudes(p, p.period());
    EXPECT_LE((base[k].final() - (k == 0 ? exact.plus : exact.minus)).norm(), 1e-6);
  }
}
