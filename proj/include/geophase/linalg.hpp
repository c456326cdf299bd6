#pragma once

// Small dense complex linear algebra shared by every other module.
//
// All physics uses natural units with hbar = 1, so a Hamiltonian matrix is
// directly an angular-frequency generator: U = exp(-i H dt).

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace geophase {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Tolerances the library uses when checking tagged invariants.
namespace tol {
inline constexpr double kHermitian = 1e-12;  // relative, Frobenius
inline constexpr double kUnitary = 1e-10;    // absolute, ||U^dag U - I||_F
inline constexpr double kNormalized = 1e-12;
}  // namespace tol

/// Matrix exponential by scaling and squaring around a fixed degree-13 Pade
/// approximant. Throws DimensionError for non-square input and NumericError
/// for non-finite entries.
Matrix mat_exp(const Matrix& m);

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // column k belongs to values[k]
};

/// Eigen-decomposition of a Hermitian matrix. Every eigenvector is rotated
/// so that its largest-magnitude component (lowest index on ties) is real
/// and positive, which makes the output reproducible bit for bit.
EigenSystem hermitian_eigen(const Matrix& h);

/// ||U^dag U - I||_F
double unitarity_defect(const Matrix& u);

/// ||M - M^dag||_F
double hermiticity_defect(const Matrix& m);

bool is_hermitian(const Matrix& m, double relative_tolerance = tol::kHermitian);
bool is_unitary(const Matrix& u, double tolerance = tol::kUnitary);

/// Throws ContractError naming `what` when `m` is not Hermitian.
void require_hermitian(const Matrix& m, const char* what);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double angle);

/// arg(z) that refuses to answer when |z| < floor.
double checked_arg(Complex z, double floor, const char* what);

/// <a, b> with the physics convention: antilinear in the first slot.
inline Complex inner(const Vector& a, const Vector& b) { return a.dot(b); }

/// Rotates v by a unit phase so that its largest component is real positive.
void fix_phase(Eigen::Ref<Vector> v);

bool all_finite(const Matrix& m);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

}  // namespace geophase
