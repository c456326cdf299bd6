#include "geophase/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "geophase/errors.hpp"

namespace geophase {

namespace {

// Pade(13,13) numerator coefficients of exp (Higham 2005).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

// Largest 1-norm for which Pade(13) alone is accurate to unit roundoff.
constexpr double kTheta13 = 5.371920351148152;

double norm1(const Matrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

bool all_finite(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

Matrix mat_exp(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("mat_exp: matrix must be square and non-empty");
  }
  if (!all_finite(m)) throw NumericError("mat_exp: non-finite entry");

  const Eigen::Index n = m.rows();
  const double norm = norm1(m);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  const Matrix a = m / std::ldexp(1.0, squarings);
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;

  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                         b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix u = a * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

void fix_phase(Eigen::Ref<Vector> v) {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) largest = std::max(largest, std::abs(v[i]));
  if (largest == 0.0) return;
  // Lowest index among components equal to the maximum up to roundoff.
  Eigen::Index pick = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= largest * (1.0 - 1e-12)) {
      pick = i;
      break;
    }
  }
  const Complex phase = v[pick] / std::abs(v[pick]);
  v *= std::conj(phase);
  v[pick] = Complex(std::abs(v[pick]), 0.0);
}

EigenSystem hermitian_eigen(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw DimensionError("hermitian_eigen: matrix must be square and non-empty");
  }
  if (!all_finite(h)) throw NumericError("hermitian_eigen: non-finite entry");
  require_hermitian(h, "hermitian_eigen");

  // Solve on the exactly symmetrized matrix; the solver reads one triangle.
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eigen: decomposition did not converge");
  }
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_phase(out.vectors.col(k));
  return out;
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity_defect: matrix must be square");
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermiticity_defect: matrix must be square");
  return (m - m.adjoint()).norm();
}

bool is_hermitian(const Matrix& m, double relative_tolerance) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= relative_tolerance * m.norm();
}

bool is_unitary(const Matrix& u, double tolerance) {
  return u.rows() == u.cols() && unitarity_defect(u) <= tolerance;
}

void require_hermitian(const Matrix& m, const char* what) {
  if (!is_hermitian(m)) {
    throw ContractError(std::string(what) + ": matrix is not Hermitian (defect " +
                        std::to_string(hermiticity_defect(m)) + ")");
  }
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double checked_arg(Complex z, double floor, const char* what) {
  if (!(std::abs(z) >= floor)) {
    throw UndefinedPhaseError(std::string(what) + ": magnitude " + std::to_string(std::abs(z)) +
                              " is too small for a phase to be defined");
  }
  return wrap_angle(std::arg(z));
}

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}
Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

}  // namespace geophase
