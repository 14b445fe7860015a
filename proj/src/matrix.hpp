#pragma once

#include <complex>
#include <vector>

#include "errors.hpp"

namespace ncagm {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Value type; all operations return
/// fresh matrices unless noted.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int m) : m_(m), a_(static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
    if (m < 1) throw_invalid("Matrix: dimension must be >= 1");
  }
  static Matrix identity(int m);

  int dim() const { return m_; }
  cplx& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * m_ + c]; }
  const cplx& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * m_ + c]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  Matrix adjoint() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);
  Matrix& operator*=(double s);

  double frobenius_norm() const;
  double max_abs_entry() const;
  bool all_finite() const;
  /// ||A - A*||_F / 2, the distance to the Hermitian part.
  double anti_hermitian_drift() const;

  bool operator==(const Matrix& o) const { return m_ == o.m_ && a_ == o.a_; }

 private:
  int m_ = 0;
  std::vector<cplx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
Matrix operator*(double s, Matrix a);

/// out = a * b without allocating; out must be distinct from a and b.
void multiply_into(Matrix& out, const Matrix& a, const Matrix& b);

/// Hermitian matrix. Construction hermitizes the input, (A + A*)/2, so the
/// invariant A[j][k] == conj(A[k][j]) holds to machine precision by
/// construction. Requires finite entries.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Matrix& raw);
  static HermitianMatrix identity(int m);
  static HermitianMatrix zero(int m);
  static HermitianMatrix diagonal(const std::vector<double>& d);

  int dim() const { return a_.dim(); }
  const Matrix& mat() const { return a_; }
  cplx entry(int r, int c) const { return a_(r, c); }

  bool operator==(const HermitianMatrix& o) const { return a_ == o.a_; }

 private:
  Matrix a_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary, columns match values
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Residual
/// ||A V - V diag|| and orthogonality ||V*V - I|| come out near machine
/// precision; throws numeric_failure if the sweep cap (100) is exhausted
/// before the off-diagonal mass is negligible.
EigenSystem eig_hermitian(const HermitianMatrix& A);

/// max |lambda_i|.
double op_norm(const HermitianMatrix& A);
double lambda_min(const HermitianMatrix& A);
double lambda_max(const HermitianMatrix& A);

/// Largest singular value, for matrices with no symmetry to exploit.
double op_norm_general(const Matrix& A);

/// A <= B in the Loewner order up to tolerance:
/// lambda_min(B - A) >= -tol * max(1, ||A||, ||B||).
bool loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol);

/// Positive-semidefinite square root. Eigenvalues in
/// [-tol * max(1, ||A||), 0) are clamped to zero; more negative values are a
/// numeric failure.
HermitianMatrix psd_sqrt(const HermitianMatrix& A, double tol = 1e-9);

}  // namespace ncagm
