#include "matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ncagm {

Matrix Matrix::identity(int m) {
  Matrix I(m);
  for (int k = 0; k < m; ++k) I(k, k) = 1.0;
  return I;
}

Matrix Matrix::adjoint() const {
  Matrix out(m_);
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (m_ != o.m_) throw_invalid("Matrix: dimension mismatch in +=");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (m_ != o.m_) throw_invalid("Matrix: dimension mismatch in -=");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (auto& v : a_) v *= s;
  return *this;
}

double Matrix::frobenius_norm() const {
  double acc = 0;
  for (const auto& v : a_) acc += std::norm(v);
  return std::sqrt(acc);
}

double Matrix::max_abs_entry() const {
  double mx = 0;
  for (const auto& v : a_) mx = std::max(mx, std::abs(v));
  return mx;
}

bool Matrix::all_finite() const {
  for (const auto& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double Matrix::anti_hermitian_drift() const {
  double acc = 0;
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c) acc += std::norm((*this)(r, c) - std::conj((*this)(c, r)));
  return 0.5 * std::sqrt(acc);
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

void multiply_into(Matrix& out, const Matrix& a, const Matrix& b) {
  const int m = a.dim();
  if (b.dim() != m) throw_invalid("Matrix: dimension mismatch in multiply");
  if (out.dim() != m) out = Matrix(m);
  const cplx* pa = a.data();
  const cplx* pb = b.data();
  cplx* po = out.data();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) po[static_cast<std::size_t>(r) * m + c] = 0.0;
    for (int k = 0; k < m; ++k) {
      const cplx ark = pa[static_cast<std::size_t>(r) * m + k];
      if (ark == cplx{}) continue;
      const cplx* brow = pb + static_cast<std::size_t>(k) * m;
      cplx* orow = po + static_cast<std::size_t>(r) * m;
      for (int c = 0; c < m; ++c) orow[c] += ark * brow[c];
    }
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix out(a.dim());
  multiply_into(out, a, b);
  return out;
}

Matrix operator*(cplx s, Matrix a) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

HermitianMatrix::HermitianMatrix(const Matrix& raw) {
  if (raw.dim() < 1) throw_invalid("HermitianMatrix: empty matrix");
  if (!raw.all_finite()) throw_invalid("HermitianMatrix: non-finite entries");
  const int m = raw.dim();
  a_ = Matrix(m);
  for (int r = 0; r < m; ++r) {
    for (int c = r; c < m; ++c) {
      const cplx v = 0.5 * (raw(r, c) + std::conj(raw(c, r)));
      a_(r, c) = v;
      a_(c, r) = std::conj(v);
    }
    a_(r, r) = cplx(a_(r, r).real(), 0.0);
  }
}

HermitianMatrix HermitianMatrix::identity(int m) { return HermitianMatrix(Matrix::identity(m)); }

HermitianMatrix HermitianMatrix::zero(int m) { return HermitianMatrix(Matrix(m)); }

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  Matrix a(static_cast<int>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) a(static_cast<int>(k), static_cast<int>(k)) = d[k];
  return HermitianMatrix(a);
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.mat() + b.mat());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.mat() - b.mat());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  Matrix out = a.mat();
  out *= s;
  return HermitianMatrix(out);
}

namespace {

double off_diagonal_mass(const Matrix& a) {
  const int m = a.dim();
  double acc = 0;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (r != c) acc += std::norm(a(r, c));
  return std::sqrt(acc);
}

}  // namespace

EigenSystem eig_hermitian(const HermitianMatrix& A) {
  const int m = A.dim();
  Matrix a = A.mat();
  Matrix v = Matrix::identity(m);
  if (!a.all_finite()) throw_invalid("eig_hermitian: non-finite entries");

  EigenSystem out;
  if (m == 1) {
    out.values = {a(0, 0).real()};
    out.vectors = v;
    return out;
  }

  const double scale = a.frobenius_norm();
  const double stop = 1e-14 * std::max(1.0, scale);
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= stop) break;
    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        // Unitary plane rotation J with J_pp = c, J_pq = s e^{i phi},
        // J_qp = -s e^{-i phi}, J_qq = c annihilates the (p,q) entry when
        // phi = arg(a_pq) and tan(2 theta) = 2|a_pq| / (a_qq - a_pp).
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        double t;
        if (std::abs(tau) > 1e154) {
          t = 0.5 / tau;  // avoid overflow in tau * tau
        } else {
          t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phase = apq / r;
        const cplx sigma = s * phase;

        // A <- J* A J applied as column then row updates.
        for (int k = 0; k < m; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - std::conj(sigma) * akq;
          a(k, q) = sigma * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - sigma * aqk;
          a(q, k) = std::conj(sigma) * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);

        for (int k = 0; k < m; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(sigma) * vkq;
          v(k, q) = sigma * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_mass(a) > 1e-10 * std::max(1.0, scale))
    throw_numeric("eig_hermitian: Jacobi sweeps did not converge");

  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  out.values.resize(static_cast<std::size_t>(m));
  out.vectors = Matrix(m);
  for (int c = 0; c < m; ++c) {
    out.values[static_cast<std::size_t>(c)] = a(order[static_cast<std::size_t>(c)], order[static_cast<std::size_t>(c)]).real();
    for (int rr = 0; rr < m; ++rr) out.vectors(rr, c) = v(rr, order[static_cast<std::size_t>(c)]);
  }
  return out;
}

double op_norm(const HermitianMatrix& A) {
  const auto es = eig_hermitian(A);
  return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

double lambda_min(const HermitianMatrix& A) { return eig_hermitian(A).values.front(); }

double lambda_max(const HermitianMatrix& A) { return eig_hermitian(A).values.back(); }

double op_norm_general(const Matrix& A) {
  // Largest singular value via the Hermitian Gram matrix.
  const int m = A.dim();
  Matrix g = A.adjoint() * A;
  HermitianMatrix gram{g};
  (void)m;
  const double top = lambda_max(gram);
  return std::sqrt(std::max(0.0, top));
}

bool loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol) {
  if (A.dim() != B.dim()) throw_invalid("loewner_leq: dimension mismatch");
  if (tol < 0) throw_invalid("loewner_leq: negative tolerance");
  const double lm = lambda_min(B - A);
  const double scale = std::max({1.0, op_norm(A), op_norm(B)});
  return lm >= -tol * scale;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& A, double tol) {
  const auto es = eig_hermitian(A);
  const int m = A.dim();
  const double scale = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
  const double allowance = tol * std::max(1.0, scale);
  std::vector<double> roots(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    double lam = es.values[static_cast<std::size_t>(k)];
    if (lam < -allowance)
      throw_numeric("psd_sqrt: eigenvalue " + std::to_string(lam) + " below -tol*scale");
    roots[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, lam));
  }
  Matrix out(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < m; ++k)
        acc += es.vectors(r, k) * roots[static_cast<std::size_t>(k)] * std::conj(es.vectors(c, k));
      out(r, c) = acc;
    }
  return HermitianMatrix(out);
}

}  // namespace ncagm
