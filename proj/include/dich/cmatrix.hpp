#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace dich {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for d <= ~64; no attempt at
/// sparse or blocked storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static CMatrix identity(int n);
  static CMatrix zero(int n) { return CMatrix(n, n); }
  static CMatrix diag(const std::vector<double>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;
  /// Largest |a_ij| over off-diagonal entries of [A,B] = AB - BA.
  static double commutator_norm(const CMatrix& a, const CMatrix& b);

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  /// (A + A^dagger)/2; removes rounding-level asymmetry.
  CMatrix hermitized() const;
  bool is_hermitian(double tol) const;

  /// Kronecker product.
  static CMatrix kron(const CMatrix& a, const CMatrix& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

}  // namespace dich
