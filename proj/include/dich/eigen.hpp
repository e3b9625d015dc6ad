#pragma once

#include <vector>

#include "dich/cmatrix.hpp"
#include "dich/config.hpp"

namespace dich {

/// Spectral decomposition A = U diag(values) U^dagger with eigenvalues sorted
/// descending and degenerate eigenvalues grouped into clusters.
struct EigenDecomposition {
  std::vector<double> values;          ///< sorted descending
  CMatrix vectors;                     ///< columns are eigenvectors, same order
  std::vector<std::vector<int>> clusters;  ///< partition of indices into degenerate groups

  int dim() const { return static_cast<int>(values.size()); }
  double min() const { return values.back(); }
  double max() const { return values.front(); }
  CMatrix reconstruct() const;
  /// U^dagger X U — X expressed in the eigenbasis.
  CMatrix to_eigenbasis(const CMatrix& x) const;
  CMatrix from_eigenbasis(const CMatrix& x) const;
};

/// Cyclic Jacobi diagonalisation of a complex Hermitian matrix. Throws
/// std::runtime_error if the off-diagonal norm has not dropped below the
/// tolerance after the sweep budget (never observed for d <= 64).
EigenDecomposition eigh(const CMatrix& a, const Tolerances& tol = default_config().tol);

}  // namespace dich
