#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stablecurv/matrices.hpp"

namespace stablecurv {

/// Result of a (generalized) symmetric eigensolve.
struct Spectrum {
  /// Ascending.
  std::vector<double> values;
  /// Unit Euclidean norm, aligned with `values`; empty unless requested.
  std::vector<std::vector<double>> vectors;
  /// max_k ‖A v_k − λ_k B v_k‖ / ‖v_k‖; present only with vectors.
  std::optional<double> residual;
  /// Dimension of the subspace the pencil was solved on (equals n unless
  /// directions of B were deflated).
  std::size_t retained_dim = 0;

  bool has_vectors() const noexcept { return !vectors.empty(); }
  double min() const { return values.front(); }
};

inline constexpr double kDefaultDeflationTol = 1e-10;

/// Householder tridiagonalization followed by implicit-shift QL. Throws
/// ConvergenceFailure after 50·n QL iterations.
Spectrum sym_eigen(const SymMatrix& a, bool want_vectors = false);

/// Cyclic Jacobi rotations; independent cross-check for n ≤ 8.
Spectrum jacobi_eigen(const SymMatrix& a, bool want_vectors = false);

/// A v = λ B v for B positive definite, by Cholesky congruence.
Spectrum gen_eigen_spd(const SymMatrix& a, const SymMatrix& b,
                       bool want_vectors = false);

/// A v = λ B v for B positive semidefinite: eigendirections of B with
/// eigenvalue ≤ deflation_tol·λ_max(B) are discarded first.
/// Throws DegeneratePencil when nothing is retained.
Spectrum gen_eigen_psd(const SymMatrix& a, const SymMatrix& b,
                       double deflation_tol = kDefaultDeflationTol,
                       bool want_vectors = false);

/// max_k ‖A v_k − λ_k B v_k‖ / ‖v_k‖ over the pairs in `s`.
double pencil_residual(const SymMatrix& a, const SymMatrix& b, const Spectrum& s);

}  // namespace stablecurv
