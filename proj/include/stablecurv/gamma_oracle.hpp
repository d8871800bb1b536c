#pragma once

// Γ-calculus on trigonometric polynomials from first principles: the
// generator acts diagonally, Γ is the Ψ-kernel double sum, and Γ₂ is
// assembled from its definition. Serves as the independent check of the
// matrix route.

#include <cstddef>
#include <vector>

#include "stablecurv/trig_poly.hpp"

namespace stablecurv {

/// L_γ f: coefficient at n multiplied by −|n|^γ.
TrigPoly apply_generator(double gamma, const TrigPoly& f);

/// Sesquilinear Γ(f,g) = Σ a_n conj(b_m) Ψ_γ(n,m) e^{i(n−m)x}.
TrigPoly carre_du_champ(double gamma, const TrigPoly& f, const TrigPoly& g);

/// Γ₂(f,f) = ½[L Γ(f,f) − Γ(f, Lf) − Γ(Lf, f)].
TrigPoly gamma2_definition(double gamma, const TrigPoly& f);

/// Σ a_n conj(a_m) Ψ_γ(n,m)² e^{i(n−m)x}.
TrigPoly gamma2_hadamard(double gamma, const TrigPoly& f);

/// b·∇f with b(x) = −ω² sin x.
TrigPoly drift_apply(double omega_sq, const TrigPoly& f);

/// ½[b·∇Γ(f,f) − Γ(f, b·∇f) − Γ(b·∇f, f)].
TrigPoly drift_correction(double gamma, double omega_sq, const TrigPoly& f);

/// Γ₂ of L_γ + b·∇: gamma2_definition + drift_correction.
TrigPoly drift_gamma2(double gamma, double omega_sq, const TrigPoly& f);

/// Dense complex n×n matrix.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}
  std::size_t size() const noexcept { return n_; }
  Complex operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  /// v* M v.
  Complex quadratic_form(const std::vector<Complex>& v) const;
  double max_imag() const noexcept;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

struct DriftMatrix {
  /// Hermitian matrix with drift_correction(f)(x) = v* d0 v, v_n = a_n e^{inx}.
  ComplexMatrix d0;
  /// Non-Hermitian matrix read off the transport and coupling terms
  /// ½b·∇Γ(e_n,e_m) − Γ(e_n, b·∇e_m) before symmetrization.
  ComplexMatrix raw;
  /// max |d0(n,m) − (ω²/2) cos(x) min(n,m)|.
  double max_deviation;
};

/// Drift-correction matrix on T_N^+ at γ = 1, extracted entry by entry
/// from the oracle.
DriftMatrix extract_D0(double omega_sq, std::size_t n, double x);

/// Γ₂/Γ for f = cos(nx), closed form.
double single_mode_ratio(double gamma, int n, double x);

/// Γ_{L,2}/Γ for f = cos x under the cosine drift, closed form.
double drift_single_mode_ratio(double gamma, double omega_sq, double x);

/// Phase-stripped coefficients v_k = a_k e^{ikx} for f ∈ T_N^+, k = 1..n.
std::vector<Complex> phase_stripped(const TrigPoly& f, std::size_t n, double x);

}  // namespace stablecurv
