#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "triscale/kernel.hpp"
#include "triscale/matrix.hpp"
#include "triscale/upper_triangular.hpp"

namespace triscale {

/// Largest order for which the n^2 x n^2 Kronecker form is assembled.
inline constexpr std::size_t kKroneckerCap = 20;

/// K_f(A) with vec(L_f(A, E)) = K_f(A) vec(E), vec stacking columns.
/// Column p = j*n + i (0-based) is vec(L_f(A, E_ij)).
struct KroneckerForm {
    std::size_t order = 0;
    Matrix entries;
    std::vector<double> column_norms;
    /// ||K||_2 by power iteration (deterministic start, 500 iterations, 1e-6).
    double spectral_norm = 0.0;

    /// Column p reshaped back to the n x n derivative it came from.
    Matrix column_matrix(std::size_t p) const;
};

struct ConditionReport {
    double cond_abs = 0.0;
    /// +infinity when f(A) = 0.
    double cond_rel = 0.0;
    double operator_norm_L = 0.0;
    double function_norm = 0.0;
    double input_norm = 0.0;
};

/// Column-major vec.
std::vector<Complex> vec(const Matrix& a);

/// L_f(A, E) as the (1,2) block of f([[A, E], [0, A]]). The embedded matrix
/// is upper triangular for any square E, so every kernel applies. E is
/// rescaled by a power of two to ||A||_1 before the call and the result
/// scaled back, which keeps the kernel's step count independent of ||E||.
Matrix frechet_block(const Kernel& kernel, const UpperTriangular& a, const Matrix& e);

/// L_exp(A, E) = int_0^1 e^{A(1-t)} E e^{At} dt by Gauss-Legendre.
Matrix frechet_exp_quad(const UpperTriangular& a, const Matrix& e, std::size_t nodes);

/// L_log(A, E) = int_0^1 (t(A-I)+I)^{-1} E (t(A-I)+I)^{-1} dt by
/// Gauss-Legendre, resolvents applied with triangular solves.
/// Throws NumericalError("branch cut crossed") if an eigenvalue of A is on
/// the closed negative real axis.
Matrix frechet_log_quad(const UpperTriangular& a, const Matrix& e, std::size_t nodes);

/// sum_k a_k sum_{j=0}^{k-1} A^j E A^{k-1-j} for the given coefficients
/// a_0, a_1, ... (a_0 does not contribute). Convergence of the truncated
/// series is the caller's concern.
Matrix frechet_series(std::span<const Complex> coeffs, const UpperTriangular& a, const Matrix& e);

/// 1/k! for k = 0..last.
std::vector<Complex> exp_taylor_coefficients(std::size_t last);

/// Throws InputError if n exceeds `cap`.
KroneckerForm kronecker_form(const Kernel& kernel, const UpperTriangular& a, std::size_t cap = kKroneckerCap);

/// Spectral norm from a full singular value decomposition.
double spectral_norm_exact(const Matrix& a);

/// cond_abs = ||K_f(A)||_2, cond_rel = cond_abs ||A||_F / ||f(A)||_F.
ConditionReport condition_numbers(const Kernel& kernel, const UpperTriangular& a,
                                  std::size_t cap = kKroneckerCap);

/// Tolerances of the structural checks.
struct StructureTolerances {
    double identity_residual = 1e-8;   // relative
    double zero_block = 1e-12;      // relative to ||L||_F
    double norm_slack = 1e-10;      // relative slack on ||L~||_F <= ||L||_F
    double column_slack = 1e-12;    // absolute slack on column 2-norms
    double diagonal = 1e-12;        // relative to max |k_pp|
    double phase = 1e-8;            // radians
    double noise_floor = 1e-12;     // relative to max |k_pq|
    double kronecker_slack = 1e-10; // ||K~||_2 <= ||K||_2 (1 + slack), reported only
};

struct StructureViolation {
    std::string check;
    std::size_t i = 0;  // direction E_ij, 0-based
    std::size_t j = 0;
    double value = 0.0;
    double limit = 0.0;
};

/// Outcome of comparing the derivatives at T and at T~ = S T S^{-1} with
/// S = diag(1, alpha, ..., alpha^{n-1}).
struct StructureReport {
    std::size_t order = 0;
    double alpha = 1.0;
    std::size_t directions = 0;

    double max_identity_residual = 0.0;
    double max_zero_block = 0.0;
    double max_norm_excess = 0.0;    // max (||L~|| - ||L||) / ||L||
    double max_column_excess = 0.0;  // max (||K~ e_p|| - ||K e_p||)
    double max_diagonal_mismatch = 0.0;
    double max_phase_error = 0.0;
    std::vector<StructureViolation> violations;

    // Reported, never asserted.
    double kronecker_norm = 0.0;
    double kronecker_norm_scaled = 0.0;
    double cond_rel = 0.0;
    double cond_rel_scaled = 0.0;
    bool kronecker_norm_reduced = true;
    bool cond_abs_reduced = true;
    bool cond_rel_reduced = true;

    bool ok() const noexcept { return violations.empty(); }
};

StructureReport verify_scaling_structure(const Kernel& kernel, const UpperTriangular& t, double alpha,
                                         const StructureTolerances& tol = {},
                                         std::size_t cap = kKroneckerCap);

}  // namespace triscale
