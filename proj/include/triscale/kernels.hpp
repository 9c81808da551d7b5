#pragma once

#include <functional>

#include "triscale/kernel.hpp"
#include "triscale/upper_triangular.hpp"

namespace triscale {

inline constexpr int kExpPadeDegree = 6;
inline constexpr int kLogPadeDegree = 7;

/// Principal square root by the triangular recurrence
///   u_ii = sqrt(t_ii),  u_ij = (t_ij - sum_{k=i+1}^{j-1} u_ik u_kj) / (u_ii + u_jj),
/// solved one superdiagonal at a time.
///
/// Throws NumericalError("principal root undefined") if an eigenvalue is zero
/// or on the negative real axis, and "ill-posed recurrence" on a vanishing
/// denominator.
UpperTriangular sqrtm_tri(const UpperTriangular& t);

/// Classical scaling and squaring: k0 is the smallest integer >= 0 with
/// ||T||_2 / 2^k0 < opts.theta (two-norm estimate), then the [6/6] Pade
/// approximant of exp(T / 2^k0) is squared k0 times. count_s = k0.
FunmReport expm_sas(const UpperTriangular& t, const KernelOptions& opts = KernelOptions::for_exp());

/// Inverse scaling and squaring: square roots until ||R - I||_1 < opts.theta,
/// the [7/7] Pade approximant of log(I + X) in partial-fraction form, then
/// multiplication by 2^s. count_s = s.
FunmReport logm_iss(const UpperTriangular& t, const KernelOptions& opts = KernelOptions::for_log());

/// acos(T) = -i log(T + i (I - T^2)^{1/2}). count_s is the number of square
/// roots inside the logarithm plus one for (I - T^2)^{1/2}. Diagonal inputs
/// are evaluated entrywise (count_s = 0).
///
/// Throws NumericalError("branch point") for a non-diagonal T with an
/// eigenvalue equal to +1 or -1.
FunmReport acosm(const UpperTriangular& t, const KernelOptions& log_opts = KernelOptions::for_log());

/// cos(X) = (exp(iX) + exp(-iX)) / 2 with expm_sas.
UpperTriangular cosm(const UpperTriangular& x);

using ScalarFunction = std::function<Complex(Complex)>;

/// Parlett recurrence f_ij = (t_ij (f_jj - f_ii) + sum_k (t_ik f_kj - f_ik t_kj)) / (t_jj - t_ii).
/// Reference evaluator; requires pairwise eigenvalue separation of at least
/// 1e-8 * max|t_ii|, otherwise NumericalError("confluent spectrum, oracle unavailable").
UpperTriangular funm_parlett(const UpperTriangular& t, const ScalarFunction& f);

Kernel exp_kernel(KernelOptions opts = KernelOptions::for_exp());
Kernel log_kernel(KernelOptions opts = KernelOptions::for_log());
Kernel acos_kernel(KernelOptions log_opts = KernelOptions::for_log());
Kernel sqrt_kernel();

}  // namespace triscale
