#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "triscale/upper_triangular.hpp"

namespace triscale {

/// Fixed reference matrices:
///   "eq3"      [[1, 1e6], [0, -1]]
///   "eq4"      4x4, diagonal 3.2346e-1, 3.0089e-1, 3.2210e-1, 3.0744e-1,
///              every strictly-upper entry 3.0000e4
///   "exp1_t1"  e^{0.1} [[1, 1e6], [0, 1]]
/// Throws InputError for any other id.
UpperTriangular gen_reference_matrix(std::string_view id);
std::vector<std::string_view> reference_matrix_ids();

/// Upper-triangular Toeplitz with t_ij = base^{j-i+1} for i <= j.
UpperTriangular gen_toeplitz_geometric(std::size_t n, double base);

/// Diagonal uniform in the disk of radius `diag_magnitude` restricted to
/// |arg| <= 3*pi/4; strictly-upper entries uniform in the disk of radius
/// `offdiag_magnitude`. Deterministic per seed on every platform.
UpperTriangular gen_random_smalldiag(std::size_t n, std::uint64_t seed, double diag_magnitude,
                                     double offdiag_magnitude);

/// Diagonal uniform in the disk |z - center| <= radius, strictly-upper
/// entries uniform in the disk of radius `offdiag_magnitude`. Used for the
/// well-conditioned suites (spectra kept inside a branch-safe region).
UpperTriangular gen_random_disk(std::size_t n, std::uint64_t seed, Complex center, double radius,
                                double offdiag_magnitude);

/// Two diagonal clusters coupled through a strong off-diagonal block:
/// [[D1 + N1, B], [0, D2 + N2]] with diagonals uniform in the disks
/// |z - c1| <= r and |z - c2| <= r, small within-cluster parts of modulus
/// <= `inner_magnitude`, and coupling entries of modulus in
/// [coupling/2, coupling]. Strong non-normality without the exponential
/// growth of f(T) that a dense random strictly-upper part produces at
/// larger n.
UpperTriangular gen_random_coupled(std::size_t n, std::uint64_t seed, Complex c1, Complex c2, double radius,
                                   double inner_magnitude, double coupling);

}  // namespace triscale
