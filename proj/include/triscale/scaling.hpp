#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "triscale/kernel.hpp"
#include "triscale/matrix.hpp"
#include "triscale/upper_triangular.hpp"

namespace triscale {

/// Upper bound on the largest power alpha^m used by the block scaling.
inline constexpr double kMaxScalingPower = 1e20;
/// Below this, choose_parameters returns the no-op plan.
inline constexpr double kMinUsefulAlpha = 10.0;

/// Diagonal of S: positive, finite, first entry 1, geometric per block.
class ScalingVector {
public:
    /// Throws InputError if `diag` is empty, has a non-positive or
    /// non-finite entry, or does not start at 1.
    explicit ScalingVector(std::vector<double> diag);

    std::size_t size() const noexcept { return diag_.size(); }
    std::span<const double> diag() const noexcept { return diag_; }
    double operator[](std::size_t k) const noexcept { return diag_[k]; }
    bool is_identity() const noexcept;

    friend bool operator==(const ScalingVector&, const ScalingVector&) = default;

private:
    std::vector<double> diag_;
};

struct ScalingPlan {
    double alpha = 1.0;
    std::size_t m = 1;
    std::vector<std::size_t> block_sizes;
    ScalingVector scaling_vector;

    bool is_trivial() const noexcept { return scaling_vector.is_identity(); }
};

enum class Direction { forward, inverse };

/// How choose_parameters treats alpha: used as the raw maximum, or rounded
/// to the nearest power of two (never below 16) so that the similarity and
/// its inverse are exact.
enum class AlphaMode { as_is, power_of_two };

/// diag(1, alpha, ..., alpha^{n-1}) by repeated multiplication.
ScalingVector scalar_scaling(std::size_t n, double alpha);

/// n_1 = ... = n_{m-1} = floor(n/m), n_m = n - (m-1) n_1.
std::vector<std::size_t> block_sizes(std::size_t n, std::size_t m);

/// diag(I_{n_1}, alpha I_{n_2}, ..., alpha^{m-1} I_{n_m}).
ScalingVector block_scaling(std::size_t n, double alpha, std::size_t m);

/// Forward: S T S^{-1}, entry (i,j) multiplied by s_i/s_j. Inverse:
/// S^{-1} T S. Diagonal entries are never touched. O(n^2).
UpperTriangular apply_similarity(const UpperTriangular& t, const ScalingVector& s, Direction direction);
/// Same map on a general square matrix (used for errors and derivatives).
Matrix apply_similarity(const Matrix& a, const ScalingVector& s, Direction direction);

/// Picks (alpha, m) from the largest entry modulus: no scaling when that is
/// below 10, otherwise the largest m <= n with alpha^m <= 1e20.
ScalingPlan choose_parameters(const UpperTriangular& t, AlphaMode mode = AlphaMode::as_is);

/// Runs `kernel` on S T S^{-1} and maps the result back with S^{-1} . S.
/// Without a plan, choose_parameters(t) is used. A trivial plan calls the
/// kernel on `t` directly.
FunmReport scaled_compute(const UpperTriangular& t, const Kernel& kernel,
                          const std::optional<ScalingPlan>& plan = std::nullopt);

}  // namespace triscale
