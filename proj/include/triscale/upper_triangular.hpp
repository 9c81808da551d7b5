#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "triscale/matrix.hpp"

namespace triscale {

/// Dense complex upper-triangular matrix of order n >= 1.
///
/// Storage is the full n x n square (row-major) with a guaranteed-zero
/// strictly-lower part. Values are immutable once constructed; every entry
/// is finite.
class UpperTriangular {
public:
    /// Zero matrix of order n. Throws InputError when n == 0.
    explicit UpperTriangular(std::size_t n);

    static UpperTriangular identity(std::size_t n);
    static UpperTriangular diagonal(std::span<const Complex> d);

    /// Adopts the upper triangle of `m`, discarding whatever is stored below
    /// the diagonal. Throws InputError if `m` is not square or empty and
    /// NumericalError ("overflow") if any upper entry is non-finite. This is
    /// the path used for computed results; raw input goes through
    /// validate_triangular.
    static UpperTriangular from_upper(Matrix m);

    std::size_t order() const noexcept { return dense_.rows(); }
    Complex operator()(std::size_t i, std::size_t j) const noexcept { return dense_(i, j); }
    const Matrix& dense() const noexcept { return dense_; }

    bool is_diagonal() const noexcept;

    friend bool operator==(const UpperTriangular&, const UpperTriangular&) = default;

private:
    explicit UpperTriangular(Matrix m) : dense_(std::move(m)) {}
    friend UpperTriangular validate_triangular(Matrix raw);

    Matrix dense_;
};

/// T = D + N_1 + ... + N_{n-1}; bands[p-1] holds superdiagonal p.
struct BandDecomposition {
    UpperTriangular diagonal_part;
    std::vector<UpperTriangular> bands;

    UpperTriangular reconstruct() const;
};

enum class NormKind { one, infinity, two_estimate };

/// Accepts `raw` if it is square, non-empty, finite and has an exactly-zero
/// strictly-lower part. Entries are kept bit-for-bit.
UpperTriangular validate_triangular(Matrix raw);

double frobenius_norm(const UpperTriangular& t);
BandDecomposition split_bands(const UpperTriangular& t);

/// ||N||_F / ||D||_F where N is the whole strictly-upper part. +infinity when
/// D = 0 and N != 0; zero when T = 0.
double nilpotent_ratio(const UpperTriangular& t);

/// One and infinity norms are exact. The two-norm is a power-iteration
/// estimate on T^* T (deterministic start, at most 100 iterations, relative
/// tolerance 1e-6); it never exceeds the true spectral norm.
double operator_norm(const UpperTriangular& t, NormKind kind);

/// Spectral norm estimate for a general matrix by power iteration on A^* A.
double spectral_norm_estimate(const Matrix& a, int max_iterations, double tolerance);

/// Upper-triangular product; only the upper triangle is computed.
UpperTriangular multiply(const UpperTriangular& a, const UpperTriangular& b);

}  // namespace triscale
