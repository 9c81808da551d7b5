#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace triscale {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. General-purpose container for the
/// operands that are not triangular (directions E, Frechet derivatives,
/// Kronecker forms).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n);
    /// Matrix of order n with a single 1 at (i, j) (0-based).
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(Complex s);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, Complex s);
Matrix operator*(Complex s, Matrix rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);

double frobenius_norm(const Matrix& a);
/// Largest absolute column sum.
double one_norm(const Matrix& a);
bool all_finite(const Matrix& a);

/// Relative Frobenius distance ||a - b||_F / ||ref||_F. Returns the absolute
/// distance when ||ref||_F is zero.
double relative_distance(const Matrix& a, const Matrix& b, const Matrix& ref);

/// Solves U X = B for upper-triangular U (only its upper triangle is read).
/// Throws NumericalError on a zero pivot.
Matrix solve_upper_left(const Matrix& u, const Matrix& b);
/// Solves X U = B for upper-triangular U.
Matrix solve_upper_right(const Matrix& b, const Matrix& u);

}  // namespace triscale
