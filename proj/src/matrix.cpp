#include "triscale/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "triscale/error.hpp"

namespace triscale {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

namespace {
void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("dimension mismatch");
}
}  // namespace

Matrix& Matrix::operator+=(const Matrix& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    require_same_shape(*this, rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix lhs, Complex s) { return lhs *= s; }
Matrix operator*(Complex s, Matrix rhs) { return rhs *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw InputError("dimension mismatch");
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

double frobenius_norm(const Matrix& a) {
    // Scaled accumulation so that entries near the overflow threshold do not
    // spill into Inf when squared.
    double scale = 0.0;
    for (const auto& v : a.data()) scale = std::max({scale, std::abs(v.real()), std::abs(v.imag())});
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (const auto& v : a.data()) {
        const double re = v.real() / scale;
        const double im = v.imag() / scale;
        sum += re * re + im * im;
    }
    return scale * std::sqrt(sum);
}

double one_norm(const Matrix& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) col += std::abs(a(i, j));
        best = std::max(best, col);
    }
    return best;
}

bool all_finite(const Matrix& a) {
    return std::all_of(a.data().begin(), a.data().end(), [](const Complex& v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

double relative_distance(const Matrix& a, const Matrix& b, const Matrix& ref) {
    const double diff = frobenius_norm(a - b);
    const double scale = frobenius_norm(ref);
    return scale > 0.0 ? diff / scale : diff;
}

Matrix solve_upper_left(const Matrix& u, const Matrix& b) {
    const std::size_t n = u.rows();
    if (!u.is_square() || b.rows() != n) throw InputError("dimension mismatch");
    Matrix x = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Complex acc = x(ii, c);
            for (std::size_t k = ii + 1; k < n; ++k) acc -= u(ii, k) * x(k, c);
            if (u(ii, ii) == Complex{}) throw NumericalError("singular triangular system");
            x(ii, c) = acc / u(ii, ii);
        }
    }
    return x;
}

Matrix solve_upper_right(const Matrix& b, const Matrix& u) {
    const std::size_t n = u.rows();
    if (!u.is_square() || b.cols() != n) throw InputError("dimension mismatch");
    Matrix x = b;
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = x(r, j);
            for (std::size_t k = 0; k < j; ++k) acc -= x(r, k) * u(k, j);
            if (u(j, j) == Complex{}) throw NumericalError("singular triangular system");
            x(r, j) = acc / u(j, j);
        }
    }
    return x;
}

}  // namespace triscale
