#include "triscale/upper_triangular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "triscale/error.hpp"

namespace triscale {

namespace {

bool is_finite(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Fixed, irregular start vector for power iterations. Any fixed vector can
// be orthogonal to the dominant singular vector for a contrived input; an
// irregular one makes that unlikely and the column-norm floor below covers
// the rest.
std::vector<Complex> start_vector(std::size_t n) {
    std::vector<Complex> x(n);
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = Complex(1.0 + std::fmod(0.7548776662466927 * static_cast<double>(k + 1), 1.0),
                       0.5 * std::fmod(0.5698402909980532 * static_cast<double>(k + 1), 1.0));
        norm += std::norm(x[k]);
    }
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    return x;
}

}  // namespace

UpperTriangular::UpperTriangular(std::size_t n) : dense_(n, n) {
    if (n == 0) throw InputError("order must be at least 1");
}

UpperTriangular UpperTriangular::identity(std::size_t n) {
    UpperTriangular t(n);
    for (std::size_t i = 0; i < n; ++i) t.dense_(i, i) = 1.0;
    return t;
}

UpperTriangular UpperTriangular::diagonal(std::span<const Complex> d) {
    UpperTriangular t(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!is_finite(d[i])) throw InputError("non-finite entry");
        t.dense_(i, i) = d[i];
    }
    return t;
}

UpperTriangular UpperTriangular::from_upper(Matrix m) {
    if (!m.is_square()) throw InputError("not square");
    if (m.rows() == 0) throw InputError("order must be at least 1");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) m(i, j) = Complex{};
        for (std::size_t j = i; j < n; ++j) {
            if (!is_finite(m(i, j))) throw NumericalError("overflow: non-finite entry in result");
        }
    }
    return UpperTriangular(std::move(m));
}

bool UpperTriangular::is_diagonal() const noexcept {
    const std::size_t n = order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dense_(i, j) != Complex{}) return false;
    return true;
}

UpperTriangular validate_triangular(Matrix raw) {
    if (!raw.is_square()) throw InputError("not square");
    if (raw.rows() == 0) throw InputError("order must be at least 1");
    const std::size_t n = raw.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_finite(raw(i, j))) {
                throw InputError("non-finite entry at (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
            }
            if (j < i && raw(i, j) != Complex{}) {
                throw InputError("not triangular: nonzero entry at (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")");
            }
        }
    }
    return UpperTriangular(std::move(raw));
}

UpperTriangular BandDecomposition::reconstruct() const {
    Matrix sum = diagonal_part.dense();
    for (const auto& band : bands) sum += band.dense();
    return UpperTriangular::from_upper(std::move(sum));
}

double frobenius_norm(const UpperTriangular& t) { return frobenius_norm(t.dense()); }

BandDecomposition split_bands(const UpperTriangular& t) {
    const std::size_t n = t.order();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = t(i, i);
    BandDecomposition out{UpperTriangular::from_upper(std::move(d)), {}};
    out.bands.reserve(n - 1);
    for (std::size_t p = 1; p < n; ++p) {
        Matrix band(n, n);
        for (std::size_t i = 0; i + p < n; ++i) band(i, i + p) = t(i, i + p);
        out.bands.push_back(UpperTriangular::from_upper(std::move(band)));
    }
    return out;
}

double nilpotent_ratio(const UpperTriangular& t) {
    const std::size_t n = t.order();
    Matrix d(n, n);
    Matrix strict(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = t(i, i);
        for (std::size_t j = i + 1; j < n; ++j) strict(i, j) = t(i, j);
    }
    const double nd = frobenius_norm(d);
    const double nn = frobenius_norm(strict);
    if (nd == 0.0) return nn == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return nn / nd;
}

double spectral_norm_estimate(const Matrix& a, int max_iterations, double tolerance) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    if (rows == 0 || cols == 0) return 0.0;

    // Largest column 2-norm is a lower bound on the spectral norm.
    double floor = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::norm(a(i, j));
        floor = std::max(floor, std::sqrt(s));
    }
    if (floor == 0.0) return 0.0;

    std::vector<Complex> x = start_vector(cols);
    std::vector<Complex> y(rows);
    std::vector<Complex> z(cols);
    double estimate = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        double ynorm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            Complex acc{};
            for (std::size_t j = 0; j < cols; ++j) acc += a(i, j) * x[j];
            y[i] = acc;
            ynorm += std::norm(acc);
        }
        ynorm = std::sqrt(ynorm);
        std::fill(z.begin(), z.end(), Complex{});
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) z[j] += std::conj(a(i, j)) * y[i];
        double znorm = 0.0;
        for (const auto& v : z) znorm += std::norm(v);
        znorm = std::sqrt(znorm);

        const double previous = estimate;
        estimate = ynorm;
        if (znorm == 0.0) break;
        for (std::size_t j = 0; j < cols; ++j) x[j] = z[j] / znorm;
        if (it > 0 && std::abs(estimate - previous) <= tolerance * estimate) break;
    }
    return std::max(estimate, floor);
}

double operator_norm(const UpperTriangular& t, NormKind kind) {
    const std::size_t n = t.order();
    switch (kind) {
        case NormKind::one:
            return one_norm(t.dense());
        case NormKind::infinity: {
            double best = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double row = 0.0;
                for (std::size_t j = i; j < n; ++j) row += std::abs(t(i, j));
                best = std::max(best, row);
            }
            return best;
        }
        case NormKind::two_estimate:
            return spectral_norm_estimate(t.dense(), 100, 1e-6);
    }
    return 0.0;
}

UpperTriangular multiply(const UpperTriangular& a, const UpperTriangular& b) {
    const std::size_t n = a.order();
    if (b.order() != n) throw InputError("dimension mismatch");
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = k; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return UpperTriangular::from_upper(std::move(out));
}

}  // namespace triscale
