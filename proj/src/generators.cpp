#include "triscale/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "triscale/error.hpp"

namespace triscale {

namespace {

// std::uniform_real_distribution is not specified bit-for-bit across
// standard libraries; mapping the raw 64-bit stream by hand keeps the
// generated matrices identical everywhere.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double symmetric(double r) { return r * (2.0 * unit() - 1.0); }

    Complex in_disk(double radius) {
        for (;;) {
            const Complex z(symmetric(radius), symmetric(radius));
            if (std::abs(z) <= radius) return z;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

std::vector<std::string_view> reference_matrix_ids() { return {"eq3", "eq4", "exp1_t1"}; }

UpperTriangular gen_reference_matrix(std::string_view id) {
    if (id == "eq3") {
        Matrix m(2, 2);
        m(0, 0) = 1.0;
        m(0, 1) = 1e6;
        m(1, 1) = -1.0;
        return validate_triangular(std::move(m));
    }
    if (id == "eq4") {
        Matrix m(4, 4);
        const double diag[] = {3.2346e-001, 3.0089e-001, 3.2210e-001, 3.0744e-001};
        for (std::size_t i = 0; i < 4; ++i) {
            m(i, i) = diag[i];
            for (std::size_t j = i + 1; j < 4; ++j) m(i, j) = 3.0000e+004;
        }
        return validate_triangular(std::move(m));
    }
    if (id == "exp1_t1") {
        const double ea = std::exp(0.1);
        Matrix m(2, 2);
        m(0, 0) = ea;
        m(0, 1) = ea * 1e6;
        m(1, 1) = ea;
        return validate_triangular(std::move(m));
    }
    throw InputError("unknown reference matrix id '" + std::string(id) + "'");
}

UpperTriangular gen_toeplitz_geometric(std::size_t n, double base) {
    if (n == 0) throw InputError("order must be at least 1");
    // powers[k] = base^{k+1}
    std::vector<double> powers(n);
    double p = base;
    for (std::size_t k = 0; k < n; ++k) {
        powers[k] = p;
        p *= base;
    }
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = powers[j - i];
    return validate_triangular(std::move(m));
}

UpperTriangular gen_random_smalldiag(std::size_t n, std::uint64_t seed, double diag_magnitude,
                                     double offdiag_magnitude) {
    if (n == 0) throw InputError("order must be at least 1");
    if (!(diag_magnitude > 0.0) || !(offdiag_magnitude >= 0.0))
        throw InputError("magnitudes must be positive");
    Uniform rng(seed);
    Matrix m(n, n);
    constexpr double max_arg = 0.75 * std::numbers::pi;
    for (std::size_t i = 0; i < n; ++i) {
        Complex z;
        do {
            z = rng.in_disk(diag_magnitude);
        } while (z == Complex{} || std::abs(std::arg(z)) > max_arg);
        m(i, i) = z;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = offdiag_magnitude > 0.0 ? rng.in_disk(offdiag_magnitude) : Complex{};
    return validate_triangular(std::move(m));
}

UpperTriangular gen_random_disk(std::size_t n, std::uint64_t seed, Complex center, double radius,
                                double offdiag_magnitude) {
    if (n == 0) throw InputError("order must be at least 1");
    if (!(radius >= 0.0) || !(offdiag_magnitude >= 0.0)) throw InputError("magnitudes must be non-negative");
    Uniform rng(seed);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = center + (radius > 0.0 ? rng.in_disk(radius) : Complex{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = offdiag_magnitude > 0.0 ? rng.in_disk(offdiag_magnitude) : Complex{};
    return validate_triangular(std::move(m));
}

UpperTriangular gen_random_coupled(std::size_t n, std::uint64_t seed, Complex c1, Complex c2, double radius,
                                   double inner_magnitude, double coupling) {
    if (n < 2) throw InputError("coupled generator needs n >= 2");
    Uniform rng(seed);
    const std::size_t split = n / 2;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = (i < split ? c1 : c2) + rng.in_disk(radius);
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool across = i < split && j >= split;
            if (across) {
                const double mag = coupling * (0.5 + 0.5 * rng.unit());
                const double phase = 2.0 * std::numbers::pi * rng.unit();
                m(i, j) = std::polar(mag, phase);
            } else {
                m(i, j) = rng.in_disk(inner_magnitude);
            }
        }
    }
    return validate_triangular(std::move(m));
}

}  // namespace triscale
