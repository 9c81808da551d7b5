#include "triscale/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triscale/error.hpp"
#include "triscale/quadrature.hpp"

namespace triscale {

void KernelOptions::validate() const {
    if (!(theta > 0.0 && theta <= 1.0)) throw InputError("theta must lie in (0, 1]");
    if (max_steps < 1) throw InputError("max_steps must be at least 1");
}

namespace {

bool on_closed_negative_axis(Complex z) { return z.imag() == 0.0 && z.real() <= 0.0; }

FunmReport plain_report(UpperTriangular value, const UpperTriangular& input, int count, int degree) {
    return FunmReport{std::move(value), count, degree, 1.0, 1, nilpotent_ratio(input)};
}

// Solves U X = B where both U and B are upper triangular; X is upper
// triangular and only its upper part is computed.
Matrix solve_upper_upper(const Matrix& u, const Matrix& b) {
    const std::size_t n = u.rows();
    Matrix x(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = c + 1; r-- > 0;) {
            Complex acc = b(r, c);
            for (std::size_t k = r + 1; k <= c; ++k) acc -= u(r, k) * x(k, c);
            if (u(r, r) == Complex{}) throw NumericalError("singular Pade denominator");
            x(r, c) = acc / u(r, r);
        }
    }
    return x;
}

Matrix identity_minus(const Matrix& a) {
    Matrix out = Matrix::identity(a.rows());
    out -= a;
    return out;
}

}  // namespace

UpperTriangular sqrtm_tri(const UpperTriangular& t) {
    const std::size_t n = t.order();
    Matrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (t(i, i) == Complex{} || on_closed_negative_axis(t(i, i)))
            throw NumericalError("principal root undefined: eigenvalue " + std::to_string(i + 1) +
                                 " is zero or on the negative real axis");
        u(i, i) = std::sqrt(t(i, i));
    }
    for (std::size_t p = 1; p < n; ++p) {
        for (std::size_t i = 0; i + p < n; ++i) {
            const std::size_t j = i + p;
            Complex s = t(i, j);
            for (std::size_t k = i + 1; k < j; ++k) s -= u(i, k) * u(k, j);
            const Complex den = u(i, i) + u(j, j);
            if (den == Complex{}) throw NumericalError("ill-posed recurrence: u_ii + u_jj = 0");
            u(i, j) = s / den;
        }
    }
    return UpperTriangular::from_upper(std::move(u));
}

FunmReport expm_sas(const UpperTriangular& t, const KernelOptions& opts) {
    opts.validate();
    const std::size_t n = t.order();

    int k0 = 0;
    double norm = operator_norm(t, NormKind::two_estimate);
    while (!(norm < opts.theta)) {
        if (k0 >= opts.max_steps) throw NumericalError("scaling exceeds max_steps");
        norm /= 2.0;
        ++k0;
    }

    Matrix x = t.dense();
    for (auto& v : x.data()) v = Complex(std::ldexp(v.real(), -k0), std::ldexp(v.imag(), -k0));
    const UpperTriangular xt = UpperTriangular::from_upper(x);

    // [q/q] coefficients c_k = (2q-k)! q! / ((2q)! k! (q-k)!).
    constexpr int q = kExpPadeDegree;
    Matrix num = Matrix::identity(n);
    Matrix den = Matrix::identity(n);
    UpperTriangular power = xt;
    double c = 1.0;
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / (static_cast<double>(k) * static_cast<double>(2 * q - k + 1));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                num(i, j) += c * power(i, j);
                den(i, j) += sign * c * power(i, j);
            }
        }
        if (k < q) power = multiply(power, xt);
    }

    UpperTriangular f = UpperTriangular::from_upper(solve_upper_upper(den, num));
    for (int k = 0; k < k0; ++k) f = multiply(f, f);  // throws on overflow
    return plain_report(std::move(f), t, k0, q);
}

FunmReport logm_iss(const UpperTriangular& t, const KernelOptions& opts) {
    opts.validate();
    const std::size_t n = t.order();
    for (std::size_t i = 0; i < n; ++i) {
        if (t(i, i) == Complex{} || on_closed_negative_axis(t(i, i)))
            throw NumericalError("principal log undefined: eigenvalue " + std::to_string(i + 1) +
                                 " is zero or on the negative real axis");
    }

    UpperTriangular r = t;
    int s = 0;
    while (!(one_norm(identity_minus(r.dense())) < opts.theta)) {
        if (s >= opts.max_steps) throw NumericalError("max_steps exhausted before ||R - I||_1 < theta");
        r = sqrtm_tri(r);
        ++s;
    }

    Matrix x = r.dense();
    for (std::size_t i = 0; i < n; ++i) x(i, i) -= 1.0;

    // log(I + X) ~ sum_j w_j X (I + x_j X)^{-1}: the [m/m] Pade approximant
    // written in partial fractions over the m-point Gauss-Legendre rule.
    const QuadratureRule rule = gauss_legendre_unit(kLogPadeDegree);
    Matrix sum(n, n);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        Matrix shifted = x * Complex(rule.nodes[q]);
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += 1.0;
        Matrix term = solve_upper_upper(shifted, x);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) sum(i, j) += rule.weights[q] * term(i, j);
    }
    for (auto& v : sum.data()) v = Complex(std::ldexp(v.real(), s), std::ldexp(v.imag(), s));
    return plain_report(UpperTriangular::from_upper(std::move(sum)), t, s, kLogPadeDegree);
}

FunmReport acosm(const UpperTriangular& t, const KernelOptions& log_opts) {
    const std::size_t n = t.order();
    if (t.is_diagonal()) {
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = std::acos(t(i, i));
        return plain_report(UpperTriangular::from_upper(std::move(d)), t, 0, 0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (t(i, i) == Complex(1.0) || t(i, i) == Complex(-1.0))
            throw NumericalError("branch point: eigenvalue " + std::to_string(i + 1) + " equals +/-1");
    }

    const UpperTriangular sq = multiply(t, t);
    const UpperTriangular root = sqrtm_tri(UpperTriangular::from_upper(identity_minus(sq.dense())));
    Matrix arg = t.dense();
    arg += Complex(0.0, 1.0) * root.dense();
    FunmReport log_report = logm_iss(UpperTriangular::from_upper(std::move(arg)), log_opts);

    Matrix value = Complex(0.0, -1.0) * log_report.value.dense();
    return plain_report(UpperTriangular::from_upper(std::move(value)), t, log_report.count_s + 1, kLogPadeDegree);
}

UpperTriangular cosm(const UpperTriangular& x) {
    const UpperTriangular plus = expm_sas(UpperTriangular::from_upper(Complex(0.0, 1.0) * x.dense())).value;
    const UpperTriangular minus = expm_sas(UpperTriangular::from_upper(Complex(0.0, -1.0) * x.dense())).value;
    return UpperTriangular::from_upper(Complex(0.5) * (plus.dense() + minus.dense()));
}

UpperTriangular funm_parlett(const UpperTriangular& t, const ScalarFunction& f) {
    const std::size_t n = t.order();
    double largest = 0.0;
    for (std::size_t i = 0; i < n; ++i) largest = std::max(largest, std::abs(t(i, i)));
    const double min_gap = 1e-8 * largest;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(std::abs(t(i, i) - t(j, j)) >= min_gap) || t(i, i) == t(j, j))
                throw NumericalError("confluent spectrum, oracle unavailable");
        }
    }

    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = f(t(i, i));
    for (std::size_t p = 1; p < n; ++p) {
        for (std::size_t i = 0; i + p < n; ++i) {
            const std::size_t j = i + p;
            Complex s = t(i, j) * (out(j, j) - out(i, i));
            for (std::size_t k = i + 1; k < j; ++k) s += t(i, k) * out(k, j) - out(i, k) * t(k, j);
            out(i, j) = s / (t(j, j) - t(i, i));
        }
    }
    return UpperTriangular::from_upper(std::move(out));
}

Kernel exp_kernel(KernelOptions opts) {
    return [opts](const UpperTriangular& t) { return expm_sas(t, opts); };
}

Kernel log_kernel(KernelOptions opts) {
    return [opts](const UpperTriangular& t) { return logm_iss(t, opts); };
}

Kernel acos_kernel(KernelOptions log_opts) {
    return [log_opts](const UpperTriangular& t) { return acosm(t, log_opts); };
}

Kernel sqrt_kernel() {
    return [](const UpperTriangular& t) {
        return FunmReport{sqrtm_tri(t), 0, 0, 1.0, 1, nilpotent_ratio(t)};
    };
}

}  // namespace triscale
