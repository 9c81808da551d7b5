#include "triscale/frechet.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "triscale/error.hpp"
#include "triscale/kernels.hpp"
#include "triscale/quadrature.hpp"
#include "triscale/scaling.hpp"

namespace triscale {

namespace {

void require_direction(const UpperTriangular& a, const Matrix& e) {
    if (e.rows() != a.order() || e.cols() != a.order())
        throw InputError("direction must be square of the same order as A");
}

void scale_by_pow2(Matrix& m, int exponent) {
    for (auto& v : m.data()) v = Complex(std::ldexp(v.real(), exponent), std::ldexp(v.imag(), exponent));
}

bool is_zero(const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](const Complex& v) { return v == Complex{}; });
}

UpperTriangular scaled_copy(const UpperTriangular& a, double factor) {
    return UpperTriangular::from_upper(a.dense() * Complex(factor));
}

}  // namespace

std::vector<Complex> vec(const Matrix& a) {
    std::vector<Complex> out;
    out.reserve(a.rows() * a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) out.push_back(a(i, j));
    return out;
}

Matrix KroneckerForm::column_matrix(std::size_t p) const {
    Matrix m(order, order);
    for (std::size_t c = 0; c < order; ++c)
        for (std::size_t r = 0; r < order; ++r) m(r, c) = entries(c * order + r, p);
    return m;
}

Matrix frechet_block(const Kernel& kernel, const UpperTriangular& a, const Matrix& e) {
    require_direction(a, e);
    const std::size_t n = a.order();
    if (is_zero(e)) return Matrix(n, n);

    const double target = one_norm(a.dense()) > 0.0 ? one_norm(a.dense()) : 1.0;
    const int shift = static_cast<int>(std::lround(std::log2(target / one_norm(e))));

    Matrix block(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            block(i, j) = a(i, j);
            block(n + i, n + j) = a(i, j);
        }
        for (std::size_t j = 0; j < n; ++j)
            block(i, n + j) = Complex(std::ldexp(e(i, j).real(), shift), std::ldexp(e(i, j).imag(), shift));
    }
    const FunmReport f = kernel(UpperTriangular::from_upper(std::move(block)));

    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = f.value(i, n + j);
    scale_by_pow2(out, -shift);
    return out;
}

Matrix frechet_exp_quad(const UpperTriangular& a, const Matrix& e, std::size_t nodes) {
    require_direction(a, e);
    if (is_zero(a.dense())) return e;  // integrand is constant

    const QuadratureRule rule = gauss_legendre_unit(nodes);
    Matrix sum(a.order(), a.order());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        const Matrix left = expm_sas(scaled_copy(a, 1.0 - t)).value.dense();
        const Matrix right = expm_sas(scaled_copy(a, t)).value.dense();
        sum += Complex(rule.weights[q]) * (left * e * right);
    }
    return sum;
}

Matrix frechet_log_quad(const UpperTriangular& a, const Matrix& e, std::size_t nodes) {
    require_direction(a, e);
    const std::size_t n = a.order();
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i).imag() == 0.0 && a(i, i).real() <= 0.0)
            throw NumericalError("branch cut crossed: t(A - I) + I is singular for some t in [0, 1]");
    }
    if (a == UpperTriangular::identity(n)) return e;  // integrand is E

    const QuadratureRule rule = gauss_legendre_unit(nodes);
    Matrix sum(n, n);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        Matrix resolvent = a.dense() * Complex(t);
        for (std::size_t i = 0; i < n; ++i) resolvent(i, i) += 1.0 - t;
        const Matrix left = solve_upper_left(resolvent, e);
        sum += Complex(rule.weights[q]) * solve_upper_right(left, resolvent);
    }
    return sum;
}

Matrix frechet_series(std::span<const Complex> coeffs, const UpperTriangular& a, const Matrix& e) {
    require_direction(a, e);
    const std::size_t n = a.order();
    const Matrix& am = a.dense();
    Matrix out(n, n);
    if (coeffs.size() < 2) return out;

    // inner_k = sum_{j=0}^{k-1} A^j E A^{k-1-j}, built as
    // inner_{k+1} = A inner_k + E A^k.
    Matrix inner = e;
    Matrix power = am;  // A^k for the next step
    out += coeffs[1] * inner;
    for (std::size_t k = 2; k < coeffs.size(); ++k) {
        inner = am * inner + e * power;
        power = power * am;
        if (coeffs[k] != Complex{}) out += coeffs[k] * inner;
    }
    return out;
}

std::vector<Complex> exp_taylor_coefficients(std::size_t last) {
    std::vector<Complex> c(last + 1);
    double v = 1.0;
    for (std::size_t k = 0; k <= last; ++k) {
        if (k > 0) v /= static_cast<double>(k);
        c[k] = v;
    }
    return c;
}

KroneckerForm kronecker_form(const Kernel& kernel, const UpperTriangular& a, std::size_t cap) {
    const std::size_t n = a.order();
    if (n > cap) throw InputError("Kronecker form cap exceeded: n = " + std::to_string(n) +
                                  " > " + std::to_string(cap));
    const std::size_t n2 = n * n;
    KroneckerForm k{n, Matrix(n2, n2), std::vector<double>(n2, 0.0), 0.0};

    // Columns are independent; each worker owns its direction and result and
    // writes a disjoint column of K.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t p = next++; p < n2; p = next++) {
            try {
                const std::size_t i = p % n;
                const std::size_t j = p / n;
                const Matrix l = frechet_block(kernel, a, Matrix::unit(n, i, j));
                double norm2 = 0.0;
                for (std::size_t c = 0; c < n; ++c) {
                    for (std::size_t r = 0; r < n; ++r) {
                        k.entries(c * n + r, p) = l(r, c);
                        norm2 += std::norm(l(r, c));
                    }
                }
                k.column_norms[p] = std::sqrt(norm2);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = n2;
            }
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), std::max<std::size_t>(1, n2 / 16));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    k.spectral_norm = spectral_norm_estimate(k.entries, 500, 1e-6);
    return k;
}

double spectral_norm_exact(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

ConditionReport condition_numbers(const Kernel& kernel, const UpperTriangular& a, std::size_t cap) {
    const KroneckerForm k = kronecker_form(kernel, a, cap);
    ConditionReport r;
    r.operator_norm_L = k.spectral_norm;
    r.cond_abs = k.spectral_norm;
    r.input_norm = frobenius_norm(a);
    r.function_norm = frobenius_norm(kernel(a).value);
    r.cond_rel = r.function_norm > 0.0 ? r.cond_abs * r.input_norm / r.function_norm
                                       : std::numeric_limits<double>::infinity();
    return r;
}

StructureReport verify_scaling_structure(const Kernel& kernel, const UpperTriangular& t, double alpha,
                                         const StructureTolerances& tol, std::size_t cap) {
    if (!(alpha > 1.0) || !std::isfinite(alpha)) throw InputError("alpha must be finite and > 1");
    const std::size_t n = t.order();
    const ScalingVector s = scalar_scaling(n, alpha);
    const UpperTriangular tt = apply_similarity(t, s, Direction::forward);

    const KroneckerForm k = kronecker_form(kernel, t, cap);
    const KroneckerForm kt = kronecker_form(kernel, tt, cap);

    StructureReport rep;
    rep.order = n;
    rep.alpha = alpha;
    rep.directions = n * n;

    double kmax = 0.0;
    double ktmax = 0.0;
    double diag_max = 0.0;
    for (const auto& v : k.entries.data()) kmax = std::max(kmax, std::abs(v));
    for (const auto& v : kt.entries.data()) ktmax = std::max(ktmax, std::abs(v));
    for (std::size_t p = 0; p < n * n; ++p) diag_max = std::max(diag_max, std::abs(k.entries(p, p)));

    auto flag = [&](const char* check, std::size_t i, std::size_t j, double value, double limit) {
        rep.violations.push_back({check, i, j, value, limit});
    };

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t p = j * n + i;
            const Matrix l = k.column_matrix(p);
            const Matrix lt = kt.column_matrix(p);
            const double lnorm = frobenius_norm(l);
            const double ltnorm = frobenius_norm(lt);

            // alpha^{j-i} S L S^{-1}: entry (r,c) gains alpha^{(j-i)+(r-c)}.
            Matrix expected(n, n);
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    const int power = static_cast<int>(j) - static_cast<int>(i) + static_cast<int>(r) - static_cast<int>(c);
                    expected(r, c) = l(r, c) * std::pow(alpha, power);
                }
            }
            const double scale = std::max(ltnorm, frobenius_norm(expected));
            const double residual = scale > 0.0 ? frobenius_norm(lt - expected) / scale : 0.0;
            rep.max_identity_residual = std::max(rep.max_identity_residual, residual);
            if (!(residual <= tol.identity_residual)) flag("scaling-identity", i, j, residual, tol.identity_residual);

            // Nonzeros only in rows r <= i and columns c >= j.
            for (const auto* m : {&l, &lt}) {
                const double norm = m == &l ? lnorm : ltnorm;
                if (norm == 0.0) continue;
                double worst = 0.0;
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c)
                        if (r > i || c < j) worst = std::max(worst, std::abs((*m)(r, c)));
                const double ratio = worst / norm;
                rep.max_zero_block = std::max(rep.max_zero_block, ratio);
                if (!(ratio <= tol.zero_block)) flag("zero-block", i, j, ratio, tol.zero_block);
            }

            const double excess = lnorm > 0.0 ? (ltnorm - lnorm) / lnorm : ltnorm;
            rep.max_norm_excess = std::max(rep.max_norm_excess, excess);
            if (!(excess <= tol.norm_slack)) flag("frobenius-inequality", i, j, excess, tol.norm_slack);

            const double column_excess = kt.column_norms[p] - k.column_norms[p];
            rep.max_column_excess = std::max(rep.max_column_excess, column_excess);
            if (!(column_excess <= tol.column_slack)) flag("column-domination", i, j, column_excess, tol.column_slack);

            const double diag_gap = diag_max > 0.0 ? std::abs(kt.entries(p, p) - k.entries(p, p)) / diag_max : 0.0;
            rep.max_diagonal_mismatch = std::max(rep.max_diagonal_mismatch, diag_gap);
            if (!(diag_gap <= tol.diagonal)) flag("kronecker-diagonal", i, j, diag_gap, tol.diagonal);

            for (std::size_t q = 0; q < n * n; ++q) {
                const Complex a0 = k.entries(q, p);
                const Complex a1 = kt.entries(q, p);
                if (!(std::abs(a0) > tol.noise_floor * kmax) || !(std::abs(a1) > tol.noise_floor * ktmax)) continue;
                const double angle = std::abs(std::arg(a1 / a0));
                rep.max_phase_error = std::max(rep.max_phase_error, angle);
                if (!(angle <= tol.phase)) flag("phase", i, j, angle, tol.phase);
            }
        }
    }

    rep.kronecker_norm = spectral_norm_exact(k.entries);
    rep.kronecker_norm_scaled = spectral_norm_exact(kt.entries);
    rep.kronecker_norm_reduced = rep.kronecker_norm_scaled <= rep.kronecker_norm * (1.0 + tol.kronecker_slack);
    rep.cond_abs_reduced = rep.kronecker_norm_reduced;

    const double fnorm = frobenius_norm(kernel(t).value);
    const double ftnorm = frobenius_norm(kernel(tt).value);
    const double inf = std::numeric_limits<double>::infinity();
    rep.cond_rel = fnorm > 0.0 ? rep.kronecker_norm * frobenius_norm(t) / fnorm : inf;
    rep.cond_rel_scaled = ftnorm > 0.0 ? rep.kronecker_norm_scaled * frobenius_norm(tt) / ftnorm : inf;
    rep.cond_rel_reduced = rep.cond_rel_scaled <= rep.cond_rel * (1.0 + tol.kronecker_slack);
    return rep;
}

}  // namespace triscale
