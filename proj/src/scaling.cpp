#include "triscale/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triscale/error.hpp"
#include "triscale/op_counter.hpp"

namespace triscale {

ScalingVector::ScalingVector(std::vector<double> diag) : diag_(std::move(diag)) {
    if (diag_.empty()) throw InputError("scaling vector must not be empty");
    for (double v : diag_) {
        if (!std::isfinite(v)) throw NumericalError("overflow in scaling vector");
        if (!(v > 0.0)) throw InputError("scaling vector entries must be positive");
    }
    if (diag_.front() != 1.0) throw InputError("scaling vector must start at 1");
}

bool ScalingVector::is_identity() const noexcept {
    return std::all_of(diag_.begin(), diag_.end(), [](double v) { return v == 1.0; });
}

ScalingVector scalar_scaling(std::size_t n, double alpha) {
    if (n == 0) throw InputError("order must be at least 1");
    if (!std::isfinite(alpha) || !(alpha > 0.0)) throw InputError("alpha must be finite and positive");
    std::vector<double> d(n);
    double power = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(power)) throw NumericalError("overflow: alpha^" + std::to_string(k) + " is not finite");
        d[k] = power;
        power *= alpha;
    }
    instrument::count(n);
    return ScalingVector(std::move(d));
}

std::vector<std::size_t> block_sizes(std::size_t n, std::size_t m) {
    if (m < 1 || m > n) throw InputError("block count m must lie in [1, n]");
    const std::size_t n1 = n / m;
    std::vector<std::size_t> sizes(m, n1);
    sizes.back() = n - (m - 1) * n1;
    return sizes;
}

ScalingVector block_scaling(std::size_t n, double alpha, std::size_t m) {
    if (n == 0) throw InputError("order must be at least 1");
    if (!std::isfinite(alpha) || !(alpha >= 1.0)) throw InputError("alpha must be finite and >= 1");
    const auto sizes = block_sizes(n, m);
    std::vector<double> d;
    d.reserve(n);
    double power = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!std::isfinite(power)) throw NumericalError("overflow: alpha^" + std::to_string(k) + " is not finite");
        d.insert(d.end(), sizes[k], power);
        power *= alpha;
    }
    instrument::count(n);
    return ScalingVector(std::move(d));
}

namespace {

template <typename Store>
void scale_entries(std::size_t n, const ScalingVector& s, Direction direction, bool upper_only, Store&& at) {
    if (s.size() != n) throw InputError("dimension mismatch: scaling vector has length " +
                                        std::to_string(s.size()) + ", matrix has order " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = upper_only ? i + 1 : 0; j < n; ++j) {
            if (i == j) continue;
            // Forward divides by s_j/s_i, inverse multiplies by it. Using the
            // same rounded ratio both ways keeps the round trip within 2 ulps.
            const double ratio = s[j] / s[i];
            Complex& v = at(i, j);
            v = direction == Direction::forward ? v / ratio : v * ratio;
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NumericalError("overflow: scaled entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is not finite");
        }
    }
    const std::uint64_t touched = upper_only ? n * (n - 1) / 2 : n * (n - 1);
    instrument::count(2 * touched);
}

}  // namespace

UpperTriangular apply_similarity(const UpperTriangular& t, const ScalingVector& s, Direction direction) {
    Matrix m = t.dense();
    scale_entries(t.order(), s, direction, true, [&](std::size_t i, std::size_t j) -> Complex& { return m(i, j); });
    return UpperTriangular::from_upper(std::move(m));
}

Matrix apply_similarity(const Matrix& a, const ScalingVector& s, Direction direction) {
    if (!a.is_square()) throw InputError("not square");
    Matrix m = a;
    scale_entries(a.rows(), s, direction, false, [&](std::size_t i, std::size_t j) -> Complex& { return m(i, j); });
    return m;
}

namespace {

double repeated_power(double alpha, std::size_t k) {
    double p = 1.0;
    for (std::size_t i = 0; i < k; ++i) p *= alpha;
    return p;
}

ScalingPlan trivial_plan(std::size_t n) {
    return ScalingPlan{1.0, 1, {n}, ScalingVector(std::vector<double>(n, 1.0))};
}

}  // namespace

ScalingPlan choose_parameters(const UpperTriangular& t, AlphaMode mode) {
    const std::size_t n = t.order();
    double alpha = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) alpha = std::max(alpha, std::abs(t(i, j)));
    instrument::count(n * (n + 1) / 2);

    // The alpha < 10 guard runs before the logarithm ratio so that alpha <= 1
    // never reaches the division by log(alpha).
    if (alpha < kMinUsefulAlpha) return trivial_plan(n);
    if (mode == AlphaMode::power_of_two) alpha = std::max(16.0, std::exp2(std::round(std::log2(alpha))));

    // Largest m with alpha^m <= 1e20, i.e. floor(20 log 10 / log alpha),
    // corrected for rounding in the ratio.
    const double ratio = 20.0 * std::log(10.0) / std::log(alpha);
    std::size_t m = ratio >= 1.0 ? static_cast<std::size_t>(std::floor(ratio)) : 0;
    while (m > 0 && repeated_power(alpha, m) > kMaxScalingPower) --m;
    while (m < n && repeated_power(alpha, m + 1) <= kMaxScalingPower) ++m;
    if (m == 0) return trivial_plan(n);  // alpha > 1e20: no admissible block scaling
    m = std::min(m, n);

    return ScalingPlan{alpha, m, block_sizes(n, m), block_scaling(n, alpha, m)};
}

FunmReport scaled_compute(const UpperTriangular& t, const Kernel& kernel, const std::optional<ScalingPlan>& plan) {
    const ScalingPlan chosen = plan ? *plan : choose_parameters(t);
    if (chosen.scaling_vector.size() != t.order()) throw InputError("dimension mismatch between plan and matrix");

    const double ratio = nilpotent_ratio(t);
    if (chosen.is_trivial()) {
        FunmReport report = kernel(t);
        report.alpha_used = chosen.alpha;
        report.m_used = chosen.m;
        report.input_ratio = ratio;
        return report;
    }

    const UpperTriangular scaled = apply_similarity(t, chosen.scaling_vector, Direction::forward);
    FunmReport report = kernel(scaled);
    report.value = apply_similarity(report.value, chosen.scaling_vector, Direction::inverse);
    report.alpha_used = chosen.alpha;
    report.m_used = chosen.m;
    report.input_ratio = ratio;
    return report;
}

}  // namespace triscale
