// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and time limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "triscale/error.hpp"
#include "triscale/experiments.hpp"
#include "triscale/frechet.hpp"
#include "triscale/generators.hpp"
#include "triscale/kernels.hpp"
#include "triscale/matrix_io.hpp"
#include "triscale/scaling.hpp"

using namespace triscale;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel(const UpperTriangular& got, const UpperTriangular& want) {
    return relative_distance(got.dense(), want.dense(), want.dense());
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Complex draw(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
        const Complex z(u(rng), u(rng));
        if (std::abs(z) <= radius) return z;
    }
}

UpperTriangular random_upper(std::mt19937_64& rng, std::size_t n, double magnitude) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = draw(rng, magnitude);
    return UpperTriangular::from_upper(std::move(m));
}

// Spectrum in |z - center| <= radius, pairwise gaps >= min_gap.
UpperTriangular random_separated(std::mt19937_64& rng, std::size_t n, Complex center, double radius, double off,
                                 double min_gap) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (;;) {
            const Complex z = center + draw(rng, radius);
            bool ok = true;
            for (std::size_t k = 0; k < i; ++k) ok = ok && std::abs(z - m(k, k)) >= min_gap;
            if (ok) {
                m(i, i) = z;
                break;
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = draw(rng, off);
    }
    return UpperTriangular::from_upper(std::move(m));
}

// ---------------------------------------------------------------------------

Outcome norm_reduction() {
    std::mt19937_64 rng(1001);
    double worst_identity = 0.0;
    int growth = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = random_upper(rng, 1 + trial % 12, 1e3);
        const auto bands = split_bands(t);
        const double before = frobenius_norm(t);
        for (double alpha : {2.0, 10.0, 1e3}) {
            const auto tt = apply_similarity(t, scalar_scaling(t.order(), alpha), Direction::forward);
            const double after = frobenius_norm(tt);
            if (after > before) ++growth;
            double gap = 0.0;
            double shrink = 1.0;
            for (const auto& band : bands.bands) {
                shrink /= alpha * alpha;
                gap += (1.0 - shrink) * std::pow(frobenius_norm(band), 2);
            }
            const double lhs = before * before;
            if (lhs > 0.0) worst_identity = std::max(worst_identity, std::abs(lhs - (after * after + gap)) / lhs);
        }
    }
    return {growth == 0 && worst_identity <= 1e-13,
            fmt("3000 cases, norm increases %d, max identity residual %.2e (limit 1e-13)", growth, worst_identity)};
}

Outcome eq3_exponential() {
    const auto t = gen_reference_matrix("eq3");
    const auto exact = closed_form_2x2(t, FunctionKind::exp);
    const auto direct = expm_sas(t);
    const ScalingPlan plan{1e6, 2, {1, 1}, scalar_scaling(2, 1e6)};
    const auto scaled = scaled_compute(t, exp_kernel(), plan);
    const double e_direct = rel(direct.value, exact);
    const double e_scaled = rel(scaled.value, exact);
    const bool pass = (direct.count_s == 20 || direct.count_s == 21) && scaled.count_s <= 1 && e_direct <= 1e-10 &&
                      e_scaled <= 1e-10;
    return {pass, fmt("k0 direct %d (want 20 or 21), k0 scaled %d (want <= 1), errors %.2e / %.2e (limit 1e-10)",
                      direct.count_s, scaled.count_s, e_direct, e_scaled)};
}

Outcome eq4_logarithm() {
    const auto t = gen_reference_matrix("eq4");
    const auto plan = choose_parameters(t);
    const auto direct = logm_iss(t);
    const auto scaled = scaled_compute(t, log_kernel(), plan);
    const double agree = rel(scaled.value, direct.value);
    const bool pass = plan.alpha == 3e4 && direct.count_s >= 8 && scaled.count_s <= direct.count_s - 3 && agree <= 1e-8;
    return {pass, fmt("alpha %.6g, square roots %d -> %d (want direct >= 8, scaled <= direct - 3), agreement %.2e "
                      "(limit 1e-8)",
                      plan.alpha, direct.count_s, scaled.count_s, agree)};
}

Outcome exp1_t1_logarithm() {
    const auto t = gen_reference_matrix("exp1_t1");
    Matrix exact(2, 2);
    exact(0, 0) = 0.1;
    exact(0, 1) = 1e6;
    exact(1, 1) = 0.1;
    const auto scaled = scaled_compute(t, log_kernel());
    const double err = rel(scaled.value, UpperTriangular::from_upper(exact));
    return {err <= 1e-10, fmt("relative error %.2e (limit 1e-10), square roots %d", err, scaled.count_s)};
}

Outcome toeplitz_counts() {
    const auto inputs = default_inputs(ExperimentId::exp2_toeplitz, SizeRange{82, 2, 100}, 1);
    const auto rows = run_experiment(FunctionKind::log, inputs);
    int reduced = 0;
    double worst = 0.0;
    std::string counts;
    for (const auto& r : rows) {
        if (r.s_direct && r.s_scaled && *r.s_scaled < *r.s_direct) ++reduced;
        worst = std::max(worst, r.err_scaled.value_or(INFINITY));
        counts += fmt(" %s/%s", r.s_direct ? std::to_string(*r.s_direct).c_str() : "n/a",
                      r.s_scaled ? std::to_string(*r.s_scaled).c_str() : "n/a");
    }
    const bool pass = rows.size() == 10 && reduced == 10 && worst <= 1e-6;
    return {pass, fmt("%d/10 reduced, max scaled/direct distance %.2e (limit 1e-6); counts%s", reduced, worst,
                      counts.c_str())};
}

// Shared by the two structure criteria.
struct StructureTally {
    std::size_t runs = 0;
    std::size_t identity = 0, zero_block = 0, frobenius = 0;
    std::size_t column = 0, diagonal = 0, phase = 0;
    std::size_t kron_not_reduced = 0, cond_rel_not_reduced = 0;
    double max_identity = 0, max_zero = 0, max_excess = 0, max_column = 0, max_diag = 0, max_phase = 0;
    double seconds = 0.0;
};

const StructureTally& structure_suite() {
    static const StructureTally tally = [] {
        StructureTally s;
        const auto start = std::chrono::steady_clock::now();
        std::mt19937_64 rng(2002);
        const double offs[] = {0.5, 1.0, 3.0};
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 2 + trial % 5;
            // Spectrum inside |z - 1.25| <= 0.75: away from the negative real
            // axis, so both functions stay on their principal branches.
            const auto t = random_separated(rng, n, 1.25, 0.75, offs[trial % 3], 0.0);
            for (const Kernel& k : {exp_kernel(), log_kernel()}) {
                for (double alpha : {2.0, 10.0}) {
                    const auto r = verify_scaling_structure(k, t, alpha);
                    ++s.runs;
                    for (const auto& v : r.violations) {
                        if (v.check == "scaling-identity") ++s.identity;
                        else if (v.check == "zero-block") ++s.zero_block;
                        else if (v.check == "frobenius-inequality") ++s.frobenius;
                        else if (v.check == "column-domination") ++s.column;
                        else if (v.check == "kronecker-diagonal") ++s.diagonal;
                        else if (v.check == "phase") ++s.phase;
                    }
                    if (!r.kronecker_norm_reduced) ++s.kron_not_reduced;
                    if (!r.cond_rel_reduced) ++s.cond_rel_not_reduced;
                    s.max_identity = std::max(s.max_identity, r.max_identity_residual);
                    s.max_zero = std::max(s.max_zero, r.max_zero_block);
                    s.max_excess = std::max(s.max_excess, r.max_norm_excess);
                    s.max_column = std::max(s.max_column, r.max_column_excess);
                    s.max_diag = std::max(s.max_diag, r.max_diagonal_mismatch);
                    s.max_phase = std::max(s.max_phase, r.max_phase_error);
                }
            }
        }
        s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return s;
    }();
    return tally;
}

Outcome derivative_scaling() {
    const auto& s = structure_suite();
    const bool pass = s.identity + s.zero_block + s.frobenius == 0 && s.seconds < 120.0;
    return {pass, fmt("%zu runs in %.1f s; violations identity/zero-block/norm %zu/%zu/%zu; max residual %.2e (1e-8), "
                      "zero block %.2e (1e-12), norm excess %.2e (1e-10)",
                      s.runs, s.seconds, s.identity, s.zero_block, s.frobenius, s.max_identity, s.max_zero,
                      s.max_excess)};
}

Outcome kronecker_structure() {
    const auto& s = structure_suite();
    const bool pass = s.column + s.diagonal + s.phase == 0;
    return {pass, fmt("violations diagonal/column/phase %zu/%zu/%zu; max diagonal %.2e (1e-12), column excess %.2e "
                      "(1e-12), phase %.2e (1e-8); ||K~||_2 > ||K||_2 in %zu runs, cond_rel not reduced in %zu runs "
                      "(reported only)",
                      s.diagonal, s.column, s.phase, s.max_diag, s.max_column, s.max_phase, s.kron_not_reduced,
                      s.cond_rel_not_reduced)};
}

Matrix dense_exp(const Matrix& a) {
    // Taylor series after scaling to ||A||_1 <= 1/2; independent of the kernels.
    int s = 0;
    if (const double norm = one_norm(a); norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    Matrix x = a * Complex(std::ldexp(1.0, -s));
    Matrix sum = Matrix::identity(a.rows());
    Matrix term = sum;
    for (int k = 1; k <= 30; ++k) {
        term = term * x;
        term *= Complex(1.0 / k);
        sum += term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

Outcome frechet_triangle() {
    std::mt19937_64 rng(3003);
    const auto coeffs = exp_taylor_coefficients(30);
    double worst = 0.0;
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 5;
        auto a = random_upper(rng, n, 1.0);
        Matrix am = a.dense();
        am *= Complex(2.0 / one_norm(am));
        a = UpperTriangular::from_upper(am);
        Matrix e(n, n);
        for (auto& z : e.data()) z = draw(rng, 1.0);
        const Matrix fd = (dense_exp(am + e * Complex(h)) - dense_exp(am - e * Complex(h))) * Complex(1.0 / (2 * h));
        const Matrix values[] = {frechet_block(exp_kernel(), a, e), frechet_exp_quad(a, e, 32),
                                 frechet_series(coeffs, a, e), fd};
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) worst = std::max(worst, relative_distance(values[x], values[y], values[y]));
    }
    return {worst <= 1e-7, fmt("50 cases (n <= 5, ||A||_1 = 2), worst pairwise distance %.2e (limit 1e-7)", worst)};
}

Outcome error_model() {
    std::mt19937_64 rng(4004);
    std::size_t entries = 0, off = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 11;
        Matrix e_tilde(n, n);
        for (auto& z : e_tilde.data()) z = draw(rng, 1e-10);
        const auto s = trial % 2 ? scalar_scaling(n, 1 + trial * 7.3) : block_scaling(n, 3e4, 1 + trial % n);
        const Matrix e = apply_similarity(e_tilde, s, Direction::inverse);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ++entries;
                const Complex want = e_tilde(i, j) * (s[j] / s[i]);
                for (int part = 0; part < 2; ++part) {
                    const double w = part ? want.imag() : want.real();
                    const double g = part ? e(i, j).imag() : e(i, j).real();
                    if (std::abs(g - w) > std::abs(std::nextafter(w, INFINITY) - w)) ++off;
                }
            }
    }
    return {off == 0, fmt("%zu entries, %zu differ by more than 1 ulp", entries, off)};
}

Outcome kernel_oracles() {
    std::mt19937_64 rng(5005);
    double worst_exp = 0.0, worst_log = 0.0, worst_cos = 0.0;
    int skipped = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 10;
        const auto t = random_separated(rng, n, 2.0, 1.5, 1.0, 0.3);
        worst_exp = std::max(worst_exp, rel(expm_sas(t).value, funm_parlett(t, scalar_function(FunctionKind::exp))));
        worst_log = std::max(worst_log, rel(logm_iss(t).value, funm_parlett(t, scalar_function(FunctionKind::log))));

        const auto u = random_separated(rng, n, Complex(0.0, 0.1), 0.8, 0.5, 0.0);
        try {
            worst_cos = std::max(worst_cos, rel(cosm(acosm(u).value), u));
        } catch (const Error&) {
            ++skipped;
        }
    }
    const bool pass = worst_exp <= 1e-9 && worst_log <= 1e-9 && worst_cos <= 1e-8 && skipped == 0;
    return {pass, fmt("100 matrices: exp %.2e, log %.2e vs Parlett (limit 1e-9); cos(acos T) %.2e (limit 1e-8), "
                      "%d failed",
                      worst_exp, worst_log, worst_cos, skipped)};
}

Outcome round_trips_and_plans() {
    std::vector<std::string> failures;
    std::mt19937_64 rng(6006);
    std::uniform_int_distribution<std::uint64_t> bits;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double re, im;
                do re = std::bit_cast<double>(bits(rng)); while (!std::isfinite(re));
                do im = std::bit_cast<double>(bits(rng)); while (!std::isfinite(im));
                m(i, j) = Complex(re, im);
            }
        const auto t = validate_triangular(m);
        std::stringstream io;
        format_matrix(io, t);
        const auto back = parse_matrix(io);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (std::bit_cast<std::uint64_t>(back(i, j).real()) != std::bit_cast<std::uint64_t>(t(i, j).real()) ||
                    std::bit_cast<std::uint64_t>(back(i, j).imag()) != std::bit_cast<std::uint64_t>(t(i, j).imag()))
                    failures.push_back("matrix file");
    }

    auto rows = run_experiment(FunctionKind::exp, default_inputs(ExperimentId::exp3_exp, std::nullopt, 1));
    std::stringstream csv;
    write_csv(csv, rows);
    if (read_csv(csv) != rows) failures.push_back("csv");

    Matrix small(3, 3);
    small(0, 0) = 5;
    small(0, 2) = Complex(0, -9.99);
    small(2, 2) = -3;
    const auto trivial = choose_parameters(validate_triangular(small));
    if (trivial.alpha != 1.0 || trivial.m != 1 || !trivial.is_trivial()) failures.push_back("alpha < 10");
    const auto eq3 = choose_parameters(gen_reference_matrix("eq3"));
    if (eq3.m != 2) failures.push_back("m clamp");
    for (int k = 1; k <= 20; ++k) {
        Matrix m(8, 8);
        m(0, 7) = std::pow(10.0, k);
        const auto plan = choose_parameters(validate_triangular(m));
        double power = 1.0;
        for (std::size_t r = 0; r < plan.m; ++r) power *= plan.alpha;
        if (plan.alpha > 1.0 && power > kMaxScalingPower) failures.push_back("alpha^m bound");
        if (plan.m > 8) failures.push_back("m > n");
    }
    std::string detail = failures.empty() ? "matrix files, CSV and plan cases all exact" : "failed:";
    for (const auto& f : failures) detail += " " + f;
    return {failures.empty(), detail};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
        double limit_s;
    };
    const Criterion criteria[] = {
        {"norm reduction and gap identity", norm_reduction, 10.0},
        {"2x2 exponential squarings", eq3_exponential, 1.0},
        {"4x4 logarithm square roots", eq4_logarithm, 1.0},
        {"exact logarithm of T1", exp1_t1_logarithm, 1.0},
        {"Toeplitz square-root counts", toeplitz_counts, 60.0},
        {"derivative scaling identity and norm bound", derivative_scaling, 120.0},
        {"Kronecker form structure", kronecker_structure, 120.0},
        {"Frechet derivative evaluators agree", frechet_triangle, 30.0},
        {"error magnification is exact", error_model, 10.0},
        {"kernels agree with Parlett oracle", kernel_oracles, 60.0},
        {"round trips and plan rules", round_trips_and_plans, 10.0},
    };
    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = s < c.limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failed;
        std::printf("%s  %2d  %-44s %s [%.2f s / %.0f s]\n", pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                    s, c.limit_s);
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
