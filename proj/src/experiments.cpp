#include "triscale/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "triscale/error.hpp"
#include "triscale/generators.hpp"
#include "triscale/scaling.hpp"

namespace triscale {

FunctionKind parse_function(std::string_view name) {
    if (name == "exp") return FunctionKind::exp;
    if (name == "log") return FunctionKind::log;
    if (name == "acos") return FunctionKind::acos;
    throw InputError("unknown function '" + std::string(name) + "' (expected exp, log or acos)");
}

std::string_view to_string(FunctionKind f) {
    switch (f) {
        case FunctionKind::exp: return "exp";
        case FunctionKind::log: return "log";
        case FunctionKind::acos: return "acos";
    }
    return "?";
}

ExperimentId parse_experiment(std::string_view name) {
    if (name == "exp1-log") return ExperimentId::exp1_log;
    if (name == "exp2-toeplitz") return ExperimentId::exp2_toeplitz;
    if (name == "exp3-exp") return ExperimentId::exp3_exp;
    if (name == "exp4-acos") return ExperimentId::exp4_acos;
    if (name == "custom") return ExperimentId::custom;
    throw InputError("unknown experiment '" + std::string(name) + "'");
}

std::string_view to_string(ExperimentId e) {
    switch (e) {
        case ExperimentId::exp1_log: return "exp1-log";
        case ExperimentId::exp2_toeplitz: return "exp2-toeplitz";
        case ExperimentId::exp3_exp: return "exp3-exp";
        case ExperimentId::exp4_acos: return "exp4-acos";
        case ExperimentId::custom: return "custom";
    }
    return "?";
}

FunctionKind experiment_function(ExperimentId e) {
    switch (e) {
        case ExperimentId::exp1_log:
        case ExperimentId::exp2_toeplitz: return FunctionKind::log;
        case ExperimentId::exp3_exp: return FunctionKind::exp;
        case ExperimentId::exp4_acos: return FunctionKind::acos;
        case ExperimentId::custom: break;
    }
    throw InputError("the custom experiment has no fixed function");
}

Kernel make_kernel(FunctionKind f, std::optional<double> theta) {
    switch (f) {
        case FunctionKind::exp: {
            auto opts = KernelOptions::for_exp();
            if (theta) opts.theta = *theta;
            opts.validate();
            return exp_kernel(opts);
        }
        case FunctionKind::log: {
            auto opts = KernelOptions::for_log();
            if (theta) opts.theta = *theta;
            opts.validate();
            return log_kernel(opts);
        }
        case FunctionKind::acos: {
            auto opts = KernelOptions::for_log();
            if (theta) opts.theta = *theta;
            opts.validate();
            return acos_kernel(opts);
        }
    }
    throw InputError("unknown function");
}

ScalarFunction scalar_function(FunctionKind f) {
    switch (f) {
        case FunctionKind::exp: return [](Complex z) { return std::exp(z); };
        case FunctionKind::log: return [](Complex z) { return std::log(z); };
        case FunctionKind::acos: return [](Complex z) { return std::acos(z); };
    }
    throw InputError("unknown function");
}

namespace {

Complex derivative(FunctionKind f, Complex z) {
    switch (f) {
        case FunctionKind::exp: return std::exp(z);
        case FunctionKind::log: return 1.0 / z;
        case FunctionKind::acos: return -1.0 / std::sqrt(1.0 - z * z);
    }
    return {};
}

std::size_t parse_size(std::string_view s, std::string_view whole) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw InputError("malformed size range '" + std::string(whole) + "' (expected start:step:stop)");
    return v;
}

}  // namespace

std::vector<std::size_t> SizeRange::values() const {
    std::vector<std::size_t> out;
    for (std::size_t v = start; v <= stop; v += step) out.push_back(v);
    return out;
}

SizeRange parse_size_range(std::string_view text) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    SizeRange r;
    if (first == std::string_view::npos) {
        r.start = r.stop = parse_size(text, text);
    } else if (second == std::string_view::npos) {
        r.start = parse_size(text.substr(0, first), text);
        r.stop = parse_size(text.substr(first + 1), text);
    } else {
        r.start = parse_size(text.substr(0, first), text);
        r.step = parse_size(text.substr(first + 1, second - first - 1), text);
        r.stop = parse_size(text.substr(second + 1), text);
    }
    if (r.start == 0 || r.step == 0 || r.stop < r.start)
        throw InputError("size range '" + std::string(text) + "' must satisfy 1 <= start <= stop, step >= 1");
    return r;
}

UpperTriangular closed_form_2x2(const UpperTriangular& t, FunctionKind f) {
    if (t.order() != 2) throw InputError("closed form needs a 2x2 matrix");
    const ScalarFunction g = scalar_function(f);
    const Complex a = t(0, 0);
    const Complex b = t(1, 1);
    Matrix out(2, 2);
    out(0, 0) = g(a);
    out(1, 1) = g(b);
    out(0, 1) = a == b ? t(0, 1) * derivative(f, a) : t(0, 1) * (out(0, 0) - out(1, 1)) / (a - b);
    return UpperTriangular::from_upper(std::move(out));
}

bool parlett_oracle_usable(const UpperTriangular& t) {
    const std::size_t n = t.order();
    if (n == 1) return true;
    double largest_diag = 0.0;
    double largest_off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        largest_diag = std::max(largest_diag, std::abs(t(i, i)));
        for (std::size_t j = i + 1; j < n; ++j) largest_off = std::max(largest_off, std::abs(t(i, j)));
    }
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) gap = std::min(gap, std::abs(t(i, i) - t(j, j)));
    if (!(gap >= 1e-8 * largest_diag) || gap == 0.0) return false;
    const double growth = static_cast<double>(n - 1) * std::log10(1.0 + largest_off / gap);
    return growth <= 8.0;
}

std::vector<ExperimentInput> default_inputs(ExperimentId which, const std::optional<SizeRange>& sizes,
                                            std::uint64_t seed) {
    std::vector<ExperimentInput> out;
    auto random_smalldiag = [&](const SizeRange& fallback) {
        const auto orders = (sizes ? *sizes : fallback).values();
        for (std::size_t k = 0; k < orders.size(); ++k) {
            const std::size_t n = orders[k];
            out.push_back({"smalldiag_n" + std::to_string(n),
                           gen_random_smalldiag(n, seed + k, 1.0, 20.0), std::nullopt});
        }
    };
    const SizeRange exp1_sizes{8, 1, 12};

    switch (which) {
        case ExperimentId::exp1_log: {
            Matrix exact(2, 2);
            exact(0, 0) = 0.1;
            exact(0, 1) = 1e6;
            exact(1, 1) = 0.1;
            out.push_back({"exp1_t1", gen_reference_matrix("exp1_t1"), UpperTriangular::from_upper(std::move(exact))});
            out.push_back({"eq4", gen_reference_matrix("eq4"), std::nullopt});
            random_smalldiag(exp1_sizes);
            break;
        }
        case ExperimentId::exp3_exp: {
            const auto eq3 = gen_reference_matrix("eq3");
            const auto t1 = gen_reference_matrix("exp1_t1");
            out.push_back({"eq3", eq3, closed_form_2x2(eq3, FunctionKind::exp)});
            out.push_back({"exp1_t1", t1, closed_form_2x2(t1, FunctionKind::exp)});
            out.push_back({"eq4", gen_reference_matrix("eq4"), std::nullopt});
            random_smalldiag(exp1_sizes);
            break;
        }
        case ExperimentId::exp2_toeplitz: {
            for (std::size_t n : (sizes ? *sizes : SizeRange{82, 2, 100}).values())
                out.push_back({"toeplitz_n" + std::to_string(n), gen_toeplitz_geometric(n, 1.2), std::nullopt});
            break;
        }
        case ExperimentId::exp4_acos: {
            const auto orders = (sizes ? *sizes : SizeRange{32, 2, 50}).values();
            for (std::size_t k = 0; k < orders.size(); ++k) {
                const std::size_t n = orders[k];
                out.push_back({"coupled_n" + std::to_string(n),
                               gen_random_coupled(n, seed + k, Complex(0.4, 0.1), Complex(-0.3, -0.2), 0.15,
                                                  0.02, 50.0),
                               std::nullopt});
            }
            break;
        }
        case ExperimentId::custom:
            break;
    }
    return out;
}

namespace {

std::string short_reason(const std::exception& e) {
    std::string what = e.what();
    if (const auto colon = what.find(':'); colon != std::string::npos) what.resize(colon);
    std::replace(what.begin(), what.end(), ',', ';');
    std::replace(what.begin(), what.end(), '\n', ' ');
    return what;
}

template <typename F>
double time_ms(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

ExperimentRecord run_row(FunctionKind f, const Kernel& kernel, const ExperimentInput& input, const RunOptions& options) {
    const UpperTriangular& t = input.matrix;
    ExperimentRecord rec;
    rec.matrix_id = input.id;
    rec.n = t.order();
    rec.ratio = nilpotent_ratio(t);
    const ScalingPlan plan = choose_parameters(t);
    rec.alpha = plan.alpha;
    rec.m = plan.m;

    std::optional<UpperTriangular> direct;
    std::optional<UpperTriangular> scaled;
    std::string failures;
    rec.runtime_direct_ms = time_ms([&] {
        try {
            FunmReport r = kernel(t);
            rec.s_direct = r.count_s;
            direct = std::move(r.value);
        } catch (const Error& e) {
            failures += "|direct-failed(" + short_reason(e) + ")";
        }
    });
    rec.runtime_scaled_ms = time_ms([&] {
        try {
            FunmReport r = scaled_compute(t, kernel, plan);
            rec.s_scaled = r.count_s;
            scaled = std::move(r.value);
        } catch (const Error& e) {
            failures += "|scaled-failed(" + short_reason(e) + ")";
        }
    });

    std::optional<UpperTriangular> reference = input.exact;
    std::string rung = reference ? "exact" : "";
    if (!reference && parlett_oracle_usable(t)) {
        try {
            reference = funm_parlett(t, scalar_function(f));
            rung = "parlett";
        } catch (const Error&) {
            reference.reset();
        }
    }

    if (reference) {
        if (direct) rec.err_direct = relative_distance(direct->dense(), reference->dense(), reference->dense());
        if (scaled) rec.err_scaled = relative_distance(scaled->dense(), reference->dense(), reference->dense());
    } else if (direct && scaled) {
        // Direct result as the reference: |err_direct - err_scaled| is then
        // exactly the relative distance between the two runs.
        rec.err_direct = 0.0;
        rec.err_scaled = relative_distance(scaled->dense(), direct->dense(), direct->dense());
        rung = *rec.err_scaled <= options.cross_tolerance ? "cross" : "cross-flagged";
    } else {
        rung = "none";
    }
    rec.oracle = rung + failures;
    return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(FunctionKind f, std::span<const ExperimentInput> inputs,
                                             const RunOptions& options) {
    const Kernel kernel = make_kernel(f, options.theta);
    std::vector<ExperimentRecord> records(inputs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < inputs.size(); k = next++) records[k] = run_row(f, kernel, inputs[k], options);
    };
    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, std::max<std::size_t>(1, inputs.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
    }
    return records;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string fmt_optional(const std::optional<T>& v) {
    if (!v) return "n/a";
    if constexpr (std::is_same_v<T, double>) return fmt_double(*v);
    else return std::to_string(*v);
}

double parse_csv_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("malformed CSV number '" + s + "'");
    return v;
}

template <typename T>
T parse_csv_integer(const std::string& s) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw InputError("malformed CSV integer '" + s + "'");
    return v;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.matrix_id << ',' << r.n << ',' << fmt_double(r.ratio) << ',' << fmt_double(r.alpha) << ',' << r.m
            << ',' << fmt_optional(r.s_direct) << ',' << fmt_optional(r.s_scaled) << ','
            << fmt_optional(r.err_direct) << ',' << fmt_optional(r.err_scaled) << ',' << r.oracle << ','
            << fmt_double(r.runtime_direct_ms) << ',' << fmt_double(r.runtime_scaled_ms) << '\n';
    }
}

void write_csv(const std::filesystem::path& path, std::span<const ExperimentRecord> records) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    write_csv(out, records);
    if (!out) throw InputError("write failed: " + path.string());
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw InputError("CSV header does not match");
    std::vector<ExperimentRecord> out;
    std::size_t number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (f.size() != 12) throw InputError("CSV line " + std::to_string(number) + ": expected 12 fields");
        ExperimentRecord r;
        r.matrix_id = f[0];
        r.n = parse_csv_integer<std::size_t>(f[1]);
        r.ratio = parse_csv_double(f[2]);
        r.alpha = parse_csv_double(f[3]);
        r.m = parse_csv_integer<std::size_t>(f[4]);
        if (f[5] != "n/a") r.s_direct = parse_csv_integer<int>(f[5]);
        if (f[6] != "n/a") r.s_scaled = parse_csv_integer<int>(f[6]);
        if (f[7] != "n/a") r.err_direct = parse_csv_double(f[7]);
        if (f[8] != "n/a") r.err_scaled = parse_csv_double(f[8]);
        r.oracle = f[9];
        r.runtime_direct_ms = parse_csv_double(f[10]);
        r.runtime_scaled_ms = parse_csv_double(f[11]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_table(std::span<const ExperimentRecord> records) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %4s %10s %10s %3s %4s %4s %10s %10s  %s\n", "matrix", "n", "ratio",
                  "alpha", "m", "s", "s~", "e", "e~", "oracle");
    out << buf;
    auto count = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("n/a"); };
    auto err = [](const std::optional<double>& v) {
        if (!v) return std::string("n/a");
        char b[32];
        std::snprintf(b, sizeof b, "%.2e", *v);
        return std::string(b);
    };
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%-16s %4zu %10.3e %10.3e %3zu %4s %4s %10s %10s  %s\n", r.matrix_id.c_str(),
                      r.n, r.ratio, r.alpha, r.m, count(r.s_direct).c_str(), count(r.s_scaled).c_str(),
                      err(r.err_direct).c_str(), err(r.err_scaled).c_str(), r.oracle.c_str());
        out << buf;
    }
    return out.str();
}

}  // namespace triscale
