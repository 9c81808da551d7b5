// Command-line front end: similarity scaling, function evaluation,
// conditioning and structure reports, and the benchmark experiments.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "triscale/error.hpp"
#include "triscale/experiments.hpp"
#include "triscale/frechet.hpp"
#include "triscale/matrix_io.hpp"
#include "triscale/scaling.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitViolations = 3;

using namespace triscale;

int run_scale(const std::string& input, double alpha, std::optional<std::size_t> m, bool inverse,
              const std::string& output) {
    const UpperTriangular t = read_matrix(input);
    if (!(alpha > 0.0)) throw InputError("--alpha must be positive");
    const ScalingVector s = m ? block_scaling(t.order(), alpha, *m) : scalar_scaling(t.order(), alpha);
    write_matrix(apply_similarity(t, s, inverse ? Direction::inverse : Direction::forward), output);
    return kExitOk;
}

int run_plan(const std::string& input) {
    const UpperTriangular t = read_matrix(input);
    const ScalingPlan plan = choose_parameters(t);
    std::printf("n %zu\nalpha %.17g\nm %zu\nblocks", t.order(), plan.alpha, plan.m);
    for (std::size_t b : plan.block_sizes) std::printf(" %zu", b);
    std::printf("\nratio %.6e\n", nilpotent_ratio(t));
    return kExitOk;
}

void print_report(const char* label, const FunmReport& r, double ms) {
    std::printf("%-7s count_s %d  pade_degree %d  alpha %.6g  m %zu  ratio %.6e  time_ms %.3f\n", label, r.count_s,
                r.pade_degree, r.alpha_used, r.m_used, r.input_ratio, ms);
}

int run_fn(const std::string& fname, const std::string& input, const std::string& mode,
           std::optional<double> theta, const std::string& output) {
    const FunctionKind f = parse_function(fname);
    const UpperTriangular t = read_matrix(input);
    const Kernel kernel = make_kernel(f, theta);

    std::optional<FunmReport> direct;
    std::optional<FunmReport> scaled;
    auto timed = [](auto&& call, double& ms) {
        const auto start = std::chrono::steady_clock::now();
        auto r = call();
        ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return r;
    };
    double ms = 0.0;
    if (mode == "direct" || mode == "both") {
        direct = timed([&] { return kernel(t); }, ms);
        print_report("direct", *direct, ms);
    }
    if (mode == "scaled" || mode == "both") {
        scaled = timed([&] { return scaled_compute(t, kernel); }, ms);
        print_report("scaled", *scaled, ms);
    }
    if (direct && scaled) {
        std::printf("relative_distance %.6e\n",
                    relative_distance(scaled->value.dense(), direct->value.dense(), direct->value.dense()));
    }
    if (!output.empty()) write_matrix(scaled ? scaled->value : direct->value, output);
    return kExitOk;
}

int run_cond(const std::string& fname, const std::string& input) {
    const FunctionKind f = parse_function(fname);
    if (f == FunctionKind::acos) throw InputError("cond supports exp and log");
    const UpperTriangular t = read_matrix(input);
    const ConditionReport r = condition_numbers(make_kernel(f), t);
    std::printf("cond_abs %.6e\ncond_rel %.6e\nnorm_L %.6e\nnorm_f %.6e\nnorm_A %.6e\n", r.cond_abs, r.cond_rel,
                r.operator_norm_L, r.function_norm, r.input_norm);
    return kExitOk;
}

int run_verify(const std::string& fname, const std::string& input, double alpha) {
    const FunctionKind f = parse_function(fname);
    if (f == FunctionKind::acos) throw InputError("verify supports exp and log");
    if (!(alpha > 1.0)) throw InputError("--alpha must exceed 1");
    const UpperTriangular t = read_matrix(input);
    const StructureReport r = verify_scaling_structure(make_kernel(f), t, alpha);
    std::printf("order %zu  alpha %.6g  directions %zu\n", r.order, r.alpha, r.directions);
    std::printf("identity_residual     %.3e\n", r.max_identity_residual);
    std::printf("zero_block         %.3e\n", r.max_zero_block);
    std::printf("norm_excess        %.3e\n", r.max_norm_excess);
    std::printf("column_excess      %.3e\n", r.max_column_excess);
    std::printf("diagonal_mismatch  %.3e\n", r.max_diagonal_mismatch);
    std::printf("phase_error        %.3e\n", r.max_phase_error);
    std::printf("kronecker_norm     %.6e -> %.6e (%s)\n", r.kronecker_norm, r.kronecker_norm_scaled,
                r.kronecker_norm_reduced ? "reduced" : "not reduced");
    std::printf("cond_rel           %.6e -> %.6e (%s)\n", r.cond_rel, r.cond_rel_scaled,
                r.cond_rel_reduced ? "reduced" : "not reduced");
    for (const auto& v : r.violations)
        std::printf("violation %s at E_(%zu,%zu): %.3e > %.3e\n", v.check.c_str(), v.i + 1, v.j + 1, v.value,
                    v.limit);
    std::printf("%zu violation(s)\n", r.violations.size());
    return r.ok() ? kExitOk : kExitViolations;
}

int run_bench(const std::string& experiment, const std::string& sizes, std::uint64_t seed,
              const std::vector<std::string>& files, std::size_t threads, const std::string& out) {
    const ExperimentId id = parse_experiment(experiment);
    if (id == ExperimentId::custom) throw InputError("choose one of the built-in experiments");
    std::optional<SizeRange> range;
    if (!sizes.empty()) range = parse_size_range(sizes);
    std::vector<ExperimentInput> inputs = default_inputs(id, range, seed);
    for (const auto& file : files)
        inputs.push_back({std::filesystem::path(file).stem().string(), read_matrix(file), std::nullopt});

    RunOptions options;
    options.threads = threads;
    const auto records = run_experiment(experiment_function(id), inputs, options);
    write_csv(std::filesystem::path(out), records);
    std::cout << summary_table(records);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diagonal scaling for functions of upper triangular matrices"};
    app.require_subcommand(1);

    std::string input, output, fname, mode = "both", experiment, sizes, out;
    double alpha = 0.0;
    std::optional<std::size_t> m;
    std::optional<double> theta;
    bool inverse = false;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::vector<std::string> files;

    auto* scale = app.add_subcommand("scale", "Apply or undo T -> S T S^-1");
    scale->add_option("--input", input, "Matrix file")->required();
    scale->add_option("--alpha", alpha, "Scaling factor")->required();
    scale->add_option("--m", m, "Number of diagonal blocks");
    scale->add_flag("--inverse", inverse, "Apply S^-1 T S instead");
    scale->add_option("--output", output, "Result file")->required();

    auto* plan = app.add_subcommand("plan", "Print the automatic (alpha, m) choice");
    plan->add_option("--input", input, "Matrix file")->required();

    auto* fn = app.add_subcommand("fn", "Evaluate exp, log or acos");
    fn->add_option("function", fname, "exp | log | acos")->required()->check(CLI::IsMember({"exp", "log", "acos"}));
    fn->add_option("--input", input, "Matrix file")->required();
    fn->add_option("--mode", mode, "direct | scaled | both")->check(CLI::IsMember({"direct", "scaled", "both"}));
    fn->add_option("--theta", theta, "Kernel threshold");
    fn->add_option("--output", output, "Write f(T) here (scaled result when computed)");

    auto* cond = app.add_subcommand("cond", "Condition numbers from the Kronecker form (n <= 20)");
    cond->add_option("--fn", fname, "exp | log")->required()->check(CLI::IsMember({"exp", "log"}));
    cond->add_option("--input", input, "Matrix file")->required();

    auto* verify = app.add_subcommand("verify", "Compare Frechet derivatives at T and at the scaled T");
    verify->add_option("--fn", fname, "exp | log")->required()->check(CLI::IsMember({"exp", "log"}));
    verify->add_option("--input", input, "Matrix file")->required();
    verify->add_option("--alpha", alpha, "Scaling factor (> 1)")->required();

    auto* bench = app.add_subcommand("bench", "Run an experiment and write CSV");
    bench->add_option("--experiment", experiment, "exp1-log | exp2-toeplitz | exp3-exp | exp4-acos")
        ->required()
        ->check(CLI::IsMember({"exp1-log", "exp2-toeplitz", "exp3-exp", "exp4-acos"}));
    bench->add_option("--sizes", sizes, "Orders as start:step:stop");
    bench->add_option("--seed", seed, "Generator seed");
    bench->add_option("--input", files, "Extra matrix files (repeatable)");
    bench->add_option("--threads", threads, "Worker threads (0 = hardware)");
    bench->add_option("--out", out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*scale) return run_scale(input, alpha, m, inverse, output);
        if (*plan) return run_plan(input);
        if (*fn) return run_fn(fname, input, mode, theta, output);
        if (*cond) return run_cond(fname, input);
        if (*verify) return run_verify(fname, input, alpha);
        if (*bench) return run_bench(experiment, sizes, seed, files, threads, out);
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
