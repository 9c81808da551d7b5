#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "triscale/kernel.hpp"
#include "triscale/kernels.hpp"
#include "triscale/upper_triangular.hpp"

namespace triscale {

enum class FunctionKind { exp, log, acos };
enum class ExperimentId { exp1_log, exp2_toeplitz, exp3_exp, exp4_acos, custom };

FunctionKind parse_function(std::string_view name);
std::string_view to_string(FunctionKind f);
ExperimentId parse_experiment(std::string_view name);
std::string_view to_string(ExperimentId e);
/// Function evaluated by an experiment (custom has none and throws).
FunctionKind experiment_function(ExperimentId e);

Kernel make_kernel(FunctionKind f, std::optional<double> theta = std::nullopt);
ScalarFunction scalar_function(FunctionKind f);

/// MATLAB-style start:step:stop, inclusive.
struct SizeRange {
    std::size_t start = 0;
    std::size_t step = 1;
    std::size_t stop = 0;

    std::vector<std::size_t> values() const;
};
SizeRange parse_size_range(std::string_view text);

struct ExperimentInput {
    std::string id;
    UpperTriangular matrix;
    /// Known f(T) for the row's function, when a closed form exists.
    std::optional<UpperTriangular> exact;
};

/// One CSV row. Missing counts or errors (failed runs, no oracle) are
/// written as "n/a".
struct ExperimentRecord {
    std::string matrix_id;
    std::size_t n = 0;
    double ratio = 0.0;
    double alpha = 1.0;
    std::size_t m = 1;
    std::optional<int> s_direct;
    std::optional<int> s_scaled;
    std::optional<double> err_direct;
    std::optional<double> err_scaled;
    /// exact | parlett | cross | cross-flagged | none, followed by
    /// "|direct-failed(<reason>)" / "|scaled-failed(<reason>)" for failed runs.
    std::string oracle;
    double runtime_direct_ms = 0.0;
    double runtime_scaled_ms = 0.0;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "matrix_id,n,ratio,alpha,m,s_direct,s_scaled,err_direct,err_scaled,oracle,runtime_direct_ms,runtime_scaled_ms";

struct RunOptions {
    /// Scaled/direct disagreement above this is flagged when the rows are
    /// compared against each other.
    double cross_tolerance = 1e-6;
    std::optional<double> theta;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

/// f(T) for 2x2 T from the divided difference (or f' when the eigenvalues
/// coincide).
UpperTriangular closed_form_2x2(const UpperTriangular& t, FunctionKind f);

/// True when the Parlett recurrence is a trustworthy oracle for `t`: the
/// spectrum is separated and the estimated amplification
/// (1 + max|t_ij| / min gap)^{n-1} stays below 1e8.
bool parlett_oracle_usable(const UpperTriangular& t);

/// Inputs for the built-in experiments. `sizes` overrides the default order
/// list where the experiment has one (random matrices, Toeplitz orders).
std::vector<ExperimentInput> default_inputs(ExperimentId which, const std::optional<SizeRange>& sizes,
                                            std::uint64_t seed);

/// Runs f directly and through scaled_compute with the automatic plan for
/// every input. Rows run concurrently; the output order follows the input.
std::vector<ExperimentRecord> run_experiment(FunctionKind f, std::span<const ExperimentInput> inputs,
                                             const RunOptions& options = {});

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> read_csv(std::istream& in);
void write_csv(const std::filesystem::path& path, std::span<const ExperimentRecord> records);

/// Fixed-width table for terminals.
std::string summary_table(std::span<const ExperimentRecord> records);

}  // namespace triscale
