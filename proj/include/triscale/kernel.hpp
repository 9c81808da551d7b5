#pragma once

#include <functional>

#include "triscale/upper_triangular.hpp"

namespace triscale {

/// A computed f(T) plus the diagnostics the experiments report.
struct FunmReport {
    UpperTriangular value;
    /// Squarings (exp) or square roots (log, acos); 0 when not applicable.
    int count_s = 0;
    int pade_degree = 0;
    double alpha_used = 1.0;
    std::size_t m_used = 1;
    /// ||N||_F / ||D||_F of the input.
    double input_ratio = 0.0;
};

enum class KernelMode { classical };

/// Convergence controls shared by the kernels. `theta` is the norm threshold
/// (1.0 for the exponential, 0.25 for the logarithm) and `max_steps` caps the
/// number of squarings or square roots.
struct KernelOptions {
    KernelMode mode = KernelMode::classical;
    double theta = 0.25;
    int max_steps = 60;

    static KernelOptions for_exp() { return {KernelMode::classical, 1.0, 1100}; }
    static KernelOptions for_log() { return {KernelMode::classical, 0.25, 60}; }

    /// Throws InputError unless 0 < theta <= 1 and max_steps >= 1.
    void validate() const;
};

/// Anything that maps a triangular matrix to a FunmReport: the built-in
/// kernels or a user-supplied one honouring the same contract.
using Kernel = std::function<FunmReport(const UpperTriangular&)>;

}  // namespace triscale
