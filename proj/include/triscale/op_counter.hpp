#pragma once

#include <cstdint>

// Scalar-operation counter used to check the cost of the scaling routines.
// Compiled in only when TRISCALE_COUNT_OPS is defined (the instrumented
// library target); otherwise every call folds away.
namespace triscale::instrument {

#ifdef TRISCALE_COUNT_OPS
inline thread_local std::uint64_t scalar_ops = 0;
inline void count(std::uint64_t k) noexcept { scalar_ops += k; }
inline void reset() noexcept { scalar_ops = 0; }
inline std::uint64_t total() noexcept { return scalar_ops; }
inline constexpr bool enabled = true;
#else
inline void count(std::uint64_t) noexcept {}
inline void reset() noexcept {}
inline std::uint64_t total() noexcept { return 0; }
inline constexpr bool enabled = false;
#endif

}  // namespace triscale::instrument
