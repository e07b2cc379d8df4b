#pragma once

#include <cstdint>

#include "triad/io.hpp"

namespace triad::cli {

/// Invariant sweeps over seeded inputs. Returns
/// {"passed": bool, "suites": [{"name", "cases", "worst", "limit", "passed"}]}.
Json run_selftest(bool quick, std::uint64_t seed, const Tolerances& tol);

}  // namespace triad::cli
