#pragma once

#include <cstdint>
#include <string>

namespace otcli {

/// Fixed suite of small instances drawn from `seed`. Returns CSV with columns
/// case,n,parameter,iterations,converged. Only iteration counts are reported,
/// so the output is reproducible byte for byte.
std::string bench_suite_csv(std::uint64_t seed);

}  // namespace otcli
