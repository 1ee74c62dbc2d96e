#pragma once

namespace lthill {

// Execution policy for the data-parallel kernels. Every kernel has a plain
// serial driver and an OpenMP driver over the same per-item code; outputs are
// written by index and reduced serially, so both produce bit-identical
// results.
enum class Exec {
    Serial,
    Parallel,
};

}  // namespace lthill
