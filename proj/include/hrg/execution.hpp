#pragma once

namespace hrg {

// Kernels with an OpenMP path keep a serial reference for testing.
enum class Execution { Serial, Parallel };

}  // namespace hrg
