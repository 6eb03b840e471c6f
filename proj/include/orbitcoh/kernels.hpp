#pragma once

// Enumeration of W / W_P through the orbit of a dominant weight whose
// stabilizer is exactly W_P. Two implementations with identical results:
// a serial reference used by the tests, and an OpenMP level-synchronous
// kernel used by the library.

#include <cstdint>
#include <vector>

#include "orbitcoh/rootsys.hpp"

namespace orbitcoh::kernels {

/// Orbits larger than this are refused with Unsupported.
inline constexpr std::uint64_t kMaxOrbitSize = 60'000'000;

/// Histogram of minimal coset representative lengths. Lengths are counted
/// as inversions: positive roots with negative pairing against the orbit
/// point.
std::vector<std::uint64_t> coset_length_histogram_serial(const RootSystem& system, NodeSet crossed);

std::vector<std::uint64_t> coset_length_histogram_omp(const RootSystem& system, NodeSet crossed);

/// Number of OpenMP threads the kernel will use (1 without OpenMP).
int max_threads();

}  // namespace orbitcoh::kernels
