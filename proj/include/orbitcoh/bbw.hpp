#pragma once

// Cohomology of a compact flag manifold F = G_F / P: Hodge numbers from
// minimal coset representatives, Bott-Borel-Weil for line bundles, and the
// Weyl dimension formula.

#include <cstdint>
#include <optional>
#include <vector>

#include "orbitcoh/rootsys.hpp"

namespace orbitcoh {

/// F as a crossed diagram. Uncrossed nodes generate the Levi of the fiber
/// parabolic. The empty diagram describes a point.
struct FlagDescriptor {
  DynkinDiagram diagram;
  NodeSet crossed;

  bool operator==(const FlagDescriptor&) const = default;
};

/// Complex dimension: positive roots of the diagram not in the Levi.
int flag_dimension(const FlagDescriptor& flag);

/// Entry l counts minimal coset representatives of W / W_P of length l.
/// Uses the OpenMP kernel; see kernels.hpp for the serial reference.
std::vector<std::uint64_t> minimal_coset_lengths(const FlagDescriptor& flag);

/// h^{p,q}(F): zero off the diagonal, coset count of length p on it.
std::uint64_t hodge_number(const FlagDescriptor& flag, int p, int q);

struct BBWDegree {
  std::uint64_t dimension = 0;
  std::optional<IntVec> highest_weight;
};

struct BBWResult {
  /// Index q = 0 .. dim F.
  std::vector<BBWDegree> by_degree;
};

/// Cohomology of the line bundle with weight `lambda` (fiber
/// fundamental-weight coordinates). `lambda` must be non-negative on
/// uncrossed nodes; throws InvalidInput otherwise.
BBWResult bbw_line_bundle(const FlagDescriptor& flag, const IntVec& lambda);

/// Weyl dimension formula in exact arithmetic. Throws InvalidInput for
/// non-dominant weights and Unsupported when the result exceeds 64 bits.
std::uint64_t weyl_dimension(const RootSystem& system, const IntVec& lambda);

}  // namespace orbitcoh
