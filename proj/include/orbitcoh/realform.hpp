#pragma once

// Real forms as Satake diagrams, and the induced conjugation on the root
// lattice.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitcoh/rootsys.hpp"

namespace orbitcoh {

struct SatakeDiagram {
  DynkinDiagram base;
  /// Compact (black) nodes.
  NodeSet black;
  /// Involutive pairing on white nodes; stored in both directions.
  std::map<std::size_t, std::size_t> arrows;
  /// Catalog name, empty for user-supplied diagrams.
  std::string name;
  /// Rank of the sigma-fixed sublattice (the real rank) recorded by the
  /// catalog and checked after construction.
  std::optional<int> expected_fixed_rank;
};

/// Catalog of real forms: "split", "compact", "su" (params p, q) and
/// "sl_R" (param n). Throws InvalidInput on inconsistent parameters.
SatakeDiagram named_form(const DynkinDiagram& base, std::string_view family, const std::vector<int>& params);

/// Every catalog entry that applies to `base`, in catalog order: split,
/// compact, then sl(n,R) and su(p,q) with p <= q for connected type A.
std::vector<SatakeDiagram> catalog_forms(const DynkinDiagram& base);

/// Checks the arrows form an involution on white nodes that is a diagram
/// automorphism when extended to black nodes by the opposition involution of
/// the black subdiagram.
void validate_satake(const SatakeDiagram& satake);

/// Action of sigma on the root lattice; column j is sigma(alpha_j) in
/// simple-root coordinates.
class RootInvolution {
 public:
  RootInvolution() = default;
  explicit RootInvolution(IntMatrix columns) : columns_(std::move(columns)) {}

  static RootInvolution identity(std::size_t rank);
  static RootInvolution negative_identity(std::size_t rank);

  std::size_t rank() const { return columns_.size(); }
  const IntMatrix& columns() const { return columns_; }
  /// Row-major view, entry (i, j) = coefficient of alpha_i in sigma(alpha_j).
  IntMatrix matrix() const;

  IntVec apply(const IntVec& root_coords) const;

  bool operator==(const RootInvolution&) const = default;

 private:
  IntMatrix columns_;
};

struct ValidationReport {
  bool ok = true;
  std::string failure;  // first counterexample when !ok
};

ValidationReport validate_involution(const RootInvolution& inv, const RootSystem& system);

/// Rank of ker(sigma - 1) over the rationals.
int fixed_sublattice_rank(const RootInvolution& inv);

/// sigma = (arrows, extended by the black opposition involution) o (longest element of the black Weyl
/// subgroup); the all-black arrow-free diagram gives sigma = -1. The result is
/// validated; on failure throws InvalidInput asking for a direct sigma matrix.
RootInvolution sigma_from_satake(const SatakeDiagram& satake, const RootSystem& system);

}  // namespace orbitcoh
