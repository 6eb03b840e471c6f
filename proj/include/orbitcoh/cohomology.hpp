#pragma once

// Cohomology tables for the minimal orbit M and its dual open orbit X of a
// Levi-flat (or totally real) configuration.
//
// Over the Stein base the Dolbeault (resp. tangential CR) cohomology is the
// space of global sections of a homogeneous bundle whose fiber is the
// cohomology of F, so each entry is reported as the rank of that bundle plus
// a descriptor of the section space. No numeric "dimension" is ever given
// for these infinite-dimensional spaces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitcoh/parabolic.hpp"

namespace orbitcoh {

enum class TableMode {
  /// E^p|_F read as Omega^p_F (x) E|_F; zero off the diagonal for trivial E.
  fiber,
  /// Associated graded of the conormal filtration of Omega^p_X|_F; adds the
  /// horizontal forms pulled back from the base.
  graded,
};

const char* to_string(TableMode mode);
std::optional<TableMode> table_mode_from_string(std::string_view s);

struct BundleSpec {
  enum class Kind { trivial, line, fiber_table };
  Kind kind = Kind::trivial;
  /// Line bundle weight in the fiber's fundamental-weight coordinates.
  IntVec weight;
  /// User-supplied dim H^{0,q}(F, E^p|_F), indexed [p][q].
  std::vector<std::vector<std::uint64_t>> fiber_table;

  static BundleSpec trivial() { return {}; }
  static BundleSpec line(IntVec w) { return {Kind::line, std::move(w), {}}; }
  static BundleSpec table(std::vector<std::vector<std::uint64_t>> t) { return {Kind::fiber_table, {}, std::move(t)}; }

  bool operator==(const BundleSpec&) const = default;
};

/// Rank of the bundle H^{0,q}(F, E^p|_F) over the Stein base. Throws
/// Unsupported for line bundles with p > 0.
std::uint64_t bundle_rank(const FibrationData& fib, int p, int q, const BundleSpec& bundle, TableMode mode);

enum class OrbitSide { minimal, open };

struct BundleRankEntry {
  int p = 0;
  int q = 0;
  std::uint64_t rank = 0;
  std::string structure;

  bool operator==(const BundleRankEntry&) const = default;
};

struct CohomologyTable {
  OrbitSide side = OrbitSide::minimal;
  TableMode mode = TableMode::fiber;
  int p_max = 0;
  int q_max = 0;
  /// Row-major: entries[p * (q_max + 1) + q].
  std::vector<BundleRankEntry> entries;
  std::vector<std::string> annotations;

  const BundleRankEntry& at(int p, int q) const;

  bool operator==(const CohomologyTable&) const = default;
};

/// H^{p,q}(M, E|_M) for 0 <= p <= p_max, 0 <= q <= q_max.
CohomologyTable minimal_orbit_table(const FibrationData& fib, const BundleSpec& bundle, int p_max, int q_max,
                                    TableMode mode);

/// H^{p,q}(X, E) for 0 <= p <= p_max, 0 <= q <= q_max.
CohomologyTable open_orbit_table(const FibrationData& fib, const BundleSpec& bundle, int p_max, int q_max,
                                 TableMode mode);

struct RestrictionReport {
  bool ranks_agree = true;
  int base_dim = 0;
  /// "dim_R M' = dim_C X' = n".
  std::string dimension_identity;
  /// Tensor-product identity for every nonzero entry.
  std::vector<std::string> identities;
  std::vector<std::string> annotations;

  bool operator==(const RestrictionReport&) const = default;
};

/// Compares the two tables entry by entry and renders the restriction
/// statement. Throws InvalidInput when the tables were computed with
/// different parameters.
RestrictionReport restriction_report(const CohomologyTable& minimal, const CohomologyTable& open,
                                     const FibrationData& fib);

/// Binomial coefficient; zero outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

}  // namespace orbitcoh
