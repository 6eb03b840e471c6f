#pragma once

// Standard parabolic subalgebras as crossed diagrams, classification of the
// minimal orbit M(g0, q), and the fundamental reduction q -> q' = q + conj(q).

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "orbitcoh/bbw.hpp"
#include "orbitcoh/realform.hpp"
#include "orbitcoh/rootsys.hpp"

namespace orbitcoh {

struct CrossedDiagram {
  std::shared_ptr<const RootSystem> system;
  NodeSet crossed;

  CrossedDiagram(std::shared_ptr<const RootSystem> sys, NodeSet crossed_nodes);
  std::vector<std::size_t> uncrossed() const;
};

/// Roots of a subalgebra, kept in lexicographic order of coordinates.
struct ParabolicRootSet {
  std::set<IntVec> roots;

  bool operator==(const ParabolicRootSet&) const = default;
};

enum class OrbitKind { totally_real, levi_flat, generic };

const char* to_string(OrbitKind kind);
std::optional<OrbitKind> orbit_kind_from_string(std::string_view s);

struct OrbitClassification {
  OrbitKind kind = OrbitKind::generic;
  /// For generic orbits: the lexicographically first pair of roots of
  /// R(q) u R(conj q) whose sum is a root outside the union.
  std::optional<std::pair<IntVec, IntVec>> witness;

  bool operator==(const OrbitClassification&) const = default;
};

struct FibrationData {
  NodeSet q_prime_crossed;
  /// Complex dimension of the Stein base X' (= real dimension of M').
  int base_dim = 0;
  /// F: components of Levi(q') that meet a crossed node of q, crossed where
  /// q is crossed. Components inside q contribute a point and are omitted.
  FlagDescriptor fiber;
  /// Indices in g of the fiber diagram's nodes.
  std::vector<std::size_t> fiber_nodes;
  int fiber_dim = 0;
  bool totally_real = false;
  /// Notes about the fiber (e.g. components that contribute a point).
  std::vector<std::string> notes;

  bool operator==(const FibrationData&) const = default;
};

/// Positive roots plus negative roots supported on uncrossed nodes.
ParabolicRootSet root_set_of(const CrossedDiagram& q);

/// First pair (lexicographic) violating closure under root addition.
std::optional<std::pair<IntVec, IntVec>> closure_violation(const RootSystem& system, const ParabolicRootSet& set);

/// Image of every root under sigma. Throws InvariantFailure if the image is
/// not closed, which signals an invalid sigma.
ParabolicRootSet conjugate_root_set(const RootSystem& system, const ParabolicRootSet& q, const RootInvolution& sigma);

OrbitClassification classify_orbit(const CrossedDiagram& q, const RootInvolution& sigma);

/// Levi foliation M -> M', X -> X'. Throws Unsupported for generic orbits.
FibrationData fundamental_reduction(const CrossedDiagram& q, const RootInvolution& sigma);

/// One warning per connected component of g without a crossed node.
std::vector<std::string> effectiveness_check(const CrossedDiagram& q);

/// Number of positive roots supported on the given nodes.
int levi_positive_roots(const RootSystem& system, const NodeSet& nodes);

}  // namespace orbitcoh
