#pragma once

// Finite root systems and Weyl groups with exact integer arithmetic.
//
// Conventions:
//  - roots and root-lattice vectors are stored in simple-root coordinates;
//  - weights are stored in fundamental-weight coordinates;
//  - cartan(i, j) = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i),
//    so alpha_j = sum_i cartan(i, j) omega_i and s_i(alpha_j) = alpha_j - cartan(i, j) alpha_i;
//  - the invariant form is scaled so short roots have (alpha, alpha) = 2 in
//    every component.

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace orbitcoh {

inline constexpr std::size_t kMaxRank = 8;

using IntVec = std::vector<int>;
using IntMatrix = std::vector<IntVec>;

/// A set of simple nodes, addressed by index.
using NodeSet = std::bitset<kMaxRank>;

/// Edge between two simple nodes. For multiplicity 2 or 3 the arrow points
/// from the long root `from` to the short root `to`.
struct DynkinEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  int multiplicity = 1;

  bool operator==(const DynkinEdge&) const = default;
};

class DynkinDiagram {
 public:
  DynkinDiagram() = default;

  /// Checks labels are unique and edges are well formed. Finite type is
  /// checked when a RootSystem is built.
  DynkinDiagram(std::vector<std::string> nodes, std::vector<DynkinEdge> edges);

  /// Parses "A3", "G2", "E6", "A1xA1", "B2xA1", ... with Bourbaki numbering.
  /// Nodes are labelled "1".."n" across all factors.
  static DynkinDiagram from_type(std::string_view type);

  std::size_t rank() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<DynkinEdge>& edges() const { return edges_; }

  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Integer Cartan matrix induced by the edges.
  IntMatrix cartan_matrix() const;

  /// Connected components, each sorted by node index; components are
  /// ordered by their smallest node.
  std::vector<std::vector<std::size_t>> components() const;

  /// Induced subdiagram on `keep` (in the given order), labels preserved.
  DynkinDiagram subdiagram(std::span<const std::size_t> keep) const;

  bool operator==(const DynkinDiagram&) const = default;

 private:
  std::vector<std::string> nodes_;
  std::vector<DynkinEdge> edges_;
};

/// Cartan type of one connected component.
struct ComponentType {
  char letter = 'A';
  std::size_t rank = 0;
  std::vector<std::size_t> nodes;

  std::string name() const { return std::string(1, letter) + std::to_string(rank); }
};

class RootSystem {
 public:
  /// Empty system (rank 0), the root system of a point.
  RootSystem();

  /// Builds the full positive root set. Throws InvalidInput when the diagram
  /// is not of finite type or exceeds kMaxRank.
  explicit RootSystem(DynkinDiagram diagram);

  std::size_t rank() const { return diagram_.rank(); }
  const DynkinDiagram& diagram() const { return diagram_; }
  const IntMatrix& cartan_matrix() const { return cartan_; }
  int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }

  /// (alpha_i, alpha_j) for simple roots.
  const IntMatrix& symmetric_form() const { return form_; }

  /// (alpha_i, alpha_i) / 2 for each simple root.
  const IntVec& half_norms() const { return half_norms_; }

  /// Ordered by height, then lexicographically (ascending).
  const std::vector<IntVec>& positive_roots() const { return positive_; }

  const std::vector<ComponentType>& component_types() const { return types_; }

  /// Index into positive_roots() of +root or -root.
  std::optional<std::size_t> positive_index(const IntVec& v) const;
  bool is_root(const IntVec& v) const;
  bool is_positive_root(const IntVec& v) const;

  /// Invariant form on root-lattice vectors.
  int form(const IntVec& u, const IntVec& v) const;

  /// Root coordinates to fundamental-weight coordinates.
  IntVec to_weight_coords(const IntVec& root_coords) const;

  /// Half the sum of positive roots, in fundamental-weight coordinates.
  IntVec rho() const { return IntVec(rank(), 1); }

 private:
  DynkinDiagram diagram_;
  IntMatrix cartan_;
  IntMatrix form_;
  IntVec half_norms_;
  std::vector<IntVec> positive_;
  std::vector<ComponentType> types_;
  std::unordered_map<std::string, std::size_t> index_;
};

RootSystem build_root_system(const DynkinDiagram& diagram);

/// s_root(v) = v - <v, root^vee> root, in simple-root coordinates.
IntVec reflect(const RootSystem& system, const IntVec& root, const IntVec& v);

/// Simple reflection on a weight in fundamental-weight coordinates.
void reflect_weight(const RootSystem& system, std::size_t i, IntVec& weight);

/// Simple reflection on a root-lattice vector in simple-root coordinates.
void reflect_root(const RootSystem& system, std::size_t i, IntVec& root_coords);

/// A Weyl group element as a product of simple reflections. The element
/// acts as s_{w[0]} s_{w[1]} ... so the last letter is applied first.
struct WeylWord {
  std::vector<std::size_t> letters;
};

/// Applies `word` to a weight given in fundamental-weight coordinates.
IntVec apply_word(const RootSystem& system, const WeylWord& word, IntVec weight);

/// Reduced length of the element, computed by counting the positive roots
/// made negative (inversions) rather than by reducing the word.
int word_length(const RootSystem& system, const WeylWord& word);

struct DominantResult {
  IntVec dominant;
  int length = 0;
  bool singular = false;
  /// Minimal element w with w(v) = dominant.
  WeylWord word;
};

/// Moves `weight` to the dominant chamber, always reflecting in the smallest
/// simple index with a negative coordinate.
DominantResult to_dominant(const RootSystem& system, IntVec weight);

/// Order of the Weyl group, as the product of per-component classical orders.
std::uint64_t weyl_group_order(const RootSystem& system);

/// Number of positive roots alpha with <weight, alpha^vee> < 0.
int count_negative_pairings(const RootSystem& system, const IntVec& weight);

/// Sum of simple-root coordinates.
int height(const IntVec& root_coords);

/// "a1+2a2", "-(a1+a2)", "0".
std::string format_root(const IntVec& root_coords);

}  // namespace orbitcoh
