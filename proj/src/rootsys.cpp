#include "orbitcoh/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "orbitcoh/errors.hpp"

namespace orbitcoh {

namespace {

std::string vec_key(const IntVec& v) {
  std::string key;
  for (int c : v) {
    key += std::to_string(c);
    key += ',';
  }
  return key;
}

std::string join_labels(const DynkinDiagram& d, const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ",";
    out += d.nodes()[idx[k]];
  }
  return out + "}";
}

// Exact determinant by fraction-free (Bareiss) elimination.
long long bareiss_det(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  long long prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::uint64_t component_order(const ComponentType& t) {
  const std::size_t n = t.rank;
  switch (t.letter) {
    case 'A':
      return factorial(n + 1);
    case 'B':
    case 'C':
      return (std::uint64_t{1} << n) * factorial(n);
    case 'D':
      return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case 'E':
      return n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
    case 'F':
      return 1152;
    case 'G':
      return 12;
  }
  throw InvariantFailure("unknown component type");
}

}  // namespace

// ---------------------------------------------------------------------------
// DynkinDiagram

DynkinDiagram::DynkinDiagram(std::vector<std::string> nodes, std::vector<DynkinEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::set<std::string> seen;
  for (const auto& label : nodes_) {
    if (label.empty()) throw InvalidInput("diagram: empty node label");
    if (!seen.insert(label).second) throw InvalidInput("diagram: duplicate node label '" + label + "'");
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : edges_) {
    if (e.from >= nodes_.size() || e.to >= nodes_.size())
      throw InvalidInput("diagram: edge refers to a missing node");
    if (e.from == e.to) throw InvalidInput("diagram: self-loop on node '" + nodes_[e.from] + "'");
    if (e.multiplicity < 1 || e.multiplicity > 3)
      throw InvalidInput("diagram: bond multiplicity must be 1, 2 or 3");
    auto key = std::minmax(e.from, e.to);
    if (!pairs.insert({key.first, key.second}).second)
      throw InvalidInput("diagram: duplicate edge between '" + nodes_[e.from] + "' and '" + nodes_[e.to] + "'");
  }
}

DynkinDiagram DynkinDiagram::from_type(std::string_view type) {
  std::vector<std::string> factors;
  std::string cur;
  for (char c : type) {
    if (c == 'x' || c == 'X' || c == '+' || c == '*') {
      factors.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  factors.push_back(cur);

  std::vector<std::string> nodes;
  std::vector<DynkinEdge> edges;
  for (const auto& f : factors) {
    if (f.size() < 2 || !std::isalpha(static_cast<unsigned char>(f[0])))
      throw InvalidInput("diagram: cannot parse type '" + std::string(type) + "'");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(f[0])));
    int n = 0;
    for (std::size_t k = 1; k < f.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(f[k])))
        throw InvalidInput("diagram: cannot parse type '" + std::string(type) + "'");
      n = n * 10 + (f[k] - '0');
      if (n > 64) throw InvalidInput("diagram: rank too large in '" + f + "'");
    }
    const bool ok = (letter == 'A' && n >= 1) || (letter == 'B' && n >= 2) || (letter == 'C' && n >= 2) ||
                    (letter == 'D' && n >= 4) || (letter == 'E' && n >= 6 && n <= 8) ||
                    (letter == 'F' && n == 4) || (letter == 'G' && n == 2);
    if (!ok) throw InvalidInput("diagram: no finite type '" + f + "'");

    const std::size_t o = nodes.size();
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t k = 0; k < un; ++k) nodes.push_back(std::to_string(o + k + 1));
    auto add = [&](std::size_t a, std::size_t b, int m) { edges.push_back({o + a, o + b, m}); };
    switch (letter) {
      case 'A':
        for (std::size_t k = 0; k + 1 < un; ++k) add(k, k + 1, 1);
        break;
      case 'B':
        for (std::size_t k = 0; k + 2 < un; ++k) add(k, k + 1, 1);
        add(un - 2, un - 1, 2);
        break;
      case 'C':
        for (std::size_t k = 0; k + 2 < un; ++k) add(k, k + 1, 1);
        add(un - 1, un - 2, 2);
        break;
      case 'D':
        for (std::size_t k = 0; k + 2 < un; ++k) add(k, k + 1, 1);
        add(un - 3, un - 1, 1);
        break;
      case 'E':
        add(0, 2, 1);
        add(1, 3, 1);
        for (std::size_t k = 2; k + 1 < un; ++k) add(k, k + 1, 1);
        break;
      case 'F':
        add(0, 1, 1);
        add(1, 2, 2);
        add(2, 3, 1);
        break;
      case 'G':
        add(1, 0, 3);
        break;
    }
  }
  return DynkinDiagram(std::move(nodes), std::move(edges));
}

std::optional<std::size_t> DynkinDiagram::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == label) return i;
  return std::nullopt;
}

IntMatrix DynkinDiagram::cartan_matrix() const {
  IntMatrix a(rank(), IntVec(rank(), 0));
  for (std::size_t i = 0; i < rank(); ++i) a[i][i] = 2;
  for (const auto& e : edges_) {
    a[e.from][e.to] = -1;
    a[e.to][e.from] = -e.multiplicity;
  }
  return a;
}

std::vector<std::vector<std::size_t>> DynkinDiagram::components() const {
  std::vector<std::vector<std::size_t>> adj(rank());
  for (const auto& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(rank(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < rank(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> todo;
    todo.push(s);
    seen[s] = true;
    while (!todo.empty()) {
      auto v = todo.front();
      todo.pop();
      comp.push_back(v);
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          todo.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

DynkinDiagram DynkinDiagram::subdiagram(std::span<const std::size_t> keep) const {
  std::vector<std::string> nodes;
  std::vector<std::ptrdiff_t> pos(rank(), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    pos[keep[k]] = static_cast<std::ptrdiff_t>(k);
    nodes.push_back(nodes_[keep[k]]);
  }
  std::vector<DynkinEdge> edges;
  for (const auto& e : edges_) {
    if (pos[e.from] >= 0 && pos[e.to] >= 0)
      edges.push_back({static_cast<std::size_t>(pos[e.from]), static_cast<std::size_t>(pos[e.to]), e.multiplicity});
  }
  return DynkinDiagram(std::move(nodes), std::move(edges));
}

// ---------------------------------------------------------------------------
// RootSystem

RootSystem::RootSystem() = default;

RootSystem::RootSystem(DynkinDiagram diagram) : diagram_(std::move(diagram)) {
  const std::size_t r = diagram_.rank();
  if (r > kMaxRank)
    throw InvalidInput("diagram: rank " + std::to_string(r) + " exceeds the supported maximum of " +
                       std::to_string(kMaxRank));
  cartan_ = diagram_.cartan_matrix();

  // Symmetrizer per component. Finite-type components are trees, and the
  // symmetrized form must be positive definite.
  half_norms_.assign(r, 0);
  const auto comps = diagram_.components();
  for (const auto& comp : comps) {
    std::size_t nedges = 0;
    for (const auto& e : diagram_.edges())
      if (std::binary_search(comp.begin(), comp.end(), e.from)) ++nedges;
    if (nedges + 1 != comp.size())
      throw InvalidInput("diagram: component " + join_labels(diagram_, comp) +
                         " contains a cycle and is not of finite type");

    // d_j = a_ij d_i / a_ji, propagated as fractions over the tree.
    std::vector<long long> num(r, 0), den(r, 1);
    num[comp[0]] = 1;
    std::queue<std::size_t> todo;
    todo.push(comp[0]);
    while (!todo.empty()) {
      auto i = todo.front();
      todo.pop();
      for (auto j : comp) {
        if (j == i || cartan_[i][j] == 0 || num[j] != 0) continue;
        num[j] = num[i] * cartan_[i][j];
        den[j] = den[i] * cartan_[j][i];
        auto g = std::gcd(num[j], den[j]);
        num[j] /= g;
        den[j] /= g;
        if (den[j] < 0) {
          num[j] = -num[j];
          den[j] = -den[j];
        }
        todo.push(j);
      }
    }
    long long l = 1;
    for (auto j : comp) l = std::lcm(l, den[j]);
    long long g = 0;
    for (auto j : comp) g = std::gcd(g, num[j] * (l / den[j]));
    for (auto j : comp) half_norms_[j] = static_cast<int>(num[j] * (l / den[j]) / g);

    std::vector<std::vector<long long>> b(comp.size(), std::vector<long long>(comp.size()));
    for (std::size_t x = 0; x < comp.size(); ++x)
      for (std::size_t y = 0; y < comp.size(); ++y)
        b[x][y] = static_cast<long long>(cartan_[comp[x]][comp[y]]) * half_norms_[comp[x]];
    for (std::size_t k = 1; k <= comp.size(); ++k) {
      std::vector<std::vector<long long>> minor(k, std::vector<long long>(k));
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) minor[x][y] = b[x][y];
      if (bareiss_det(minor) <= 0)
        throw InvalidInput("diagram: component " + join_labels(diagram_, comp) +
                           " is not of finite type (affine or indefinite)");
    }
  }

  form_.assign(r, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) form_[i][j] = cartan_[i][j] * half_norms_[i];

  // Positive roots by height, extending each root by simple roots with the
  // alpha_i-string rule q = p - <beta, alpha_i^vee>.
  std::set<IntVec> all;
  std::vector<IntVec> level;
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    level.push_back(e);
    all.insert(e);
  }
  while (!level.empty()) {
    std::set<IntVec> next;
    for (const auto& beta : level) {
      for (std::size_t i = 0; i < r; ++i) {
        int p = 0;
        IntVec down = beta;
        while (true) {
          down[i] -= 1;
          if (down[i] < 0 || !all.count(down)) break;
          ++p;
        }
        int pairing = 0;
        for (std::size_t j = 0; j < r; ++j) pairing += cartan_[i][j] * beta[j];
        if (p - pairing > 0) {
          IntVec up = beta;
          up[i] += 1;
          next.insert(up);
        }
      }
    }
    level.assign(next.begin(), next.end());
    for (const auto& v : level) all.insert(v);
  }
  positive_.assign(all.begin(), all.end());
  std::stable_sort(positive_.begin(), positive_.end(), [](const IntVec& a, const IntVec& b) {
    const int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  for (std::size_t k = 0; k < positive_.size(); ++k) index_.emplace(vec_key(positive_[k]), k);

  for (const auto& comp : comps) {
    ComponentType t;
    t.rank = comp.size();
    t.nodes = comp;
    std::size_t npos = 0;
    for (const auto& root : positive_)
      if (std::any_of(comp.begin(), comp.end(), [&](auto j) { return root[j] > 0; })) ++npos;
    int maxmult = 1;
    for (const auto& e : diagram_.edges())
      if (std::binary_search(comp.begin(), comp.end(), e.from)) maxmult = std::max(maxmult, e.multiplicity);
    const std::size_t n = t.rank;
    if (maxmult == 3) {
      t.letter = 'G';
    } else if (maxmult == 2) {
      std::size_t longs = 0;
      for (auto j : comp)
        if (half_norms_[j] > 1) ++longs;
      t.letter = (n == 4 && npos == 24) ? 'F' : (longs == 1 && n > 2) ? 'C' : 'B';
    } else if (npos == n * (n + 1) / 2) {
      t.letter = 'A';
    } else if (n >= 4 && npos == n * (n - 1)) {
      t.letter = 'D';
    } else if ((n == 6 && npos == 36) || (n == 7 && npos == 63) || (n == 8 && npos == 120)) {
      t.letter = 'E';
    } else {
      throw InvariantFailure("rootsys: unrecognized finite component " + join_labels(diagram_, comp));
    }
    types_.push_back(std::move(t));
  }
}

std::optional<std::size_t> RootSystem::positive_index(const IntVec& v) const {
  if (v.size() != rank()) return std::nullopt;
  auto it = index_.find(vec_key(v));
  if (it != index_.end()) return it->second;
  IntVec neg(v.size());
  std::transform(v.begin(), v.end(), neg.begin(), [](int c) { return -c; });
  it = index_.find(vec_key(neg));
  if (it != index_.end()) return it->second;
  return std::nullopt;
}

bool RootSystem::is_root(const IntVec& v) const { return positive_index(v).has_value(); }

bool RootSystem::is_positive_root(const IntVec& v) const {
  return v.size() == rank() && index_.count(vec_key(v)) > 0;
}

int RootSystem::form(const IntVec& u, const IntVec& v) const {
  int s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) s += u[i] * form_[i][j] * v[j];
  return s;
}

IntVec RootSystem::to_weight_coords(const IntVec& root_coords) const {
  IntVec w(rank(), 0);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) w[i] += cartan_[i][j] * root_coords[j];
  return w;
}

RootSystem build_root_system(const DynkinDiagram& diagram) { return RootSystem(diagram); }

// ---------------------------------------------------------------------------
// Weyl group

IntVec reflect(const RootSystem& system, const IntVec& root, const IntVec& v) {
  if (!system.is_root(root)) throw InvalidInput("reflect: " + format_root(root) + " is not a root");
  if (v.size() != system.rank()) throw InvalidInput("reflect: vector length does not match rank");
  const int num = 2 * system.form(v, root);
  const int den = system.form(root, root);
  if (num % den != 0) throw InvalidInput("reflect: vector is not in the root lattice");
  const int c = num / den;
  IntVec out = v;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * root[i];
  return out;
}

void reflect_weight(const RootSystem& system, std::size_t i, IntVec& weight) {
  const int c = weight[i];
  if (c == 0) return;
  for (std::size_t j = 0; j < system.rank(); ++j) weight[j] -= c * system.cartan(j, i);
}

void reflect_root(const RootSystem& system, std::size_t i, IntVec& root_coords) {
  int c = 0;
  for (std::size_t j = 0; j < system.rank(); ++j) c += system.cartan(i, j) * root_coords[j];
  root_coords[i] -= c;
}

IntVec apply_word(const RootSystem& system, const WeylWord& word, IntVec weight) {
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    if (*it >= system.rank()) throw InvalidInput("weyl word: letter out of range");
    reflect_weight(system, *it, weight);
  }
  return weight;
}

int count_negative_pairings(const RootSystem& system, const IntVec& weight) {
  const auto& d = system.half_norms();
  int count = 0;
  for (const auto& root : system.positive_roots()) {
    long long s = 0;
    for (std::size_t j = 0; j < system.rank(); ++j) s += static_cast<long long>(root[j]) * d[j] * weight[j];
    if (s < 0) ++count;
  }
  return count;
}

int word_length(const RootSystem& system, const WeylWord& word) {
  return count_negative_pairings(system, apply_word(system, word, system.rho()));
}

DominantResult to_dominant(const RootSystem& system, IntVec weight) {
  if (weight.size() != system.rank()) throw InvalidInput("to_dominant: weight length does not match rank");
  DominantResult out;
  std::vector<std::size_t> applied;
  while (true) {
    std::size_t i = 0;
    while (i < weight.size() && weight[i] >= 0) ++i;
    if (i == weight.size()) break;
    reflect_weight(system, i, weight);
    applied.push_back(i);
  }
  out.length = static_cast<int>(applied.size());
  out.singular = std::any_of(weight.begin(), weight.end(), [](int c) { return c == 0; });
  out.dominant = std::move(weight);
  out.word.letters.assign(applied.rbegin(), applied.rend());
  return out;
}

std::uint64_t weyl_group_order(const RootSystem& system) {
  std::uint64_t order = 1;
  for (const auto& t : system.component_types()) order *= component_order(t);
  return order;
}

int height(const IntVec& root_coords) { return std::accumulate(root_coords.begin(), root_coords.end(), 0); }

std::string format_root(const IntVec& v) {
  const bool nonpos = std::all_of(v.begin(), v.end(), [](int c) { return c <= 0; });
  const bool any = std::any_of(v.begin(), v.end(), [](int c) { return c != 0; });
  if (!any) return "0";
  if (nonpos) {
    IntVec neg(v.size());
    std::transform(v.begin(), v.end(), neg.begin(), [](int c) { return -c; });
    const std::string inner = format_root(neg);
    return inner.find('+') == std::string::npos ? "-" + inner : "-(" + inner + ")";
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int c = v[i];
    if (c == 0) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    if (std::abs(c) != 1) os << std::abs(c);
    os << 'a' << (i + 1);
    first = false;
  }
  return os.str();
}

}  // namespace orbitcoh
