#include "orbitcoh/realform.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "orbitcoh/errors.hpp"

namespace orbitcoh {

namespace {

// Rank over Q via fraction-free elimination.
int matrix_rank(std::vector<std::vector<long long>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const long long f = m[i][c], p = m[r][c];
      if (f == 0) continue;
      long long g = 0;
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] = m[i][j] * p - m[r][j] * f;
        g = std::gcd(g, m[i][j]);
      }
      if (g > 1)
        for (std::size_t j = c; j < cols; ++j) m[i][j] /= g;
    }
    ++r;
    ++rank;
  }
  return rank;
}

// Opposition involution -w_0 of the black subdiagram, identity elsewhere.
std::vector<std::size_t> black_opposition(const SatakeDiagram& satake) {
  const std::size_t r = satake.base.rank();
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> black_nodes;
  for (std::size_t i = 0; i < r; ++i)
    if (satake.black.test(i)) black_nodes.push_back(i);
  if (black_nodes.empty()) return perm;
  const RootSystem black_sys(satake.base.subdiagram(black_nodes));
  const auto longest = to_dominant(black_sys, IntVec(black_nodes.size(), -1)).word;
  for (std::size_t j = 0; j < black_nodes.size(); ++j) {
    IntVec v(black_nodes.size(), 0);
    v[j] = 1;
    for (auto it = longest.letters.rbegin(); it != longest.letters.rend(); ++it) reflect_root(black_sys, *it, v);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] == -1) perm[black_nodes[j]] = black_nodes[k];
  }
  return perm;
}

}  // namespace

SatakeDiagram named_form(const DynkinDiagram& base, std::string_view family, const std::vector<int>& params) {
  const std::size_t r = base.rank();
  SatakeDiagram s;
  s.base = base;

  auto require_type_a = [&](const std::string& what) {
    RootSystem sys(base);
    if (sys.component_types().size() != 1 || sys.component_types()[0].letter != 'A')
      throw InvalidInput("real_form: " + what + " requires a connected diagram of type A");
  };

  if (family == "split") {
    if (!params.empty()) throw InvalidInput("real_form: 'split' takes no parameters");
    s.name = "split";
    s.expected_fixed_rank = static_cast<int>(r);
  } else if (family == "compact") {
    if (!params.empty()) throw InvalidInput("real_form: 'compact' takes no parameters");
    s.name = "compact";
    for (std::size_t i = 0; i < r; ++i) s.black.set(i);
    s.expected_fixed_rank = 0;
  } else if (family == "sl_R") {
    if (params.size() != 1) throw InvalidInput("real_form: sl(n,R) takes one parameter n");
    if (params[0] < 2 || static_cast<std::size_t>(params[0]) != r + 1)
      throw InvalidInput("real_form: sl(" + std::to_string(params[0]) + ",R) needs n = rank+1 = " +
                         std::to_string(r + 1) + " (diagram rank " + std::to_string(r) + ")");
    require_type_a("sl(n,R)");
    s.name = "sl(" + std::to_string(params[0]) + ",R)";
    s.expected_fixed_rank = static_cast<int>(r);
  } else if (family == "su") {
    if (params.size() != 2) throw InvalidInput("real_form: su(p,q) takes two parameters p, q");
    const int p = std::min(params[0], params[1]);
    const int q = std::max(params[0], params[1]);
    if (p < 1) throw InvalidInput("real_form: su(p,q) needs p, q >= 1 (use 'compact' for su(n))");
    if (static_cast<std::size_t>(p + q) != r + 1)
      throw InvalidInput("real_form: su(" + std::to_string(params[0]) + "," + std::to_string(params[1]) +
                         ") needs p+q = rank+1 = " + std::to_string(r + 1) + " but the diagram has rank " +
                         std::to_string(r));
    require_type_a("su(p,q)");
    s.name = "su(" + std::to_string(params[0]) + "," + std::to_string(params[1]) + ")";
    const auto n = static_cast<int>(r);
    // Nodes are 0-based here: alpha_{i+1} <-> alpha_{n-i} for i < p; black
    // nodes alpha_{p+1} .. alpha_{n-p} when p < q.
    for (int i = 0; i < p; ++i) {
      const int j = n - 1 - i;
      if (i != j) {
        s.arrows[static_cast<std::size_t>(i)] = static_cast<std::size_t>(j);
        s.arrows[static_cast<std::size_t>(j)] = static_cast<std::size_t>(i);
      }
    }
    for (int i = p; i <= n - 1 - p; ++i)
      if (p < q) s.black.set(static_cast<std::size_t>(i));
    s.expected_fixed_rank = p;
  } else {
    throw InvalidInput("real_form: unknown form '" + std::string(family) +
                       "' (known: split, compact, su(p,q), sl(n,R))");
  }
  validate_satake(s);
  return s;
}

std::vector<SatakeDiagram> catalog_forms(const DynkinDiagram& base) {
  std::vector<SatakeDiagram> out;
  out.push_back(named_form(base, "split", {}));
  out.push_back(named_form(base, "compact", {}));
  const RootSystem sys(base);
  if (sys.component_types().size() == 1 && sys.component_types()[0].letter == 'A') {
    const int n = static_cast<int>(base.rank()) + 1;
    out.push_back(named_form(base, "sl_R", {n}));
    for (int p = 1; p <= n - p; ++p) out.push_back(named_form(base, "su", {p, n - p}));
  }
  return out;
}

void validate_satake(const SatakeDiagram& satake) {
  const std::size_t r = satake.base.rank();
  for (std::size_t i = r; i < kMaxRank; ++i)
    if (satake.black.test(i)) throw InvalidInput("satake: black node index out of range");
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  for (auto [a, b] : satake.arrows) {
    if (a >= r || b >= r) throw InvalidInput("satake: arrow refers to a missing node");
    if (satake.black.test(a) || satake.black.test(b))
      throw InvalidInput("satake: arrow touches black node '" + satake.base.nodes()[satake.black.test(a) ? a : b] + "'");
    auto back = satake.arrows.find(b);
    if (back == satake.arrows.end() || back->second != a)
      throw InvalidInput("satake: arrows are not an involution at node '" + satake.base.nodes()[a] + "'");
    perm[a] = b;
  }
  const auto black_perm = black_opposition(satake);
  for (std::size_t i = 0; i < r; ++i)
    if (satake.black.test(i)) perm[i] = black_perm[i];
  const auto cartan = satake.base.cartan_matrix();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (cartan[perm[i]][perm[j]] != cartan[i][j])
        throw InvalidInput("satake: arrows do not preserve the diagram between '" + satake.base.nodes()[i] +
                           "' and '" + satake.base.nodes()[j] + "'");
}

// ---------------------------------------------------------------------------

RootInvolution RootInvolution::identity(std::size_t rank) {
  IntMatrix cols(rank, IntVec(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) cols[i][i] = 1;
  return RootInvolution(std::move(cols));
}

RootInvolution RootInvolution::negative_identity(std::size_t rank) {
  IntMatrix cols(rank, IntVec(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) cols[i][i] = -1;
  return RootInvolution(std::move(cols));
}

IntMatrix RootInvolution::matrix() const {
  const std::size_t r = rank();
  IntMatrix m(r, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = columns_[j][i];
  return m;
}

IntVec RootInvolution::apply(const IntVec& v) const {
  IntVec out(rank(), 0);
  for (std::size_t j = 0; j < rank(); ++j) {
    if (v[j] == 0) continue;
    for (std::size_t i = 0; i < rank(); ++i) out[i] += v[j] * columns_[j][i];
  }
  return out;
}

ValidationReport validate_involution(const RootInvolution& inv, const RootSystem& system) {
  ValidationReport rep;
  const std::size_t r = system.rank();
  if (inv.rank() != r) {
    rep.ok = false;
    rep.failure = "matrix size " + std::to_string(inv.rank()) + " does not match rank " + std::to_string(r);
    return rep;
  }
  for (const auto& col : inv.columns())
    if (col.size() != r) {
      rep.ok = false;
      rep.failure = "matrix is not square";
      return rep;
    }
  for (std::size_t j = 0; j < r; ++j) {
    IntVec e(r, 0);
    e[j] = 1;
    const IntVec twice = inv.apply(inv.apply(e));
    if (twice != e) {
      rep.ok = false;
      rep.failure = "not involutive: sigma^2(a" + std::to_string(j + 1) + ") = " + format_root(twice);
      return rep;
    }
  }
  for (const auto& root : system.positive_roots()) {
    const IntVec img = inv.apply(root);
    if (!system.is_root(img)) {
      rep.ok = false;
      rep.failure = "does not permute roots: sigma(" + format_root(root) + ") = " + format_root(img);
      return rep;
    }
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      IntVec ei(r, 0), ej(r, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (system.form(inv.apply(ei), inv.apply(ej)) != system.form(ei, ej)) {
        rep.ok = false;
        rep.failure = "does not preserve the invariant form on (a" + std::to_string(i + 1) + ", a" +
                      std::to_string(j + 1) + ")";
        return rep;
      }
    }
  return rep;
}

int fixed_sublattice_rank(const RootInvolution& inv) {
  const std::size_t r = inv.rank();
  std::vector<std::vector<long long>> m(r, std::vector<long long>(r));
  const auto mat = inv.matrix();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i][j] = mat[i][j] - (i == j ? 1 : 0);
  return static_cast<int>(r) - matrix_rank(std::move(m));
}

RootInvolution sigma_from_satake(const SatakeDiagram& satake, const RootSystem& system) {
  validate_satake(satake);
  const std::size_t r = system.rank();
  if (satake.base != system.diagram()) throw InvalidInput("satake: diagram does not match the root system");

  RootInvolution sigma;
  if (satake.black.count() == r && satake.arrows.empty()) {
    sigma = RootInvolution::negative_identity(r);
  } else {
    // Longest element of the black subgroup: the transporter of -rho_black
    // to the dominant chamber of the black subsystem.
    std::vector<std::size_t> black_nodes;
    for (std::size_t i = 0; i < r; ++i)
      if (satake.black.test(i)) black_nodes.push_back(i);
    RootSystem black_sys(system.diagram().subdiagram(black_nodes));
    const auto black_perm = black_opposition(satake);
    IntVec neg_rho(black_nodes.size(), -1);
    const auto longest = to_dominant(black_sys, neg_rho).word;

    IntMatrix cols(r);
    for (std::size_t j = 0; j < r; ++j) {
      IntVec v(r, 0);
      v[j] = 1;
      for (auto it = longest.letters.rbegin(); it != longest.letters.rend(); ++it)
        reflect_root(system, black_nodes[*it], v);
      IntVec permuted(r, 0);
      for (std::size_t i = 0; i < r; ++i) {
        auto a = satake.arrows.find(i);
        permuted[a == satake.arrows.end() ? black_perm[i] : a->second] = v[i];
      }
      cols[j] = std::move(permuted);
    }
    sigma = RootInvolution(std::move(cols));
  }

  const auto rep = validate_involution(sigma, system);
  if (!rep.ok)
    throw InvalidInput("sigma: Satake construction failed validation (" + rep.failure +
                       "); supply sigma directly as an integer matrix");
  if (satake.expected_fixed_rank && fixed_sublattice_rank(sigma) != *satake.expected_fixed_rank)
    throw InvalidInput("sigma: fixed sublattice has rank " + std::to_string(fixed_sublattice_rank(sigma)) +
                       " but the catalog records " + std::to_string(*satake.expected_fixed_rank) +
                       "; supply sigma directly as an integer matrix");
  return sigma;
}

}  // namespace orbitcoh
