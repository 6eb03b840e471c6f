#include "orbitcoh/parabolic.hpp"

#include <algorithm>

#include "orbitcoh/errors.hpp"

namespace orbitcoh {

namespace {

IntVec negated(IntVec v) {
  for (auto& c : v) c = -c;
  return v;
}

IntVec add(const IntVec& a, const IntVec& b) {
  IntVec s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

bool supported_on(const IntVec& root, const NodeSet& nodes) {
  for (std::size_t j = 0; j < root.size(); ++j)
    if (root[j] != 0 && !nodes.test(j)) return false;
  return true;
}

NodeSet all_nodes(std::size_t rank) {
  NodeSet s;
  for (std::size_t i = 0; i < rank; ++i) s.set(i);
  return s;
}

std::string labels(const DynkinDiagram& d, const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t k = 0; k < idx.size(); ++k) out += (k ? "," : "") + d.nodes()[idx[k]];
  return out + "}";
}

}  // namespace

CrossedDiagram::CrossedDiagram(std::shared_ptr<const RootSystem> sys, NodeSet crossed_nodes)
    : system(std::move(sys)), crossed(crossed_nodes) {
  if (!system) throw InvalidInput("crossed diagram: missing root system");
  if ((crossed & ~all_nodes(system->rank())).any()) throw InvalidInput("crossed diagram: node index out of range");
}

std::vector<std::size_t> CrossedDiagram::uncrossed() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < system->rank(); ++i)
    if (!crossed.test(i)) out.push_back(i);
  return out;
}

const char* to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::totally_real:
      return "totally_real";
    case OrbitKind::levi_flat:
      return "levi_flat";
    case OrbitKind::generic:
      return "generic";
  }
  return "generic";
}

std::optional<OrbitKind> orbit_kind_from_string(std::string_view s) {
  if (s == "totally_real") return OrbitKind::totally_real;
  if (s == "levi_flat") return OrbitKind::levi_flat;
  if (s == "generic") return OrbitKind::generic;
  return std::nullopt;
}

int levi_positive_roots(const RootSystem& system, const NodeSet& nodes) {
  return static_cast<int>(std::count_if(system.positive_roots().begin(), system.positive_roots().end(),
                                        [&](const IntVec& r) { return supported_on(r, nodes); }));
}

ParabolicRootSet root_set_of(const CrossedDiagram& q) {
  const auto& sys = *q.system;
  const NodeSet levi = ~q.crossed & all_nodes(sys.rank());
  ParabolicRootSet out;
  for (const auto& root : sys.positive_roots()) {
    out.roots.insert(root);
    if (supported_on(root, levi)) out.roots.insert(negated(root));
  }
  return out;
}

std::optional<std::pair<IntVec, IntVec>> closure_violation(const RootSystem& system, const ParabolicRootSet& set) {
  for (auto a = set.roots.begin(); a != set.roots.end(); ++a) {
    for (auto b = std::next(a); b != set.roots.end(); ++b) {
      const IntVec s = add(*a, *b);
      if (system.is_root(s) && !set.roots.count(s)) return std::make_pair(*a, *b);
    }
  }
  return std::nullopt;
}

ParabolicRootSet conjugate_root_set(const RootSystem& system, const ParabolicRootSet& q, const RootInvolution& sigma) {
  if (sigma.rank() != system.rank()) throw InvalidInput("sigma: matrix size does not match rank");
  ParabolicRootSet out;
  for (const auto& root : q.roots) {
    IntVec img = sigma.apply(root);
    if (!system.is_root(img))
      throw InvariantFailure("conjugation: sigma(" + format_root(root) + ") = " + format_root(img) + " is not a root");
    out.roots.insert(std::move(img));
  }
  if (auto bad = closure_violation(system, out))
    throw InvariantFailure("conjugation: image of q is not closed (" + format_root(bad->first) + " + " +
                           format_root(bad->second) + "); sigma is invalid");
  return out;
}

OrbitClassification classify_orbit(const CrossedDiagram& q, const RootInvolution& sigma) {
  const auto& sys = *q.system;
  const auto rq = root_set_of(q);
  const auto rbar = conjugate_root_set(sys, rq, sigma);
  OrbitClassification out;
  if (rbar == rq) {
    out.kind = OrbitKind::totally_real;
    return out;
  }
  ParabolicRootSet uni = rq;
  uni.roots.insert(rbar.roots.begin(), rbar.roots.end());
  if (auto bad = closure_violation(sys, uni)) {
    out.kind = OrbitKind::generic;
    out.witness = std::move(bad);
  } else {
    out.kind = OrbitKind::levi_flat;
  }
  return out;
}

FibrationData fundamental_reduction(const CrossedDiagram& q, const RootInvolution& sigma) {
  const auto& sys = *q.system;
  const auto cls = classify_orbit(q, sigma);
  if (cls.kind == OrbitKind::generic)
    throw Unsupported("fundamental reduction: the orbit is not Levi-flat (q + conj(q) is not a subalgebra); "
                      "only Levi-flat and totally real orbits are supported");

  const auto rq = root_set_of(q);
  const auto rbar = conjugate_root_set(sys, rq, sigma);
  ParabolicRootSet uni = rq;
  uni.roots.insert(rbar.roots.begin(), rbar.roots.end());

  FibrationData fib;
  fib.totally_real = cls.kind == OrbitKind::totally_real;
  const std::size_t r = sys.rank();
  for (std::size_t i = 0; i < r; ++i) {
    IntVec neg(r, 0);
    neg[i] = -1;
    if (!uni.roots.count(neg)) fib.q_prime_crossed.set(i);
  }
  const CrossedDiagram q_prime(q.system, fib.q_prime_crossed);
  if (root_set_of(q_prime) != uni)
    throw InvariantFailure("fundamental reduction: q + conj(q) is not the standard parabolic of its crossing");
  if (conjugate_root_set(sys, uni, sigma) != uni)
    throw InvariantFailure("fundamental reduction: q' is not stable under conjugation");

  const NodeSet levi_q = ~q.crossed & all_nodes(r);
  const NodeSet levi_qp = ~fib.q_prime_crossed & all_nodes(r);
  fib.base_dim = static_cast<int>(sys.positive_roots().size()) - levi_positive_roots(sys, levi_qp);
  fib.fiber_dim = levi_positive_roots(sys, levi_qp) - levi_positive_roots(sys, levi_q);

  // Components of Levi(q') without a crossed node of q already lie in q and
  // contribute a point to F; they are left out of the descriptor.
  const auto levi_diagram_nodes = q_prime.uncrossed();
  const auto levi_diagram = sys.diagram().subdiagram(levi_diagram_nodes);
  for (const auto& comp : levi_diagram.components()) {
    std::vector<std::size_t> in_g;
    for (auto k : comp) in_g.push_back(levi_diagram_nodes[k]);
    const bool has_cross = std::any_of(in_g.begin(), in_g.end(), [&](auto i) { return q.crossed.test(i); });
    if (has_cross) {
      fib.fiber_nodes.insert(fib.fiber_nodes.end(), in_g.begin(), in_g.end());
    } else {
      fib.notes.push_back("Levi factor " + labels(sys.diagram(), in_g) + " of q' lies in q and contributes a point to F");
    }
  }
  std::sort(fib.fiber_nodes.begin(), fib.fiber_nodes.end());
  fib.fiber.diagram = sys.diagram().subdiagram(fib.fiber_nodes);
  for (std::size_t k = 0; k < fib.fiber_nodes.size(); ++k)
    if (q.crossed.test(fib.fiber_nodes[k])) fib.fiber.crossed.set(k);

  if (flag_dimension(fib.fiber) != fib.fiber_dim)
    throw InvariantFailure("fundamental reduction: fiber dimension mismatch");
  if (fib.totally_real && (fib.q_prime_crossed != q.crossed || fib.fiber_dim != 0 || fib.fiber.diagram.rank() != 0))
    throw InvariantFailure("fundamental reduction: totally real orbit with nontrivial fiber");
  return fib;
}

std::vector<std::string> effectiveness_check(const CrossedDiagram& q) {
  std::vector<std::string> warnings;
  const auto& d = q.system->diagram();
  for (const auto& comp : d.components()) {
    const bool has_cross = std::any_of(comp.begin(), comp.end(), [&](auto i) { return q.crossed.test(i); });
    if (!has_cross)
      warnings.push_back("q contains the simple ideal on component " + labels(d, comp) +
                         " (no crossed node); the pair (g0, q) is not effective");
  }
  return warnings;
}

}  // namespace orbitcoh
