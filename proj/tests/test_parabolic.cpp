#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "orbitcoh/errors.hpp"
#include "orbitcoh/parabolic.hpp"

using namespace orbitcoh;

namespace {

std::shared_ptr<const RootSystem> sys_of(const std::string& type) {
  return std::make_shared<const RootSystem>(DynkinDiagram::from_type(type));
}

NodeSet nodes(std::initializer_list<std::size_t> idx) {
  NodeSet s;
  for (auto i : idx) s.set(i);
  return s;
}

RootInvolution form(const RootSystem& sys, const std::string& family, const std::vector<int>& params) {
  return sigma_from_satake(named_form(sys.diagram(), family, params), sys);
}

std::set<IntVec> all_roots(const RootSystem& sys) { return oracle::roots_by_reflection_closure(sys.cartan_matrix()); }

}  // namespace

TEST_CASE("root_set_of") {
  const auto a3 = sys_of("A3");
  CHECK(root_set_of(CrossedDiagram(a3, nodes({0, 1, 2}))).roots.size() == 6);
  const auto p1 = root_set_of(CrossedDiagram(a3, nodes({0})));
  CHECK(p1.roots.size() == 9);
  CHECK(p1.roots.count({0, -1, -1}) == 1);
  CHECK(p1.roots.count({-1, 0, 0}) == 0);

  for (const auto& t : {"A3", "B3", "C3", "G2", "A2xB2", "D4"}) {
    const auto sys = sys_of(t);
    const auto roots = all_roots(*sys);
    for (unsigned mask = 1; mask < (1u << sys->rank()); ++mask) {
      const auto set = root_set_of(CrossedDiagram(sys, NodeSet(mask)));
      CHECK(oracle::closed_under_addition(set.roots, roots));
      CHECK_FALSE(closure_violation(*sys, set).has_value());
    }
  }
}

TEST_CASE("crossed diagram rejects nodes outside the diagram") {
  CHECK_THROWS_AS(CrossedDiagram(sys_of("A2"), nodes({2})), InvalidInput);
}

TEST_CASE("conjugate_root_set") {
  const auto a3 = sys_of("A3");
  const auto sigma = form(*a3, "su", {1, 3});
  const auto q = root_set_of(CrossedDiagram(a3, nodes({0, 1, 2})));
  const auto bar = conjugate_root_set(*a3, q, sigma);
  CHECK(bar.roots.size() == 6);
  CHECK(bar.roots.count({0, -1, 0}) == 1);
  CHECK(bar.roots.count({1, 1, 0}) == 1);

  // A matrix that is not a root involution is caught.
  CHECK_THROWS_AS(conjugate_root_set(*a3, q, RootInvolution({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})), InvariantFailure);
}

TEST_CASE("su(1,3), Borel: Levi-flat with a CP^1 fiber") {
  const auto a3 = sys_of("A3");
  const auto sigma = form(*a3, "su", {1, 3});
  const CrossedDiagram q(a3, nodes({0, 1, 2}));
  CHECK(classify_orbit(q, sigma).kind == OrbitKind::levi_flat);
  CHECK_FALSE(classify_orbit(q, sigma).witness.has_value());

  const auto fib = fundamental_reduction(q, sigma);
  CHECK(fib.q_prime_crossed == nodes({0, 2}));
  CHECK(fib.base_dim == 5);
  CHECK(fib.fiber_dim == 1);
  CHECK(fib.fiber.diagram.rank() == 1);
  CHECK(fib.fiber.crossed == nodes({0}));
  CHECK(fib.fiber_nodes == std::vector<std::size_t>{1});
  CHECK_FALSE(fib.totally_real);
  CHECK(fib.notes.empty());
}

TEST_CASE("su(1,3), node 2 crossed: generic") {
  const auto a3 = sys_of("A3");
  const auto sigma = form(*a3, "su", {1, 3});
  const CrossedDiagram q(a3, nodes({1}));
  const auto cls = classify_orbit(q, sigma);
  CHECK(cls.kind == OrbitKind::generic);
  REQUIRE(cls.witness.has_value());
  CHECK(format_root(cls.witness->first) == "-(a1+a2)");
  CHECK(format_root(cls.witness->second) == "-a3");
}

TEST_CASE("su(2,2), node 1 crossed: generic with a witness") {
  const auto a3 = sys_of("A3");
  const auto sigma = form(*a3, "su", {2, 2});
  const CrossedDiagram q(a3, nodes({0}));
  const auto cls = classify_orbit(q, sigma);
  CHECK(cls.kind == OrbitKind::generic);
  REQUIRE(cls.witness.has_value());
  CHECK(format_root(cls.witness->first) == "-(a1+a2)");
  CHECK(format_root(cls.witness->second) == "-a3");
  CHECK_THROWS_AS(fundamental_reduction(q, sigma), Unsupported);
}

TEST_CASE("su(2,2), nodes 1 and 2 crossed: the point component is noted") {
  const auto a3 = sys_of("A3");
  const auto sigma = form(*a3, "su", {2, 2});
  const CrossedDiagram q(a3, nodes({0, 1}));
  const auto cls = classify_orbit(q, sigma);
  REQUIRE(cls.kind == OrbitKind::levi_flat);
  const auto fib = fundamental_reduction(q, sigma);
  CHECK(fib.fiber.crossed.count() >= 1);
  CHECK_FALSE(fib.notes.empty());
}

TEST_CASE("split forms give totally real orbits with a point fiber") {
  for (const auto& t : {"A3", "B3", "G2", "D4"}) {
    const auto sys = sys_of(t);
    const auto sigma = form(*sys, "split", {});
    for (unsigned mask = 1; mask < (1u << sys->rank()); ++mask) {
      const CrossedDiagram q(sys, NodeSet(mask));
      CHECK(classify_orbit(q, sigma).kind == OrbitKind::totally_real);
      const auto fib = fundamental_reduction(q, sigma);
      CHECK(fib.totally_real);
      CHECK(fib.fiber_dim == 0);
      CHECK(fib.fiber.diagram.rank() == 0);
      CHECK(fib.q_prime_crossed == q.crossed);
    }
  }
}

TEST_CASE("compact forms: the orbit is all of X") {
  const auto b3 = sys_of("B3");
  const auto sigma = form(*b3, "compact", {});
  const CrossedDiagram q(b3, nodes({0, 2}));
  CHECK(classify_orbit(q, sigma).kind == OrbitKind::levi_flat);
  const auto fib = fundamental_reduction(q, sigma);
  CHECK(fib.q_prime_crossed.none());
  CHECK(fib.base_dim == 0);
  CHECK(fib.fiber_dim == 9 - levi_positive_roots(*b3, nodes({1})));
}

TEST_CASE("effectiveness_check") {
  CHECK(effectiveness_check(CrossedDiagram(sys_of("A1xA1"), nodes({0}))).size() == 1);
  CHECK(effectiveness_check(CrossedDiagram(sys_of("A1xA1"), nodes({0, 1}))).empty());
  CHECK(effectiveness_check(CrossedDiagram(sys_of("A2"), nodes({0}))).empty());
}

TEST_CASE("classification agrees with brute-force closure on random instances") {
  std::mt19937 rng(2024);
  const std::vector<std::string> types = {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "C4", "B4", "D4",
                                          "F4", "G2", "A1xA1", "A1xA2", "A2xA2"};
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto sys = sys_of(types[rng() % types.size()]);
    const auto forms = catalog_forms(sys->diagram());
    const auto& satake = forms[rng() % forms.size()];
    const auto sigma = sigma_from_satake(satake, *sys);
    const unsigned mask = 1 + static_cast<unsigned>(rng() % ((1u << sys->rank()) - 1));
    const CrossedDiagram q(sys, NodeSet(mask));
    CAPTURE(sys->diagram().rank());
    CAPTURE(satake.name);
    CAPTURE(mask);

    const auto rq = root_set_of(q);
    std::set<IntVec> bar;
    for (const auto& r : rq.roots) bar.insert(sigma.apply(r));
    std::set<IntVec> uni = rq.roots;
    uni.insert(bar.begin(), bar.end());
    const auto roots = all_roots(*sys);

    const auto cls = classify_orbit(q, sigma);
    if (bar == rq.roots) {
      CHECK(cls.kind == OrbitKind::totally_real);
    } else if (oracle::closed_under_addition(uni, roots)) {
      CHECK(cls.kind == OrbitKind::levi_flat);
    } else {
      CHECK(cls.kind == OrbitKind::generic);
      REQUIRE(cls.witness.has_value());
      IntVec s = cls.witness->first;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += cls.witness->second[i];
      CHECK(roots.count(s) == 1);
      CHECK(uni.count(s) == 0);
      CHECK_THROWS_AS(fundamental_reduction(q, sigma), Unsupported);
      continue;
    }
    if (cls.kind == OrbitKind::totally_real) CHECK(oracle::closed_under_addition(uni, roots));

    const auto fib = fundamental_reduction(q, sigma);
    const int dim_x = static_cast<int>(sys->positive_roots().size()) -
                      levi_positive_roots(*sys, ~q.crossed & NodeSet((1u << sys->rank()) - 1));
    CHECK(fib.base_dim + fib.fiber_dim == dim_x);
    CHECK(fib.totally_real == (fib.fiber_dim == 0));
    CHECK(flag_dimension(fib.fiber) == fib.fiber_dim);
    for (const auto& comp : fib.fiber.diagram.components()) {
      bool crossed = false;
      for (auto k : comp) crossed = crossed || fib.fiber.crossed.test(k);
      CHECK(crossed);
    }
    ++checked;
  }
  CHECK(checked > 100);
}
