#include "orbitcoh/kernels.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orbitcoh/errors.hpp"

namespace orbitcoh::kernels {

namespace {

// Orbit points are packed into one word, one signed byte per coordinate.
// Pairings of a fundamental-weight sum with any coroot stay below the
// highest coroot height (29 for E8), so a byte is enough.
using Packed = std::uint64_t;
using Coords = std::array<int, kMaxRank>;

Packed pack(const Coords& c) {
  Packed p = 0;
  for (std::size_t i = 0; i < kMaxRank; ++i)
    p |= static_cast<Packed>(static_cast<std::uint8_t>(static_cast<std::int8_t>(c[i]))) << (8 * i);
  return p;
}

Coords unpack(Packed p) {
  Coords c{};
  for (std::size_t i = 0; i < kMaxRank; ++i) c[i] = static_cast<std::int8_t>((p >> (8 * i)) & 0xff);
  return c;
}

struct Setup {
  std::size_t rank = 0;
  // alpha[i] is alpha_i in weight coordinates: alpha[i][j] = cartan(j, i).
  std::array<Coords, kMaxRank> alpha{};
  // Positive roots weighted by half norms; the sign of the dot product with
  // a weight is the sign of the coroot pairing.
  std::vector<Coords> weighted_roots;
  Packed seed = 0;
  std::uint64_t expected_size = 1;
};

Setup make_setup(const RootSystem& system, NodeSet crossed) {
  Setup s;
  s.rank = system.rank();
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < s.rank; ++j) s.alpha[i][j] = system.cartan(j, i);
  for (const auto& root : system.positive_roots()) {
    Coords w{};
    for (std::size_t j = 0; j < s.rank; ++j) w[j] = root[j] * system.half_norms()[j];
    s.weighted_roots.push_back(w);
  }
  Coords seed{};
  std::vector<std::size_t> levi;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (crossed.test(i)) seed[i] = 1;
    else levi.push_back(i);
  }
  s.seed = pack(seed);
  const RootSystem levi_sys(system.diagram().subdiagram(levi));
  s.expected_size = weyl_group_order(system) / weyl_group_order(levi_sys);
  if (s.expected_size > kMaxOrbitSize)
    throw Unsupported("coset enumeration: |W/W_P| = " + std::to_string(s.expected_size) +
                      " exceeds the enumeration limit of " + std::to_string(kMaxOrbitSize));
  return s;
}

inline Packed reflect(const Setup& s, const Coords& v, std::size_t i) {
  Coords out = v;
  const int c = v[i];
  for (std::size_t j = 0; j < s.rank; ++j) out[j] -= c * s.alpha[i][j];
  return pack(out);
}

inline int inversions(const Setup& s, const Coords& v) {
  int count = 0;
  for (const auto& w : s.weighted_roots) {
    int dot = 0;
    for (std::size_t j = 0; j < s.rank; ++j) dot += w[j] * v[j];
    if (dot < 0) ++count;
  }
  return count;
}

void add_to_histogram(std::vector<std::uint64_t>& hist, std::size_t len, std::uint64_t n) {
  if (hist.size() <= len) hist.resize(len + 1, 0);
  hist[len] += n;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::uint64_t> coset_length_histogram_serial(const RootSystem& system, NodeSet crossed) {
  const Setup s = make_setup(system, crossed);
  std::unordered_set<Packed> seen{s.seed};
  std::deque<Packed> todo{s.seed};
  std::vector<std::uint64_t> hist;
  while (!todo.empty()) {
    const Coords v = unpack(todo.front());
    todo.pop_front();
    add_to_histogram(hist, static_cast<std::size_t>(inversions(s, v)), 1);
    for (std::size_t i = 0; i < s.rank; ++i) {
      if (v[i] == 0) continue;
      const Packed w = reflect(s, v, i);
      if (seen.insert(w).second) todo.push_back(w);
    }
  }
  if (seen.size() != s.expected_size)
    throw InvariantFailure("coset enumeration: orbit size " + std::to_string(seen.size()) + " != |W/W_P| = " +
                           std::to_string(s.expected_size));
  return hist;
}

std::vector<std::uint64_t> coset_length_histogram_omp(const RootSystem& system, NodeSet crossed) {
  const Setup s = make_setup(system, crossed);
  std::vector<std::uint64_t> hist;
  std::vector<Packed> level{s.seed};
  std::uint64_t total = 0;
  // Reflecting in s_i with a positive coordinate raises the length by one,
  // so level l of this search is exactly the set of length-l cosets.
  for (std::size_t len = 0; !level.empty(); ++len) {
    const auto n = static_cast<std::ptrdiff_t>(level.size());
    long long bad = 0;
    std::vector<Packed> next;

#pragma omp parallel
    {
      std::vector<Packed> local;
#pragma omp for reduction(+ : bad) schedule(static)
      for (std::ptrdiff_t k = 0; k < n; ++k) {
        const Coords v = unpack(level[static_cast<std::size_t>(k)]);
        if (static_cast<std::size_t>(inversions(s, v)) != len) ++bad;
        for (std::size_t i = 0; i < s.rank; ++i)
          if (v[i] > 0) local.push_back(reflect(s, v, i));
      }
#pragma omp critical
      next.insert(next.end(), local.begin(), local.end());
    }

    if (bad != 0)
      throw InvariantFailure("coset enumeration: inversion count disagrees with search depth at length " +
                             std::to_string(len));
    add_to_histogram(hist, len, level.size());
    total += level.size();
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  if (total != s.expected_size)
    throw InvariantFailure("coset enumeration: orbit size " + std::to_string(total) + " != |W/W_P| = " +
                           std::to_string(s.expected_size));
  return hist;
}

}  // namespace orbitcoh::kernels
