#include "orbitcoh/bbw.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "orbitcoh/errors.hpp"
#include "orbitcoh/kernels.hpp"

namespace orbitcoh {

int flag_dimension(const FlagDescriptor& flag) {
  const RootSystem system(flag.diagram);
  int dim = 0;
  for (const auto& root : system.positive_roots()) {
    for (std::size_t j = 0; j < system.rank(); ++j)
      if (root[j] > 0 && flag.crossed.test(j)) {
        ++dim;
        break;
      }
  }
  return dim;
}

std::vector<std::uint64_t> minimal_coset_lengths(const FlagDescriptor& flag) {
  const RootSystem system(flag.diagram);
  return kernels::coset_length_histogram_omp(system, flag.crossed);
}

std::uint64_t hodge_number(const FlagDescriptor& flag, int p, int q) {
  if (p < 0 || q < 0) throw InvalidInput("hodge_number: negative degree");
  if (p != q) return 0;
  const auto counts = minimal_coset_lengths(flag);
  return static_cast<std::size_t>(p) < counts.size() ? counts[static_cast<std::size_t>(p)] : 0;
}

std::uint64_t weyl_dimension(const RootSystem& system, const IntVec& lambda) {
  using boost::multiprecision::cpp_int;
  if (lambda.size() != system.rank()) throw InvalidInput("weyl_dimension: weight length does not match rank");
  for (int c : lambda)
    if (c < 0) throw InvalidInput("weyl_dimension: weight is not dominant");
  const auto& d = system.half_norms();
  cpp_int num = 1, den = 1;
  for (const auto& root : system.positive_roots()) {
    long long shifted = 0, base = 0;
    for (std::size_t j = 0; j < system.rank(); ++j) {
      shifted += static_cast<long long>(root[j]) * d[j] * (lambda[j] + 1);
      base += static_cast<long long>(root[j]) * d[j];
    }
    num *= shifted;
    den *= base;
  }
  if (num % den != 0) throw InvariantFailure("weyl_dimension: non-integral result");
  const cpp_int dim = num / den;
  if (dim > std::numeric_limits<std::uint64_t>::max())
    throw Unsupported("weyl_dimension: dimension exceeds 64 bits");
  return dim.convert_to<std::uint64_t>();
}

BBWResult bbw_line_bundle(const FlagDescriptor& flag, const IntVec& lambda) {
  const RootSystem system(flag.diagram);
  if (lambda.size() != system.rank())
    throw InvalidInput("line bundle: weight has " + std::to_string(lambda.size()) + " coordinates, fiber rank is " +
                       std::to_string(system.rank()));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (!flag.crossed.test(i) && lambda[i] < 0)
      throw InvalidInput("line bundle: weight is negative on uncrossed node '" + flag.diagram.nodes()[i] +
                         "' and does not define a bundle on this flag manifold");

  BBWResult out;
  const int dim = flag_dimension(flag);
  out.by_degree.resize(static_cast<std::size_t>(dim) + 1);

  IntVec shifted = lambda;
  for (auto& c : shifted) c += 1;
  const auto dom = to_dominant(system, shifted);
  if (dom.singular) return out;
  if (dom.length > dim) throw InvariantFailure("bbw: cohomological degree exceeds the fiber dimension");

  IntVec highest = dom.dominant;
  for (auto& c : highest) c -= 1;
  auto& slot = out.by_degree[static_cast<std::size_t>(dom.length)];
  slot.dimension = weyl_dimension(system, highest);
  slot.highest_weight = std::move(highest);
  return out;
}

}  // namespace orbitcoh
