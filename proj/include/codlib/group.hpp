#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "codlib/errors.hpp"

namespace codlib {

/// Generator-count ceiling for whole-group enumerations; group sums are
/// O(2^m * n^3), so anything beyond this is out of practical reach anyway.
inline constexpr int kMaxGenerators = 14;

/// Element of the sign group on m anticommuting generators: a signed
/// monomial +/- g_{i_1} ... g_{i_l} with i_1 < ... < i_l recorded as a
/// bitmask (bit i-1 stands for generator i). The group has order 2^{m+1}.
struct GroupElement {
  int m = 0;
  std::uint32_t mask = 0;
  int sign = +1;

  static GroupElement identity(int m) { return {m, 0u, +1}; }
  static GroupElement minus_one(int m) { return {m, 0u, -1}; }
  static GroupElement generator(int m, int i) {
    require(i >= 1 && i <= m, Errc::invalid_argument, "generator index out of range");
    return {m, std::uint32_t{1} << (i - 1), +1};
  }

  GroupElement negated() const { return {m, mask, -sign}; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

namespace detail {

inline void check_element(const GroupElement& e) {
  require(e.m >= 0 && e.m <= kMaxGenerators, Errc::invalid_argument,
          "generator count out of range");
  require((e.sign == 1 || e.sign == -1) && (e.mask >> e.m) == 0, Errc::invalid_argument,
          "malformed group element");
}

}  // namespace detail

/// Product in normal form. Sorting the concatenated monomials costs one sign
/// flip per crossing pair (i in a, j in b, i > j) from anticommutation, and
/// one per shared generator from g_i^2 = -1.
inline GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  detail::check_element(a);
  detail::check_element(b);
  require(a.m == b.m, Errc::invalid_argument, "group elements live over different generator counts");
  int flips = std::popcount(a.mask & b.mask);
  for (std::uint32_t rest = b.mask; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    flips += std::popcount(a.mask >> (j + 1));
  }
  const int sign = a.sign * b.sign * ((flips % 2 == 0) ? 1 : -1);
  return {a.m, a.mask ^ b.mask, sign};
}

inline GroupElement inverse(const GroupElement& e) {
  const GroupElement sq = multiply(e, e);
  return sq.sign == 1 ? e : e.negated();
}

/// g x g^{-1}
inline GroupElement conjugate(const GroupElement& g, const GroupElement& x) {
  return multiply(multiply(g, x), inverse(g));
}

/// All 2^{m+1} elements: the +1 half with masks ascending, then the -1 half.
inline std::vector<GroupElement> enumerate_elements(int m) {
  require(m >= 0 && m <= kMaxGenerators, Errc::invalid_argument,
          "enumerate_elements supports 0 <= m <= 14");
  const std::uint32_t masks = std::uint32_t{1} << m;
  std::vector<GroupElement> out;
  out.reserve(2u * masks);
  for (int sign : {+1, -1})
    for (std::uint32_t mask = 0; mask < masks; ++mask) out.push_back({m, mask, sign});
  return out;
}

/// Position of an element in enumerate_elements(m) order.
inline std::size_t element_index(const GroupElement& e) {
  detail::check_element(e);
  const std::size_t half = std::size_t{1} << e.m;
  return (e.sign == 1 ? 0 : half) + e.mask;
}

/// Partition of the group under conjugation, classes ordered by their first
/// element in enumeration order. Central elements sit in singleton classes;
/// everything else pairs up with its negation.
inline std::vector<std::vector<GroupElement>> conjugacy_classes(int m) {
  const std::vector<GroupElement> all = enumerate_elements(m);
  std::vector<bool> seen(all.size(), false);
  std::vector<std::vector<GroupElement>> classes;
  for (const GroupElement& start : all) {
    const std::size_t s = element_index(start);
    if (seen[s]) continue;
    // Orbit under conjugation by the generators; conjugation by products
    // composes from these.
    std::vector<GroupElement> orbit{start};
    seen[s] = true;
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      for (int i = 1; i <= m; ++i) {
        const GroupElement y = conjugate(GroupElement::generator(m, i), orbit[q]);
        const std::size_t yi = element_index(y);
        if (!seen[yi]) {
          seen[yi] = true;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end(), [](const GroupElement& x, const GroupElement& y) {
      return element_index(x) < element_index(y);
    });
    classes.push_back(std::move(orbit));
  }
  return classes;
}

/// One-dimensional character determined by the set of generators sent to -1.
/// All of these kill the central -1 (they are the degenerate irreducibles).
struct OneDimCharacter {
  int m = 0;
  std::uint32_t negated = 0;

  double operator()(const GroupElement& e) const {
    require(e.m == m, Errc::invalid_argument, "character applied to foreign element");
    return std::popcount(e.mask & negated) % 2 == 0 ? 1.0 : -1.0;
  }
};

inline std::vector<OneDimCharacter> one_dim_characters(int m) {
  require(m >= 0 && m <= kMaxGenerators, Errc::invalid_argument,
          "one_dim_characters supports 0 <= m <= 14");
  std::vector<OneDimCharacter> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint32_t j = 0; j < (std::uint32_t{1} << m); ++j) out.push_back({m, j});
  return out;
}

}  // namespace codlib
