#pragma once

#include <random>
#include <vector>

#include "codlib/codlib.hpp"

namespace test_helpers {

using namespace codlib;

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline std::vector<Complex> random_values(int k, std::mt19937_64& rng, bool real_only = false) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> out;
  for (int i = 0; i < k; ++i)
    out.emplace_back(normal(rng), real_only ? 0.0 : normal(rng));
  return out;
}

inline double squared_norm(const std::vector<Complex>& values) {
  double out = 0.0;
  for (const Complex& z : values) out += std::norm(z);
  return out;
}

inline EquivalenceWitness random_witness(Index n, std::mt19937_64& rng) {
  EquivalenceWitness w = EquivalenceWitness::identity(n);
  std::shuffle(w.row_perm.begin(), w.row_perm.end(), rng);
  std::shuffle(w.col_perm.begin(), w.col_perm.end(), rng);
  std::bernoulli_distribution coin(0.5);
  for (Index i = 0; i < n; ++i) {
    if (coin(rng)) w.row_signs[static_cast<std::size_t>(i)] = -1;
    if (coin(rng)) w.col_signs[static_cast<std::size_t>(i)] = -1;
  }
  return w;
}

// Independent sign oracle for group multiplication: concatenate the two
// generator words and sort by adjacent swaps, flipping the sign per swap and
// collapsing equal neighbours with g^2 = -1.
inline GroupElement word_multiply(const GroupElement& a, const GroupElement& b) {
  std::vector<int> word;
  for (int i = 1; i <= a.m; ++i)
    if (a.mask & (1u << (i - 1))) word.push_back(i);
  for (int i = 1; i <= b.m; ++i)
    if (b.mask & (1u << (i - 1))) word.push_back(i);
  int sign = a.sign * b.sign;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t + 1 < word.size(); ++t) {
      if (word[t] == word[t + 1]) {
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(t), word.begin() + static_cast<std::ptrdiff_t>(t) + 2);
        sign = -sign;
        changed = true;
        break;
      }
      if (word[t] > word[t + 1]) {
        std::swap(word[t], word[t + 1]);
        sign = -sign;
        changed = true;
        break;
      }
    }
  }
  std::uint32_t mask = 0;
  for (int i : word) mask |= 1u << (i - 1);
  return GroupElement{a.m, mask, sign};
}

}  // namespace test_helpers
