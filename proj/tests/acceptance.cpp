// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Budgets are wall-clock upper bounds and count as part of
// the criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "codlib/codlib.hpp"

using namespace codlib;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

LinearDesign scrambled(const CanonicalSpec& spec, std::uint64_t seed) {
  const LinearDesign block = canonical_block(spec);
  return transform(block, haar_unitary(block.p(), seed, 0), haar_unitary(block.n(), seed, 1));
}

// ---------------------------------------------------------------------------

void criterion_canonical_validity() {
  for (int k = 1; k <= 8; ++k) {
    const LinearDesign c = canonical_cod(k);
    check(c.n() == pow2(k - 1) && c.p() == c.n(),
          "canonical dimension mismatch at k=" + std::to_string(k));
    const double residual = verify_design(c).max_residual;
    check(residual < 1e-12,
          "residual " + std::to_string(residual) + " at k=" + std::to_string(k));
  }
}

void criterion_existence_gate() {
  for (int k = 1; k <= 5; ++k) {
    for (Index n = 1; n <= 24; ++n) {
      const bool admissible = n % pow2(k - 1) == 0;
      if (admissible) {
        const CanonicalSpec spec{DesignKind::cod, k, static_cast<int>(n / pow2(k - 1)), 0};
        const Decomposition dec = decompose(canonical_block(spec));
        check(dec.spec == spec, "admissible size failed to decompose");
      } else {
        const LinearDesign junk = LinearDesign::cod(
            std::vector<ComplexMatrix>(static_cast<std::size_t>(k), ComplexMatrix::Zero(n, n)),
            std::vector<ComplexMatrix>(static_cast<std::size_t>(k), ComplexMatrix::Zero(n, n)));
        bool raised = false;
        try {
          decompose(junk);
        } catch (const Error& e) {
          raised = e.code() == Errc::not_admissible;
        }
        check(raised, "NotAdmissible missing at n=" + std::to_string(n) +
                          ", k=" + std::to_string(k));
      }
    }
  }
}

void criterion_round_trip() {
  const std::vector<std::pair<Index, int>> sizes = {{2, 2}, {4, 2}, {4, 3},
                                                    {8, 3}, {8, 4}, {16, 5}};
  std::uint64_t seed = 1000;
  for (const auto& [n, k] : sizes) {
    const int t = static_cast<int>(n / pow2(k - 1));
    for (int n1 = 0; n1 <= t; ++n1) {
      const CanonicalSpec spec{DesignKind::cod, k, n1, t - n1};
      const LinearDesign input = scrambled(spec, ++seed);
      const Decomposition dec = decompose(input);
      check(dec.spec == spec, "wrong multiplicities for n=" + std::to_string(n) +
                                  ", k=" + std::to_string(k) + ", n1=" + std::to_string(n1));
      const double residual = coefficient_distance(reconstruct(dec), input);
      check(residual < 1e-8, "reconstruction residual " + std::to_string(residual));
    }
  }
}

void criterion_uniqueness() {
  const LinearDesign input = scrambled({DesignKind::cod, 3, 1, 1}, 42);
  const Decomposition first = decompose(input, DecomposeOptions{100, {}, 1});
  for (std::uint64_t seed = 101; seed <= 104; ++seed) {
    const Decomposition dec = decompose(input, DecomposeOptions{seed, {}, 1});
    check(dec.spec == first.spec, "multiplicities changed with the seed");
  }
}

void criterion_group_combinatorics() {
  for (int m = 1; m <= 9; ++m) {
    const std::size_t expected =
        (m % 2 == 1) ? (std::size_t{1} << m) + 2 : (std::size_t{1} << m) + 1;
    check(conjugacy_classes(m).size() == expected,
          "class count mismatch at m=" + std::to_string(m));
    Index square_sum = 0;
    for (const IrrepSpec& spec : irrep_inventory(m)) square_sum += spec.dim * spec.dim;
    check(square_sum == pow2(m + 1), "squared dimensions mismatch at m=" + std::to_string(m));
  }
}

void criterion_character_orthogonality() {
  for (int m = 1; m <= 7; ++m) {
    const auto all = enumerate_elements(m);
    std::vector<std::vector<Complex>> table;
    for (const IrrepSpec& spec : irrep_inventory(m)) {
      if (spec.realization) {
        table.push_back(character_values(*spec.realization));
      } else {
        const OneDimCharacter chi{m, *spec.sign_subset};
        std::vector<Complex> values;
        values.reserve(all.size());
        for (const auto& e : all) values.emplace_back(chi(e), 0.0);
        table.push_back(std::move(values));
      }
    }
    for (std::size_t a = 0; a < table.size(); ++a)
      for (std::size_t b = a; b < table.size(); ++b) {
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < all.size(); ++i)
          acc += table[a][i] * std::conj(table[b][i]);
        acc /= static_cast<double>(all.size());
        const Complex want = a == b ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        check(std::abs(acc - want) < 1e-9, "character inner product off at m=" +
                                               std::to_string(m) + " (" + std::to_string(a) +
                                               "," + std::to_string(b) + ")");
      }
  }
}

void criterion_hurwitz_radon() {
  const std::vector<std::pair<std::uint64_t, int>> values = {
      {1, 1}, {2, 2}, {4, 4}, {8, 8}, {16, 9}};
  for (const auto& [n, rho] : values)
    check(hurwitz_radon(n) == rho, "hurwitz_radon(" + std::to_string(n) + ") wrong");
  for (Index n = 1; n <= 64; ++n) {
    int t = 0;
    Index rest = n;
    while (rest % 2 == 0) {
      rest /= 2;
      ++t;
    }
    for (int m = 1; m <= 14; ++m)
      check(hod_admissible(n, m) == (m <= 2 * t + 2),
            "admissibility mismatch at n=" + std::to_string(n) + ", m=" + std::to_string(m));
  }
}

void criterion_polar_intertwiners() {
  const CanonicalSpec spec{DesignKind::cod, 3, 1, 1};
  const LinearDesign input = scrambled(spec, 77);
  const Representation rho = rep_from_design(input);
  const Representation target = rep_from_design(canonical_block(spec));
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    auto rng = seeded_rng(5000, trial);
    const ComplexMatrix y = gaussian_matrix(8, 8, rng);
    const ComplexMatrix t0 = average_intertwiner(target, rho, y);
    const ComplexMatrix t = polar_unitary(t0);
    check(unitarity_defect(t) < 1e-10, "polar factor not unitary at trial " +
                                           std::to_string(trial));
    for (int i = 1; i <= rho.m; ++i) {
      const double defect =
          max_abs(target.generator_image(i) * t - t * rho.generator_image(i));
      check(defect < 1e-9, "unitarized intertwiner stopped intertwining at trial " +
                               std::to_string(trial));
    }
  }
}

void criterion_combinatorial_corollary() {
  const std::vector<std::pair<Index, int>> sizes = {{2, 2}, {4, 2}, {4, 3}, {8, 4}};
  auto rng = seeded_rng(9000);
  for (const auto& [n, k] : sizes) {
    const int t = static_cast<int>(n / pow2(k - 1));
    for (int n1 = 0; n1 <= t; ++n1) {
      const CanonicalSpec spec{DesignKind::cod, k, n1, t - n1};
      const CombinatorialDesign canon = canonical_grid(spec);
      for (int trial = 0; trial < 200; ++trial) {
        EquivalenceWitness w = EquivalenceWitness::identity(n);
        std::shuffle(w.row_perm.begin(), w.row_perm.end(), rng);
        std::shuffle(w.col_perm.begin(), w.col_perm.end(), rng);
        std::bernoulli_distribution coin(0.5);
        for (Index i = 0; i < n; ++i) {
          if (coin(rng)) w.row_signs[static_cast<std::size_t>(i)] = -1;
          if (coin(rng)) w.col_signs[static_cast<std::size_t>(i)] = -1;
        }
        const CombinatorialDesign input = apply_witness(canon, w);
        const CanonicalizeResult res = canonicalize(input);
        check(res.spec == spec, "combinatorial spec mismatch");
        check(apply_witness(canonical_grid(res.spec), res.witness) == input,
              "witness does not replay");
        const Decomposition dec = decompose(to_linear(input));
        check(dec.spec == spec, "combinatorial and numeric specs disagree");
      }
    }
  }
}

void criterion_odd_hod() {
  const std::vector<std::pair<Index, int>> sizes = {{2, 2}, {4, 3}};
  for (const auto& [n, k] : sizes) {
    const int v = 2 * k - 1;
    const int t = static_cast<int>(n / pow2(k - 1));
    const CanonicalSpec spec{DesignKind::hod, v, t, 0};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const LinearDesign input = scrambled(spec, seed * 13);
      const Decomposition dec = decompose(input);
      check(dec.spec == spec, "odd-variable design left the single class");

      for (int plus : {t, 0}) {
        std::vector<int> signs(static_cast<std::size_t>(t), -1);
        for (int j = 0; j < plus; ++j) signs[static_cast<std::size_t>(j)] = 1;
        const LinearDesign extended = extend_hod(input, signs, seed);
        const double residual = verify_design(extended).max_residual;
        check(residual < 1e-9, "extension residual " + std::to_string(residual));
        const Decomposition edec = decompose(extended);
        check(edec.spec.plus_blocks == plus && edec.spec.minus_blocks == t - plus,
              "extension multiplicities do not match the chosen signs");
      }
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "canonical designs verify exactly", 1.0, criterion_canonical_validity},
      {2, "existence gate raises NotAdmissible precisely", 1.0, criterion_existence_gate},
      {3, "structure-theorem round trip", 120.0, criterion_round_trip},
      {4, "multiplicities are seed independent", 30.0, criterion_uniqueness},
      {5, "conjugacy class and irrep counting", 5.0, criterion_group_combinatorics},
      {6, "character table orthonormality", 30.0, criterion_character_orthogonality},
      {7, "Hurwitz-Radon values and admissibility", 5.0, criterion_hurwitz_radon},
      {8, "unitarized intertwiners keep intertwining", 60.0, criterion_polar_intertwiners},
      {9, "combinatorial canonicalization", 30.0, criterion_combinatorial_corollary},
      {10, "odd-variable designs and extension", 60.0, criterion_odd_hod},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      c.body();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && elapsed > c.budget_seconds) {
      ok = false;
      detail = "exceeded the " + std::to_string(c.budget_seconds) + " s budget";
    }
    std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
