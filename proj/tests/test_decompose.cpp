#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace codlib;

namespace {

LinearDesign scrambled(const CanonicalSpec& spec, std::uint64_t seed) {
  const LinearDesign block = canonical_block(spec);
  return transform(block, haar_unitary(block.p(), seed, 0), haar_unitary(block.n(), seed, 1));
}

}  // namespace

TEST_CASE("decompose recovers the canonical form of the basic design", "[decompose]") {
  const Decomposition dec = decompose(canonical_cod(2));
  REQUIRE(dec.spec.plus_blocks == 1);
  REQUIRE(dec.spec.minus_blocks == 0);
  REQUIRE(dec.residual < 1e-10);
  REQUIRE(is_unitary(dec.u));
  REQUIRE(is_unitary(dec.v));

  // Irreducible case: the factors are unique once the phase is pinned.
  const Decomposition again = decompose(canonical_cod(2), DecomposeOptions{99, {}, 1});
  REQUIRE(max_abs_diff(dec.u, again.u) < 1e-8);
  REQUIRE(max_abs_diff(dec.v, again.v) < 1e-8);
}

TEST_CASE("decompose round-trips scrambled block designs", "[decompose]") {
  const CanonicalSpec spec{DesignKind::cod, 2, 1, 1};
  const LinearDesign input = scrambled(spec, 4);
  const Decomposition dec = decompose(input);
  REQUIRE(dec.spec == spec);
  REQUIRE(dec.residual < 1e-8);
  REQUIRE(coefficient_distance(reconstruct(dec), input) < 1e-8);
}

TEST_CASE("decompose rejects inadmissible sizes before anything else", "[decompose]") {
  // a [3, 3, 2] shape cannot be a square design; coefficients are irrelevant
  const LinearDesign junk = LinearDesign::cod(
      {ComplexMatrix::Zero(3, 3), ComplexMatrix::Zero(3, 3)},
      {ComplexMatrix::Zero(3, 3), ComplexMatrix::Zero(3, 3)});
  REQUIRE_THROWS_MATCHES(decompose(junk), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::not_admissible;
                         }));
}

TEST_CASE("decompose flags non-designs of admissible size", "[decompose]") {
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  const LinearDesign bad = LinearDesign::cod({eye, eye}, {eye, eye});
  REQUIRE_THROWS_MATCHES(decompose(bad), Error, Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::verification_failed;
                         }));
}

TEST_CASE("repeated decompositions agree on the multiplicities", "[decompose]") {
  const LinearDesign input = scrambled({DesignKind::cod, 3, 1, 1}, 12);
  const Decomposition first = decompose(input, DecomposeOptions{0, {}, 1});
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const Decomposition dec = decompose(input, DecomposeOptions{seed, {}, 1});
    REQUIRE(dec.spec == first.spec);
    REQUIRE(dec.residual < 1e-8);
  }
}

TEST_CASE("multiplicities are invariant under unitary equivalence", "[decompose]") {
  const CanonicalSpec spec{DesignKind::cod, 2, 2, 1};
  const LinearDesign block = canonical_block(spec);
  for (std::uint64_t seed : {3ull, 4ull, 5ull}) {
    const LinearDesign moved =
        transform(block, haar_unitary(block.p(), seed, 2), haar_unitary(block.n(), seed, 3));
    REQUIRE(decompose(moved).spec == spec);
  }
}

TEST_CASE("the averaged matrix intertwines before and after unitarization", "[decompose]") {
  const CanonicalSpec spec{DesignKind::cod, 3, 1, 1};
  const LinearDesign input = scrambled(spec, 31);
  const Representation rho = rep_from_design(input);
  const Representation target = rep_from_design(canonical_block(spec));
  auto rng = seeded_rng(77);
  const ComplexMatrix y = gaussian_matrix(8, 8, rng);
  const ComplexMatrix t0 = average_intertwiner(target, rho, y);
  const ComplexMatrix t = polar_unitary(t0);
  for (int i = 1; i <= 5; ++i) {
    const ComplexMatrix& d_img = target.generator_image(i);
    const ComplexMatrix& r_img = rho.generator_image(i);
    REQUIRE(max_abs(d_img * t0 - t0 * r_img) < 1e-9);
    REQUIRE(max_abs(d_img * t - t * r_img) < 1e-9);
  }
  REQUIRE(unitarity_defect(t) < 1e-10);
}

TEST_CASE("threaded averaging matches the serial reduction", "[decompose]") {
  const CanonicalSpec spec{DesignKind::cod, 3, 2, 0};
  const LinearDesign input = scrambled(spec, 8);
  const Decomposition serial = decompose(input, DecomposeOptions{5, {}, 1});
  const Decomposition threaded = decompose(input, DecomposeOptions{5, {}, 4});
  REQUIRE(serial.spec == threaded.spec);
  REQUIRE(max_abs_diff(serial.v, threaded.v) < 1e-9);
}

TEST_CASE("round trip across every admissible size and split", "[decompose]") {
  for (int k = 1; k <= 5; ++k) {
    const Index bd = pow2(k - 1);
    for (Index n = bd; n <= 32; n += bd) {
      const int t = static_cast<int>(n / bd);
      for (int n1 = 0; n1 <= t; ++n1) {
        const CanonicalSpec spec{DesignKind::cod, k, n1, t - n1};
        const std::uint64_t seed = static_cast<std::uint64_t>(97 * k + 13 * n + n1);
        const LinearDesign input = scrambled(spec, seed);
        const Decomposition dec = decompose(input);
        REQUIRE(dec.spec == spec);
        REQUIRE(coefficient_distance(reconstruct(dec), input) < 1e-8);
      }
    }
  }
}

TEST_CASE("averaging between inequivalent irreducibles collapses to zero", "[decompose]") {
  // Schur orthogonality: no nonzero intertwiner exists, so the group average
  // annihilates every seed. This is the degenerate case the retry loop and
  // IntertwinerSingular guard against.
  const Representation plus = rep_from_design(canonical_cod(3));
  const Representation minus = rep_from_design(canonical_cod(3, true));
  auto rng = seeded_rng(64);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix y = gaussian_matrix(4, 4, rng);
    REQUIRE(max_abs(average_intertwiner(plus, minus, y)) < 1e-12);
  }
}

TEST_CASE("equivalence class counting", "[decompose]") {
  REQUIRE(equivalence_class_count(2, 2) == 2);
  REQUIRE(equivalence_class_count(8, 2) == 5);
  REQUIRE(equivalence_class_count(4, 3) == 2);
  REQUIRE_THROWS_MATCHES(equivalence_class_count(3, 2), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.code() == Errc::not_admissible;
                         }));
}

TEST_CASE("reconstruct reproduces block designs from trivial factors", "[decompose]") {
  const CanonicalSpec spec{DesignKind::cod, 2, 0, 2};
  Decomposition dec;
  dec.spec = spec;
  dec.u = ComplexMatrix::Identity(4, 4);
  dec.v = ComplexMatrix::Identity(4, 4);
  const LinearDesign block = reconstruct(dec);
  REQUIRE(coefficient_distance(block, canonical_block(spec)) == 0.0);
  // a (0, n2) spec is made of minus blocks only
  REQUIRE(max_abs_diff(block.a(2).block(0, 0, 2, 2), canonical_cod(2, true).a(2)) == 0.0);
}

TEST_CASE("hod designs decompose against their own canonical forms", "[decompose]") {
  // even variable count: two block types
  const CanonicalSpec even{DesignKind::hod, 4, 1, 1};
  const LinearDesign even_input = scrambled(even, 21);
  const Decomposition even_dec = decompose(even_input);
  REQUIRE(even_dec.spec == even);
  REQUIRE(coefficient_distance(reconstruct(even_dec), even_input) < 1e-8);

  // odd variable count: a single canonical form
  const CanonicalSpec odd{DesignKind::hod, 3, 2, 0};
  for (std::uint64_t seed : {1ull, 2ull}) {
    const LinearDesign input = scrambled(odd, seed);
    const Decomposition dec = decompose(input);
    REQUIRE(dec.spec == odd);
    REQUIRE(dec.residual < 1e-8);
  }

  // single-variable hod: every unitary is such a design
  const LinearDesign tiny = LinearDesign::hod({haar_unitary(3, 9)});
  const Decomposition tiny_dec = decompose(tiny);
  REQUIRE(tiny_dec.spec.plus_blocks == 3);
  REQUIRE(tiny_dec.residual < 1e-10);
}

TEST_CASE("extend_hod restores the missing variable", "[decompose]") {
  const LinearDesign h4 = extend_hod(canonical_hod(3), {1});
  REQUIRE(h4.vars() == 4);
  REQUIRE(coefficient_distance(h4, canonical_hod(4)) < 1e-9);

  const LinearDesign input = scrambled({DesignKind::hod, 3, 2, 0}, 14);
  const LinearDesign extended = extend_hod(input, {1, -1}, 3);
  REQUIRE(extended.vars() == 4);
  REQUIRE(verify_design(extended).max_residual < 1e-9);
  // the first three variables are untouched
  for (int i = 1; i <= 3; ++i) REQUIRE(max_abs_diff(extended.e(i), input.e(i)) == 0.0);
  // block signs choose the even canonical types
  const Decomposition dec = decompose(extended);
  REQUIRE(dec.spec.plus_blocks == 1);
  REQUIRE(dec.spec.minus_blocks == 1);

  REQUIRE_THROWS_AS(extend_hod(input, {1}), Error);             // sign count
  REQUIRE_THROWS_AS(extend_hod(canonical_hod(4), {1}), Error);  // even variable count
}
