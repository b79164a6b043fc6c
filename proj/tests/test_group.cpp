#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "helpers.hpp"

using namespace codlib;
using test_helpers::word_multiply;

TEST_CASE("multiply implements the defining relations", "[group]") {
  const GroupElement g1 = GroupElement::generator(3, 1);
  const GroupElement g2 = GroupElement::generator(3, 2);

  const GroupElement g12 = multiply(g1, g2);
  REQUIRE(g12 == GroupElement{3, 0b011, +1});
  REQUIRE(multiply(g2, g1) == g12.negated());
  REQUIRE(multiply(g1, g1) == GroupElement::minus_one(3));

  REQUIRE(multiply(GroupElement::identity(3), g1) == g1);
  REQUIRE(multiply(GroupElement::minus_one(3), g1) == g1.negated());
  REQUIRE_THROWS_AS(multiply(g1, GroupElement::generator(4, 1)), Error);
}

TEST_CASE("closed-form signs match the word-rewriting oracle", "[group]") {
  auto rng = seeded_rng(404);
  for (int m : {2, 4, 7, 11}) {
    std::uniform_int_distribution<std::uint32_t> mask_dist(0, (1u << m) - 1);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 200; ++trial) {
      const GroupElement a{m, mask_dist(rng), coin(rng) ? 1 : -1};
      const GroupElement b{m, mask_dist(rng), coin(rng) ? 1 : -1};
      REQUIRE(multiply(a, b) == word_multiply(a, b));
    }
  }
}

TEST_CASE("multiply is associative", "[group]") {
  for (int m : {1, 2, 3, 4}) {
    const auto all = enumerate_elements(m);
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all)
          REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
  auto rng = seeded_rng(17);
  std::uniform_int_distribution<std::uint32_t> mask_dist(0, (1u << 8) - 1);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 500; ++trial) {
    const GroupElement a{8, mask_dist(rng), coin(rng) ? 1 : -1};
    const GroupElement b{8, mask_dist(rng), coin(rng) ? 1 : -1};
    const GroupElement c{8, mask_dist(rng), coin(rng) ? 1 : -1};
    REQUIRE(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("inverse really inverts", "[group]") {
  for (int m : {1, 3, 4})
    for (const auto& e : enumerate_elements(m))
      REQUIRE(multiply(e, inverse(e)) == GroupElement::identity(m));
}

TEST_CASE("enumerate_elements is complete and deterministically ordered", "[group]") {
  REQUIRE(enumerate_elements(1).size() == 4);
  REQUIRE(enumerate_elements(3).size() == 16);
  REQUIRE(enumerate_elements(4).size() == 32);

  const auto all = enumerate_elements(2);
  REQUIRE(all[0] == GroupElement::identity(2));
  REQUIRE(all[1] == GroupElement{2, 1, +1});
  REQUIRE(all[4] == GroupElement::minus_one(2));
  for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(element_index(all[i]) == i);

  REQUIRE_THROWS_AS(enumerate_elements(15), Error);
}

TEST_CASE("conjugacy classes have the expected structure", "[group]") {
  REQUIRE(conjugacy_classes(3).size() == 10);  // 2^3 + 2
  REQUIRE(conjugacy_classes(2).size() == 5);   // 2^2 + 1

  for (int m = 1; m <= 9; ++m) {
    const auto classes = conjugacy_classes(m);
    const std::size_t expected =
        (m % 2 == 1) ? (std::size_t{1} << m) + 2 : (std::size_t{1} << m) + 1;
    REQUIRE(classes.size() == expected);

    // +1 and -1 are singletons; every class is either {x} or {x, -x}
    std::size_t total = 0;
    for (const auto& c : classes) {
      total += c.size();
      REQUIRE((c.size() == 1 || c.size() == 2));
      if (c.size() == 2) REQUIRE(c[1] == c[0].negated());
    }
    REQUIRE(total == (std::size_t{2} << m));
    REQUIRE(classes[0] == std::vector<GroupElement>{GroupElement::identity(m)});
  }
}

TEST_CASE("one-dimensional characters are degenerate and distinct", "[group]") {
  const auto trivial = one_dim_characters(2)[0];
  for (const auto& e : enumerate_elements(2)) REQUIRE(trivial(e) == 1.0);

  const auto chars1 = one_dim_characters(1);
  REQUIRE(chars1.size() == 2);
  const auto& chi = chars1[1];  // the set {1} is negated
  REQUIRE(chi(GroupElement::generator(1, 1)) == -1.0);
  REQUIRE(chi(GroupElement::generator(1, 1).negated()) == -1.0);
  REQUIRE(chi(GroupElement::minus_one(1)) == 1.0);

  for (int m : {1, 2, 3, 5}) {
    const auto chars = one_dim_characters(m);
    REQUIRE(chars.size() == (std::size_t{1} << m));
    const auto all = enumerate_elements(m);
    std::set<std::vector<double>> tables;
    for (const auto& c : chars) {
      std::vector<double> values;
      for (const auto& e : all) {
        values.push_back(c(e));
        REQUIRE(c(e) == c(e.negated()));
      }
      tables.insert(std::move(values));
    }
    REQUIRE(tables.size() == chars.size());
  }
}
