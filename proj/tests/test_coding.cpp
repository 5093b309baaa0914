#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wadge/coding.hpp"

using namespace wadge;

TEST_CASE("pairing enumerates the diagonals") {
  // <n,p> walks (0,0),(1,0),(0,1),(2,0),(1,1),(0,2),(3,0),...
  std::vector<std::pair<Nat, Nat>> expected = {{0, 0}, {1, 0}, {0, 1}, {2, 0},
                                               {1, 1}, {0, 2}, {3, 0}, {2, 1},
                                               {1, 2}, {0, 3}, {4, 0}};
  for (Nat l = 0; l < expected.size(); ++l) CHECK(unpair(l) == expected[l]);
}

TEST_CASE("pairing is a bijection") {
  for (Nat l = 0; l < 20000; ++l) {
    auto [n, p] = unpair(l);
    CHECK(pair(n, p) == l);
  }
  for (Nat n = 0; n < 100; ++n)
    for (Nat p = 0; p < 100; ++p) {
      auto [n2, p2] = unpair(pair(n, p));
      CHECK(n2 == n);
      CHECK(p2 == p);
    }
}

TEST_CASE("pairing is monotone in each argument") {
  for (Nat n = 0; n < 30; ++n)
    for (Nat p = 0; p < 30; ++p) {
      CHECK(pair(n + 1, p) > pair(n, p));
      CHECK(pair(n, p + 1) > pair(n, p));
    }
}

TEST_CASE("finite word enumeration is graded lexicographic") {
  // d = 2: e, 0, 1, 00, 01, 10, 11, 000, ...
  CHECK(word_index(2, 0).letters.empty());
  CHECK(word_index(2, 1).letters == std::vector<Nat>{0});
  CHECK(word_index(2, 2).letters == std::vector<Nat>{1});
  CHECK(word_index(2, 3).letters == std::vector<Nat>{0, 0});
  CHECK(word_index(2, 4).letters == std::vector<Nat>{0, 1});
  CHECK(word_index(2, 5).letters == std::vector<Nat>{1, 0});
  CHECK(word_index(2, 6).letters == std::vector<Nat>{1, 1});
  CHECK(word_index(2, 7).letters == std::vector<Nat>{0, 0, 0});
  // b_d(n) is the one-letter word n-1 for 1 <= n <= d.
  for (Nat d = 2; d <= 6; ++d)
    for (Nat n = 1; n <= d; ++n) CHECK(word_index(d, n).letters == std::vector<Nat>{n - 1});
}

TEST_CASE("word enumeration round trips and respects the length bound") {
  for (Nat d = 2; d <= 4; ++d)
    for (Nat n = 0; n < 600; ++n) {
      Word w = word_index(d, n);
      CHECK(w.size() <= n);
      CHECK(word_rank(d, w) == n);
    }
}

TEST_CASE("prime coding") {
  CHECK(prime_code(omega_word({})) == 1);
  CHECK(prime_code(omega_word({0})) == 2);
  CHECK(prime_code(omega_word({1})) == 4);
  CHECK(prime_code(omega_word({0, 0})) == 6);
  CHECK(prime_code(omega_word({1, 0})) == 12);
  CHECK(prime_code(omega_word({0, 1})) == 18);
  CHECK(prime_decode(30).has_value());  // 2*3*5 -> (0,0,0)
  CHECK(prime_decode(30)->letters == std::vector<Nat>{0, 0, 0});
  CHECK(!prime_decode(5).has_value());   // missing the prime 2
  CHECK(!prime_decode(10).has_value());  // 2*5 skips 3
}

TEST_CASE("omega word enumeration follows increasing prime codes") {
  // Seq starts 1, 2, 4, 6, 8, 12, 16, 18, 24.
  CHECK(word_index(std::nullopt, 0).letters.empty());
  CHECK(word_index(std::nullopt, 1).letters == std::vector<Nat>{0});
  CHECK(word_index(std::nullopt, 2).letters == std::vector<Nat>{1});
  CHECK(word_index(std::nullopt, 3).letters == std::vector<Nat>{0, 0});
  CHECK(word_index(std::nullopt, 4).letters == std::vector<Nat>{2});
  CHECK(word_index(std::nullopt, 5).letters == std::vector<Nat>{1, 0});
  CHECK(word_index(std::nullopt, 6).letters == std::vector<Nat>{3});
  CHECK(word_index(std::nullopt, 7).letters == std::vector<Nat>{0, 1});
  for (Nat n = 0; n < 300; ++n) {
    Word w = word_index(std::nullopt, n);
    CHECK(w.size() <= n);
    CHECK(word_rank(std::nullopt, w) == n);
  }
}

TEST_CASE("p-code agrees with its recursion and is injective per length") {
  CHECK(p_code(omega_word({7})) == 7);
  CHECK(p_code(omega_word({1, 0})) == pair(1, 0));
  CHECK(p_code(omega_word({1, 0, 2})) == pair(pair(1, 0), 2));
  std::set<Nat> seen;
  for (Nat a = 0; a < 12; ++a)
    for (Nat b = 0; b < 12; ++b)
      for (Nat c = 0; c < 12; ++c) {
        Nat code = p_code(omega_word({a, b, c}));
        CHECK(!seen.count(code));
        seen.insert(code);
      }
}

TEST_CASE("p-code is onto omega for each arity") {
  // p restricted to words of length 2 is the pairing itself, hence onto.
  std::set<Nat> image;
  for (Nat a = 0; a < 40; ++a)
    for (Nat b = 0; b < 40; ++b) image.insert(p_code(omega_word({a, b})));
  for (Nat v = 0; v < 500; ++v) CHECK(image.count(v));
}

TEST_CASE("q-code pairs from the right") {
  CHECK(q_code(omega_word({5})) == 5);
  CHECK(q_code(omega_word({1, 0})) == pair(0, 1));
  CHECK(q_code(omega_word({1, 0, 2})) == pair(2, pair(0, 1)));
  std::set<Nat> seen;
  for (Nat a = 0; a < 12; ++a)
    for (Nat b = 0; b < 12; ++b)
      for (Nat c = 0; c < 12; ++c) {
        Nat code = q_code(omega_word({a, b, c}));
        CHECK(!seen.count(code));
        seen.insert(code);
      }
}

TEST_CASE("word helpers") {
  Word w = omega_word({3, 1, 4, 1});
  CHECK(reverse(w).letters == std::vector<Nat>{1, 4, 1, 3});
  CHECK(tail(w).letters == std::vector<Nat>{1, 4, 1});
  CHECK(drop_prefix(w, 2).letters == std::vector<Nat>{4, 1});
  CHECK(take_prefix(w, 2).letters == std::vector<Nat>{3, 1});
  CHECK_THROWS(drop_prefix(w, 5));
  CHECK_THROWS(p_code(omega_word({})));
}
