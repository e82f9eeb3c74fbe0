#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nofib/groups.hpp"
#include "oracles.hpp"

using namespace nofib;
using nofib_test::random_word;

namespace {

Word W(std::initializer_list<int> ls) { return Word::reduce(ls); }

// < a, c1, c2 | a^2 = c1 c2, ... > building blocks used across the suite
FPGroup two_holed_page_group() {
  FPGroup g;
  g.generators = {"a", "c1", "c2"};
  g.relators = {W({1, 1, -3, -2})};  // a a c2^-1 c1^-1
  return g;
}

}  // namespace

TEST_CASE("free reduction and inversion") {
  Word w = W({1, 2, -2, -1, 3});
  REQUIRE(w == W({3}));
  REQUIRE((w * w.inverse()).empty());
  Word u = W({1, 2, 1});
  REQUIRE(u.inverse() == W({-1, -2, -1}));
  REQUIRE_THROWS_AS(Word::reduce({0}), error);
}

TEST_CASE("free and cyclic reduction are idempotent") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Word w = random_word(rng, 4, 12);
    REQUIRE(Word::reduce(w.letters) == w);
    Word c = cyclically_reduce(w);
    REQUIRE(cyclically_reduce(c) == c);
    // a relator and its cyclic reduction have equal cyclic keys
    REQUIRE(cyclic_key(w) == cyclic_key(c));
  }
}

TEST_CASE("free-group conjugacy by cyclic words") {
  Word a = W({1, 2, -1});
  REQUIRE(conjugate_in_free(a, W({2})));
  REQUIRE_FALSE(conjugate_in_free(a, W({-2})));
  REQUIRE(conjugate_in_free(W({1, 2}), W({2, 1})));
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(rng, 3, 8);
    Word g = random_word(rng, 3, 6);
    REQUIRE(conjugate_in_free(g * w * g.inverse(), w));
  }
}

TEST_CASE("smith normal form of the identity") {
  IntMatrix m = IntMatrix::identity(2);
  auto s = smith_normal_form(m);
  REQUIRE(s.d == IntMatrix::identity(2));
  REQUIRE(s.u == IntMatrix::identity(2));
  REQUIRE(s.v == IntMatrix::identity(2));
}

TEST_CASE("smith normal form of the two-holed page relation matrix") {
  // rows (2,-2) and (0,0)
  IntMatrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = -2;
  auto s = smith_normal_form(m);
  REQUIRE(s.d.at(0, 0) == 2);
  REQUIRE(s.d.at(0, 1) == 0);
  REQUIRE(s.d.at(1, 0) == 0);
  REQUIRE(s.d.at(1, 1) == 0);
  REQUIRE(cokernel(m) == AbelianGroup{1, {2}});
}

TEST_CASE("smith normal form against the minor-gcd oracle") {
  std::mt19937 rng(20260809);
  for (int i = 0; i < 400; ++i) {
    IntMatrix m = nofib_test::random_matrix(rng, 4, 3);
    REQUIRE(nofib_test::smith_form_checks_out(m));
  }
}

TEST_CASE("smith normal form of empty matrices") {
  REQUIRE(nofib_test::smith_form_checks_out(IntMatrix(0, 0)));
  REQUIRE(nofib_test::smith_form_checks_out(IntMatrix(0, 3)));
  REQUIRE(nofib_test::smith_form_checks_out(IntMatrix(3, 0)));
}

TEST_CASE("abelianize the trivial presentation") {
  REQUIRE(abelianize(FPGroup{}) == AbelianGroup{0, {}});
}

TEST_CASE("abelianize both handedness cases of the two-holed page book") {
  FPGroup g = two_holed_page_group();
  g.relators.push_back(commutator(W({1}), W({2})));
  g.relators.push_back(W({2, 3}));  // c1 c2
  REQUIRE(abelianize(g) == AbelianGroup{1, {2}});
}

TEST_CASE("abelianize the Klein bottle group") {
  FPGroup g;
  g.generators = {"alpha", "beta"};
  g.relators = {W({1, 1})};
  REQUIRE(abelianize(g) == AbelianGroup{1, {2}});
}

TEST_CASE("tietze simplification of the S1xRP2 total space presentation") {
  FPGroup g = two_holed_page_group();
  g.relators.push_back(W({2, 1, -2, -1}));  // c1 a c1^-1 a^-1
  g.relators.push_back(W({2, -3}));         // c1 c2^-1
  FPGroup s = tietze_simplify(g, 10000);
  REQUIRE(s.ngens() == 2);
  REQUIRE(s.relators.size() == 2);
  std::vector<std::vector<int>> keys;
  for (const Word& r : s.relators) keys.push_back(cyclic_key(r));
  // a^2 c^-2 and the commutator [a, c], up to rotation/inversion
  REQUIRE(std::find(keys.begin(), keys.end(),
                    cyclic_key(W({1, 1, -2, -2}))) != keys.end());
  REQUIRE(std::find(keys.begin(), keys.end(),
                    cyclic_key(commutator(W({1}), W({2})))) != keys.end());
}

TEST_CASE("tietze leaves minimal presentations alone") {
  FPGroup g;
  g.generators = {"a"};
  FPGroup s = tietze_simplify(g, 100);
  REQUIRE(s.ngens() == 1);
  REQUIRE(s.relators.empty());
}

TEST_CASE("tietze eliminates a redundant generator") {
  FPGroup g;
  g.generators = {"x", "y"};
  g.relators = {W({1, -2})};
  FPGroup s = tietze_simplify(g, 100);
  REQUIRE(s.ngens() == 1);
  REQUIRE(s.relators.empty());
}

TEST_CASE("tietze respects its budget") {
  FPGroup g = two_holed_page_group();
  g.relators.push_back(W({2, -3}));
  FPGroup s0 = tietze_simplify(g, 0);
  REQUIRE(s0.ngens() == 3);
  FPGroup s1 = tietze_simplify(g, 1);
  REQUIRE(s1.ngens() == 2);
}

TEST_CASE("abelianization is invariant under tietze simplification") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> ngens(1, 4), nrels(0, 4), budget(0, 40);
  for (int i = 0; i < 150; ++i) {
    FPGroup g;
    int n = ngens(rng);
    for (int k = 0; k < n; ++k) g.generators.push_back("g" + std::to_string(k));
    int m = nrels(rng);
    for (int k = 0; k < m; ++k) {
      Word w = random_word(rng, n, 8);
      if (!cyclically_reduce(w).empty()) g.relators.push_back(w);
    }
    AbelianGroup before = abelianize(g);
    REQUIRE(abelianize(tietze_simplify(g, budget(rng))) == before);
    REQUIRE(abelianize(tietze_simplify(g)) == before);
  }
}

TEST_CASE("free rewriter tracks eliminated generators") {
  FPGroup g = two_holed_page_group();
  FreeRewriter rw = make_free_rewriter(g);
  REQUIRE(rw.free());
  REQUIRE(rw.simplified.ngens() == 2);
  // a^2 = c1 c2 holds after rewriting
  Word lhs = rw.apply(W({1, 1}));
  Word rhs = rw.apply(W({2, 3}));
  REQUIRE(lhs == rhs);
}

TEST_CASE("relator letters outside the presentation are rejected") {
  FPGroup g;
  g.generators = {"a"};
  g.relators = {W({2})};
  REQUIRE_THROWS_AS(normalize(g), error);
}
