#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <random>

#include "nofib/smallgroups.hpp"
#include "oracles.hpp"

using namespace nofib;

namespace {

// Generating sequence with an expression DAG: every element is reached as
// (previous element) * (some generator).
struct GeneratingData {
  std::vector<int> gens;
  std::vector<int> expr_prev;  // -1 for the identity
  std::vector<int> expr_gen;
};

GeneratingData generating_data(const CayleyTable& G) {
  GeneratingData d;
  d.expr_prev.assign(G.n, -2);
  d.expr_gen.assign(G.n, -1);
  std::vector<bool> in(G.n, false);
  in[0] = true;
  d.expr_prev[0] = -1;
  int covered = 1;
  while (covered < G.n) {
    int g = -1;
    for (int x = 1; x < G.n; ++x)
      if (!in[x]) {
        g = x;
        break;
      }
    d.gens.push_back(g);
    // re-close
    std::vector<int> queue;
    for (int x = 0; x < G.n; ++x)
      if (in[x]) queue.push_back(x);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      for (size_t k = 0; k < d.gens.size(); ++k) {
        int t = G.mul(queue[qi], d.gens[k]);
        if (!in[t]) {
          in[t] = true;
          d.expr_prev[t] = queue[qi];
          d.expr_gen[t] = static_cast<int>(k);
          queue.push_back(t);
          ++covered;
        }
      }
    }
  }
  return d;
}

bool isomorphic(const CayleyTable& A, const CayleyTable& B) {
  if (A.n != B.n) return false;
  if (A.order_multiset() != B.order_multiset()) return false;
  if (A.center_size() != B.center_size()) return false;
  if (A.conjugacy_class_count() != B.conjugacy_class_count()) return false;

  GeneratingData d = generating_data(A);
  size_t k = d.gens.size();
  std::vector<std::vector<int>> candidates(k);
  for (size_t i = 0; i < k; ++i) {
    int ord = A.element_order(d.gens[i]);
    for (int x = 0; x < B.n; ++x)
      if (B.element_order(x) == ord) candidates[i].push_back(x);
    if (candidates[i].empty()) return false;
  }

  std::vector<int> choice(k, 0);
  std::vector<int> img(A.n, -1);
  while (true) {
    // evaluate the candidate map through the expression DAG
    img.assign(A.n, -1);
    img[0] = 0;
    bool ok = true;
    for (int x = 0; x < A.n && ok; ++x) {
      // elements are discovered in increasing BFS order, but expr_prev may
      // point anywhere; resolve recursively
      int y = x;
      std::vector<int> chain;
      while (img[y] < 0) {
        chain.push_back(y);
        y = d.expr_prev[y];
      }
      for (auto it = chain.rbegin(); it != chain.rend(); ++it)
        img[*it] = B.mul(img[d.expr_prev[*it]],
                         choice[d.expr_gen[*it]] >= 0
                             ? candidates[d.expr_gen[*it]][choice[d.expr_gen[*it]]]
                             : -1);
    }
    if (ok) {
      std::vector<bool> hit(B.n, false);
      bool bij = true;
      for (int x = 0; x < A.n && bij; ++x) {
        if (hit[img[x]]) bij = false;
        hit[img[x]] = true;
      }
      if (bij) {
        bool hom = true;
        for (int x = 0; x < A.n && hom; ++x)
          for (int y = 0; y < A.n && hom; ++y)
            hom = img[A.mul(x, y)] == B.mul(img[x], img[y]);
        if (hom) return true;
      }
    }
    // odometer
    size_t pos = 0;
    while (pos < k) {
      if (++choice[pos] < static_cast<int>(candidates[pos].size())) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == k) return false;
  }
}

FPGroup presentation(std::vector<std::string> gens,
                     std::vector<Word> relators) {
  FPGroup g;
  g.generators = std::move(gens);
  g.relators = std::move(relators);
  return g;
}

}  // namespace

TEST_CASE("catalog tables satisfy the group axioms") {
  for (const auto& g : small_groups(24)) {
    INFO(g.name);
    REQUIRE(g.is_group());
  }
}

TEST_CASE("catalog has the right number of groups of each order") {
  // number of isomorphism classes of groups of order 1..24
  const int expected[] = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5,
                          1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
  std::map<int, int> counts;
  for (const auto& g : small_groups(24)) counts[g.n]++;
  for (int n = 1; n <= 24; ++n) {
    INFO("order " << n);
    REQUIRE(counts[n] == expected[n - 1]);
  }
}

TEST_CASE("catalog groups are pairwise non-isomorphic") {
  auto gs = small_groups(24);
  for (size_t i = 0; i < gs.size(); ++i)
    for (size_t j = i + 1; j < gs.size(); ++j) {
      if (gs[i].n != gs[j].n) continue;
      INFO(gs[i].name << " vs " << gs[j].name);
      REQUIRE_FALSE(isomorphic(gs[i], gs[j]));
    }
}

TEST_CASE("isomorphism search accepts equal groups in disguise") {
  // the dicyclic group of order 8 is the quaternion group however built
  CayleyTable q8a = dicyclic_group(2, "Q8");
  CayleyTable q8b = sl23_group();  // SL(2,3) has a Q8 inside; compare C4s instead
  (void)q8b;
  CayleyTable c4a = cyclic_group(4);
  CayleyTable c4b = semidirect_cyclic(cyclic_group(2), 2, {0, 1}, "C2:C2triv");
  REQUIRE(isomorphic(c4a, c4a));
  REQUIRE_FALSE(isomorphic(c4a, c4b));  // trivial action gives C2 x C2
  REQUIRE(isomorphic(q8a, dicyclic_group(2, "again")));
}

TEST_CASE("homomorphism counting on reference groups") {
  auto gs = small_groups(24);
  auto find = [&](const std::string& name) -> const CayleyTable& {
    for (const auto& g : gs)
      if (g.name == name) return g;
    throw error("missing " + name);
  };
  const CayleyTable& s3 = find("D6");
  const CayleyTable& c2 = find("C2");

  FPGroup z = presentation({"x"}, {});
  FPGroup z2 = presentation({"x", "y"},
                            {commutator(Word::gen(0), Word::gen(1))});
  FPGroup f2 = presentation({"x", "y"}, {});

  REQUIRE(count_homomorphisms(z, s3).value() == 6);
  REQUIRE(count_homomorphisms(f2, s3).value() == 36);
  // commuting pairs in S3: |G| * #classes = 6 * 3
  REQUIRE(count_homomorphisms(z2, s3).value() == 18);
  REQUIRE(count_homomorphisms(f2, c2).value() == 4);
}

TEST_CASE("recognize the catalog tags") {
  FPGroup z_plus_z2 = presentation(
      {"a", "c1"},
      {Word::gen(0) * Word::gen(0), commutator(Word::gen(0), Word::gen(1))});
  REQUIRE(recognize(z_plus_z2, 8) == GroupTag::z_plus_z_over_2);

  FPGroup z = presentation({"a"}, {});
  REQUIRE(recognize(z, 8) == GroupTag::z);

  FPGroup f2 = presentation({"x", "y"}, {});
  REQUIRE(recognize(f2, 8) == GroupTag::free_rank_2);

  FPGroup z2 = presentation({"x", "y"},
                            {commutator(Word::gen(0), Word::gen(1))});
  REQUIRE(recognize(z2, 8) == GroupTag::z_squared);

  REQUIRE(recognize(presentation({}, {}), 8) == GroupTag::trivial);
  REQUIRE(recognize(presentation({"x"}, {Word::gen(0) * Word::gen(0)}), 8) ==
          GroupTag::z_over_2);
}

TEST_CASE("recognize stays inconclusive below the distinguishing order") {
  // all groups of order < 6 are abelian, so Z^2 and the free group of rank
  // 2 have equal homomorphism counts: no tag may be claimed
  FPGroup z2 = presentation({"x", "y"},
                            {commutator(Word::gen(0), Word::gen(1))});
  REQUIRE_FALSE(recognize(z2, 5).has_value());
  FPGroup f2 = presentation({"x", "y"}, {});
  REQUIRE_FALSE(recognize(f2, 5).has_value());
}

TEST_CASE("recognize returns inconclusive off the catalog") {
  FPGroup z3 = presentation({"x"},
                            {Word::gen(0) * Word::gen(0) * Word::gen(0)});
  REQUIRE_FALSE(recognize(z3, 8).has_value());
}

TEST_CASE("recognize never contradicts abelianize") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> ngens(1, 3), nrels(0, 3);
  for (int i = 0; i < 60; ++i) {
    FPGroup g;
    int n = ngens(rng);
    for (int k = 0; k < n; ++k) g.generators.push_back("g" + std::to_string(k));
    int m = nrels(rng);
    for (int k = 0; k < m; ++k)
      g.relators.push_back(nofib_test::random_word(rng, n, 6));
    g = normalize(g);
    auto tag = recognize(g, 6);
    if (tag) REQUIRE(tag_abelianization(*tag) == abelianize(g));
  }
}

TEST_CASE("recognize rejects oversized presentations") {
  FPGroup big;
  for (int i = 0; i < 13; ++i) big.generators.push_back("g" + std::to_string(i));
  REQUIRE_THROWS_AS(recognize(big, 8), error);
  REQUIRE_THROWS_AS(recognize(FPGroup{}, 25), error);
}
