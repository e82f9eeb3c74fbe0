#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nofib/surfaces.hpp"
#include "oracles.hpp"

using namespace nofib;

namespace {
constexpr SurfaceSig kKlein{false, 2, 0};
constexpr SurfaceSig kMobius{false, 1, 1};
constexpr SurfaceSig kRp2TwoHoles{false, 1, 2};
}  // namespace

TEST_CASE("euler characteristic of the small catalog") {
  REQUIRE(euler_char(kKlein) == 0);
  REQUIRE(euler_char(kMobius) == 0);
  REQUIRE(euler_char(kRp2TwoHoles) == -1);
  REQUIRE(euler_char(SurfaceSig{true, 0, 0}) == 2);
  REQUIRE(euler_char(SurfaceSig{false, 1, 0}) == 1);
  REQUIRE_THROWS_AS(euler_char(SurfaceSig{false, 0, 1}), error);
}

TEST_CASE("torus connect sum") {
  REQUIRE(connect_sum_torus(kMobius) == SurfaceSig{false, 3, 1});
  REQUIRE(connect_sum_torus(SurfaceSig{true, 0, 0}) == SurfaceSig{true, 1, 0});
  SurfaceSig s{false, 2, 1};
  for (int i = 0; i < 5; ++i) s = connect_sum_torus(s);
  REQUIRE(s == SurfaceSig{false, 12, 1});
}

TEST_CASE("crosscaps") {
  REQUIRE(add_crosscap(SurfaceSig{true, 0, 1}) == kMobius);
  REQUIRE(add_crosscap(kMobius) == SurfaceSig{false, 2, 1});
  SurfaceSig in{true, 1, 1};
  SurfaceSig out = add_crosscap(in);
  REQUIRE(out == SurfaceSig{false, 3, 1});
  REQUIRE(euler_char(out) == euler_char(in) - 1);
}

TEST_CASE("boundary-splitting bands") {
  REQUIRE(split_boundary_band(kMobius) == kRp2TwoHoles);
  REQUIRE(split_boundary_band(SurfaceSig{true, 0, 2}) == SurfaceSig{true, 0, 3});
  REQUIRE_THROWS_AS(split_boundary_band(kKlein), error);
}

TEST_CASE("tubes") {
  SurfaceSig s{false, 3, 1};
  REQUIRE(attach_tube(attach_tube(s)) == SurfaceSig{false, 7, 1});
  SurfaceSig w = s;
  for (int i = 0; i < 13; ++i) w = attach_tube(w);
  REQUIRE(w == SurfaceSig{false, 29, 1});
  REQUIRE(attach_tube(kMobius) == SurfaceSig{false, 3, 1});
  REQUIRE(euler_char(attach_tube(kMobius)) == euler_char(kMobius) - 2);
}

TEST_CASE("doubling") {
  for (int k = 1; k <= 6; ++k)
    REQUIRE(double_surface(SurfaceSig{false, 1, k}) == SurfaceSig{false, 2 * k, 0});
  REQUIRE(double_surface(SurfaceSig{true, 0, 1}) == SurfaceSig{true, 0, 0});
  REQUIRE(double_surface(SurfaceSig{false, 5, 2}) == SurfaceSig{false, 12, 0});
  REQUIRE(euler_char(double_surface(SurfaceSig{false, 5, 2})) ==
          2 * euler_char(SurfaceSig{false, 5, 2}));
  REQUIRE_THROWS_AS(double_surface(kKlein), error);
}

TEST_CASE("chi bookkeeping composes additively") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    SurfaceSig s{false, 1 + pick(rng), 1 + pick(rng)};
    int chi = euler_char(s);
    int delta = 0;
    for (int step = 0; step < 6; ++step) {
      switch (pick(rng)) {
        case 0: s = connect_sum_torus(s); delta -= 2; break;
        case 1: s = add_crosscap(s); delta -= 1; break;
        case 2: s = split_boundary_band(s); delta -= 1; break;
        case 3: s = attach_tube(s); delta -= 2; break;
      }
    }
    REQUIRE(euler_char(s) == chi + delta);
  }
}

TEST_CASE("two torus sums equal four crosscaps on nonorientable surfaces") {
  std::mt19937 rng(32);
  std::uniform_int_distribution<int> pick(1, 5);
  for (int trial = 0; trial < 50; ++trial) {
    SurfaceSig s{false, pick(rng), pick(rng)};
    SurfaceSig via_torus = connect_sum_torus(connect_sum_torus(s));
    SurfaceSig via_crosscaps = s;
    for (int i = 0; i < 4; ++i) via_crosscaps = add_crosscap(via_crosscaps);
    REQUIRE(via_torus == via_crosscaps);
  }
}

TEST_CASE("catalog pages validate") {
  for (const PagePresentation& p :
       {page_disk(), page_annulus(), page_mobius(), page_rp2_with_holes(2),
        page_rp2_with_holes(4), page_nonorientable(3, 1), page_klein_one_hole(),
        page_disk_with_twisted_bands(3)}) {
    INFO(p.sig.to_string());
    REQUIRE(validate_page(p).ok);
  }
}

TEST_CASE("page stabilizations preserve presentation consistency") {
  std::mt19937 rng(33);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 60; ++trial) {
    PagePresentation p = trial % 2 ? page_rp2_with_holes(1 + trial % 3)
                                   : page_disk_with_twisted_bands(1 + trial % 3);
    for (int step = 0; step < 4; ++step) {
      std::uniform_int_distribution<int> bd(0, p.sig.boundary - 1);
      switch (pick(rng)) {
        case 0: p = page_split_boundary(p, bd(rng)); break;
        case 1: p = page_add_crosscap(p, bd(rng)); break;
        case 2: p = page_torus_sum(p, "q", "r"); break;
      }
      REQUIRE(validate_page(p).ok);
    }
  }
}

TEST_CASE("classify curves on the closed projective plane") {
  PagePresentation p = page_rp2_closed();
  REQUIRE(classify_curve(p, Word::gen(0)).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, Word{}).kind == CurveClassKind::nullhomotopic);
  REQUIRE(classify_curve(p, Word::gen(0) * Word::gen(0)).kind ==
          CurveClassKind::nullhomotopic);
}

TEST_CASE("classify curves on the closed Klein bottle") {
  PagePresentation p = page_klein_closed();
  Word x = Word::gen(0), y = Word::gen(1);
  REQUIRE(classify_curve(p, x * y).kind == CurveClassKind::generic_two_sided);
  REQUIRE(classify_curve(p, (x * y).inverse()).kind ==
          CurveClassKind::generic_two_sided);
  REQUIRE(classify_curve(p, x).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, y).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, x * x).kind == CurveClassKind::bounds_mobius);
  // y^2 = x^-2 in the Klein bottle group
  REQUIRE(classify_curve(p, y * y).kind == CurveClassKind::bounds_mobius);
  REQUIRE(classify_curve(p, x * x * y * y).kind ==
          CurveClassKind::nullhomotopic);
  REQUIRE(classify_curve(p, x * y * x * y).kind == CurveClassKind::unknown);
}

TEST_CASE("classify curves on the Mobius band") {
  PagePresentation p = page_mobius();
  Word a = Word::gen(0);
  REQUIRE(classify_curve(p, a).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, a * a) == CurveClass::parallel_to(0));
  REQUIRE(classify_curve(p, Word{}).kind == CurveClassKind::nullhomotopic);
}

TEST_CASE("classify curves on the two-holed projective plane") {
  PagePresentation p = page_rp2_with_holes(2);
  Word a = Word::gen(0), c1 = Word::gen(1), c2 = Word::gen(2);
  REQUIRE(classify_curve(p, c1) == CurveClass::parallel_to(0));
  REQUIRE(classify_curve(p, c2) == CurveClass::parallel_to(1));
  REQUIRE(classify_curve(p, a).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, a * a).kind == CurveClassKind::bounds_mobius);
  // a^2 equals c1 c2, the same class through the page relation
  REQUIRE(classify_curve(p, c1 * c2).kind == CurveClassKind::bounds_mobius);
  REQUIRE(classify_curve(p, a * c1).kind == CurveClassKind::unknown);
}

TEST_CASE("classify curves on the Klein bottle with one hole") {
  PagePresentation p = page_klein_one_hole();
  Word x = Word::gen(0), y = Word::gen(1), c = Word::gen(2);
  REQUIRE(classify_curve(p, x * y).kind == CurveClassKind::generic_two_sided);
  REQUIRE(classify_curve(p, x).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, y).kind == CurveClassKind::one_sided);
  REQUIRE(classify_curve(p, x * x).kind == CurveClassKind::bounds_mobius);
  REQUIRE(classify_curve(p, c) == CurveClass::parallel_to(0));
  REQUIRE(classify_curve(p, x * y * x).kind == CurveClassKind::unknown);
}

TEST_CASE("classification never guesses on non-catalog pages") {
  PagePresentation p = page_nonorientable(3, 1);
  Word x1 = Word::gen(0), x2 = Word::gen(1);
  REQUIRE(classify_curve(p, x1 * x2).kind == CurveClassKind::unknown);
  REQUIRE(classify_curve(p, x1).kind == CurveClassKind::unknown);
  // word-level facts still fire
  REQUIRE(classify_curve(p, Word{}).kind == CurveClassKind::nullhomotopic);
  REQUIRE(classify_curve(p, Word::gen(3)) == CurveClass::parallel_to(0));
}

TEST_CASE("one-sided curves carry the one-sided class") {
  REQUIRE_THROWS_AS(
      make_curve("c", Word::gen(0), Sidedness::one_sided,
                 CurveClass::of(CurveClassKind::generic_two_sided)),
      error);
  CurveOnPage ok = make_curve("c", Word::gen(0), Sidedness::two_sided,
                              CurveClass::of(CurveClassKind::one_sided));
  REQUIRE(ok.sided == Sidedness::one_sided);
}
