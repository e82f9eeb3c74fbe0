#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "nofib/format.hpp"

using namespace nofib;

namespace {

Word W(std::initializer_list<int> ls) { return Word::reduce(ls); }

const char* kGenusOneBook = R"(nofib 1

page P
  surface nonorientable genus=1 boundary=2
  generators a c1 c2
  relator a^2 c2^-1 c1^-1
  boundary c1
  boundary c2
  base 0

openbook OB
  page P
  twist boundary=0 hand=+ id=g1
  twist boundary=1 hand=- id=g2
)";

}  // namespace

TEST_CASE("a missing version header is a parse error") {
  REQUIRE_THROWS_AS(parse_document(""), parse_error);
  REQUIRE_THROWS_AS(parse_document("page P\n"), parse_error);
  REQUIRE_THROWS_AS(parse_document("nofib 2\n"), parse_error);
}

TEST_CASE("an unknown block type names its line") {
  try {
    parse_document("nofib 1\n\nwidget W\n");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    REQUIRE(e.line == 3);
    REQUIRE(std::string(e.what()).find("widget") != std::string::npos);
  }
}

TEST_CASE("dangling references are rejected") {
  REQUIRE_THROWS_AS(parse_document("nofib 1\n\nopenbook OB\n  page missing\n"),
                    parse_error);
}

TEST_CASE("duplicate block names are rejected") {
  REQUIRE_THROWS_AS(
      parse_document("nofib 1\n\nsurface S nonorientable genus=1 boundary=0\n"
                     "surface S nonorientable genus=2 boundary=0\n"),
      parse_error);
}

TEST_CASE("a catalog open book parses to the hand-built one") {
  Document doc = parse_document(kGenusOneBook);
  const auto& ob = std::get<OpenBook>(doc.get("OB").payload);
  OpenBook expected = s1xrp2_open_book(1, -1);
  REQUIRE(ob.page.sig == expected.page.sig);
  REQUIRE(action_equal(ob.page, ob.monodromy, expected.monodromy));
  REQUIRE(ob.monodromy.twist_word.size() == 2);
  REQUIRE(total_space_h1(ob) == AbelianGroup{1, {2}});
}

TEST_CASE("surface blocks and word syntax") {
  Document doc = parse_document(
      "nofib 1\nsurface K nonorientable genus=2 boundary=0\n");
  REQUIRE(std::get<SurfaceSig>(doc.get("K").payload) ==
          SurfaceSig{false, 2, 0});
  REQUIRE_THROWS_AS(
      parse_document("nofib 1\n\npage P\n  surface nonorientable genus=1 "
                     "boundary=1\n  generators a\n  relator b^2\n  boundary "
                     "a^2\n  base 0\n"),
      parse_error);
}

TEST_CASE("documents round-trip through the canonical form") {
  Document doc;

  Block s;
  s.type = Block::Type::surface;
  s.name = "K";
  s.payload = SurfaceSig{false, 2, 0};
  doc.blocks.push_back(s);

  Block ob;
  ob.type = Block::Type::openbook;
  ob.name = "sum";
  ob.payload = murasugi_chain_s1xrp2(2);
  doc.blocks.push_back(ob);

  FramedLinkDiagram d;
  d.handles = 2;
  d.components = {{"l1", W({1, 2, 1}), -2}, {"l2", W({2, 2}), 3}};
  d.crossings = {{0, 1, 1, 0}};
  Block ld;
  ld.type = Block::Type::linkdiagram;
  ld.name = "L";
  ld.payload = d;
  doc.blocks.push_back(ld);

  Block lf;
  lf.type = Block::Type::lefschetz;
  lf.name = "F";
  lf.payload = harer_compile(d);
  doc.blocks.push_back(lf);

  Block tri;
  tri.type = Block::Type::trisection;
  tri.name = "T";
  tri.payload = wrinkle_compile(harer_compile(d));
  doc.blocks.push_back(tri);

  std::string once = emit_document(doc);
  Document reparsed = parse_document(once);
  std::string twice = emit_document(reparsed);
  REQUIRE(once == twice);

  // the reparsed open book still computes the same invariants
  const auto& rob = std::get<OpenBook>(reparsed.get("sum").payload);
  REQUIRE(total_space_h1(rob) == AbelianGroup{2, {2, 2}});
}

TEST_CASE("trisection blocks survive the round trip with their matrices") {
  FramedLinkDiagram d;
  d.handles = 1;
  d.components = {{"l1", W({1, 1}), 0}};
  TrisectionDiagram t = wrinkle_compile(harer_compile(d));
  Block b;
  b.type = Block::Type::trisection;
  b.name = "T";
  b.payload = t;
  Document doc;
  doc.blocks.push_back(b);
  Document re = parse_document(emit_document(doc));
  const auto& rt = std::get<TrisectionDiagram>(re.get("T").payload);
  REQUIRE(rt.surface == t.surface);
  REQUIRE(rt.i_ag == t.i_ag);
  REQUIRE(rt.arcs_alpha == t.arcs_alpha);
  REQUIRE(rt.boundary_page == t.boundary_page);
  REQUIRE(rt.boundary_h1 == t.boundary_h1);
  REQUIRE(validate_diagram(rt).ok);
}

TEST_CASE("comments and blank lines are ignored") {
  Document doc = parse_document(
      "nofib 1\n\n# a comment\n\nsurface S orientable genus=1 boundary=2\n");
  REQUIRE(doc.blocks.size() == 1);
}

TEST_CASE("mutilated documents fail cleanly") {
  Document doc;
  Block ob;
  ob.type = Block::Type::openbook;
  ob.name = "sum";
  ob.payload = murasugi_chain_s1xrp2(2);
  doc.blocks.push_back(ob);
  FramedLinkDiagram d;
  d.handles = 2;
  d.components = {{"l1", W({1, 2, 1}), -2}};
  Block tri;
  tri.type = Block::Type::trisection;
  tri.name = "T";
  tri.payload = wrinkle_compile(harer_compile(d));
  doc.blocks.push_back(tri);
  std::string text = emit_document(doc);

  std::mt19937 rng(71);
  std::uniform_int_distribution<size_t> pos(0, text.size() - 1);
  std::uniform_int_distribution<int> mode(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    std::string broken = text;
    switch (mode(rng)) {
      case 0: broken.erase(pos(rng), 1 + pos(rng) % 40); break;
      case 1: broken = broken.substr(0, pos(rng)); break;
      case 2: broken.insert(pos(rng), " 0"); break;
      case 3: broken[pos(rng)] = '^'; break;
    }
    try {
      Document mutant = parse_document(broken);
      (void)mutant;  // still-valid documents are fine
    } catch (const parse_error&) {
    } catch (const error&) {
    }
  }
}
