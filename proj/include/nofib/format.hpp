#pragma once

// The toolkit text format: a line-oriented document of named blocks with
// key=value fields and two-space indented sub-lines. Emission is canonical
// and deterministic; emit(parse(t)) is byte-identical for canonical inputs.

#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "nofib/groups.hpp"
#include "nofib/lefschetz.hpp"
#include "nofib/openbook.hpp"
#include "nofib/surfaces.hpp"
#include "nofib/trisect.hpp"

namespace nofib {

inline constexpr int kFormatVersion = 1;

struct Block {
  enum class Type { surface, page, openbook, linkdiagram, lefschetz, trisection };
  Type type = Type::surface;
  std::string name;
  std::string page_ref;  // openbook blocks: name of the referenced page block
  std::variant<SurfaceSig, PagePresentation, OpenBook, FramedLinkDiagram,
               LefschetzFibration, TrisectionDiagram>
      payload;
};

inline const char* block_type_name(Block::Type t) {
  switch (t) {
    case Block::Type::surface: return "surface";
    case Block::Type::page: return "page";
    case Block::Type::openbook: return "openbook";
    case Block::Type::linkdiagram: return "linkdiagram";
    case Block::Type::lefschetz: return "lefschetz";
    case Block::Type::trisection: return "trisection";
  }
  return "?";
}

struct Document {
  int version = kFormatVersion;
  std::vector<Block> blocks;

  const Block* find(const std::string& name) const {
    for (const Block& b : blocks)
      if (b.name == name) return &b;
    return nullptr;
  }
  const Block& get(const std::string& name) const {
    const Block* b = find(name);
    if (!b) throw error("no block named '" + name + "' in the document");
    return *b;
  }
};

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

namespace fmt_detail {

inline std::string sig_string(const SurfaceSig& s) { return s.to_string(); }

inline void emit_presentation_lines(std::ostringstream& o, const FPGroup& g) {
  o << "  generators";
  for (const auto& name : g.generators) o << ' ' << name;
  o << '\n';
  for (const Word& r : g.relators) o << "  relator " << word_to_string(r, g) << '\n';
}

inline void emit_page_body(std::ostringstream& o, const PagePresentation& p) {
  o << "  surface " << sig_string(p.sig) << '\n';
  emit_presentation_lines(o, p.group);
  for (const Word& w : p.boundary_words)
    o << "  boundary " << word_to_string(w, p.group) << '\n';
  if (p.sig.boundary > 0) o << "  base " << p.base_boundary << '\n';
}

inline void emit_openbook_body(std::ostringstream& o, const OpenBook& ob,
                               const std::string& page_name) {
  o << "  page " << page_name << '\n';
  for (const TwistRef& t : ob.monodromy.twist_word)
    o << "  twist id=" << t.curve << " hand=" << (t.handedness > 0 ? "+" : "-")
      << '\n';
  o << "  twistsubgroup " << (ob.monodromy.in_twist_subgroup ? 1 : 0) << '\n';
  for (int i = 0; i < ob.page.group.ngens(); ++i)
    o << "  image " << ob.page.group.generators[i] << ' '
      << word_to_string(ob.monodromy.images[i], ob.page.group) << '\n';
  for (int j = 0; j < ob.page.sig.boundary; ++j) {
    if (j == ob.page.base_boundary) continue;
    o << "  transport " << j << ' '
      << word_to_string(ob.monodromy.transports[j], ob.page.group) << '\n';
  }
}

inline void emit_matrix_lines(std::ostringstream& o, const char* key,
                              const IntMatrix& m) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0)
        o << "  " << key << ' ' << i << ' ' << j << ' ' << m.at(i, j) << '\n';
}

}  // namespace fmt_detail

inline std::string emit_block(const Block& b) {
  std::ostringstream o;
  o << block_type_name(b.type) << ' ' << b.name;
  switch (b.type) {
    case Block::Type::surface: {
      o << ' ' << fmt_detail::sig_string(std::get<SurfaceSig>(b.payload)) << '\n';
      break;
    }
    case Block::Type::page: {
      o << '\n';
      fmt_detail::emit_page_body(o, std::get<PagePresentation>(b.payload));
      break;
    }
    case Block::Type::openbook: {
      o << '\n';
      const auto& ob = std::get<OpenBook>(b.payload);
      fmt_detail::emit_openbook_body(
          o, ob, b.page_ref.empty() ? b.name + ".page" : b.page_ref);
      break;
    }
    case Block::Type::linkdiagram: {
      o << '\n';
      const auto& d = std::get<FramedLinkDiagram>(b.payload);
      o << "  handles " << d.handles << '\n';
      FPGroup page_group = page_disk_with_twisted_bands(d.handles).group;
      for (const auto& c : d.components)
        o << "  component " << c.id << " framing " << c.framing << " word "
          << word_to_string(c.projected, page_group) << '\n';
      for (const auto& x : d.crossings)
        o << "  crossing " << d.components[x.comp_a].id << ' ' << x.strand_a
          << ' ' << d.components[x.comp_b].id << ' ' << x.strand_b << '\n';
      break;
    }
    case Block::Type::lefschetz: {
      o << '\n';
      const auto& lf = std::get<LefschetzFibration>(b.payload);
      o << "  base " << (lf.base == FibrationBase::disk ? "disk" : "sphere")
        << '\n';
      o << "  fiber " << fmt_detail::sig_string(lf.fiber()) << '\n';
      fmt_detail::emit_presentation_lines(o, lf.fiber_page.group);
      for (const Word& w : lf.fiber_page.boundary_words)
        o << "  boundary " << word_to_string(w, lf.fiber_page.group) << '\n';
      if (lf.fiber().boundary > 0)
        o << "  basebd " << lf.fiber_page.base_boundary << '\n';
      for (const auto& vc : lf.cycles)
        o << "  cycle " << vc.curve.id << " sign "
          << (vc.sign > 0 ? "+" : "-") << " origin " << origin_name(vc.origin)
          << " class " << vc.curve.cls.to_string() << " word "
          << word_to_string(vc.curve.word, lf.fiber_page.group) << '\n';
      for (int i = 0; i < lf.cycle_count(); ++i)
        for (int j = i + 1; j < lf.cycle_count(); ++j)
          if (lf.intersections.at(i, j) != 0)
            o << "  intersect " << lf.cycles[i].curve.id << ' '
              << lf.cycles[j].curve.id << ' ' << lf.intersections.at(i, j)
              << '\n';
      for (int s : lf.sections) o << "  section " << s << '\n';
      break;
    }
    case Block::Type::trisection: {
      o << '\n';
      const auto& d = std::get<TrisectionDiagram>(b.payload);
      o << "  surface " << fmt_detail::sig_string(d.surface) << '\n';
      o << "  relative " << (d.relative ? 1 : 0) << '\n';
      o << "  core " << d.core << '\n';
      auto emit_system = [&](const char* key,
                             const std::vector<std::string>& ids) {
        o << "  " << key;
        for (const auto& id : ids) o << ' ' << id;
        o << '\n';
      };
      emit_system("alpha", d.alpha);
      emit_system("beta", d.beta);
      emit_system("gamma", d.gamma);
      fmt_detail::emit_matrix_lines(o, "iab", d.i_ab);
      fmt_detail::emit_matrix_lines(o, "ibg", d.i_bg);
      fmt_detail::emit_matrix_lines(o, "iag", d.i_ag);
      for (const auto& s : d.slides)
        o << "  slide " << s.gamma_index << ' ' << s.over_beta << ' '
          << s.times << '\n';
      if (d.relative)
        o << "  arcs " << d.arcs_alpha << ' ' << d.arcs_beta << ' '
          << d.arcs_gamma << '\n';
      o << "  provenance " << provenance_name(d.provenance) << '\n';
      o << "  chi " << d.chi_expected << '\n';
      if (d.boundary_page)
        o << "  boundary-page " << fmt_detail::sig_string(*d.boundary_page)
          << '\n';
      if (d.boundary_h1)
        o << "  boundary-h1 " << d.boundary_h1->to_string() << '\n';
      if (!d.glue_check.empty()) o << "  gluecheck " << d.glue_check << '\n';
      break;
    }
  }
  return o.str();
}

inline std::string emit_document(const Document& doc) {
  std::string out = "nofib " + std::to_string(doc.version) + "\n";
  for (const Block& b : doc.blocks) {
    out += '\n';
    if (b.type == Block::Type::openbook && b.page_ref.empty() &&
        !doc.find(b.name + ".page")) {
      // an open book block is preceded by its page block
      Block pb;
      pb.type = Block::Type::page;
      pb.name = b.name + ".page";
      pb.payload = std::get<OpenBook>(b.payload).page;
      out += emit_block(pb);
      out += '\n';
    }
    out += emit_block(b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace fmt_detail {

struct Line {
  int number = 0;
  bool indented = false;
  std::vector<std::string> tokens;
};

inline std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    std::string raw = text.substr(
        pos, end == std::string::npos ? std::string::npos : end - pos);
    ++number;
    pos = end == std::string::npos ? text.size() + 1 : end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string trimmed = raw;
    size_t first = trimmed.find_first_not_of(' ');
    if (first == std::string::npos) continue;  // blank
    if (trimmed[first] == '#') continue;       // comment
    Line l;
    l.number = number;
    l.indented = first > 0;
    std::istringstream is(trimmed);
    std::string tok;
    while (is >> tok) l.tokens.push_back(tok);
    lines.push_back(l);
  }
  return lines;
}

inline int64_t to_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw parse_error("expected an integer, got '" + s + "'", line, 1);
  }
}

inline std::string kv_value(const std::string& tok, const std::string& key,
                            int line) {
  std::string prefix = key + "=";
  if (tok.rfind(prefix, 0) != 0)
    throw parse_error("expected " + key + "=..., got '" + tok + "'", line, 1);
  return tok.substr(prefix.size());
}

inline SurfaceSig parse_sig(const std::vector<std::string>& tokens, size_t at,
                            int line) {
  if (tokens.size() < at + 3)
    throw parse_error("surface signature needs orientability, genus=, boundary=",
                      line, 1);
  SurfaceSig s;
  if (tokens[at] == "orientable") s.orientable = true;
  else if (tokens[at] == "nonorientable") s.orientable = false;
  else
    throw parse_error("expected orientable|nonorientable, got '" + tokens[at] +
                          "'", line, 1);
  s.genus = static_cast<int>(to_int(kv_value(tokens[at + 1], "genus", line), line));
  s.boundary =
      static_cast<int>(to_int(kv_value(tokens[at + 2], "boundary", line), line));
  return s;
}

inline int generator_index(const FPGroup& g, const std::string& name, int line) {
  for (int i = 0; i < g.ngens(); ++i)
    if (g.generators[i] == name) return i;
  throw parse_error("unknown generator '" + name + "'", line, 1);
}

inline Word parse_word(const std::vector<std::string>& tokens, size_t at,
                       const FPGroup& g, int line) {
  if (at < tokens.size() && tokens[at] == "1" && at + 1 == tokens.size())
    return Word{};
  std::vector<int> letters;
  for (size_t i = at; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    size_t caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    int64_t exp =
        caret == std::string::npos ? 1 : to_int(tok.substr(caret + 1), line);
    int gi = generator_index(g, name, line);
    if (exp == 0) throw parse_error("zero exponent in word", line, 1);
    int sign = exp > 0 ? 1 : -1;
    for (int64_t k = 0; k < (exp > 0 ? exp : -exp); ++k)
      letters.push_back(sign * (gi + 1));
  }
  return Word::reduce(letters);
}

inline CurveClass parse_curve_class(const std::string& s, int line) {
  if (s == "nullhomotopic") return CurveClass::of(CurveClassKind::nullhomotopic);
  if (s == "bounds-mobius") return CurveClass::of(CurveClassKind::bounds_mobius);
  if (s == "generic-two-sided")
    return CurveClass::of(CurveClassKind::generic_two_sided);
  if (s == "one-sided") return CurveClass::of(CurveClassKind::one_sided);
  if (s == "unknown") return CurveClass::of(CurveClassKind::unknown);
  if (s.rfind("boundary-parallel(", 0) == 0 && s.back() == ')')
    return CurveClass::parallel_to(static_cast<int>(
        to_int(s.substr(18, s.size() - 19), line)));
  throw parse_error("unknown curve class '" + s + "'", line, 1);
}

inline AbelianGroup parse_abelian(const std::vector<std::string>& tokens,
                                  size_t at, int line) {
  if (tokens.size() < at + 2)
    throw parse_error("expected rank=R torsion=[..]", line, 1);
  AbelianGroup a;
  a.rank = static_cast<int>(to_int(kv_value(tokens[at], "rank", line), line));
  std::string t = kv_value(tokens[at + 1], "torsion", line);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw parse_error("torsion list must look like [d1,...]", line, 1);
  std::string inner = t.substr(1, t.size() - 2);
  size_t pos = 0;
  while (pos < inner.size()) {
    size_t comma = inner.find(',', pos);
    std::string item = inner.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    a.torsion.push_back(to_int(item, line));
    pos = comma == std::string::npos ? inner.size() : comma + 1;
  }
  return a;
}

}  // namespace fmt_detail

inline Document parse_document(const std::string& text) {
  using fmt_detail::Line;
  std::vector<Line> lines = fmt_detail::split_lines(text);
  if (lines.empty())
    throw parse_error("missing version header", 1, 1);
  if (lines[0].indented || lines[0].tokens.size() != 2 ||
      lines[0].tokens[0] != "nofib")
    throw parse_error("missing version header (expected 'nofib 1')",
                      lines[0].number, 1);
  int version =
      static_cast<int>(fmt_detail::to_int(lines[0].tokens[1], lines[0].number));
  if (version != kFormatVersion)
    throw parse_error("unsupported format version " + std::to_string(version),
                      lines[0].number, 1);

  Document doc;
  doc.version = version;
  size_t i = 1;
  while (i < lines.size()) {
    const Line& head = lines[i];
    if (head.indented)
      throw parse_error("field line outside any block", head.number, 1);
    if (head.tokens.size() < 2)
      throw parse_error("block header needs a type and a name", head.number, 1);
    const std::string& type = head.tokens[0];
    const std::string& name = head.tokens[1];
    if (doc.find(name))
      throw parse_error("duplicate block name '" + name + "'", head.number, 1);

    std::vector<Line> body;
    size_t j = i + 1;
    while (j < lines.size() && lines[j].indented) body.push_back(lines[j++]);

    Block b;
    b.name = name;
    try {
    if (type == "surface") {
      b.type = Block::Type::surface;
      SurfaceSig s = fmt_detail::parse_sig(head.tokens, 2, head.number);
      check_sig(s);
      b.payload = s;
      if (!body.empty())
        throw parse_error("surface blocks have no body", body[0].number, 1);
    } else if (type == "page") {
      b.type = Block::Type::page;
      PagePresentation p;
      bool have_sig = false;
      for (const Line& l : body) {
        const auto& t = l.tokens;
        if (t[0] == "surface") {
          p.sig = fmt_detail::parse_sig(t, 1, l.number);
          have_sig = true;
        } else if (t[0] == "generators") {
          for (size_t k = 1; k < t.size(); ++k) p.group.generators.push_back(t[k]);
        } else if (t[0] == "relator") {
          p.group.relators.push_back(
              fmt_detail::parse_word(t, 1, p.group, l.number));
        } else if (t[0] == "boundary") {
          p.boundary_words.push_back(
              fmt_detail::parse_word(t, 1, p.group, l.number));
        } else if (t[0] == "base") {
          p.base_boundary =
              static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
        } else {
          throw parse_error("unknown page field '" + t[0] + "'", l.number, 1);
        }
      }
      if (!have_sig)
        throw parse_error("page block needs a surface line", head.number, 1);
      check_page(p);
      b.payload = p;
    } else if (type == "openbook") {
      b.type = Block::Type::openbook;
      const PagePresentation* page = nullptr;
      std::vector<std::pair<std::string, int>> twist_records;
      std::vector<MappingClassAction> catalog_actions;
      bool explicit_mode = false;
      MappingClassAction expl;
      bool twist_subgroup_seen = false;
      bool twist_subgroup_value = true;
      for (const Line& l : body) {
        const auto& t = l.tokens;
        if (t[0] == "page") {
          const Block* pb = doc.find(t.at(1));
          if (!pb || pb->type != Block::Type::page)
            throw parse_error("openbook references unknown page '" + t[1] + "'",
                              l.number, 1);
          b.page_ref = t[1];
          page = &std::get<PagePresentation>(pb->payload);
          expl = identity_action(*page);
        } else if (t[0] == "twist") {
          if (!page)
            throw parse_error("twist before page line", l.number, 1);
          std::string id = "t" + std::to_string(twist_records.size() + 1);
          int hand = 1;
          int boundary = -1;
          std::string curve;
          for (size_t k = 1; k < t.size(); ++k) {
            if (t[k].rfind("id=", 0) == 0) id = t[k].substr(3);
            else if (t[k].rfind("hand=", 0) == 0)
              hand = t[k].substr(5) == "-" ? -1 : 1;
            else if (t[k].rfind("boundary=", 0) == 0)
              boundary = static_cast<int>(
                  fmt_detail::to_int(t[k].substr(9), l.number));
            else if (t[k].rfind("curve=", 0) == 0) curve = t[k].substr(6);
            else
              throw parse_error("unknown twist field '" + t[k] + "'", l.number, 1);
          }
          twist_records.push_back({id, hand});
          if (boundary >= 0) {
            catalog_actions.push_back(
                boundary_twist_action(*page, boundary, hand, id));
          } else if (curve == "alpha") {
            catalog_actions.push_back(klein_alpha_twist_action(*page, hand, id));
          } else if (!curve.empty()) {
            throw parse_error("unknown catalog twist curve '" + curve + "'",
                              l.number, 1);
          }
        } else if (t[0] == "mapclass") {
          if (!page) throw parse_error("mapclass before page line", l.number, 1);
          if (t.at(1) == "y-homeomorphism")
            catalog_actions.push_back(y_homeomorphism_action(*page));
          else
            throw parse_error("unknown mapping class '" + t[1] + "'", l.number, 1);
        } else if (t[0] == "image") {
          if (!page) throw parse_error("image before page line", l.number, 1);
          explicit_mode = true;
          int gi = fmt_detail::generator_index(page->group, t.at(1), l.number);
          expl.images[gi] = fmt_detail::parse_word(t, 2, page->group, l.number);
        } else if (t[0] == "transport") {
          if (!page) throw parse_error("transport before page line", l.number, 1);
          explicit_mode = true;
          int bi = static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
          if (bi < 0 || bi >= page->sig.boundary)
            throw parse_error("transport index out of range", l.number, 1);
          expl.transports[bi] =
              fmt_detail::parse_word(t, 2, page->group, l.number);
        } else if (t[0] == "twistsubgroup") {
          twist_subgroup_seen = true;
          twist_subgroup_value = fmt_detail::to_int(t.at(1), l.number) != 0;
        } else {
          throw parse_error("unknown openbook field '" + t[0] + "'", l.number, 1);
        }
      }
      if (!page)
        throw parse_error("openbook block needs a page line", head.number, 1);
      MappingClassAction mono;
      if (explicit_mode) {
        mono = expl;
      } else {
        mono = compose_monodromy(*page, catalog_actions);
      }
      mono.twist_word.clear();
      for (const auto& [id, hand] : twist_records)
        mono.twist_word.push_back(TwistRef{id, hand});
      if (twist_subgroup_seen) mono.in_twist_subgroup = twist_subgroup_value;
      b.payload = make_open_book(*page, mono);
    } else if (type == "linkdiagram") {
      b.type = Block::Type::linkdiagram;
      FramedLinkDiagram d;
      d.handles = 0;
      FPGroup page_group;
      for (const Line& l : body) {
        const auto& t = l.tokens;
        if (t[0] == "handles") {
          d.handles = static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
          if (d.handles < 1)
            throw parse_error("need at least one nonorientable 1-handle",
                              l.number, 1);
          page_group = page_disk_with_twisted_bands(d.handles).group;
        } else if (t[0] == "component") {
          if (d.handles < 1)
            throw parse_error("component before handles line", l.number, 1);
          if (t.size() < 5 || t[2] != "framing" || t[4] != "word")
            throw parse_error(
                "component line is 'component <id> framing <n> word <word>'",
                l.number, 1);
          LinkComponent c;
          c.id = t[1];
          c.framing = fmt_detail::to_int(t[3], l.number);
          c.projected = fmt_detail::parse_word(t, 5, page_group, l.number);
          d.components.push_back(c);
        } else if (t[0] == "crossing") {
          auto comp_index = [&](const std::string& id) {
            for (int k = 0; k < static_cast<int>(d.components.size()); ++k)
              if (d.components[k].id == id) return k;
            throw parse_error("crossing references unknown component '" + id +
                                  "'", l.number, 1);
          };
          Crossing x;
          x.comp_a = comp_index(t.at(1));
          x.strand_a = static_cast<int>(fmt_detail::to_int(t.at(2), l.number));
          x.comp_b = comp_index(t.at(3));
          x.strand_b = static_cast<int>(fmt_detail::to_int(t.at(4), l.number));
          d.crossings.push_back(x);
        } else {
          throw parse_error("unknown linkdiagram field '" + t[0] + "'",
                            l.number, 1);
        }
      }
      check_diagram(d);
      b.payload = d;
    } else if (type == "lefschetz") {
      b.type = Block::Type::lefschetz;
      LefschetzFibration lf;
      std::vector<std::tuple<std::string, std::string, int64_t>> inters;
      for (const Line& l : body) {
        const auto& t = l.tokens;
        if (t[0] == "base") {
          if (t.at(1) == "disk") lf.base = FibrationBase::disk;
          else if (t[1] == "sphere") lf.base = FibrationBase::sphere;
          else throw parse_error("base is disk or sphere", l.number, 1);
        } else if (t[0] == "fiber") {
          lf.fiber_page.sig = fmt_detail::parse_sig(t, 1, l.number);
        } else if (t[0] == "generators") {
          for (size_t k = 1; k < t.size(); ++k)
            lf.fiber_page.group.generators.push_back(t[k]);
        } else if (t[0] == "relator") {
          lf.fiber_page.group.relators.push_back(
              fmt_detail::parse_word(t, 1, lf.fiber_page.group, l.number));
        } else if (t[0] == "boundary") {
          lf.fiber_page.boundary_words.push_back(
              fmt_detail::parse_word(t, 1, lf.fiber_page.group, l.number));
        } else if (t[0] == "basebd") {
          lf.fiber_page.base_boundary =
              static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
        } else if (t[0] == "cycle") {
          if (t.size() < 9 || t[2] != "sign" || t[4] != "origin" ||
              t[6] != "class" || t[8] != "word")
            throw parse_error(
                "cycle line is 'cycle <id> sign <s> origin <o> class <c> word "
                "<word>'",
                l.number, 1);
          VanishingCycle vc;
          vc.curve.id = t[1];
          vc.sign = t[3] == "-" ? -1 : 1;
          std::string orig = t[5];
          if (orig == "link-component") vc.origin = CycleOrigin::link_component;
          else if (orig == "crossing-fix") vc.origin = CycleOrigin::crossing_fix;
          else if (orig == "framing-fix") vc.origin = CycleOrigin::framing_fix;
          else if (orig == "catalog") vc.origin = CycleOrigin::catalog;
          else throw parse_error("unknown cycle origin '" + orig + "'", l.number, 1);
          vc.curve.cls = fmt_detail::parse_curve_class(t[7], l.number);
          vc.curve.sided = vc.curve.cls.kind == CurveClassKind::one_sided
                               ? Sidedness::one_sided
                               : Sidedness::two_sided;
          vc.curve.word =
              fmt_detail::parse_word(t, 9, lf.fiber_page.group, l.number);
          lf.cycles.push_back(vc);
        } else if (t[0] == "intersect") {
          inters.push_back(
              {t.at(1), t.at(2), fmt_detail::to_int(t.at(3), l.number)});
        } else if (t[0] == "section") {
          lf.sections.push_back(
              static_cast<int>(fmt_detail::to_int(t.at(1), l.number)));
        } else {
          throw parse_error("unknown lefschetz field '" + t[0] + "'", l.number, 1);
        }
      }
      int n = lf.cycle_count();
      lf.intersections = IntMatrix(n, n);
      auto cycle_index = [&](const std::string& id) {
        for (int k = 0; k < n; ++k)
          if (lf.cycles[k].curve.id == id) return k;
        throw parse_error("intersect references unknown cycle '" + id + "'",
                          head.number, 1);
      };
      for (const auto& [a, bb, v] : inters) {
        int ia = cycle_index(a), ib = cycle_index(bb);
        lf.intersections.at(ia, ib) = v;
        lf.intersections.at(ib, ia) = v;
      }
      check_fibration(lf);
      b.payload = lf;
    } else if (type == "trisection") {
      b.type = Block::Type::trisection;
      TrisectionDiagram d;
      std::vector<std::tuple<char, int, int, int64_t>> entries;
      for (const Line& l : body) {
        const auto& t = l.tokens;
        if (t[0] == "surface") d.surface = fmt_detail::parse_sig(t, 1, l.number);
        else if (t[0] == "relative")
          d.relative = fmt_detail::to_int(t.at(1), l.number) != 0;
        else if (t[0] == "core")
          d.core = static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
        else if (t[0] == "alpha" || t[0] == "beta" || t[0] == "gamma") {
          auto& sys = t[0] == "alpha" ? d.alpha : t[0] == "beta" ? d.beta : d.gamma;
          for (size_t k = 1; k < t.size(); ++k) sys.push_back(t[k]);
        } else if (t[0] == "iab" || t[0] == "ibg" || t[0] == "iag") {
          entries.push_back({t[0][1] == 'a' && t[0][2] == 'b' ? 'a'
                             : t[0][1] == 'b' ? 'b' : 'g',
                             static_cast<int>(fmt_detail::to_int(t.at(1), l.number)),
                             static_cast<int>(fmt_detail::to_int(t.at(2), l.number)),
                             fmt_detail::to_int(t.at(3), l.number)});
        } else if (t[0] == "slide") {
          d.slides.push_back(
              {static_cast<int>(fmt_detail::to_int(t.at(1), l.number)),
               static_cast<int>(fmt_detail::to_int(t.at(2), l.number)),
               fmt_detail::to_int(t.at(3), l.number)});
        } else if (t[0] == "arcs") {
          d.arcs_alpha = static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
          d.arcs_beta = static_cast<int>(fmt_detail::to_int(t.at(2), l.number));
          d.arcs_gamma = static_cast<int>(fmt_detail::to_int(t.at(3), l.number));
        } else if (t[0] == "provenance") {
          if (t.at(1) == "wrinkled") d.provenance = DiagramProvenance::wrinkled;
          else if (t[1] == "doubled") d.provenance = DiagramProvenance::doubled;
          else if (t[1] == "glued") d.provenance = DiagramProvenance::glued;
          else d.provenance = DiagramProvenance::manual;
        } else if (t[0] == "chi") {
          d.chi_expected = static_cast<int>(fmt_detail::to_int(t.at(1), l.number));
        } else if (t[0] == "boundary-page") {
          d.boundary_page = fmt_detail::parse_sig(t, 1, l.number);
        } else if (t[0] == "boundary-h1") {
          d.boundary_h1 = fmt_detail::parse_abelian(t, 1, l.number);
        } else if (t[0] == "gluecheck") {
          for (size_t k = 1; k < t.size(); ++k)
            d.glue_check += (k > 1 ? " " : "") + t[k];
        } else {
          throw parse_error("unknown trisection field '" + t[0] + "'", l.number, 1);
        }
      }
      int n = d.size();
      d.i_ab = IntMatrix(n, n);
      d.i_bg = IntMatrix(n, n);
      d.i_ag = IntMatrix(n, n);
      for (const auto& [which, r, c, v] : entries) {
        if (r < 0 || r >= n || c < 0 || c >= n)
          throw parse_error("matrix entry out of range", head.number, 1);
        (which == 'a' ? d.i_ab : which == 'b' ? d.i_bg : d.i_ag).at(r, c) = v;
      }
      b.payload = d;
    } else {
      throw parse_error("unknown block type '" + type + "'", head.number, 1);
    }
    } catch (const parse_error&) {
      throw;
    } catch (const std::out_of_range&) {
      throw parse_error("truncated field line in block '" + name + "'",
                        head.number, 1);
    } catch (const error& e) {
      throw parse_error(e.what(), head.number, 1);
    }
    doc.blocks.push_back(std::move(b));
    i = j;
  }
  return doc;
}

}  // namespace nofib
