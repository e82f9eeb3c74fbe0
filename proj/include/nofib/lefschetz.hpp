#pragma once

// Lefschetz fibrations over the disk and the sphere with nonorientable
// fibers, and the compiler from framed-link data on a nonorientable
// 4-dimensional handlebody (1- and 2-handles only) to an explicit fibration
// over the disk. Every double point of the projected link costs one torus
// connect-sum of the fiber and two vanishing cycles; every framing
// adjustment costs one boundary-splitting band and one vanishing cycle, and
// ends with the component embedded at relative framing +-1 in its page.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nofib/groups.hpp"
#include "nofib/openbook.hpp"
#include "nofib/surfaces.hpp"

namespace nofib {

struct LinkComponent {
  std::string id;
  Word projected;   // word on the disk-with-twisted-bands page
  int64_t framing;  // relative to the projected page framing
};

struct Crossing {
  int comp_a = 0;
  int strand_a = 0;  // position in the component's projected word
  int comp_b = 0;
  int strand_b = 0;
};

struct FramedLinkDiagram {
  int handles = 1;  // p, the number of nonorientable 1-handles
  std::vector<LinkComponent> components;
  std::vector<Crossing> crossings;
};

inline void check_diagram(const FramedLinkDiagram& d) {
  if (d.handles < 1)
    throw error("diagram needs p >= 1 nonorientable 1-handles");
  for (const auto& c : d.components)
    if (c.projected.max_generator() >= d.handles)
      throw error("component " + c.id + " leaves the handlebody page");
  for (const auto& x : d.crossings) {
    auto ok = [&](int comp, int strand) {
      return comp >= 0 && comp < static_cast<int>(d.components.size()) &&
             strand >= 0 &&
             strand <= d.components[comp].projected.size();
    };
    if (!ok(x.comp_a, x.strand_a) || !ok(x.comp_b, x.strand_b))
      throw error("crossing references a missing component or strand");
  }
}

enum class FibrationBase { disk, sphere };

enum class CycleOrigin { link_component, crossing_fix, framing_fix, catalog };

inline const char* origin_name(CycleOrigin o) {
  switch (o) {
    case CycleOrigin::link_component: return "link-component";
    case CycleOrigin::crossing_fix: return "crossing-fix";
    case CycleOrigin::framing_fix: return "framing-fix";
    case CycleOrigin::catalog: return "catalog";
  }
  return "?";
}

struct VanishingCycle {
  CurveOnPage curve;
  int sign = 1;  // local-orientation token, display data
  CycleOrigin origin = CycleOrigin::catalog;
};

struct LefschetzFibration {
  FibrationBase base = FibrationBase::disk;
  PagePresentation fiber_page;
  std::vector<VanishingCycle> cycles;
  IntMatrix intersections;  // pairwise geometric intersection counts
  std::vector<int> sections;  // one square (+1/-1) per section

  SurfaceSig fiber() const { return fiber_page.sig; }
  int cycle_count() const { return static_cast<int>(cycles.size()); }
};

inline void check_fibration(const LefschetzFibration& lf) {
  check_page(lf.fiber_page);
  if (lf.fiber().orientable)
    throw error("fibrations here have nonorientable fibers");
  if (lf.base == FibrationBase::sphere && !lf.fiber().closed())
    throw error("a sphere base requires a closed fiber");
  int n = lf.cycle_count();
  if (lf.intersections.rows != n || lf.intersections.cols != n)
    throw error("intersection matrix size does not match the cycle list");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (lf.intersections.at(i, j) != lf.intersections.at(j, i))
        throw error("intersection matrix must be symmetric");
      if (lf.intersections.at(i, j) < 0)
        throw error("intersection counts are nonnegative");
    }
  for (int s : lf.sections)
    if (s != 1 && s != -1) throw error("section squares are +-1");
}

// ---------------------------------------------------------------------------
// The compiler
// ---------------------------------------------------------------------------

inline int framing_fix_count(int64_t f) {
  int64_t down = f - 1 < 0 ? 1 - f : f - 1;
  int64_t up = f + 1 < 0 ? -(f + 1) : f + 1;
  return static_cast<int>(std::min(down, up));
}

inline int terminal_framing_sign(int64_t f) {
  int64_t down = f - 1 < 0 ? 1 - f : f - 1;
  int64_t up = f + 1 < 0 ? -(f + 1) : f + 1;
  return down <= up ? 1 : -1;
}

inline LefschetzFibration harer_compile(const FramedLinkDiagram& d) {
  check_diagram(d);
  int p = d.handles;
  int nc = static_cast<int>(d.components.size());

  PagePresentation page = page_disk_with_twisted_bands(p);

  // insertions into component words: (position in projected word, letter)
  std::vector<std::vector<std::pair<int, int>>> inserts(nc);
  std::vector<VanishingCycle> crossing_cycles;

  for (int k = 0; k < static_cast<int>(d.crossings.size()); ++k) {
    const Crossing& x = d.crossings[k];
    int qa = page.group.ngens();
    page = page_torus_sum(page, "q" + std::to_string(k + 1) + "a",
                          "q" + std::to_string(k + 1) + "b");
    inserts[x.comp_a].push_back({x.strand_a, qa + 1});
    inserts[x.comp_b].push_back({x.strand_b, qa + 2});
    for (int side = 0; side < 2; ++side) {
      CurveOnPage c;
      c.id = "q" + std::to_string(k + 1) + (side == 0 ? "a" : "b");
      c.word = Word::gen(qa + side);
      c.sided = Sidedness::two_sided;
      c.cls = CurveClass::of(CurveClassKind::unknown);
      crossing_cycles.push_back({c, 1, CycleOrigin::crossing_fix});
    }
  }

  std::vector<VanishingCycle> framing_cycles;
  std::vector<Word> component_tails(nc);
  for (int i = 0; i < nc; ++i) {
    int s = framing_fix_count(d.components[i].framing);
    for (int j = 0; j < s; ++j) {
      int h = page.group.ngens();
      std::string id =
          "s" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      page = page_split_boundary(page, 0, id);
      CurveOnPage c;
      c.id = id;
      c.word = Word::gen(h);
      c.sided = Sidedness::two_sided;
      c.cls = CurveClass::parallel_to(page.sig.boundary - 1);
      framing_cycles.push_back({c, 1, CycleOrigin::framing_fix});
      component_tails[i] = component_tails[i] * Word::gen(h);
    }
  }

  LefschetzFibration lf;
  lf.base = FibrationBase::disk;
  lf.fiber_page = page;
  lf.cycles = crossing_cycles;
  lf.cycles.insert(lf.cycles.end(), framing_cycles.begin(),
                   framing_cycles.end());
  for (int i = 0; i < nc; ++i) {
    const LinkComponent& comp = d.components[i];
    std::vector<int> letters;
    // stable insertion: handle letters enter at their strand positions in
    // crossing order
    for (int pos = 0; pos <= comp.projected.size(); ++pos) {
      for (const auto& ins : inserts[i])
        if (ins.first == pos) letters.push_back(ins.second);
      if (pos < comp.projected.size())
        letters.push_back(comp.projected.letters[pos]);
    }
    Word w = Word::reduce(letters) * component_tails[i];
    CurveOnPage c;
    c.id = comp.id;
    c.word = w;
    c.sided = Sidedness::two_sided;
    c.cls = classify_curve(page, w);
    lf.cycles.push_back({c, terminal_framing_sign(comp.framing),
                         CycleOrigin::link_component});
  }

  int n = lf.cycle_count();
  lf.intersections = IntMatrix(n, n);
  // the two cycles of each crossing meet once; everything else was
  // separated by the construction
  for (int k = 0; k < static_cast<int>(d.crossings.size()); ++k) {
    lf.intersections.at(2 * k, 2 * k + 1) = 1;
    lf.intersections.at(2 * k + 1, 2 * k) = 1;
  }
  check_fibration(lf);
  return lf;
}

// ---------------------------------------------------------------------------
// Induced open book on the boundary
// ---------------------------------------------------------------------------

struct SuppliedAction {
  std::string cycle_id;
  MappingClassAction action;
};

inline OpenBook boundary_openbook(
    const LefschetzFibration& lf,
    const std::vector<SuppliedAction>& supplied = {}) {
  check_fibration(lf);
  if (lf.base != FibrationBase::disk)
    throw error("only a disk-base fibration induces an open book");
  if (lf.fiber().closed())
    throw error("the fiber must have boundary to induce an open book");

  const PagePresentation& page = lf.fiber_page;
  std::vector<MappingClassAction> actions;
  for (const auto& vc : lf.cycles) {
    auto it = std::find_if(supplied.begin(), supplied.end(),
                           [&](const SuppliedAction& s) {
                             return s.cycle_id == vc.curve.id;
                           });
    if (it != supplied.end()) {
      actions.push_back(it->action);
      continue;
    }
    CurveClass cls = vc.curve.cls.kind == CurveClassKind::unknown
                         ? classify_curve(page, vc.curve.word)
                         : vc.curve.cls;
    if (cls.kind == CurveClassKind::boundary_parallel) {
      actions.push_back(
          boundary_twist_action(page, cls.boundary_index, vc.sign, vc.curve.id));
    } else if (cls.kind == CurveClassKind::nullhomotopic ||
               cls.kind == CurveClassKind::bounds_mobius) {
      // trivial mapping class; keeps its slot in the twist word
      MappingClassAction t = identity_action(page);
      t.twist_word = {TwistRef{vc.curve.id, vc.sign}};
      actions.push_back(t);
    } else if (cls.kind == CurveClassKind::generic_two_sided &&
               page.same_structure(page_klein_one_hole())) {
      actions.push_back(klein_alpha_twist_action(page, vc.sign, vc.curve.id));
    } else {
      throw error("cycle " + vc.curve.id +
                  " has no catalog mapping class action; supply one");
    }
  }
  MappingClassAction mono = compose_monodromy(page, actions);
  mono.in_twist_subgroup = true;
  return make_open_book(page, mono);
}

// ---------------------------------------------------------------------------
// Invariants and surgeries
// ---------------------------------------------------------------------------

inline int lf_euler_char(const LefschetzFibration& lf) {
  check_fibration(lf);
  int base_chi = lf.base == FibrationBase::sphere ? 2 : 1;
  return euler_char(lf.fiber()) * base_chi + lf.cycle_count();
}

inline LefschetzFibration fiber_sum(const LefschetzFibration& a,
                                    const LefschetzFibration& b) {
  check_fibration(a);
  check_fibration(b);
  if (a.base != FibrationBase::sphere || b.base != FibrationBase::sphere)
    throw error("fiber sum is defined over sphere bases");
  if (!a.fiber_page.same_structure(b.fiber_page))
    throw error("fiber sum needs equal fibers");
  LefschetzFibration r = a;
  r.sections.clear();
  r.cycles.insert(r.cycles.end(), b.cycles.begin(), b.cycles.end());
  int n = r.cycle_count(), na = a.cycle_count();
  IntMatrix m(n, n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) m.at(i, j) = a.intersections.at(i, j);
  for (int i = na; i < n; ++i)
    for (int j = na; j < n; ++j)
      m.at(i, j) = b.intersections.at(i - na, j - na);
  r.intersections = m;
  check_fibration(r);
  return r;
}

struct MinimalityReport {
  bool accepted = true;           // false: no legal cycle list at all
  bool relatively_minimal = true; // no nullhomotopic cycle
  bool reducible = false;         // some cycle bounds a Mobius band
  bool bundle = false;            // no singular fibers
  std::vector<std::string> notes;
};

inline CurveClass cycle_class(const LefschetzFibration& lf,
                              const VanishingCycle& vc) {
  return vc.curve.cls.kind == CurveClassKind::unknown
             ? classify_curve(lf.fiber_page, vc.curve.word)
             : vc.curve.cls;
}

inline MinimalityReport relative_minimality(const LefschetzFibration& lf) {
  check_fibration(lf);
  MinimalityReport rep;
  bool rp2_fiber = lf.fiber() == SurfaceSig{false, 1, 0};
  if (lf.cycles.empty()) {
    rep.bundle = true;
    rep.notes.push_back(rp2_fiber ? "RP^2-bundle, relatively minimal"
                                  : "bundle, relatively minimal");
    return rep;
  }
  if (rp2_fiber) {
    // every essential simple closed curve in RP^2 is one-sided
    rep.accepted = false;
    rep.relatively_minimal = false;
    rep.notes.push_back(
        "closed RP^2 fiber admits no two-sided essential vanishing cycle");
    return rep;
  }
  for (const auto& vc : lf.cycles) {
    CurveClass cls = cycle_class(lf, vc);
    if (cls.kind == CurveClassKind::nullhomotopic) {
      rep.relatively_minimal = false;
      rep.notes.push_back("cycle " + vc.curve.id +
                          " is nullhomotopic (blow-down available)");
    } else if (cls.kind == CurveClassKind::bounds_mobius) {
      rep.reducible = true;
      rep.notes.push_back("cycle " + vc.curve.id +
                          " bounds a Mobius band (reducible singularity)");
    } else if (cls.kind == CurveClassKind::one_sided) {
      rep.accepted = false;
      rep.notes.push_back("cycle " + vc.curve.id +
                          " is one-sided and cannot be a vanishing cycle");
    }
  }
  return rep;
}

struct SurgeryLogEntry {
  enum class Kind { blow_down, mobius_surgery } kind;
  std::string cycle;
  int euler_delta = -1;

  std::string to_string() const {
    return std::string(kind == Kind::blow_down
                           ? "blow-down"
                           : "surgery D^2 x~ RP^2 -> D^3 x~ S^1") +
           " at " + cycle + " (euler -1)";
  }
};

// Removes nullhomotopic cycles (blow-downs) and Mobius-bounding cycles
// (fiber surgeries); idempotent.
inline std::pair<LefschetzFibration, std::vector<SurgeryLogEntry>>
reduce_trivial_cycles(const LefschetzFibration& lf) {
  check_fibration(lf);
  LefschetzFibration r = lf;
  std::vector<SurgeryLogEntry> log;
  std::vector<int> keep;
  for (int i = 0; i < lf.cycle_count(); ++i) {
    CurveClass cls = cycle_class(lf, lf.cycles[i]);
    if (cls.kind == CurveClassKind::nullhomotopic) {
      log.push_back({SurgeryLogEntry::Kind::blow_down, lf.cycles[i].curve.id, -1});
    } else if (cls.kind == CurveClassKind::bounds_mobius) {
      log.push_back(
          {SurgeryLogEntry::Kind::mobius_surgery, lf.cycles[i].curve.id, -1});
    } else {
      keep.push_back(i);
    }
  }
  r.cycles.clear();
  for (int i : keep) r.cycles.push_back(lf.cycles[i]);
  int n = static_cast<int>(keep.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = lf.intersections.at(keep[i], keep[j]);
  r.intersections = m;
  return {r, log};
}

// H1 of the total space of a fibration over S^2: the fiber's H1 modulo the
// classes of the vanishing cycles.
inline AbelianGroup lf_h1_over_sphere(const LefschetzFibration& lf) {
  check_fibration(lf);
  if (lf.base != FibrationBase::sphere || !lf.fiber().closed())
    throw error("h1-over-sphere needs a sphere base and a closed fiber");
  FPGroup g;
  g.generators = lf.fiber_page.group.generators;
  g.relators = lf.fiber_page.group.relators;
  for (const auto& vc : lf.cycles) g.relators.push_back(vc.curve.word);
  return abelianize(g);
}

// ---------------------------------------------------------------------------
// Pencils and section neighborhoods
// ---------------------------------------------------------------------------

struct PencilResult {
  LefschetzFibration fibration;
  bool verified = false;  // twist word checked equal to the boundary twists
};

// A factorization of t_bd1 ... t_bdk into interior twists on a bounded page
// yields a fibration over the sphere with k sections after blowing up the
// base locus. The claim is checked against the catalog boundary-twist
// composite when every cycle has a catalog action; otherwise the result is
// marked unverified.
inline PencilResult pencil_to_fibration(const PagePresentation& page,
                                        const std::vector<VanishingCycle>& word,
                                        const IntMatrix& intersections) {
  check_page(page);
  if (page.sig.orientable) throw error("pencil pages here are nonorientable");
  if (page.same_structure(page_klein_one_hole()))
    throw error(
        "no pencil on the Klein bottle with one hole: the boundary twist is "
        "no power of the alpha twist");
  int k = page.sig.boundary;

  bool verified = false;
  bool all_catalog = true;
  std::vector<MappingClassAction> actions;
  for (const auto& vc : word) {
    CurveClass cls = vc.curve.cls.kind == CurveClassKind::unknown
                         ? classify_curve(page, vc.curve.word)
                         : vc.curve.cls;
    if (cls.kind == CurveClassKind::boundary_parallel) {
      actions.push_back(
          boundary_twist_action(page, cls.boundary_index, vc.sign, vc.curve.id));
    } else if (cls.kind == CurveClassKind::nullhomotopic ||
               cls.kind == CurveClassKind::bounds_mobius) {
      actions.push_back(identity_action(page));
    } else {
      all_catalog = false;
      break;
    }
  }
  if (all_catalog) {
    std::vector<MappingClassAction> boundary_twists;
    for (int i = 0; i < k; ++i)
      boundary_twists.push_back(boundary_twist_action(page, i, 1, "bd"));
    verified = action_equal(page, compose_monodromy(page, actions),
                            compose_monodromy(page, boundary_twists));
  }

  // cap the boundary components
  int g = page.sig.genus;
  LefschetzFibration lf;
  lf.base = FibrationBase::sphere;
  if (k == 0) {
    if (page.group.relators.size() != 1)
      throw error("closed pencil page must carry its one-relator presentation");
    lf.fiber_page = page;
    lf.cycles = word;
  } else if (page.same_structure(page_nonorientable(g, k))) {
    PagePresentation closed;
    closed.sig = {false, g, 0};
    for (int i = 0; i < g; ++i)
      closed.group.generators.push_back(page.group.generators[i]);
    Word rel;
    for (int i = 0; i < g; ++i) rel = rel * Word::gen(i) * Word::gen(i);
    closed.group.relators = {rel};
    lf.fiber_page = closed;
    for (const auto& vc : word) {
      VanishingCycle c = vc;
      // capping kills the boundary generators
      std::vector<int> letters;
      for (int x : c.curve.word.letters)
        if (std::abs(x) - 1 < g) letters.push_back(x);
      c.curve.word = Word::reduce(letters);
      c.curve.cls = CurveClass::of(CurveClassKind::unknown);
      lf.cycles.push_back(c);
    }
  } else {
    throw error("pencil page must be the standard one-relator presentation");
  }
  lf.intersections = intersections;
  lf.sections.assign(k, -1);  // square opposite the blown-up base locus
  check_fibration(lf);
  return {lf, verified};
}

// Neighborhood of a square +-1 section union a regular fiber F: a fibration
// over the disk with fiber F minus a disk and one singular fiber carrying a
// nullhomotopic cycle and a boundary-parallel cycle, disjoint from each
// other.
inline LefschetzFibration section_fiber_neighborhood(
    const PagePresentation& closed_fiber, int square) {
  check_page(closed_fiber);
  if (!closed_fiber.sig.closed() || closed_fiber.sig.orientable)
    throw error("section neighborhoods need a closed nonorientable fiber");
  if (square != 1 && square != -1) throw error("section square must be +-1");
  if (closed_fiber.group.relators.size() != 1)
    throw error("closed fiber must carry its one-relator presentation");

  PagePresentation punctured;
  punctured.sig = {false, closed_fiber.sig.genus, 1};
  punctured.group.generators = closed_fiber.group.generators;
  punctured.boundary_words = {closed_fiber.group.relators[0]};

  LefschetzFibration lf;
  lf.base = FibrationBase::disk;
  lf.fiber_page = punctured;
  CurveOnPage trivial;
  trivial.id = "v0";
  trivial.sided = Sidedness::two_sided;
  trivial.cls = CurveClass::of(CurveClassKind::nullhomotopic);
  CurveOnPage parallel;
  parallel.id = "v1";
  parallel.word = punctured.boundary_words[0];
  parallel.sided = Sidedness::two_sided;
  parallel.cls = CurveClass::parallel_to(0);
  lf.cycles = {{trivial, square, CycleOrigin::catalog},
               {parallel, -square, CycleOrigin::catalog}};
  lf.intersections = IntMatrix(2, 2);
  check_fibration(lf);
  return lf;
}

// The complement of a section-fiber neighborhood: the same ordered cycles
// on the punctured fiber, now over the disk.
inline LefschetzFibration remove_section_fiber_neighborhood(
    const LefschetzFibration& lf) {
  check_fibration(lf);
  if (lf.base != FibrationBase::sphere)
    throw error("can only remove a section neighborhood over the sphere");
  if (lf.fiber_page.group.relators.size() != 1)
    throw error("closed fiber must carry its one-relator presentation");
  LefschetzFibration w;
  w.base = FibrationBase::disk;
  w.fiber_page.sig = {false, lf.fiber().genus, 1};
  w.fiber_page.group.generators = lf.fiber_page.group.generators;
  w.fiber_page.boundary_words = {lf.fiber_page.group.relators[0]};
  w.cycles = lf.cycles;
  for (auto& vc : w.cycles) vc.curve.cls = CurveClass::of(CurveClassKind::unknown);
  w.intersections = lf.intersections;
  check_fibration(w);
  return w;
}

}  // namespace nofib
