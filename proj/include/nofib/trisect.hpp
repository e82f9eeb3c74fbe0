#pragma once

// Relative trisection diagrams from Lefschetz fibrations over the disk via
// the wrinkling move, doubling and gluing of relative diagrams into closed
// ones, and combinatorial validation. Diagrams are tracked at the level of
// curve counts, intersection matrices, slide logs and Euler characteristic;
// curves are ids, not embeddings.

#include <optional>
#include <string>
#include <vector>

#include "nofib/lefschetz.hpp"
#include "nofib/surfaces.hpp"

namespace nofib {

struct SlideRecord {
  int gamma_index = 0;
  int over_beta = 0;
  int64_t times = 0;
};

enum class DiagramProvenance { wrinkled, doubled, glued, manual };

inline const char* provenance_name(DiagramProvenance p) {
  switch (p) {
    case DiagramProvenance::wrinkled: return "wrinkled";
    case DiagramProvenance::doubled: return "doubled";
    case DiagramProvenance::glued: return "glued";
    case DiagramProvenance::manual: return "manual";
  }
  return "?";
}

struct TrisectionDiagram {
  SurfaceSig surface;
  bool relative = false;
  std::vector<std::string> alpha, beta, gamma;
  // i_ag rows are gamma indices, columns alpha indices; lower-triangular
  // with unit diagonal on the core block
  IntMatrix i_ab, i_bg, i_ag;
  std::vector<SlideRecord> slides;
  int arcs_alpha = 0, arcs_beta = 0, arcs_gamma = 0;  // cut arcs (relative)
  // curves below `core` satisfy the wrinkle standardness conditions; the
  // rest are doubled cut arcs, recorded as parallel triples
  int core = 0;
  DiagramProvenance provenance = DiagramProvenance::manual;
  int chi_expected = 0;  // recorded at construction
  std::optional<SurfaceSig> boundary_page;  // induced open book page
  std::optional<AbelianGroup> boundary_h1;  // its total-space H1, when known
  std::string glue_check;  // how the boundary match was established

  int size() const { return static_cast<int>(alpha.size()); }
};

struct DiagramReport {
  bool ok = true;
  std::vector<std::string> problems;
};

inline DiagramReport validate_diagram(const TrisectionDiagram& d) {
  DiagramReport rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.problems.push_back(m);
  };
  int n = d.size();
  if (static_cast<int>(d.beta.size()) != n ||
      static_cast<int>(d.gamma.size()) != n)
    fail("curve systems must have equal length");
  for (const IntMatrix* m : {&d.i_ab, &d.i_bg, &d.i_ag})
    if (m->rows != n || m->cols != n) fail("intersection matrix size mismatch");
  if (d.core < 0 || d.core > n) fail("core size out of range");
  if (!rep.ok) return rep;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool core_pair = i < d.core && j < d.core;
      int64_t ab = d.i_ab.at(i, j), bg = d.i_bg.at(i, j), ag = d.i_ag.at(i, j);
      if (ab < 0 || bg < 0 || ag < 0) fail("negative intersection count");
      if (core_pair) {
        if (ab != (i == j ? 1 : 0))
          fail("alpha/beta core block is not the identity at (" +
               std::to_string(i) + "," + std::to_string(j) + ")");
        if (bg != (i == j ? 1 : 0))
          fail("beta/gamma core block is not the identity at (" +
               std::to_string(i) + "," + std::to_string(j) + ")");
        if (i == j && ag != 1) fail("gamma must meet its alpha partner once");
        if (i < j && ag != 0)
          fail("alpha/gamma core block is not lower-triangular at (" +
               std::to_string(i) + "," + std::to_string(j) + ")");
      } else {
        // doubled cut arcs are parallel triples, disjoint from everything
        if (ab != 0 || bg != 0 || ag != 0)
          fail("arc-derived curves must be disjoint from all systems");
      }
    }
  if (euler_char(d.surface) != d.chi_expected)
    fail("surface Euler characteristic " +
         std::to_string(euler_char(d.surface)) +
         " does not match construction value " +
         std::to_string(d.chi_expected));
  if (!d.relative) {
    if (!d.surface.closed()) fail("a closed diagram needs a closed surface");
    if (d.arcs_alpha || d.arcs_beta || d.arcs_gamma)
      fail("closed diagrams carry no cut arcs");
  } else {
    if (d.surface.closed()) fail("a relative diagram needs boundary");
  }
  if (d.provenance == DiagramProvenance::wrinkled && d.boundary_page) {
    SurfaceSig expect = d.boundary_page.value();
    for (int i = 0; i < d.core; ++i) expect = attach_tube(expect);
    if (!(expect == d.surface))
      fail("wrinkled surface signature does not match fiber plus tubes");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Wrinkling
// ---------------------------------------------------------------------------

// Minimal number of arcs cutting the induced open book page into a disk.
inline int minimal_cut_arcs(const SurfaceSig& page) {
  return std::max(0, 1 - euler_char(page));
}

// Replaces an annular neighborhood of each vanishing cycle with a tube
// carrying one alpha/beta/gamma triple; gamma_j slides over beta_i once per
// intersection of cycles i < j, after which gamma_j meets alpha_i that many
// times and the pair systems are standard.
inline TrisectionDiagram wrinkle_compile(const LefschetzFibration& lf) {
  check_fibration(lf);
  if (lf.base != FibrationBase::disk || lf.fiber().closed())
    throw error("wrinkling applies to fibrations over the disk with bounded fiber");
  int n = lf.cycle_count();
  TrisectionDiagram d;
  d.relative = true;
  d.provenance = DiagramProvenance::wrinkled;
  d.surface = lf.fiber();
  for (int i = 0; i < n; ++i) d.surface = attach_tube(d.surface);
  d.chi_expected = euler_char(lf.fiber()) - 2 * n;
  d.core = n;
  for (int i = 0; i < n; ++i) {
    d.alpha.push_back("a" + std::to_string(i + 1));
    d.beta.push_back("b" + std::to_string(i + 1));
    d.gamma.push_back(lf.cycles[i].curve.id);
  }
  d.i_ab = IntMatrix::identity(n);
  d.i_bg = IntMatrix::identity(n);
  d.i_ag = IntMatrix::identity(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      int64_t t = lf.intersections.at(i, j);
      if (t > 0) {
        d.slides.push_back({j, i, t});
        d.i_ag.at(j, i) = t;
      }
    }
  d.arcs_alpha = d.arcs_beta = d.arcs_gamma = minimal_cut_arcs(lf.fiber());
  d.boundary_page = lf.fiber();
  try {
    d.boundary_h1 = total_space_h1(boundary_openbook(lf));
  } catch (const error&) {
    // cycles without catalog actions: the induced open book is matched by
    // signature only
  }
  return d;
}

// ---------------------------------------------------------------------------
// Gluing and doubling
// ---------------------------------------------------------------------------

struct GlueSpec {
  int w_boundary = 0;
  int v_boundary = 0;
  bool require_h1_match = true;
};

namespace detail {

inline void place_block(IntMatrix& dst, const IntMatrix& src, int offset) {
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j)
      dst.at(offset + i, offset + j) = src.at(i, j);
}

}  // namespace detail

// Glues two relative diagrams along their full boundary. The cut-arc
// systems on the two sides match up and close into one new curve per arc.
inline TrisectionDiagram glue_diagrams(const TrisectionDiagram& w,
                                       const TrisectionDiagram& v,
                                       const GlueSpec& spec = {}) {
  if (!w.relative || !v.relative)
    throw error("gluing needs two relative diagrams");
  if (w.surface.boundary != v.surface.boundary)
    throw error("gluing needs matching boundary counts");
  if (spec.w_boundary < 0 || spec.w_boundary >= w.surface.boundary ||
      spec.v_boundary < 0 || spec.v_boundary >= v.surface.boundary)
    throw error("glue spec boundary out of range");
  if (w.boundary_page && v.boundary_page &&
      !(w.boundary_page.value() == v.boundary_page.value()))
    throw error("boundary open book pages do not match");
  std::string check_level = "invariant-checked: signature";
  if (w.boundary_h1 && v.boundary_h1) {
    if (spec.require_h1_match && !(w.boundary_h1.value() == v.boundary_h1.value()))
      throw error("boundary open book H1 invariants do not match");
    check_level = "invariant-checked: signature and H1";
  }
  if (w.arcs_alpha != v.arcs_alpha || w.arcs_beta != v.arcs_beta ||
      w.arcs_gamma != v.arcs_gamma)
    throw error("cut-arc systems do not match across the gluing");

  TrisectionDiagram d;
  d.relative = false;
  d.provenance = DiagramProvenance::glued;
  d.glue_check = check_level;
  int chi = euler_char(w.surface) + euler_char(v.surface);
  d.chi_expected = chi;
  d.surface.orientable = w.surface.orientable && v.surface.orientable;
  d.surface.boundary = 0;
  d.surface.genus = d.surface.orientable ? (2 - chi) / 2 : 2 - chi;

  int nw = w.size(), nv = v.size();
  int arcs[3] = {w.arcs_alpha, w.arcs_beta, w.arcs_gamma};
  std::vector<std::string>* systems[3] = {&d.alpha, &d.beta, &d.gamma};
  const std::vector<std::string>* wsys[3] = {&w.alpha, &w.beta, &w.gamma};
  const std::vector<std::string>* vsys[3] = {&v.alpha, &v.beta, &v.gamma};
  const char* arc_prefix[3] = {"arcA", "arcB", "arcG"};
  for (int s = 0; s < 3; ++s) {
    *systems[s] = *wsys[s];
    for (const std::string& id : *vsys[s]) systems[s]->push_back(id + "*");
    for (int k = 0; k < arcs[s]; ++k)
      systems[s]->push_back(arc_prefix[s] + std::to_string(k + 1));
  }
  int n = nw + nv + arcs[0];
  if (static_cast<int>(d.alpha.size()) != n ||
      static_cast<int>(d.beta.size()) != n ||
      static_cast<int>(d.gamma.size()) != n)
    throw error("cut-arc counts must agree across systems");
  d.core = nw + nv;
  d.i_ab = IntMatrix(n, n);
  d.i_bg = IntMatrix(n, n);
  d.i_ag = IntMatrix(n, n);
  detail::place_block(d.i_ab, w.i_ab, 0);
  detail::place_block(d.i_ab, v.i_ab, nw);
  detail::place_block(d.i_bg, w.i_bg, 0);
  detail::place_block(d.i_bg, v.i_bg, nw);
  detail::place_block(d.i_ag, w.i_ag, 0);
  detail::place_block(d.i_ag, v.i_ag, nw);
  d.slides = w.slides;
  for (const SlideRecord& s : v.slides)
    d.slides.push_back({s.gamma_index + nw, s.over_beta + nw, s.times});
  return d;
}

// Doubles a relative diagram: the identical diagram on the mirror half plus
// one closed curve per cut arc. Gluing a diagram with its own mirror copy
// is the same operation.
inline TrisectionDiagram double_diagram(const TrisectionDiagram& d) {
  if (!d.relative) throw error("only relative diagrams can be doubled");
  bool cuts_to_disk =
      d.boundary_page && euler_char(d.boundary_page.value()) == 1;
  if (d.arcs_alpha == 0 && !cuts_to_disk)
    throw error("doubling needs cut arcs unless the page is already a disk");
  TrisectionDiagram out = glue_diagrams(d, d, GlueSpec{0, 0, true});
  out.provenance = DiagramProvenance::doubled;
  return out;
}

// ---------------------------------------------------------------------------
// Closed trisections from fibrations over the sphere
// ---------------------------------------------------------------------------

// Splits a sphere-base fibration with a +-1 section into the neighborhood V
// of a section union fiber and its complement W, wrinkles both, and glues.
inline TrisectionDiagram closed_pipeline(const LefschetzFibration& lf,
                                         int section_index = 0) {
  check_fibration(lf);
  if (lf.base != FibrationBase::sphere)
    throw error("the closed pipeline starts from a fibration over the sphere");
  if (lf.sections.empty())
    throw error("the closed pipeline needs a section of square +-1");
  if (section_index < 0 ||
      section_index >= static_cast<int>(lf.sections.size()))
    throw error("section index out of range");
  LefschetzFibration v_piece =
      section_fiber_neighborhood(lf.fiber_page, lf.sections[section_index]);
  LefschetzFibration w_piece = remove_section_fiber_neighborhood(lf);
  TrisectionDiagram w = wrinkle_compile(w_piece);
  TrisectionDiagram v = wrinkle_compile(v_piece);
  GlueSpec spec;
  spec.require_h1_match = false;  // W's cycles rarely have catalog actions
  TrisectionDiagram out = glue_diagrams(w, v, spec);
  DiagramReport rep = validate_diagram(out);
  if (!rep.ok) throw error("closed pipeline produced an invalid diagram");
  return out;
}

}  // namespace nofib
