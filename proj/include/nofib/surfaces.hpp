#pragma once

// Compact-surface signatures with Euler characteristic arithmetic, page
// presentations (surface with boundary + fundamental group data), the band
// stabilization operations, and curve classification on catalog pages.
//
// Genus convention: for a nonorientable surface the genus is the number of
// crosscaps; the Klein bottle has genus 2.

#include <optional>
#include <string>
#include <vector>

#include "nofib/groups.hpp"

namespace nofib {

struct SurfaceSig {
  bool orientable = false;
  int genus = 0;
  int boundary = 0;

  bool operator==(const SurfaceSig& o) const {
    return orientable == o.orientable && genus == o.genus &&
           boundary == o.boundary;
  }
  bool operator!=(const SurfaceSig& o) const { return !(*this == o); }

  bool closed() const { return boundary == 0; }

  std::string to_string() const {
    return std::string(orientable ? "orientable" : "nonorientable") +
           " genus=" + std::to_string(genus) +
           " boundary=" + std::to_string(boundary);
  }
};

inline void check_sig(const SurfaceSig& s) {
  if (s.genus < 0 || s.boundary < 0)
    throw error("surface signature fields must be nonnegative");
  if (!s.orientable && s.genus < 1)
    throw error("a nonorientable surface has genus >= 1");
}

inline int euler_char(const SurfaceSig& s) {
  check_sig(s);
  return s.orientable ? 2 - 2 * s.genus - s.boundary
                      : 2 - s.genus - s.boundary;
}

inline SurfaceSig connect_sum_torus(SurfaceSig s) {
  check_sig(s);
  s.genus += s.orientable ? 1 : 2;
  return s;
}

inline SurfaceSig add_crosscap(SurfaceSig s) {
  check_sig(s);
  s.genus = (s.orientable ? 2 * s.genus : s.genus) + 1;
  s.orientable = false;
  return s;
}

// Band with both feet on one boundary component, untwisted relative to the
// page: one extra hole.
inline SurfaceSig split_boundary_band(SurfaceSig s) {
  check_sig(s);
  if (s.boundary == 0) throw error("cannot split the boundary of a closed surface");
  s.boundary += 1;
  return s;
}

// Tubes on nonorientable surfaces contribute +2 crosscap genus (Dyck).
inline SurfaceSig attach_tube(SurfaceSig s) {
  check_sig(s);
  s.genus += s.orientable ? 1 : 2;
  return s;
}

inline SurfaceSig double_surface(const SurfaceSig& s) {
  check_sig(s);
  if (s.boundary == 0) throw error("cannot double a closed surface");
  int chi2 = 2 * euler_char(s);
  SurfaceSig d;
  d.boundary = 0;
  if (s.orientable) {
    d.orientable = true;
    d.genus = (2 - chi2) / 2;
  } else {
    d.orientable = false;
    d.genus = 2 - chi2;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

enum class Sidedness { one_sided, two_sided };

enum class CurveClassKind {
  nullhomotopic,
  bounds_mobius,
  boundary_parallel,
  generic_two_sided,
  one_sided,
  unknown,
};

struct CurveClass {
  CurveClassKind kind = CurveClassKind::unknown;
  int boundary_index = -1;  // set for boundary_parallel

  static CurveClass of(CurveClassKind k) { return {k, -1}; }
  static CurveClass parallel_to(int i) {
    return {CurveClassKind::boundary_parallel, i};
  }

  bool operator==(const CurveClass& o) const {
    return kind == o.kind && boundary_index == o.boundary_index;
  }

  std::string to_string() const {
    switch (kind) {
      case CurveClassKind::nullhomotopic: return "nullhomotopic";
      case CurveClassKind::bounds_mobius: return "bounds-mobius";
      case CurveClassKind::boundary_parallel:
        return "boundary-parallel(" + std::to_string(boundary_index) + ")";
      case CurveClassKind::generic_two_sided: return "generic-two-sided";
      case CurveClassKind::one_sided: return "one-sided";
      case CurveClassKind::unknown: return "unknown";
    }
    return "unknown";
  }
};

struct CurveOnPage {
  std::string id;
  Word word;
  Sidedness sided = Sidedness::two_sided;
  CurveClass cls = CurveClass::of(CurveClassKind::unknown);
};

inline CurveOnPage make_curve(std::string id, Word word, Sidedness sided,
                              CurveClass cls) {
  if (sided == Sidedness::one_sided &&
      cls.kind != CurveClassKind::one_sided &&
      cls.kind != CurveClassKind::unknown)
    throw error("a one-sided curve must carry class one-sided");
  if (cls.kind == CurveClassKind::one_sided) sided = Sidedness::one_sided;
  return CurveOnPage{std::move(id), std::move(word), sided, cls};
}

// ---------------------------------------------------------------------------
// Page presentations
// ---------------------------------------------------------------------------

struct PagePresentation {
  SurfaceSig sig;
  FPGroup group;
  std::vector<Word> boundary_words;  // one per boundary component
  int base_boundary = 0;             // carries the basepoint (when boundary > 0)

  bool operator==(const PagePresentation& o) const {
    return sig == o.sig && group.generators == o.group.generators &&
           group.relators == o.group.relators &&
           boundary_words == o.boundary_words &&
           base_boundary == o.base_boundary;
  }

  // Same shape ignoring generator names.
  bool same_structure(const PagePresentation& o) const {
    return sig == o.sig && group.ngens() == o.group.ngens() &&
           group.relators == o.group.relators &&
           boundary_words == o.boundary_words &&
           base_boundary == o.base_boundary;
  }
};

inline void check_page(const PagePresentation& p) {
  check_sig(p.sig);
  if (static_cast<int>(p.boundary_words.size()) != p.sig.boundary)
    throw error("page must carry one boundary word per boundary component");
  if (p.sig.boundary > 0 &&
      (p.base_boundary < 0 || p.base_boundary >= p.sig.boundary))
    throw error("base boundary index out of range");
  for (const Word& w : p.boundary_words) check_letters(p.group, w);
}

inline PagePresentation page_disk() {
  PagePresentation p;
  p.sig = {true, 0, 1};
  p.boundary_words = {Word{}};
  return p;
}

inline PagePresentation page_annulus() {
  PagePresentation p;
  p.sig = {true, 0, 2};
  p.group.generators = {"u"};
  p.boundary_words = {Word::gen(0), Word::gen(0).inverse()};
  return p;
}

inline PagePresentation page_mobius() {
  PagePresentation p;
  p.sig = {false, 1, 1};
  p.group.generators = {"a"};
  p.boundary_words = {Word::gen(0) * Word::gen(0)};
  return p;
}

// N_{g,k} in the redundant one-relator form
// < x1..xg, c1..ck | x1^2...xg^2 = c1...ck >, boundary words c1..ck.
inline PagePresentation page_nonorientable(int g, int k) {
  if (g < 1 || k < 1) throw error("page_nonorientable needs g >= 1, k >= 1");
  PagePresentation p;
  p.sig = {false, g, k};
  for (int i = 0; i < g; ++i)
    p.group.generators.push_back(g == 1 ? "a" : "x" + std::to_string(i + 1));
  for (int i = 0; i < k; ++i)
    p.group.generators.push_back("c" + std::to_string(i + 1));
  Word rel;
  for (int i = 0; i < g; ++i) rel = rel * Word::gen(i) * Word::gen(i);
  for (int i = k - 1; i >= 0; --i) rel = rel * Word::gen(g + i).inverse();
  p.group.relators = {cyclically_reduce(rel)};
  for (int i = 0; i < k; ++i) p.boundary_words.push_back(Word::gen(g + i));
  return p;
}

// RP^2 with k holes; the page of the genus-one open books.
inline PagePresentation page_rp2_with_holes(int k) {
  return page_nonorientable(1, k);
}

inline PagePresentation page_klein_one_hole() { return page_nonorientable(2, 1); }

inline PagePresentation page_rp2_closed() {
  PagePresentation p;
  p.sig = {false, 1, 0};
  p.group.generators = {"a"};
  p.group.relators = {Word::gen(0) * Word::gen(0)};
  return p;
}

inline PagePresentation page_klein_closed() {
  PagePresentation p;
  p.sig = {false, 2, 0};
  p.group.generators = {"x", "y"};
  p.group.relators = {Word::gen(0) * Word::gen(0) * Word::gen(1) * Word::gen(1)};
  return p;
}

// Disk with p twisted bands: the page of the trivial open book for
// #_p S^2 x~ S^1, in free form (no relator).
inline PagePresentation page_disk_with_twisted_bands(int p_count) {
  if (p_count < 1) throw error("need at least one twisted band");
  PagePresentation p;
  p.sig = {false, p_count, 1};
  Word bd;
  for (int i = 0; i < p_count; ++i) {
    p.group.generators.push_back("x" + std::to_string(i + 1));
    bd = bd * Word::gen(i) * Word::gen(i);
  }
  p.boundary_words = {bd};
  return p;
}

inline std::string fresh_generator_name(const FPGroup& g, std::string base) {
  std::string name = std::move(base);
  while (std::find(g.generators.begin(), g.generators.end(), name) !=
         g.generators.end())
    name += "'";
  return name;
}

// Untwisted band with both feet on boundary `at`: boundary word w becomes
// w*h there and a new boundary h^-1 is appended.
inline PagePresentation page_split_boundary(const PagePresentation& p, int at,
                                            const std::string& name = "h") {
  check_page(p);
  if (at < 0 || at >= p.sig.boundary) throw error("boundary index out of range");
  PagePresentation q = p;
  q.sig = split_boundary_band(p.sig);
  q.group.generators.push_back(fresh_generator_name(p.group, name));
  Word h = Word::gen(p.group.ngens());
  q.boundary_words[at] = q.boundary_words[at] * h;
  q.boundary_words.push_back(h.inverse());
  return q;
}

// Half-twisted band with both feet on boundary `at`: the boundary word picks
// up the band generator twice.
inline PagePresentation page_add_crosscap(const PagePresentation& p, int at,
                                          const std::string& name = "h") {
  check_page(p);
  if (at < 0 || at >= p.sig.boundary) throw error("boundary index out of range");
  PagePresentation q = p;
  q.sig = add_crosscap(p.sig);
  q.group.generators.push_back(fresh_generator_name(p.group, name));
  Word h = Word::gen(p.group.ngens());
  q.boundary_words[at] = q.boundary_words[at] * h * h;
  return q;
}

// Interior torus connect-sum; two new handle generators, boundary untouched.
inline PagePresentation page_torus_sum(const PagePresentation& p,
                                       const std::string& n1,
                                       const std::string& n2) {
  check_page(p);
  PagePresentation q = p;
  q.sig = connect_sum_torus(p.sig);
  q.group.generators.push_back(fresh_generator_name(q.group, n1));
  q.group.generators.push_back(fresh_generator_name(q.group, n2));
  return q;
}

// ---------------------------------------------------------------------------
// Curve classification
// ---------------------------------------------------------------------------

namespace detail {

// Klein bottle group <u, v | u v u v^-1>; elements are u^m v^n. Words over
// the crosscap generators x, y translate via x = u, y = u^-1 v.
struct KleinNormalForm {
  int64_t m = 0, n = 0;
  KleinNormalForm mul(const KleinNormalForm& o) const {
    int64_t sign = (((o.m % 2) + 2) % 2 == 0) ? 1 : -1;
    return {checked_add(m, o.m), checked_add(checked_mul(n, sign), o.n)};
  }
};

inline KleinNormalForm klein_normal_form(const Word& w) {
  KleinNormalForm r;
  for (int l : w.letters) {
    KleinNormalForm step;
    if (l == 1) step = {1, 0};         // x
    else if (l == -1) step = {-1, 0};  // x^-1
    else if (l == 2) step = {-1, 1};   // y
    else if (l == -2) step = {1, 1};   // y^-1
    else throw error("klein word uses an unknown generator");
    r = r.mul(step);
  }
  return r;
}

}  // namespace detail

// Word-level classification. Exact on free page groups (after rewriting
// through redundant generators) and on the catalog pages; never guesses
// elsewhere.
inline CurveClass classify_curve(const PagePresentation& p, const Word& w) {
  check_page(p);
  check_letters(p.group, w);

  // closed catalog pages first: their groups are not free
  if (p.same_structure(page_rp2_closed())) {
    return exponent_sum(w, 0) % 2 == 0
               ? CurveClass::of(CurveClassKind::nullhomotopic)
               : CurveClass::of(CurveClassKind::one_sided);
  }
  if (p.same_structure(page_klein_closed())) {
    auto nf = detail::klein_normal_form(w);
    int64_t am = std::abs(nf.m), an = std::abs(nf.n);
    if (am == 0 && an == 0) return CurveClass::of(CurveClassKind::nullhomotopic);
    if (am == 0 && an == 1)
      return CurveClass::of(CurveClassKind::generic_two_sided);
    if (am == 2 && nf.n == 0) return CurveClass::of(CurveClassKind::bounds_mobius);
    if (am == 1) return CurveClass::of(CurveClassKind::one_sided);
    return CurveClass::of(CurveClassKind::unknown);
  }

  FreeRewriter rw = make_free_rewriter(p.group);
  if (!rw.free()) return CurveClass::of(CurveClassKind::unknown);
  Word v = rw.apply(w);
  if (v.empty()) return CurveClass::of(CurveClassKind::nullhomotopic);
  for (int i = 0; i < p.sig.boundary; ++i) {
    Word b = rw.apply(p.boundary_words[i]);
    if (conjugate_in_free(v, b) || conjugate_in_free(v, b.inverse()))
      return CurveClass::parallel_to(i);
  }

  bool mobius_like =
      p.same_structure(page_mobius()) || p.same_structure(page_rp2_with_holes(1));
  if (mobius_like) {
    Word a = rw.apply(Word::gen(0));
    if (conjugate_in_free(v, a) || conjugate_in_free(v, a.inverse()))
      return CurveClass::of(CurveClassKind::one_sided);
    return CurveClass::of(CurveClassKind::unknown);
  }
  if (p.same_structure(page_rp2_with_holes(2))) {
    Word a = rw.apply(Word::gen(0));
    if (conjugate_in_free(v, a) || conjugate_in_free(v, a.inverse()))
      return CurveClass::of(CurveClassKind::one_sided);
    Word a2 = a * a;
    if (conjugate_in_free(v, a2) || conjugate_in_free(v, a2.inverse()))
      return CurveClass::of(CurveClassKind::bounds_mobius);
    return CurveClass::of(CurveClassKind::unknown);
  }
  if (p.same_structure(page_klein_one_hole())) {
    Word x = rw.apply(Word::gen(0)), y = rw.apply(Word::gen(1));
    for (const Word& one : {x, y})
      if (conjugate_in_free(v, one) || conjugate_in_free(v, one.inverse()))
        return CurveClass::of(CurveClassKind::one_sided);
    Word alpha = x * y;
    if (conjugate_in_free(v, alpha) || conjugate_in_free(v, alpha.inverse()))
      return CurveClass::of(CurveClassKind::generic_two_sided);
    for (const Word& sq : {x * x, y * y})
      if (conjugate_in_free(v, sq) || conjugate_in_free(v, sq.inverse()))
        return CurveClass::of(CurveClassKind::bounds_mobius);
    return CurveClass::of(CurveClassKind::unknown);
  }
  return CurveClass::of(CurveClassKind::unknown);
}

struct PageReport {
  bool ok = true;
  std::vector<std::string> problems;
};

inline PageReport validate_page(const PagePresentation& p) {
  PageReport rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.problems.push_back(m);
  };
  try {
    check_page(p);
  } catch (const error& e) {
    fail(e.what());
    return rep;
  }
  int chi = euler_char(p.sig);
  FreeRewriter rw = make_free_rewriter(p.group);
  if (rw.free()) {
    if (rw.simplified.ngens() != 1 - chi)
      fail("free page group rank " + std::to_string(rw.simplified.ngens()) +
           " does not match 1 - chi = " + std::to_string(1 - chi));
  } else {
    int deficiency = p.group.ngens() - static_cast<int>(p.group.relators.size());
    if (deficiency != 1 - chi)
      fail("presentation deficiency " + std::to_string(deficiency) +
           " does not match 1 - chi = " + std::to_string(1 - chi));
  }
  return rep;
}

}  // namespace nofib
