#pragma once

// Abstract open books: a page presentation together with a monodromy given
// as substitution data on the page group plus arc-transport words, one per
// non-base boundary component. The fundamental group of the total space is
//
//   < page generators | page relators,
//                       phi(g) g^-1 for every generator g,
//                       (phi sigma_j) sigma_j^-1 for every non-base j >.
//
// Handedness tokens are local-orientation bookkeeping; they have no global
// meaning on a nonorientable page.

#include <optional>
#include <string>
#include <vector>

#include "nofib/groups.hpp"
#include "nofib/surfaces.hpp"

namespace nofib {

struct TwistRef {
  std::string curve;
  int handedness = 1;  // +1 / -1 token
};

struct MappingClassAction {
  PagePresentation page;
  std::vector<Word> images;      // one per page generator
  std::vector<Word> transports;  // one per boundary component; base slot empty
  std::vector<TwistRef> twist_word;
  bool in_twist_subgroup = true;
};

inline MappingClassAction identity_action(const PagePresentation& p) {
  check_page(p);
  MappingClassAction a;
  a.page = p;
  for (int i = 0; i < p.group.ngens(); ++i) a.images.push_back(Word::gen(i));
  a.transports.assign(p.boundary_words.size(), Word{});
  return a;
}

inline Word apply_action(const MappingClassAction& a, const Word& w) {
  return substitute(w, a.images);
}

// Dehn twist about a curve parallel to boundary component i. A twist at the
// base boundary conjugates every based loop by the base boundary word; a
// twist at a far boundary acts trivially on loops and shows up only in the
// arc transport to that boundary.
inline MappingClassAction boundary_twist_action(const PagePresentation& p,
                                                int i, int handedness,
                                                const std::string& curve_id) {
  check_page(p);
  if (i < 0 || i >= p.sig.boundary) throw error("boundary index out of range");
  if (handedness != 1 && handedness != -1) throw error("handedness token must be +1 or -1");
  MappingClassAction a = identity_action(p);
  a.twist_word = {TwistRef{curve_id, handedness}};
  Word w = p.boundary_words[i];
  if (i == p.base_boundary) {
    Word c = handedness > 0 ? w : w.inverse();
    for (Word& im : a.images) im = c * im * c.inverse();
    for (int j = 0; j < p.sig.boundary; ++j)
      if (j != p.base_boundary) a.transports[j] = c;
  } else {
    a.transports[i] = handedness > 0 ? w.inverse() : w;
  }
  return a;
}

// Composes in list order: the first action is applied first.
inline MappingClassAction compose_monodromy(
    const PagePresentation& p, const std::vector<MappingClassAction>& actions) {
  MappingClassAction acc = identity_action(p);
  for (const MappingClassAction& a : actions) {
    if (!(a.page == p)) throw error("compose_monodromy: actions on different pages");
    for (Word& im : acc.images) im = apply_action(a, im);
    for (int j = 0; j < static_cast<int>(acc.transports.size()); ++j) {
      if (j == p.base_boundary) continue;
      acc.transports[j] = apply_action(a, acc.transports[j]) * a.transports[j];
    }
    acc.twist_word.insert(acc.twist_word.end(), a.twist_word.begin(),
                          a.twist_word.end());
    acc.in_twist_subgroup = acc.in_twist_subgroup && a.in_twist_subgroup;
  }
  return acc;
}

// Equality of actions as automorphism data, compared in the free basis.
inline bool action_equal(const PagePresentation& p,
                         const MappingClassAction& a,
                         const MappingClassAction& b) {
  FreeRewriter rw = make_free_rewriter(p.group);
  for (int i = 0; i < p.group.ngens(); ++i)
    if (rw.apply(a.images[i]) != rw.apply(b.images[i])) return false;
  for (int j = 0; j < p.sig.boundary; ++j) {
    if (j == p.base_boundary) continue;
    if (rw.apply(a.transports[j]) != rw.apply(b.transports[j])) return false;
  }
  return true;
}

struct ActionReport {
  bool ok = true;
  std::vector<std::string> problems;
};

inline ActionReport validate_action(const PagePresentation& p,
                                    const MappingClassAction& a) {
  ActionReport rep;
  auto fail = [&](const std::string& m) {
    rep.ok = false;
    rep.problems.push_back(m);
  };
  if (!(a.page == p)) fail("action page differs from the given page");
  if (static_cast<int>(a.images.size()) != p.group.ngens())
    fail("action must provide an image for every generator");
  if (static_cast<int>(a.transports.size()) !=
      static_cast<int>(p.boundary_words.size()))
    fail("action must provide a transport slot per boundary component");
  if (!rep.ok) return rep;

  // determinant of the induced map on generator exponent sums
  int n = p.group.ngens();
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    auto v = exponent_vector(a.images[i], n);
    for (int j = 0; j < n; ++j) m.at(i, j) = v[j];
  }
  if (n > 0 && !is_unimodular(m))
    fail("abelianized action has determinant != +-1");

  FreeRewriter rw = make_free_rewriter(p.group);
  if (rw.free()) {
    for (const Word& r : p.group.relators) {
      Word img = rw.apply(substitute(r, a.images));
      if (!img.empty()) fail("relator not preserved: " + word_to_string(r, p.group));
    }
  }
  for (int i = 0; i < p.sig.boundary; ++i) {
    Word img = rw.apply(substitute(p.boundary_words[i], a.images));
    bool ok = false;
    for (int j = 0; j < p.sig.boundary && !ok; ++j) {
      Word b = rw.apply(p.boundary_words[j]);
      ok = conjugate_in_free(img, b) || conjugate_in_free(img, b.inverse());
    }
    if (!ok && rw.free())
      fail("boundary word " + std::to_string(i) +
           " is not sent to a conjugate of a boundary word");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Open books
// ---------------------------------------------------------------------------

struct OpenBook {
  PagePresentation page;
  MappingClassAction monodromy;
};

inline OpenBook make_open_book(PagePresentation page,
                               MappingClassAction monodromy) {
  if (!(monodromy.page == page))
    throw error("open book monodromy must act on the open book page");
  return OpenBook{std::move(page), std::move(monodromy)};
}

inline FPGroup total_space_pi1(const OpenBook& ob,
                               int budget = kDefaultTietzeBudget) {
  ActionReport rep = validate_action(ob.page, ob.monodromy);
  if (!rep.ok) {
    std::string msg = "monodromy failed validation:";
    for (const auto& pr : rep.problems) msg += " " + pr + ";";
    throw error(msg);
  }
  FPGroup g;
  g.generators = ob.page.group.generators;
  g.relators = ob.page.group.relators;
  for (int i = 0; i < g.ngens(); ++i) {
    Word r = ob.monodromy.images[i] * Word::gen(i).inverse();
    if (!r.empty()) g.relators.push_back(r);
  }
  for (int j = 0; j < ob.page.sig.boundary; ++j) {
    if (j == ob.page.base_boundary) continue;
    if (!ob.monodromy.transports[j].empty())
      g.relators.push_back(ob.monodromy.transports[j]);
  }
  return tietze_simplify(g, budget);
}

inline AbelianGroup total_space_h1(const OpenBook& ob,
                                   int budget = kDefaultTietzeBudget) {
  return abelianize(total_space_pi1(ob, budget));
}

// ---------------------------------------------------------------------------
// Murasugi sum
// ---------------------------------------------------------------------------

enum class PlumbMode {
  two_circles,  // the cut boundary circles recombine into two circles
  one_circle,   // they merge into a single circle (Hopf-band plumbing)
};

struct PlumbingSpec {
  int a_boundary = 1;  // rectangle sits on this boundary of a (not a's base)
  PlumbMode mode = PlumbMode::two_circles;
};

// Plumbing along a square: one rectangle side pair on boundary a_boundary of
// a's page, the other on the base boundary of b's page. Pages join over the
// square (chi drops by 1), monodromies extend by the identity and compose,
// a's action first.
inline OpenBook murasugi_sum(const OpenBook& a, const OpenBook& b,
                             const PlumbingSpec& spec) {
  check_page(a.page);
  check_page(b.page);
  int pa = spec.a_boundary;
  int pb = b.page.base_boundary;
  if (pa < 0 || pa >= a.page.sig.boundary)
    throw error("plumbing boundary out of range on first page");
  if (pa == a.page.base_boundary)
    throw error("plumbing rectangle may not sit on the base boundary of the first page");

  int na = a.page.group.ngens();
  int nb = b.page.group.ngens();

  PagePresentation P;
  P.group.generators = a.page.group.generators;
  for (const std::string& g : b.page.group.generators)
    P.group.generators.push_back(fresh_generator_name(P.group, g));

  auto shift = [&](const Word& w) {
    std::vector<int> ls;
    for (int x : w.letters) ls.push_back(x > 0 ? x + na : x - na);
    return Word::reduce(ls);
  };

  P.group.relators = a.page.group.relators;
  for (const Word& r : b.page.group.relators) P.group.relators.push_back(shift(r));

  // boundary layout: a's surviving circles, then b's surviving circles,
  // then the recombined circle(s)
  std::vector<int> a_surviving, b_surviving;
  for (int j = 0; j < a.page.sig.boundary; ++j)
    if (j != pa) {
      P.boundary_words.push_back(a.page.boundary_words[j]);
      a_surviving.push_back(j);
    }
  for (int j = 0; j < b.page.sig.boundary; ++j)
    if (j != pb) {
      P.boundary_words.push_back(shift(b.page.boundary_words[j]));
      b_surviving.push_back(j);
    }
  Word wa = a.page.boundary_words[pa];
  Word wb = shift(b.page.boundary_words[pb]);
  int mixes = 0;
  if (spec.mode == PlumbMode::two_circles) {
    P.boundary_words.push_back(wa);
    P.boundary_words.push_back(wb);
    mixes = 2;
  } else {
    P.boundary_words.push_back(wa * wb);
    mixes = 1;
  }

  P.base_boundary = a.page.base_boundary - (a.page.base_boundary > pa ? 1 : 0);
  int chi = euler_char(a.page.sig) + euler_char(b.page.sig) - 1;
  P.sig.boundary = static_cast<int>(P.boundary_words.size());
  P.sig.orientable = a.page.sig.orientable && b.page.sig.orientable;
  if (P.sig.orientable) {
    if ((2 - P.sig.boundary - chi) % 2 != 0)
      throw error("inconsistent plumbing data for an orientable page");
    P.sig.genus = (2 - P.sig.boundary - chi) / 2;
  } else {
    P.sig.genus = 2 - P.sig.boundary - chi;
  }
  check_page(P);

  int n_bd = P.sig.boundary;
  Word Ta = a.monodromy.transports[pa];

  MappingClassAction ea;  // a's monodromy extended by the identity over b
  ea.page = P;
  for (int i = 0; i < na; ++i) ea.images.push_back(a.monodromy.images[i]);
  for (int i = 0; i < nb; ++i)
    ea.images.push_back(Ta * Word::gen(na + i) * Ta.inverse());
  ea.transports.assign(n_bd, Word{});
  for (int j = 0; j < static_cast<int>(a_surviving.size()); ++j)
    ea.transports[j] = a.monodromy.transports[a_surviving[j]];
  for (int j = 0; j < static_cast<int>(b_surviving.size()); ++j)
    ea.transports[static_cast<int>(a_surviving.size()) + j] = Ta;
  for (int j = n_bd - mixes; j < n_bd; ++j) ea.transports[j] = Ta;
  ea.transports[P.base_boundary] = Word{};
  ea.twist_word = a.monodromy.twist_word;
  ea.in_twist_subgroup = a.monodromy.in_twist_subgroup;

  MappingClassAction eb;  // b's monodromy extended by the identity over a
  eb.page = P;
  for (int i = 0; i < na; ++i) eb.images.push_back(Word::gen(i));
  for (int i = 0; i < nb; ++i) eb.images.push_back(shift(b.monodromy.images[i]));
  eb.transports.assign(n_bd, Word{});
  for (int j = 0; j < static_cast<int>(b_surviving.size()); ++j)
    eb.transports[static_cast<int>(a_surviving.size()) + j] =
        shift(b.monodromy.transports[b_surviving[j]]);
  eb.twist_word = b.monodromy.twist_word;
  eb.in_twist_subgroup = b.monodromy.in_twist_subgroup;

  return make_open_book(P, compose_monodromy(P, {ea, eb}));
}

// ---------------------------------------------------------------------------
// Hopf stabilization
// ---------------------------------------------------------------------------

enum class StabilizationBand { boundary_split, crosscap };

// Plumbs a once-twisted annulus onto the page at the given boundary
// (default: the base). The boundary_split band is the Hopf band proper: it
// adds one hole and one twist and the total space is unchanged. The crosscap
// band is the half-twisted variant; it adds a crosscap and a twist about the
// band's Mobius boundary, and the total space gains an S^2 x~ S^1 factor.
inline OpenBook hopf_stabilize(const OpenBook& ob, StabilizationBand band,
                               int handedness, int at_boundary = -1,
                               const std::string& curve_id = "stab") {
  check_page(ob.page);
  int i = at_boundary < 0 ? ob.page.base_boundary : at_boundary;
  if (i < 0 || i >= ob.page.sig.boundary)
    throw error("stabilization boundary out of range");
  int h_index = ob.page.group.ngens();
  Word tau = ob.monodromy.transports[i];  // empty at the base

  PagePresentation q = band == StabilizationBand::boundary_split
                           ? page_split_boundary(ob.page, i)
                           : page_add_crosscap(ob.page, i);
  Word h = Word::gen(h_index);

  MappingClassAction ext;
  ext.page = q;
  ext.images = ob.monodromy.images;
  ext.images.push_back(tau * h * tau.inverse());
  ext.transports = ob.monodromy.transports;
  if (band == StabilizationBand::boundary_split) ext.transports.push_back(tau);
  ext.twist_word = ob.monodromy.twist_word;
  ext.in_twist_subgroup = ob.monodromy.in_twist_subgroup;

  MappingClassAction new_twist;
  if (band == StabilizationBand::boundary_split) {
    new_twist = boundary_twist_action(q, q.sig.boundary - 1, handedness, curve_id);
  } else {
    // twist about the band's Mobius boundary curve h^2: the trivial
    // mapping class, recorded in the twist word
    new_twist = identity_action(q);
    new_twist.twist_word = {TwistRef{curve_id, handedness}};
  }
  return make_open_book(q, compose_monodromy(q, {ext, new_twist}));
}

// ---------------------------------------------------------------------------
// Genus-one binding bound and the Klein bottle mapping class group
// ---------------------------------------------------------------------------

struct BindingBoundDerivation {
  int n = 0;
  int chi_upper_bound = 0;  // chi of the doubled page is at most this
  int bound = 0;            // minimal binding count
};

// A genus-one open book with k bindings doubles to a Heegaard surface of
// nonorientable genus 2k, and 2 - 2k <= -2n - 2(n-1) forces k >= 2n.
inline BindingBoundDerivation binding_bound_derivation(int n) {
  if (n < 1) throw error("binding bound needs n >= 1");
  return BindingBoundDerivation{n, 2 - 4 * n, 2 * n};
}

inline int binding_lower_bound_genus_one(int n) {
  return binding_bound_derivation(n).bound;
}

enum class KleinMcgGenerator { alpha_twist, y_homeomorphism };

// Map(K) = Z/2 x Z/2, generated by the twist about the unique two-sided
// generic curve and the Y-homeomorphism.
struct KleinMcgElement {
  int twist_parity = 0;
  int y_parity = 0;
  bool is_identity() const { return twist_parity == 0 && y_parity == 0; }
  bool operator==(const KleinMcgElement& o) const {
    return twist_parity == o.twist_parity && y_parity == o.y_parity;
  }
};

inline KleinMcgElement klein_mcg_reduce(
    const std::vector<KleinMcgGenerator>& word) {
  KleinMcgElement e;
  for (auto g : word) {
    if (g == KleinMcgGenerator::alpha_twist) e.twist_parity ^= 1;
    else e.y_parity ^= 1;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Catalog actions and books
// ---------------------------------------------------------------------------

// Twist about the generic two-sided curve alpha = x y on the Klein bottle
// with one hole; fixes the boundary word exactly.
inline MappingClassAction klein_alpha_twist_action(const PagePresentation& p,
                                                   int handedness,
                                                   const std::string& id = "alpha") {
  if (!p.same_structure(page_klein_one_hole()))
    throw error("alpha twist is defined on the Klein bottle with one hole");
  MappingClassAction a = identity_action(p);
  Word x = Word::gen(0), y = Word::gen(1);
  Word alpha = x * y;
  if (handedness > 0) {
    a.images[0] = x * alpha;            // x -> x (xy)
    a.images[1] = alpha.inverse() * y;  // y -> (xy)^-1 y
  } else {
    a.images[0] = x * alpha.inverse();
    a.images[1] = alpha * y;
  }
  a.images[2] = Word::gen(2);
  a.twist_word = {TwistRef{id, handedness}};
  return a;
}

// Lickorish's crosscap slide on the Klein bottle with one hole. Not a
// product of Dehn twists.
inline MappingClassAction y_homeomorphism_action(const PagePresentation& p) {
  if (!p.same_structure(page_klein_one_hole()))
    throw error("the Y-homeomorphism acts on the Klein bottle with one hole");
  MappingClassAction a = identity_action(p);
  Word x = Word::gen(0), y = Word::gen(1), c = Word::gen(2);
  a.images[0] = x.inverse();
  a.images[1] = x * y * x;
  Word g = x.inverse() * y;
  a.images[2] = g * c * g.inverse();
  a.twist_word = {TwistRef{"Y", 1}};
  a.in_twist_subgroup = false;
  return a;
}

inline OpenBook mobius_identity_open_book() {
  PagePresentation p = page_mobius();
  return make_open_book(p, identity_action(p));
}

inline OpenBook annulus_identity_open_book() {
  PagePresentation p = page_annulus();
  return make_open_book(p, identity_action(p));
}

// The Hopf band: annulus page, one twist about the core.
inline OpenBook hopf_band_open_book(int handedness) {
  PagePresentation p = page_annulus();
  return make_open_book(p, boundary_twist_action(p, 0, handedness, "core"));
}

// The genus-one open book for S^1 x RP^2: page RP^2 with two holes,
// monodromy the two boundary-parallel twists with the given handedness.
inline OpenBook s1xrp2_open_book(int h1, int h2) {
  PagePresentation p = page_rp2_with_holes(2);
  auto t1 = boundary_twist_action(p, 0, h1, "g1");
  auto t2 = boundary_twist_action(p, 1, h2, "g2");
  return make_open_book(p, compose_monodromy(p, {t1, t2}));
}

// Iterated Murasugi sum of n copies of the S^1 x RP^2 open book; the page
// is RP^2 with 2n holes (a Mobius band with 2n-1 holes).
inline OpenBook murasugi_chain_s1xrp2(int n, int handedness = 1) {
  if (n < 1) throw error("need at least one copy");
  OpenBook book = s1xrp2_open_book(handedness, handedness);
  for (int k = 2; k <= n; ++k) {
    PlumbingSpec spec;
    spec.a_boundary = book.page.sig.boundary - 1;
    spec.mode = PlumbMode::two_circles;
    book = murasugi_sum(book, s1xrp2_open_book(handedness, handedness), spec);
  }
  return book;
}

// Gate for the optional Y-homeomorphism catalog entry: the action must
// validate and the total space must have H1 = Z + Z/2 (it is S^1 x RP^2).
inline OpenBook y_homeomorphism_open_book() {
  PagePresentation p = page_klein_one_hole();
  MappingClassAction y = y_homeomorphism_action(p);
  ActionReport rep = validate_action(p, y);
  if (!rep.ok) throw error("Y-homeomorphism action failed validation");
  OpenBook ob = make_open_book(p, y);
  AbelianGroup h1 = total_space_h1(ob);
  if (!(h1 == AbelianGroup{1, {2}}))
    throw error("Y-homeomorphism open book has unexpected H1");
  return ob;
}

}  // namespace nofib
