#pragma once

// Exact combinatorial group theory: freely reduced words, finitely presented
// groups, Smith normal form over Z, abelianization, and bounded Tietze
// simplification.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nofib/base.hpp"

namespace nofib {

using std::int64_t;

// ---------------------------------------------------------------------------
// Words
//
// A letter is a nonzero int: +(i+1) is generator i, -(i+1) its inverse.
// Words are kept freely reduced at all times.
// ---------------------------------------------------------------------------

struct Word {
  std::vector<int> letters;

  Word() = default;

  // Free-reduces the given letter sequence.
  static Word reduce(const std::vector<int>& ls) {
    Word w;
    for (int x : ls) {
      if (x == 0) throw error("word letter must be nonzero");
      if (!w.letters.empty() && w.letters.back() == -x)
        w.letters.pop_back();
      else
        w.letters.push_back(x);
    }
    return w;
  }

  static Word gen(int i, int sign = 1) {
    Word w;
    w.letters.push_back(sign >= 0 ? i + 1 : -(i + 1));
    return w;
  }

  bool empty() const { return letters.empty(); }
  int size() const { return static_cast<int>(letters.size()); }

  Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.push_back(-*it);
    return w;
  }

  Word operator*(const Word& o) const {
    std::vector<int> ls = letters;
    ls.insert(ls.end(), o.letters.begin(), o.letters.end());
    return reduce(ls);
  }

  Word pow(int64_t e) const {
    Word base = e >= 0 ? *this : inverse();
    int64_t n = e >= 0 ? e : -e;
    Word r;
    for (int64_t i = 0; i < n; ++i) r = r * base;
    return r;
  }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  int max_generator() const {
    int m = -1;
    for (int x : letters) m = std::max(m, std::abs(x) - 1);
    return m;
  }
};

inline Word conjugate(const Word& g, const Word& w) {
  return g * w * g.inverse();
}

inline Word commutator(const Word& a, const Word& b) {
  return a * b * a.inverse() * b.inverse();
}

// Removes matching first/last letters; a relator and its cyclic reduction
// have the same normal closure.
inline Word cyclically_reduce(const Word& w) {
  std::vector<int> ls = w.letters;
  while (ls.size() >= 2 && ls.front() == -ls.back()) {
    ls.erase(ls.begin());
    ls.pop_back();
  }
  return Word::reduce(ls);
}

// Canonical representative of a relator up to rotation and inversion: the
// lexicographically least rotation of the cyclic reduction or its inverse.
inline std::vector<int> cyclic_key(const Word& w) {
  Word c = cyclically_reduce(w);
  if (c.empty()) return {};
  std::vector<int> best;
  for (const Word& v : {c, c.inverse()}) {
    const auto& ls = v.letters;
    int n = static_cast<int>(ls.size());
    for (int s = 0; s < n; ++s) {
      std::vector<int> rot(n);
      for (int i = 0; i < n; ++i) rot[i] = ls[(s + i) % n];
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

// Conjugacy in a free group: equal cyclic reductions up to rotation.
inline bool conjugate_in_free(const Word& a, const Word& b) {
  Word ca = cyclically_reduce(a), cb = cyclically_reduce(b);
  if (ca.size() != cb.size()) return false;
  if (ca.empty()) return true;
  int n = ca.size();
  for (int s = 0; s < n; ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      ok = ca.letters[i] == cb.letters[(s + i) % n];
    if (ok) return true;
  }
  return false;
}

// Substitutes images[i] for generator i (images[i]^-1 for its inverse).
inline Word substitute(const Word& w, const std::vector<Word>& images) {
  std::vector<int> out;
  for (int x : w.letters) {
    int g = std::abs(x) - 1;
    if (g >= static_cast<int>(images.size()))
      throw error("substitute: letter outside image table");
    const Word& im = x > 0 ? images[g] : images[g].inverse();
    out.insert(out.end(), im.letters.begin(), im.letters.end());
  }
  return Word::reduce(out);
}

inline int64_t exponent_sum(const Word& w, int gen) {
  int64_t s = 0;
  for (int x : w.letters) {
    if (x == gen + 1) s = checked_add(s, 1);
    if (x == -(gen + 1)) s = checked_sub(s, 1);
  }
  return s;
}

inline std::vector<int64_t> exponent_vector(const Word& w, int ngens) {
  std::vector<int64_t> v(ngens, 0);
  for (int x : w.letters) {
    int g = std::abs(x) - 1;
    if (g >= ngens) throw error("exponent_vector: letter outside range");
    v[g] = checked_add(v[g], x > 0 ? 1 : -1);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Finitely presented groups
// ---------------------------------------------------------------------------

struct FPGroup {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  int ngens() const { return static_cast<int>(generators.size()); }
};

inline void check_letters(const FPGroup& g, const Word& w) {
  if (w.max_generator() >= g.ngens())
    throw error("word references a generator outside the presentation");
}

// Free/cyclic reduction of all relators, dropping empty ones. Idempotent.
inline FPGroup normalize(const FPGroup& g) {
  FPGroup out;
  out.generators = g.generators;
  for (const Word& r : g.relators) {
    check_letters(g, r);
    Word c = cyclically_reduce(r);
    if (!c.empty()) out.relators.push_back(c);
  }
  return out;
}

inline std::string word_to_string(const Word& w, const FPGroup& g) {
  if (w.empty()) return "1";
  std::string s;
  int i = 0;
  int n = w.size();
  while (i < n) {
    int x = w.letters[i];
    int j = i;
    while (j < n && w.letters[j] == x) ++j;
    int run = j - i;
    if (!s.empty()) s += ' ';
    s += g.generators[std::abs(x) - 1];
    int e = x > 0 ? run : -run;
    if (e != 1) s += "^" + std::to_string(e);
    i = j;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Integer matrices and Smith normal form
// ---------------------------------------------------------------------------

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int64_t> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {
    if (r < 0 || c < 0) throw error("matrix dimensions must be nonnegative");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int64_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  int64_t at(int r, int c) const {
    return a[static_cast<size_t>(r) * cols + c];
  }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols != o.rows) throw error("matrix product dimension mismatch");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        int64_t x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) = checked_add(r.at(i, j), checked_mul(x, o.at(k, j)));
      }
    return r;
  }

  void swap_rows(int i, int j) {
    for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
  }
  void swap_cols(int i, int j) {
    for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
  }
  // row i += q * row j
  void add_row(int i, int j, int64_t q) {
    for (int c = 0; c < cols; ++c)
      at(i, c) = checked_add(at(i, c), checked_mul(q, at(j, c)));
  }
  void add_col(int i, int j, int64_t q) {
    for (int r = 0; r < rows; ++r)
      at(r, i) = checked_add(at(r, i), checked_mul(q, at(r, j)));
  }
  void negate_row(int i) {
    for (int c = 0; c < cols; ++c) at(i, c) = checked_neg(at(i, c));
  }
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline int64_t determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw error("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  IntMatrix b = m;
  int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (b.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (b.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      b.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        int64_t num = checked_sub(checked_mul(b.at(i, j), b.at(k, k)),
                                  checked_mul(b.at(i, k), b.at(k, j)));
        b.at(i, j) = num / prev;  // exact division in Bareiss
      }
    prev = b.at(k, k);
  }
  return sign > 0 ? b.at(n - 1, n - 1) : checked_neg(b.at(n - 1, n - 1));
}

inline bool is_unimodular(const IntMatrix& m) {
  int64_t d = determinant(m);
  return d == 1 || d == -1;
}

struct SmithDecomposition {
  IntMatrix d;  // u * m * v, diagonal, nonnegative, divisibility chain
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix v;  // unimodular, cols x cols

  std::vector<int64_t> diagonal() const {
    std::vector<int64_t> out;
    int n = std::min(d.rows, d.cols);
    for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
    return out;
  }
};

// Pivot choice: smallest nonzero absolute value, ties broken by lowest
// (row, col). This fixes the whole reduction deterministically.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithDecomposition s{m, IntMatrix::identity(m.rows),
                       IntMatrix::identity(m.cols)};
  IntMatrix& d = s.d;
  IntMatrix& u = s.u;
  IntMatrix& v = s.v;
  int n = std::min(d.rows, d.cols);

  for (int t = 0; t < n; ++t) {
    // locate the pivot in the trailing submatrix
    int pr = -1, pc = -1;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j) {
        int64_t x = d.at(i, j);
        if (x == 0) continue;
        if (pr < 0 || std::abs(x) < std::abs(d.at(pr, pc))) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;  // trailing submatrix is zero
    if (pr != t) {
      d.swap_rows(t, pr);
      u.swap_rows(t, pr);
    }
    if (pc != t) {
      d.swap_cols(t, pc);
      v.swap_cols(t, pc);
    }

    bool stable = false;
    while (!stable) {
      stable = true;
      for (int i = t + 1; i < d.rows && stable; ++i) {
        if (d.at(i, t) == 0) continue;
        int64_t q = d.at(i, t) / d.at(t, t);
        d.add_row(i, t, checked_neg(q));
        u.add_row(i, t, checked_neg(q));
        if (d.at(i, t) != 0) {
          // remainder is strictly smaller than the pivot; promote it
          d.swap_rows(i, t);
          u.swap_rows(i, t);
          stable = false;
        }
      }
      if (!stable) continue;
      for (int j = t + 1; j < d.cols && stable; ++j) {
        if (d.at(t, j) == 0) continue;
        int64_t q = d.at(t, j) / d.at(t, t);
        d.add_col(j, t, checked_neg(q));
        v.add_col(j, t, checked_neg(q));
        if (d.at(t, j) != 0) {
          d.swap_cols(j, t);
          v.swap_cols(j, t);
          stable = false;
        }
      }
      if (!stable) continue;
      // pivot must divide the rest of the trailing block
      for (int i = t + 1; i < d.rows && stable; ++i)
        for (int j = t + 1; j < d.cols && stable; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            stable = false;
          }
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Abelian groups
// ---------------------------------------------------------------------------

struct AbelianGroup {
  int rank = 0;
  std::vector<int64_t> torsion;  // d1 | d2 | ..., each >= 2

  bool operator==(const AbelianGroup& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s = "rank=" + std::to_string(rank) + " torsion=[";
    for (size_t i = 0; i < torsion.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(torsion[i]);
    }
    return s + "]";
  }
};

// Rows are relators, columns are generator exponent sums.
inline IntMatrix relation_matrix(const FPGroup& g) {
  IntMatrix m(static_cast<int>(g.relators.size()), g.ngens());
  for (int r = 0; r < m.rows; ++r) {
    auto v = exponent_vector(g.relators[r], g.ngens());
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = v[c];
  }
  return m;
}

inline AbelianGroup cokernel(const IntMatrix& m) {
  auto diag = smith_normal_form(m).diagonal();
  AbelianGroup out;
  int nonzero = 0;
  for (int64_t d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d >= 2) out.torsion.push_back(d);
  }
  out.rank = m.cols - nonzero;
  return out;
}

inline AbelianGroup abelianize(const FPGroup& g) {
  return cokernel(relation_matrix(g));
}

// ---------------------------------------------------------------------------
// Tietze simplification
//
// A bounded heuristic, not a decision procedure. Moves: free/cyclic
// reduction (free of charge), duplicate-relator removal, and elimination of
// a generator occurring exactly once in some relator. Move order is
// deterministic: lowest generator index first, then shortest relator,
// then lowest relator index.
// ---------------------------------------------------------------------------

inline constexpr int kDefaultTietzeBudget = 10000;

namespace detail {

// Position of the unique +-1-exponent occurrence of gen in r, or nullopt.
inline std::optional<int> single_occurrence(const Word& r, int gen) {
  int pos = -1, count = 0;
  for (int i = 0; i < r.size(); ++i)
    if (std::abs(r.letters[i]) == gen + 1) {
      ++count;
      pos = i;
    }
  if (count == 1) return pos;
  return std::nullopt;
}

inline Word replace_generator(const Word& w, int gen, const Word& by) {
  std::vector<int> out;
  for (int x : w.letters) {
    if (std::abs(x) - 1 == gen) {
      const Word& im = x > 0 ? by : by.inverse();
      out.insert(out.end(), im.letters.begin(), im.letters.end());
    } else {
      out.push_back(x);
    }
  }
  return Word::reduce(out);
}

inline Word drop_generator_slot(const Word& w, int gen) {
  std::vector<int> out;
  for (int x : w.letters) {
    int g = std::abs(x) - 1;
    if (g == gen) throw error("dropping a generator still in use");
    out.push_back(g > gen ? (x > 0 ? x - 1 : x + 1) : x);
  }
  return Word::reduce(out);
}

}  // namespace detail

struct TietzeResult {
  FPGroup group;
  // Each original generator expressed as a word over the simplified
  // presentation's generators.
  std::vector<Word> original_images;
  int moves_used = 0;
};

inline TietzeResult tietze_simplify_tracked(const FPGroup& g0, int budget) {
  if (budget < 0) throw error("tietze budget must be nonnegative");
  TietzeResult res;
  res.group = normalize(g0);
  res.original_images.resize(g0.ngens());
  for (int i = 0; i < g0.ngens(); ++i) res.original_images[i] = Word::gen(i);

  auto spend = [&]() {
    ++res.moves_used;
    --budget;
  };

  bool progress = true;
  while (progress && budget > 0) {
    progress = false;
    FPGroup& g = res.group;

    // duplicate-relator removal (up to rotation and inversion)
    {
      std::vector<std::vector<int>> seen;
      std::vector<Word> kept;
      for (const Word& r : g.relators) {
        auto key = cyclic_key(r);
        if (budget > 0 &&
            std::find(seen.begin(), seen.end(), key) != seen.end()) {
          spend();
          progress = true;
          continue;
        }
        seen.push_back(key);
        kept.push_back(r);
      }
      g.relators = kept;
      if (budget <= 0) break;
    }

    // generator elimination
    FPGroup& g2 = res.group;
    int pick_gen = -1, pick_rel = -1, pick_pos = -1;
    for (int gen = 0; gen < g2.ngens() && pick_gen < 0; ++gen) {
      int best = -1;
      int best_pos = -1;
      for (int r = 0; r < static_cast<int>(g2.relators.size()); ++r) {
        auto pos = detail::single_occurrence(g2.relators[r], gen);
        if (!pos) continue;
        if (best < 0 ||
            g2.relators[r].size() < g2.relators[best].size()) {
          best = r;
          best_pos = *pos;
        }
      }
      if (best >= 0) {
        pick_gen = gen;
        pick_rel = best;
        pick_pos = best_pos;
      }
    }
    if (pick_gen >= 0) {
      // rotate the relator so the g-letter leads: r = g^e w, hence
      // g = w^-1 (e = +1) or g = w (e = -1)
      const Word& r = res.group.relators[pick_rel];
      std::vector<int> rot(r.letters.begin() + pick_pos, r.letters.end());
      rot.insert(rot.end(), r.letters.begin(), r.letters.begin() + pick_pos);
      int e = rot[0] > 0 ? 1 : -1;
      Word w = Word::reduce(std::vector<int>(rot.begin() + 1, rot.end()));
      Word value = e > 0 ? w.inverse() : w;

      FPGroup next;
      next.generators = res.group.generators;
      next.generators.erase(next.generators.begin() + pick_gen);
      for (int i = 0; i < static_cast<int>(res.group.relators.size()); ++i) {
        if (i == pick_rel) continue;
        Word s = detail::replace_generator(res.group.relators[i], pick_gen,
                                           value);
        next.relators.push_back(detail::drop_generator_slot(s, pick_gen));
      }
      for (Word& im : res.original_images) {
        im = detail::replace_generator(im, pick_gen, value);
        im = detail::drop_generator_slot(im, pick_gen);
      }
      res.group = normalize(next);
      progress = true;
      spend();
    }
  }
  res.group = normalize(res.group);
  return res;
}

inline FPGroup tietze_simplify(const FPGroup& g,
                               int budget = kDefaultTietzeBudget) {
  return tietze_simplify_tracked(g, budget).group;
}

// Rewrites words through the eliminations that simplify `g`. When the
// simplified presentation has no relators left the page group is free and
// word problems below become exact.
struct FreeRewriter {
  FPGroup simplified;
  std::vector<Word> original_images;

  bool free() const { return simplified.relators.empty(); }

  Word apply(const Word& w) const { return substitute(w, original_images); }
};

inline FreeRewriter make_free_rewriter(const FPGroup& g,
                                       int budget = kDefaultTietzeBudget) {
  auto t = tietze_simplify_tracked(g, budget);
  return FreeRewriter{t.group, t.original_images};
}

}  // namespace nofib
