#pragma once

#include <optional>
#include <set>
#include <utility>

#include "stabcat/core.hpp"

namespace stabcat::preord {

/// Finite preordered set on carrier {0..n-1}. The relation matrix is kept
/// reflexive and transitive; constructors reject anything else.
struct Obj {
  int n = 0;
  std::vector<std::uint8_t> le;  // n*n, row-major; le[i*n+j] <=> i <= j

  Obj() = default;

  Obj(int size, std::vector<std::uint8_t> rel) : n(size), le(std::move(rel)) {
    require(n >= 0, Errc::InvalidObject, "negative carrier");
    require(le.size() == static_cast<size_t>(n) * n, Errc::InvalidObject, "relation size mismatch");
    for (int i = 0; i < n; ++i)
      require(at(i, i), Errc::InvalidObject, "relation not reflexive");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, j))
          for (int k = 0; k < n; ++k)
            require(!at(j, k) || at(i, k), Errc::InvalidObject, "relation not transitive");
  }

  bool at(int i, int j) const { return le[static_cast<size_t>(i) * n + j] != 0; }

  bool operator==(const Obj& o) const = default;
};

/// Discrete preorder on n points (relation = equality).
inline Obj discrete(int n) {
  std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) rel[static_cast<size_t>(i) * n + i] = 1;
  return Obj(n, std::move(rel));
}

/// Codiscrete preorder on n points (all pairs related).
inline Obj codiscrete(int n) {
  return Obj(n, std::vector<std::uint8_t>(static_cast<size_t>(n) * n, 1));
}

/// Smallest reflexive-transitive relation containing `pairs`.
inline Obj closure(int n, const std::vector<std::pair<int, int>>& pairs) {
  require(n >= 0, Errc::IndexOutOfRange, "negative carrier");
  std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) rel[static_cast<size_t>(i) * n + i] = 1;
  for (auto [a, b] : pairs) {
    require(a >= 0 && a < n && b >= 0 && b < n, Errc::IndexOutOfRange, "pair out of range");
    rel[static_cast<size_t>(a) * n + b] = 1;
  }
  // Floyd-Warshall style closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (rel[static_cast<size_t>(i) * n + k])
        for (int j = 0; j < n; ++j)
          if (rel[static_cast<size_t>(k) * n + j]) rel[static_cast<size_t>(i) * n + j] = 1;
  return Obj(n, std::move(rel));
}

/// Monotone map between finite preorders; the table is validated on construction.
struct Mor {
  Obj dom, cod;
  std::vector<int> table;

  Mor() = default;

  Mor(Obj d, Obj c, std::vector<int> t) : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
    require(table.size() == static_cast<size_t>(dom.n), Errc::InvalidMorphism, "table size mismatch");
    for (int v : table)
      require(v >= 0 && v < cod.n, Errc::InvalidMorphism, "table value out of range");
    for (int i = 0; i < dom.n; ++i)
      for (int j = 0; j < dom.n; ++j)
        if (dom.at(i, j))
          require(cod.at(table[i], table[j]), Errc::InvalidMorphism, "table not monotone");
  }

  int operator()(int i) const { return table[i]; }

  bool operator==(const Mor& o) const = default;
};

struct Cat;

/// Factorization of a trivial morphism through a trivial object.
struct Witness {
  Obj via;
  Mor collapse;  // dom -> via
  Mor embed;     // via -> cod
};

/// Instance hooks for the category of finite preorders with the
/// (equivalence relations, partial orders) pretorsion theory.
struct Cat {
  using Obj = preord::Obj;
  using Mor = preord::Mor;
  using TrivialWitness = Witness;

  static constexpr const char* name = "preord";
  static constexpr bool has_z_kernels = true;

  static Obj empty() { return Obj(); }
  static Obj terminal() { return discrete(1); }

  /// Any subset carries an induced sub-preorder.
  static Subset mono_closure(const Obj&, Subset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  /// A surjection is an extremal epi exactly when the codomain relation is
  /// the closed image relation; sampling builds such a quotient directly.
  static Mor random_extremal_quotient(const Obj& x, Rng& rng) {
    if (x.n == 0) return Mor(x, x, {});
    const int m = 1 + rng.below(x.n);
    std::vector<int> t(x.n);
    std::vector<int> order(x.n);
    for (int i = 0; i < x.n; ++i) order[i] = i;
    for (int i = x.n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    for (int i = 0; i < x.n; ++i) t[order[i]] = i < m ? i : rng.below(m);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (x.at(i, j)) pairs.emplace_back(t[i], t[j]);
    return Mor(x, closure(m, pairs), std::move(t));
  }

  static bool valid_table(const Obj& dom, const Obj& cod, const std::vector<int>& t) {
    if (t.size() != static_cast<size_t>(dom.n)) return false;
    for (int v : t)
      if (v < 0 || v >= cod.n) return false;
    for (int i = 0; i < dom.n; ++i)
      for (int j = 0; j < dom.n; ++j)
        if (dom.at(i, j) && !cod.at(t[i], t[j])) return false;
    return true;
  }

  /// Induced (full) sub-preorder on `members`, renumbered along the sorted order.
  static Obj restricted(const Obj& x, const Subset& members) {
    const int m = static_cast<int>(members.size());
    std::vector<std::uint8_t> rel(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        rel[static_cast<size_t>(i) * m + j] = x.at(members[i], members[j]) ? 1 : 0;
    return Obj(m, std::move(rel));
  }

  /// Block-diagonal disjoint union; left block keeps its indices.
  static Obj coproduct_obj(const Obj& x, const Obj& y) {
    const int n = x.n + y.n;
    std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        rel[static_cast<size_t>(i) * n + j] = x.at(i, j) ? 1 : 0;
    for (int i = 0; i < y.n; ++i)
      for (int j = 0; j < y.n; ++j)
        rel[static_cast<size_t>(x.n + i) * n + (x.n + j)] = y.at(i, j) ? 1 : 0;
    return Obj(n, std::move(rel));
  }

  /// Componentwise product relation on pairs, index (i,j) -> i*y.n + j.
  static Obj product_obj(const Obj& x, const Obj& y) {
    const int n = x.n * y.n;
    std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < y.n; ++j)
        for (int k = 0; k < x.n; ++k)
          for (int l = 0; l < y.n; ++l)
            if (x.at(i, k) && y.at(j, l))
              rel[static_cast<size_t>(i * y.n + j) * n + (k * y.n + l)] = 1;
    return Obj(n, std::move(rel));
  }

  /// Connected components of the comparability graph.
  static std::vector<Subset> components(const Obj& x) {
    UnionFind uf(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (x.at(i, j)) uf.unite(i, j);
    return uf.blocks();
  }

  /// All preorders on exactly n labeled points, in bitmask order of the
  /// off-diagonal part.
  static std::vector<Obj> all_objects(int n) {
    std::vector<Obj> out;
    const int off = n * n - n;
    require(off < 31, Errc::IndexOutOfRange, "carrier too large to enumerate");
    for (std::uint32_t mask = 0; mask < (1u << off); ++mask) {
      std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 0);
      int bit = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) {
            rel[static_cast<size_t>(i) * n + j] = 1;
          } else {
            rel[static_cast<size_t>(i) * n + j] = (mask >> bit) & 1u;
            ++bit;
          }
        }
      bool transitive = true;
      for (int i = 0; i < n && transitive; ++i)
        for (int j = 0; j < n && transitive; ++j)
          if (rel[static_cast<size_t>(i) * n + j])
            for (int k = 0; k < n; ++k)
              if (rel[static_cast<size_t>(j) * n + k] && !rel[static_cast<size_t>(i) * n + k]) {
                transitive = false;
                break;
              }
      if (transitive) out.emplace_back(n, std::move(rel));
    }
    return out;
  }

  static Obj random_object(int n, Rng& rng) {
    std::vector<std::pair<int, int>> pairs;
    if (n > 1) {
      const int want = rng.below(n + 2);
      for (int k = 0; k < want; ++k) pairs.emplace_back(rng.below(n), rng.below(n));
    }
    return closure(n, pairs);
  }

  static std::string encode(const Obj& x) {
    std::string s = "p" + std::to_string(x.n) + ";";
    for (auto b : x.le) s.push_back(b ? '1' : '0');
    return s;
  }

  // --- pretorsion theory hooks: (Eq, ParOrd) with discrete trivial objects ---

  static bool is_torsion(const Obj& x) {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (x.at(i, j) && !x.at(j, i)) return false;
    return true;
  }

  static bool is_torsionfree(const Obj& x) {
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (i != j && x.at(i, j) && x.at(j, i)) return false;
    return true;
  }

  static bool is_trivial_obj(const Obj& x) { return is_torsion(x) && is_torsionfree(x); }

  /// Largest symmetric sub-preorder on the same carrier; counit is the
  /// identity-on-elements inclusion.
  static std::pair<Obj, Mor> torsion_part(const Obj& x) {
    std::vector<std::uint8_t> rel(static_cast<size_t>(x.n) * x.n, 0);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (x.at(i, j) && x.at(j, i)) rel[static_cast<size_t>(i) * x.n + j] = 1;
    Obj t(x.n, std::move(rel));
    std::vector<int> id(x.n);
    for (int i = 0; i < x.n; ++i) id[i] = i;
    Mor counit(t, x, std::move(id));
    return {std::move(t), std::move(counit)};
  }

  /// Quotient by mutual comparability; classes numbered by smallest member.
  static std::pair<Obj, Mor> torsionfree_part(const Obj& x) {
    UnionFind uf(x.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (x.at(i, j) && x.at(j, i)) uf.unite(i, j);
    auto classes = uf.blocks();
    const int m = static_cast<int>(classes.size());
    std::vector<int> cls(x.n, -1);
    for (int c = 0; c < m; ++c)
      for (int e : classes[c]) cls[e] = c;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < x.n; ++j)
        if (x.at(i, j)) pairs.emplace_back(cls[i], cls[j]);
    Obj f = closure(m, pairs);
    require(is_torsionfree(f), Errc::InvalidObject, "quotient not antisymmetric");
    Mor unit(x, f, std::move(cls));
    return {std::move(f), std::move(unit)};
  }

  /// Edge-wise triviality: f factors through a discrete preorder iff related
  /// points share their image.
  static std::optional<Witness> trivial_witness(const Mor& f) {
    for (int i = 0; i < f.dom.n; ++i)
      for (int j = 0; j < f.dom.n; ++j)
        if (f.dom.at(i, j) && f.table[i] != f.table[j]) return std::nullopt;
    // Factor through the discrete preorder on the distinct image values.
    std::vector<int> values;
    for (int v : f.table)
      if (!std::binary_search(values.begin(), values.end(), v))
        values.insert(std::lower_bound(values.begin(), values.end(), v), v);
    Obj via = discrete(static_cast<int>(values.size()));
    std::vector<int> collapse(f.dom.n);
    for (int i = 0; i < f.dom.n; ++i) collapse[i] = local_index(values, f.table[i]);
    return Witness{via, Mor(f.dom, via, std::move(collapse)), Mor(via, f.cod, values)};
  }

  /// Z-kernel: same carrier, relation kept only where f is constant.
  static Mor z_kernel(const Mor& f) {
    const Obj& a = f.dom;
    std::vector<std::uint8_t> rel(static_cast<size_t>(a.n) * a.n, 0);
    for (int i = 0; i < a.n; ++i)
      for (int j = 0; j < a.n; ++j)
        if (a.at(i, j) && f.table[i] == f.table[j]) rel[static_cast<size_t>(i) * a.n + j] = 1;
    Obj k(a.n, std::move(rel));
    std::vector<int> id(a.n);
    for (int i = 0; i < a.n; ++i) id[i] = i;
    return Mor(std::move(k), a, std::move(id));
  }

  /// Z-cokernel: quotient of the codomain by the equivalence generated by
  /// {(f(i), f(j)) : i <= j}, with the closed image relation.
  static Mor z_cokernel(const Mor& f) {
    const Obj& b = f.cod;
    UnionFind uf(b.n);
    for (int i = 0; i < f.dom.n; ++i)
      for (int j = 0; j < f.dom.n; ++j)
        if (f.dom.at(i, j)) uf.unite(f.table[i], f.table[j]);
    auto classes = uf.blocks();
    const int m = static_cast<int>(classes.size());
    std::vector<int> cls(b.n, -1);
    for (int c = 0; c < m; ++c)
      for (int e : classes[c]) cls[e] = c;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < b.n; ++i)
      for (int j = 0; j < b.n; ++j)
        if (b.at(i, j)) pairs.emplace_back(cls[i], cls[j]);
    Obj q = closure(m, pairs);
    return Mor(b, std::move(q), std::move(cls));
  }
};

/// Specialization preorder of a finite topology: x <= y iff every open set
/// containing x contains y. `opens` must be closed under union and
/// intersection and contain the empty and the full set.
inline Obj from_finite_top(int n, const std::vector<Subset>& opens) {
  auto find = [&](const Subset& s) {
    for (const auto& o : opens)
      if (o == s) return true;
    return false;
  };
  require(find(Subset{}), Errc::NotATopology, "missing empty set");
  Subset full(n);
  for (int i = 0; i < n; ++i) full[i] = i;
  require(find(full), Errc::NotATopology, "missing full set");
  for (const auto& a : opens) {
    for (int v : a) require(v >= 0 && v < n, Errc::NotATopology, "open set out of range");
    for (const auto& b : opens) {
      if (!find(subset_union(a, b)))
        fail(Errc::NotATopology, "not closed under union: {" + join_ints(a) + "} | {" + join_ints(b) + "}");
      if (!find(subset_intersect(a, b)))
        fail(Errc::NotATopology, "not closed under intersection: {" + join_ints(a) + "} & {" + join_ints(b) + "}");
    }
  }
  std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n, 1);
  for (const auto& o : opens)
    for (int x : o)
      for (int y = 0; y < n; ++y)
        if (!subset_contains(o, y)) rel[static_cast<size_t>(x) * n + y] = 0;
  return Obj(n, std::move(rel));
}

/// A finite topology is a partition topology iff its opens are closed under
/// complement.
inline bool is_partition_topology(int n, const std::vector<Subset>& opens) {
  for (const auto& o : opens) {
    Subset c = subset_complement(o, n);
    bool found = false;
    for (const auto& p : opens)
      if (p == c) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

/// Kolmogorov separation: distinct points have distinguishing opens.
inline bool is_kolmogorov(int n, const std::vector<Subset>& opens) {
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      bool separated = false;
      for (const auto& o : opens)
        if (subset_contains(o, x) != subset_contains(o, y)) {
          separated = true;
          break;
        }
      if (!separated) return false;
    }
  return true;
}

}  // namespace stabcat::preord
