#pragma once

#include <optional>
#include <utility>

#include "stabcat/core.hpp"

namespace stabcat::endo {

/// Finite set with an endofunction; equivalently a functional graph where
/// every vertex has out-degree one.
struct Obj {
  int n = 0;
  std::vector<int> f;

  Obj() = default;

  Obj(int size, std::vector<int> fun) : n(size), f(std::move(fun)) {
    require(n >= 0, Errc::InvalidObject, "negative carrier");
    require(f.size() == static_cast<size_t>(n), Errc::InvalidObject, "endofunction size mismatch");
    for (int v : f)
      require(v >= 0 && v < n, Errc::InvalidObject, "endofunction value out of range");
  }

  int operator()(int i) const { return f[i]; }

  bool operator==(const Obj& o) const = default;
};

inline Obj identity_obj(int n) {
  std::vector<int> f(n);
  for (int i = 0; i < n; ++i) f[i] = i;
  return Obj(n, std::move(f));
}

inline std::vector<int> compose_tables(const std::vector<int>& g, const std::vector<int>& f) {
  std::vector<int> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = g[f[i]];
  return out;
}

/// f^k for k >= max(1, n), computed by repeated squaring; its image is the
/// cyclic part and it is idempotent-up-to-cycle-rotation past the tails.
inline std::vector<int> eventual_power(const Obj& x) {
  if (x.n == 0) return {};
  std::vector<int> p = x.f;
  int k = 1;
  while (k < x.n) {
    p = compose_tables(p, p);
    k *= 2;
  }
  return p;
}

/// Equivariant map between endomappings.
struct Mor {
  Obj dom, cod;
  std::vector<int> table;

  Mor() = default;

  Mor(Obj d, Obj c, std::vector<int> t) : dom(std::move(d)), cod(std::move(c)), table(std::move(t)) {
    require(table.size() == static_cast<size_t>(dom.n), Errc::InvalidMorphism, "table size mismatch");
    for (int v : table)
      require(v >= 0 && v < cod.n, Errc::InvalidMorphism, "table value out of range");
    for (int i = 0; i < dom.n; ++i)
      require(table[dom.f[i]] == cod.f[table[i]], Errc::InvalidMorphism, "table not equivariant");
  }

  int operator()(int i) const { return table[i]; }

  bool operator==(const Mor& o) const = default;
};

struct Witness {
  Obj via;
  Mor collapse;
  Mor embed;
};

/// Instance hooks for endomappings of finite sets with the
/// (cycles, forests) pretorsion theory; trivial objects are identities.
struct Cat {
  using Obj = endo::Obj;
  using Mor = endo::Mor;
  using TrivialWitness = Witness;

  static constexpr const char* name = "endo";
  static constexpr bool has_z_kernels = true;

  static Obj empty() { return Obj(); }
  static Obj terminal() { return identity_obj(1); }

  /// Close a subset under the endofunction; monic images are invariant.
  static Subset mono_closure(const Obj& x, Subset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t i = 0; i < s.size(); ++i) {
        int v = x.f[s[i]];
        if (!subset_contains(s, v)) {
          s.insert(std::lower_bound(s.begin(), s.end(), v), v);
          grew = true;
        }
      }
    }
    return s;
  }

  /// Every epi here is extremal; quotients are exactly the maps onto a
  /// quotient by an f-compatible equivalence, so sample one directly.
  static Mor random_extremal_quotient(const Obj& x, Rng& rng) {
    if (x.n == 0) return Mor(x, x, {});
    UnionFind uf(x.n);
    const int merges = rng.below(x.n);
    for (int k = 0; k < merges; ++k) uf.unite(rng.below(x.n), rng.below(x.n));
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < x.n; ++a)
        for (int b = a + 1; b < x.n; ++b)
          if (uf.same(a, b) && uf.unite(x.f[a], x.f[b])) changed = true;
    }
    auto classes = uf.blocks();
    const int m = static_cast<int>(classes.size());
    std::vector<int> cls(x.n, -1);
    for (int c = 0; c < m; ++c)
      for (int e : classes[c]) cls[e] = c;
    std::vector<int> g(m);
    for (int c = 0; c < m; ++c) g[c] = cls[x.f[classes[c][0]]];
    return Mor(x, Obj(m, std::move(g)), std::move(cls));
  }

  static bool valid_table(const Obj& dom, const Obj& cod, const std::vector<int>& t) {
    if (t.size() != static_cast<size_t>(dom.n)) return false;
    for (int v : t)
      if (v < 0 || v >= cod.n) return false;
    for (int i = 0; i < dom.n; ++i)
      if (t[dom.f[i]] != cod.f[t[i]]) return false;
    return true;
  }

  /// Restriction to an f-invariant subset, renumbered along the sorted order.
  static Obj restricted(const Obj& x, const Subset& members) {
    std::vector<int> f(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
      int img = x.f[members[i]];
      require(subset_contains(members, img), Errc::InvalidObject, "subset not invariant");
      f[i] = local_index(members, img);
    }
    return Obj(static_cast<int>(members.size()), std::move(f));
  }

  static Obj coproduct_obj(const Obj& x, const Obj& y) {
    std::vector<int> f(static_cast<size_t>(x.n) + y.n);
    for (int i = 0; i < x.n; ++i) f[i] = x.f[i];
    for (int i = 0; i < y.n; ++i) f[static_cast<size_t>(x.n) + i] = x.n + y.f[i];
    return Obj(x.n + y.n, std::move(f));
  }

  static Obj product_obj(const Obj& x, const Obj& y) {
    std::vector<int> f(static_cast<size_t>(x.n) * y.n);
    for (int i = 0; i < x.n; ++i)
      for (int j = 0; j < y.n; ++j) f[static_cast<size_t>(i) * y.n + j] = x.f[i] * y.n + y.f[j];
    return Obj(x.n * y.n, std::move(f));
  }

  /// Weakly connected components of the functional graph.
  static std::vector<Subset> components(const Obj& x) {
    UnionFind uf(x.n);
    for (int i = 0; i < x.n; ++i) uf.unite(i, x.f[i]);
    return uf.blocks();
  }

  static std::vector<Obj> all_objects(int n) {
    std::vector<Obj> out;
    for (TableEnumerator e(n, n); !e.done(); e.advance()) out.emplace_back(n, e.table());
    return out;
  }

  static Obj random_object(int n, Rng& rng) {
    std::vector<int> f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.below(n);
    return Obj(n, std::move(f));
  }

  static std::string encode(const Obj& x) {
    return "e" + std::to_string(x.n) + ";" + join_ints(x.f, ",");
  }

  // --- pretorsion theory hooks: (cycles, forests) ---

  static bool is_torsion(const Obj& x) {
    std::vector<std::uint8_t> hit(x.n, 0);
    for (int v : x.f) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }

  /// Forest objects: f^n = f^(n+1), i.e. every cycle is a fixed point.
  static bool is_torsionfree(const Obj& x) {
    auto p = eventual_power(x);
    return compose_tables(x.f, p) == p;
  }

  static bool is_trivial_obj(const Obj& x) {
    for (int i = 0; i < x.n; ++i)
      if (x.f[i] != i) return false;
    return true;
  }

  static Subset cyclic_elements(const Obj& x) {
    auto p = eventual_power(x);
    std::vector<std::uint8_t> in_img(x.n, 0);
    for (int v : p) in_img[v] = 1;
    Subset cyc;
    for (int i = 0; i < x.n; ++i)
      if (in_img[i]) cyc.push_back(i);
    return cyc;
  }

  /// Restriction to the cyclic part; the counit is the subset inclusion.
  static std::pair<Obj, Mor> torsion_part(const Obj& x) {
    Subset cyc = cyclic_elements(x);
    Obj t = restricted(x, cyc);
    require(is_torsion(t), Errc::InvalidObject, "cyclic part not a bijection");
    Mor counit(t, x, cyc);
    return {std::move(t), std::move(counit)};
  }

  /// Collapse every cycle to a fixed point; classes numbered by smallest member.
  static std::pair<Obj, Mor> torsionfree_part(const Obj& x) {
    UnionFind uf(x.n);
    Subset cyc = cyclic_elements(x);
    for (int c : cyc) uf.unite(c, x.f[c]);
    auto classes = uf.blocks();
    const int m = static_cast<int>(classes.size());
    std::vector<int> cls(x.n, -1);
    for (int c = 0; c < m; ++c)
      for (int e : classes[c]) cls[e] = c;
    std::vector<int> f(m);
    for (int c = 0; c < m; ++c) f[c] = cls[x.f[classes[c][0]]];
    for (int i = 0; i < x.n; ++i)
      require(f[cls[i]] == cls[x.f[i]], Errc::InvalidObject, "cycle collapse ill-defined");
    Obj q(m, std::move(f));
    require(is_torsionfree(q), Errc::InvalidObject, "cycle collapse left a long cycle");
    Mor unit(x, q, std::move(cls));
    return {std::move(q), std::move(unit)};
  }

  /// Trivial iff constant on every weak component and valued in fixed points;
  /// that is exactly factoring through an identity object.
  static std::optional<Witness> trivial_witness(const Mor& m) {
    auto comps = components(m.dom);
    for (const auto& comp : comps)
      for (int e : comp)
        if (m.table[e] != m.table[comp[0]]) return std::nullopt;
    for (int i = 0; i < m.dom.n; ++i)
      if (m.cod.f[m.table[i]] != m.table[i]) return std::nullopt;
    const int k = static_cast<int>(comps.size());
    Obj via = identity_obj(k);
    std::vector<int> collapse(m.dom.n);
    std::vector<int> embed(k);
    for (int c = 0; c < k; ++c) {
      embed[c] = m.table.empty() ? 0 : m.table[comps[c][0]];
      for (int e : comps[c]) collapse[e] = c;
    }
    return Witness{via, Mor(m.dom, via, std::move(collapse)), Mor(via, m.cod, std::move(embed))};
  }

  /// Z-kernel: largest invariant subset of {x : phi(x) = phi(f(x)) and phi(x)
  /// is a fixed point}, included back into the domain.
  static Mor z_kernel(const Mor& m) {
    const Obj& x = m.dom;
    std::vector<std::uint8_t> in(x.n, 0);
    for (int i = 0; i < x.n; ++i)
      in[i] = (m.table[i] == m.table[x.f[i]] && m.cod.f[m.table[i]] == m.table[i]) ? 1 : 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < x.n; ++i)
        if (in[i] && !in[x.f[i]]) {
          in[i] = 0;
          changed = true;
        }
    }
    Subset k;
    for (int i = 0; i < x.n; ++i)
      if (in[i]) k.push_back(i);
    Obj kobj = restricted(x, k);
    return Mor(std::move(kobj), x, std::move(k));
  }

  /// Z-cokernel: quotient of the codomain by the smallest g-invariant
  /// equivalence merging each image of a weak component to one class and each
  /// image value with its g-successor.
  static Mor z_cokernel(const Mor& m) {
    const Obj& y = m.cod;
    UnionFind uf(y.n);
    for (const auto& comp : components(m.dom))
      for (int e : comp) uf.unite(m.table[comp[0]], m.table[e]);
    for (int i = 0; i < m.dom.n; ++i) uf.unite(m.table[i], y.f[m.table[i]]);
    // Close under g-invariance: merged points must keep merged successors.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < y.n; ++a)
        for (int b = a + 1; b < y.n; ++b)
          if (uf.same(a, b) && uf.unite(y.f[a], y.f[b])) changed = true;
    }
    auto classes = uf.blocks();
    const int q = static_cast<int>(classes.size());
    std::vector<int> cls(y.n, -1);
    for (int c = 0; c < q; ++c)
      for (int e : classes[c]) cls[e] = c;
    std::vector<int> g(q);
    for (int c = 0; c < q; ++c) g[c] = cls[y.f[classes[c][0]]];
    Obj qobj(q, std::move(g));
    return Mor(y, std::move(qobj), std::move(cls));
  }
};

}  // namespace stabcat::endo
