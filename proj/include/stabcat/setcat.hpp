#pragma once

#include <optional>
#include <utility>

#include "stabcat/core.hpp"

namespace stabcat::setcat {

/// A finite set, skeletally: just a carrier size.
struct Obj {
  int n = 0;

  Obj() = default;
  explicit Obj(int size) : n(size) { require(n >= 0, Errc::InvalidObject, "negative carrier"); }

  bool operator==(const Obj& o) const = default;
};

struct Mor {
  Obj dom, cod;
  std::vector<int> table;

  Mor() = default;

  Mor(Obj d, Obj c, std::vector<int> t) : dom(d), cod(c), table(std::move(t)) {
    require(table.size() == static_cast<size_t>(dom.n), Errc::InvalidMorphism, "table size mismatch");
    for (int v : table)
      require(v >= 0 && v < cod.n, Errc::InvalidMorphism, "table value out of range");
  }

  int operator()(int i) const { return table[i]; }

  bool operator==(const Mor& o) const = default;
};

struct Witness {
  Obj via;
  Mor collapse;
  Mor embed;
};

/// Finite sets carrying the degenerate pretorsion theory (everything,
/// at-most-one-element). Z-kernels do not exist in general here, so only the
/// canonical-sequence hooks are provided.
struct Cat {
  using Obj = setcat::Obj;
  using Mor = setcat::Mor;
  using TrivialWitness = Witness;

  static constexpr const char* name = "set";
  static constexpr bool has_z_kernels = false;

  static Obj empty() { return Obj(); }
  static Obj terminal() { return Obj(1); }

  static Subset mono_closure(const Obj&, Subset s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  static Mor random_extremal_quotient(const Obj& x, Rng& rng) {
    if (x.n == 0) return Mor(x, x, {});
    const int m = 1 + rng.below(x.n);
    std::vector<int> t(x.n);
    for (int i = 0; i < x.n; ++i) t[i] = i < m ? i : rng.below(m);
    return Mor(x, Obj(m), std::move(t));
  }

  static bool valid_table(const Obj& dom, const Obj& cod, const std::vector<int>& t) {
    if (t.size() != static_cast<size_t>(dom.n)) return false;
    for (int v : t)
      if (v < 0 || v >= cod.n) return false;
    return true;
  }

  static Obj restricted(const Obj&, const Subset& members) {
    return Obj(static_cast<int>(members.size()));
  }

  static Obj coproduct_obj(const Obj& x, const Obj& y) { return Obj(x.n + y.n); }
  static Obj product_obj(const Obj& x, const Obj& y) { return Obj(x.n * y.n); }

  /// Every point is its own component, so complemented subobjects are all subsets.
  static std::vector<Subset> components(const Obj& x) {
    std::vector<Subset> out;
    out.reserve(x.n);
    for (int i = 0; i < x.n; ++i) out.push_back({i});
    return out;
  }

  static std::vector<Obj> all_objects(int n) { return {Obj(n)}; }

  static Obj random_object(int n, Rng&) { return Obj(n); }

  static std::string encode(const Obj& x) { return "s" + std::to_string(x.n); }

  static bool is_torsion(const Obj&) { return true; }
  static bool is_torsionfree(const Obj& x) { return x.n <= 1; }
  static bool is_trivial_obj(const Obj& x) { return x.n <= 1; }

  static std::pair<Obj, Mor> torsion_part(const Obj& x) {
    std::vector<int> id(x.n);
    for (int i = 0; i < x.n; ++i) id[i] = i;
    return {x, Mor(x, x, std::move(id))};
  }

  static std::pair<Obj, Mor> torsionfree_part(const Obj& x) {
    Obj f(x.n == 0 ? 0 : 1);
    return {f, Mor(x, f, std::vector<int>(x.n, 0))};
  }

  /// Trivial iff the image has at most one element.
  static std::optional<Witness> trivial_witness(const Mor& m) {
    for (int v : m.table)
      if (v != m.table[0]) return std::nullopt;
    Obj via(m.dom.n == 0 ? 0 : 1);
    std::vector<int> embed;
    if (m.dom.n > 0) embed.push_back(m.table[0]);
    return Witness{via, Mor(m.dom, via, std::vector<int>(m.dom.n, 0)), Mor(via, m.cod, std::move(embed))};
  }
};

}  // namespace stabcat::setcat
