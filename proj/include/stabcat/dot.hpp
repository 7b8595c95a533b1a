#pragma once

#include <sstream>

#include "stabcat/endo.hpp"
#include "stabcat/preord.hpp"
#include "stabcat/pretorsion.hpp"

namespace stabcat::dot {

namespace detail {

/// Directed structure edges of an object: the relation without loops, or the
/// graph of the endofunction.
inline std::vector<std::pair<int, int>> structure_edges(const preord::Obj& x) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (i != j && x.at(i, j)) out.emplace_back(i, j);
  return out;
}

inline std::vector<std::pair<int, int>> structure_edges(const endo::Obj& x) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < x.n; ++i) out.emplace_back(i, x.f[i]);
  return out;
}

/// Strongly connected clusters: the cycles of an endofunction, or the
/// mutual-comparability classes of a preorder, skipping singletons.
inline std::vector<Subset> scc_clusters(const endo::Obj& x) {
  std::vector<Subset> out;
  auto cyc = endo::Cat::cyclic_elements(x);
  std::vector<std::uint8_t> used(x.n, 0);
  for (int c : cyc) {
    if (used[c]) continue;
    Subset orbit;
    int at = c;
    do {
      used[at] = 1;
      orbit.push_back(at);
      at = x.f[at];
    } while (at != c);
    std::sort(orbit.begin(), orbit.end());
    if (orbit.size() > 1) out.push_back(std::move(orbit));
  }
  return out;
}

inline std::vector<Subset> scc_clusters(const preord::Obj& x) {
  UnionFind uf(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (x.at(i, j) && x.at(j, i)) uf.unite(i, j);
  std::vector<Subset> out;
  for (auto& b : uf.blocks())
    if (b.size() > 1) out.push_back(std::move(b));
  return out;
}

template <typename Obj>
std::string graph_impl(const Obj& x, const char* name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  int cluster = 0;
  for (const auto& orbit : scc_clusters(x)) {
    os << "  subgraph cluster_" << cluster++ << " {\n";
    for (int e : orbit) os << "    n" << e << ";\n";
    os << "  }\n";
  }
  for (int i = 0; i < x.n; ++i) os << "  n" << i << " [label=\"" << i << "\"];\n";
  for (auto [a, b] : structure_edges(x)) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace detail

inline std::string graph(const preord::Obj& x) { return detail::graph_impl(x, "preord"); }
inline std::string graph(const endo::Obj& x) { return detail::graph_impl(x, "endo"); }

/// Hasse diagram of the quotient poset: one node per mutual-comparability
/// class, edges are covers.
inline std::string hasse(const preord::Obj& x) {
  UnionFind uf(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (x.at(i, j) && x.at(j, i)) uf.unite(i, j);
  auto classes = uf.blocks();
  const int m = static_cast<int>(classes.size());
  std::vector<int> cls(x.n);
  for (int c = 0; c < m; ++c)
    for (int e : classes[c]) cls[e] = c;
  auto below = [&](int a, int b) { return a != b && x.at(classes[a][0], classes[b][0]); };
  std::ostringstream os;
  os << "digraph hasse {\n";
  for (int c = 0; c < m; ++c) os << "  n" << c << " [label=\"{" << join_ints(classes[c], ",") << "}\"];\n";
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (!below(a, b)) continue;
      bool cover = true;
      for (int mid = 0; mid < m; ++mid)
        if (below(a, mid) && below(mid, b)) {
          cover = false;
          break;
        }
      if (cover) os << "  n" << a << " -> n" << b << ";\n";
    }
  os << "}\n";
  return os.str();
}

/// The canonical sequence T(X) -> X -> F(X) as three clusters with the
/// counit and unit drawn across them.
template <PretorsionInstance C>
std::string sequence(const typename C::Obj& x) {
  auto seq = canonical_sequence<C>(x);
  std::ostringstream os;
  os << "digraph sequence {\n  rankdir=LR;\n";
  auto emit = [&](const typename C::Obj& o, const char* tag, const char* label) {
    os << "  subgraph cluster_" << tag << " {\n    label=\"" << label << "\";\n";
    for (int i = 0; i < o.n; ++i) os << "    " << tag << i << " [label=\"" << i << "\"];\n";
    for (auto [a, b] : detail::structure_edges(o))
      if (a != b) os << "    " << tag << a << " -> " << tag << b << ";\n";
    os << "  }\n";
  };
  emit(seq.torsion, "t", "T(X)");
  emit(seq.object, "x", "X");
  emit(seq.free, "f", "F(X)");
  for (int i = 0; i < seq.torsion.n; ++i)
    os << "  t" << i << " -> x" << seq.counit.table[i] << " [style=dashed, label=\"ε\"];\n";
  for (int i = 0; i < seq.object.n; ++i)
    os << "  x" << i << " -> f" << seq.unit.table[i] << " [style=dashed, label=\"η\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace stabcat::dot
