#pragma once

#include <concepts>
#include <optional>

#include "stabcat/core.hpp"

namespace stabcat {

/// The operational contract a concrete instance category has to satisfy:
/// skeletal finite objects, table-based morphisms, disjoint block sums, and
/// connected components (whose unions are exactly the complemented
/// subobjects).
template <typename C>
concept InstanceCategory = requires(const typename C::Obj& x, const typename C::Mor& f, const Subset& s,
                                    const std::vector<int>& t, int n, Rng& rng) {
  { C::empty() } -> std::same_as<typename C::Obj>;
  { C::valid_table(x, x, t) } -> std::same_as<bool>;
  { C::restricted(x, s) } -> std::same_as<typename C::Obj>;
  { C::coproduct_obj(x, x) } -> std::same_as<typename C::Obj>;
  { C::product_obj(x, x) } -> std::same_as<typename C::Obj>;
  { C::components(x) } -> std::same_as<std::vector<Subset>>;
  { C::all_objects(n) } -> std::same_as<std::vector<typename C::Obj>>;
  { C::random_object(n, rng) } -> std::same_as<typename C::Obj>;
  { C::encode(x) } -> std::same_as<std::string>;
  { f.dom } -> std::convertible_to<typename C::Obj>;
  { f.table } -> std::convertible_to<std::vector<int>>;
};

/// Instance hooks of a pretorsion theory on top of an instance category.
template <typename C>
concept PretorsionInstance = InstanceCategory<C> && requires(const typename C::Obj& x, const typename C::Mor& f) {
  { C::is_torsion(x) } -> std::same_as<bool>;
  { C::is_torsionfree(x) } -> std::same_as<bool>;
  { C::is_trivial_obj(x) } -> std::same_as<bool>;
  { C::torsion_part(x) } -> std::same_as<std::pair<typename C::Obj, typename C::Mor>>;
  { C::torsionfree_part(x) } -> std::same_as<std::pair<typename C::Obj, typename C::Mor>>;
  C::trivial_witness(f);
};

template <InstanceCategory C>
typename C::Mor identity(const typename C::Obj& x) {
  std::vector<int> t(x.n);
  for (int i = 0; i < x.n; ++i) t[i] = i;
  return typename C::Mor(x, x, std::move(t));
}

template <InstanceCategory C>
typename C::Mor compose(const typename C::Mor& g, const typename C::Mor& f) {
  require(f.cod == g.dom, Errc::DomainMismatch, "compose: middle objects differ");
  std::vector<int> t(f.table.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = g.table[f.table[i]];
  return typename C::Mor(f.dom, g.cod, std::move(t));
}

template <InstanceCategory C>
bool is_mono(const typename C::Mor& f) {
  std::vector<std::uint8_t> hit(f.cod.n, 0);
  for (int v : f.table) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

template <InstanceCategory C>
bool is_epi(const typename C::Mor& f) {
  std::vector<std::uint8_t> hit(f.cod.n, 0);
  for (int v : f.table) hit[v] = 1;
  for (auto h : hit)
    if (!h) return false;
  return true;
}

/// Isomorphism = bijective table whose inverse is again a morphism.
template <InstanceCategory C>
bool is_iso(const typename C::Mor& f) {
  if (f.dom.n != f.cod.n || !is_mono<C>(f)) return false;
  std::vector<int> inv(f.cod.n);
  for (int i = 0; i < f.dom.n; ++i) inv[f.table[i]] = i;
  return C::valid_table(f.cod, f.dom, inv);
}

template <InstanceCategory C>
typename C::Mor inverse(const typename C::Mor& f) {
  require(is_iso<C>(f), Errc::InvalidMorphism, "inverse of a non-isomorphism");
  std::vector<int> inv(f.cod.n);
  for (int i = 0; i < f.dom.n; ++i) inv[f.table[i]] = i;
  return typename C::Mor(f.cod, f.dom, std::move(inv));
}

template <InstanceCategory C>
struct CoproductData {
  typename C::Obj left, right, sum;
  typename C::Mor inj_left, inj_right;
};

/// Canonical sum: left block keeps indices, right block shifts by left.n.
template <InstanceCategory C>
CoproductData<C> coproduct(const typename C::Obj& x, const typename C::Obj& y) {
  typename C::Obj s = C::coproduct_obj(x, y);
  std::vector<int> l(x.n), r(y.n);
  for (int i = 0; i < x.n; ++i) l[i] = i;
  for (int i = 0; i < y.n; ++i) r[i] = x.n + i;
  return {x, y, s, typename C::Mor(x, s, std::move(l)), typename C::Mor(y, s, std::move(r))};
}

template <InstanceCategory C>
typename C::Mor copair(const typename C::Mor& f, const typename C::Mor& g, const CoproductData<C>& cp) {
  require(f.dom == cp.left && g.dom == cp.right, Errc::DomainMismatch, "copair: legs do not match the sum");
  require(f.cod == g.cod, Errc::DomainMismatch, "copair: codomains differ");
  std::vector<int> t(cp.sum.n, -1);
  for (int i = 0; i < cp.left.n; ++i) t[cp.inj_left.table[i]] = f.table[i];
  for (int i = 0; i < cp.right.n; ++i) t[cp.inj_right.table[i]] = g.table[i];
  return typename C::Mor(cp.sum, f.cod, std::move(t));
}

/// A coproduct decomposition of `ambient` given by a subset and its complement.
template <InstanceCategory C>
struct ComplementedSub {
  typename C::Obj ambient;
  Subset members;
  Subset complement;
};

template <InstanceCategory C>
typename C::Mor inclusion_mor(const typename C::Obj& x, const Subset& members) {
  return typename C::Mor(C::restricted(x, members), x, members);
}

/// Check the ComplementedSub laws: partition into component unions whose
/// induced sum is the ambient object on the nose.
template <InstanceCategory C>
bool validate_complemented(const ComplementedSub<C>& cs, std::string* why = nullptr) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (subset_union(cs.members, cs.complement).size() != static_cast<size_t>(cs.ambient.n))
    return bad("members and complement do not cover the ambient carrier");
  if (!subset_intersect(cs.members, cs.complement).empty()) return bad("members meet complement");
  for (const auto& comp : C::components(cs.ambient)) {
    bool in = subset_contains(cs.members, comp[0]);
    for (int e : comp)
      if (subset_contains(cs.members, e) != in)
        return bad("subset splits the component of element " + std::to_string(comp[0]));
  }
  try {
    auto cp = coproduct<C>(C::restricted(cs.ambient, cs.members), C::restricted(cs.ambient, cs.complement));
    auto u = copair<C>(inclusion_mor<C>(cs.ambient, cs.members), inclusion_mor<C>(cs.ambient, cs.complement), cp);
    if (!is_iso<C>(u)) return bad("induced sum is not isomorphic to the ambient object");
  } catch (const Error& e) {
    return bad(std::string("induced decomposition is ill-formed: ") + e.what());
  }
  return true;
}

/// All 2^k complemented subobjects, k = number of connected components.
/// Deterministic bitmask order over components sorted by smallest member.
template <InstanceCategory C>
std::vector<ComplementedSub<C>> complemented_subobjects(const typename C::Obj& x) {
  auto comps = C::components(x);
  const int k = static_cast<int>(comps.size());
  require(k < 20, Errc::IndexOutOfRange, "too many components to enumerate");
  std::vector<ComplementedSub<C>> out;
  out.reserve(1u << k);
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Subset members;
    for (int c = 0; c < k; ++c)
      if (mask & (1u << c)) members = subset_union(members, comps[c]);
    Subset comp = subset_complement(members, x.n);
    out.push_back({x, std::move(members), std::move(comp)});
  }
  return out;
}

template <InstanceCategory C>
Subset preimage(const typename C::Mor& f, const Subset& of_cod) {
  Subset out;
  for (int i = 0; i < f.dom.n; ++i)
    if (subset_contains(of_cod, f.table[i])) out.push_back(i);
  return out;
}

/// Restrict the domain of f to a subset (given on global indices).
template <InstanceCategory C>
typename C::Mor restrict_dom(const typename C::Mor& f, const Subset& s) {
  std::vector<int> t(s.size());
  for (size_t i = 0; i < s.size(); ++i) t[i] = f.table[s[i]];
  return typename C::Mor(C::restricted(f.dom, s), f.cod, std::move(t));
}

/// Corestrict f to a subset of its codomain containing the image.
template <InstanceCategory C>
typename C::Mor corestrict(const typename C::Mor& f, const Subset& t_cod) {
  std::vector<int> t(f.table.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = local_index(t_cod, f.table[i]);
  return typename C::Mor(f.dom, C::restricted(f.cod, t_cod), std::move(t));
}

template <InstanceCategory C>
struct PullbackData {
  typename C::Obj apex;
  typename C::Mor p1, p2;
  std::vector<std::pair<int, int>> pairs;  // apex element -> (x, y)
};

/// Canonical pullback: the matched-pairs subobject of the product.
template <InstanceCategory C>
PullbackData<C> pullback(const typename C::Mor& f, const typename C::Mor& g) {
  require(f.cod == g.cod, Errc::DomainMismatch, "pullback: codomains differ");
  auto prod = C::product_obj(f.dom, g.dom);
  Subset matched;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < f.dom.n; ++i)
    for (int j = 0; j < g.dom.n; ++j)
      if (f.table[i] == g.table[j]) {
        matched.push_back(i * g.dom.n + j);
        pairs.emplace_back(i, j);
      }
  auto apex = C::restricted(prod, matched);
  std::vector<int> t1(pairs.size()), t2(pairs.size());
  for (size_t k = 0; k < pairs.size(); ++k) {
    t1[k] = pairs[k].first;
    t2[k] = pairs[k].second;
  }
  return {apex, typename C::Mor(apex, f.dom, std::move(t1)), typename C::Mor(apex, g.dom, std::move(t2)),
          std::move(pairs)};
}

/// Does the commuting square (q1 : W -> dom f, q2 : W -> dom g) exhibit W as
/// the pullback of f and g?  Decided by the canonical comparison morphism.
template <InstanceCategory C>
bool is_pullback_square(const typename C::Mor& f, const typename C::Mor& g, const typename C::Mor& q1,
                        const typename C::Mor& q2) {
  if (!(q1.dom == q2.dom) || !(q1.cod == f.dom) || !(q2.cod == g.dom)) return false;
  if (!(compose<C>(f, q1) == compose<C>(g, q2))) return false;
  auto pb = pullback<C>(f, g);
  std::vector<int> cmp(q1.dom.n);
  for (int w = 0; w < q1.dom.n; ++w) {
    int at = -1;
    for (size_t k = 0; k < pb.pairs.size(); ++k)
      if (pb.pairs[k].first == q1.table[w] && pb.pairs[k].second == q2.table[w]) {
        at = static_cast<int>(k);
        break;
      }
    if (at < 0) return false;
    cmp[w] = at;
  }
  if (!C::valid_table(q1.dom, pb.apex, cmp)) return false;
  return is_iso<C>(typename C::Mor(q1.dom, pb.apex, std::move(cmp)));
}

/// Pull a complemented subobject of the codomain back along f: the preimage
/// subset with the restricted morphism into the induced object.
template <InstanceCategory C>
std::pair<ComplementedSub<C>, typename C::Mor> pullback_along_complemented(const typename C::Mor& f,
                                                                           const ComplementedSub<C>& beta) {
  require(beta.ambient == f.cod, Errc::DomainMismatch, "subobject not of the codomain");
  Subset pre = preimage<C>(f, beta.members);
  ComplementedSub<C> w{f.dom, pre, subset_complement(pre, f.dom.n)};
  auto restricted = corestrict<C>(restrict_dom<C>(f, pre), beta.members);
  return {std::move(w), std::move(restricted)};
}

template <InstanceCategory C>
std::pair<typename C::Obj, typename C::Mor> equalizer(const typename C::Mor& f, const typename C::Mor& g) {
  require(f.dom == g.dom && f.cod == g.cod, Errc::DomainMismatch, "equalizer of non-parallel pair");
  Subset e;
  for (int i = 0; i < f.dom.n; ++i)
    if (f.table[i] == g.table[i]) e.push_back(i);
  auto obj = C::restricted(f.dom, e);
  return {obj, typename C::Mor(obj, f.dom, std::move(e))};
}

template <InstanceCategory C>
std::vector<typename C::Mor> all_morphisms(const typename C::Obj& x, const typename C::Obj& y) {
  std::vector<typename C::Mor> out;
  for (TableEnumerator e(x.n, y.n); !e.done(); e.advance())
    if (C::valid_table(x, y, e.table())) out.emplace_back(x, y, e.table());
  return out;
}

template <InstanceCategory C>
std::vector<typename C::Mor> all_monos(const typename C::Obj& x, const typename C::Obj& y) {
  std::vector<typename C::Mor> out;
  for (auto& m : all_morphisms<C>(x, y))
    if (is_mono<C>(m)) out.push_back(std::move(m));
  return out;
}

template <InstanceCategory C>
std::vector<typename C::Mor> all_epis(const typename C::Obj& x, const typename C::Obj& y) {
  std::vector<typename C::Mor> out;
  for (auto& m : all_morphisms<C>(x, y))
    if (is_epi<C>(m)) out.push_back(std::move(m));
  return out;
}

template <InstanceCategory C>
std::optional<typename C::Mor> random_morphism(const typename C::Obj& x, const typename C::Obj& y, Rng& rng) {
  auto all = all_morphisms<C>(x, y);
  if (all.empty()) return std::nullopt;
  return all[rng.below(static_cast<int>(all.size()))];
}

/// Operational lextensivity check on a coproduct presentation: disjoint
/// injections, and every probe into the sum decomposes as a sum by pulling
/// back the two injections.
template <InstanceCategory C>
Report verify_extensivity(const CoproductData<C>& cp, const std::vector<typename C::Mor>& probes) {
  Report r;
  r.suite = "extensivity";
  Subset left_img(cp.inj_left.table.begin(), cp.inj_left.table.end());
  Subset right_img(cp.inj_right.table.begin(), cp.inj_right.table.end());
  std::sort(left_img.begin(), left_img.end());
  std::sort(right_img.begin(), right_img.end());
  r.check(is_mono<C>(cp.inj_left) && is_mono<C>(cp.inj_right), "injections are mono", "coprojection not injective");
  r.check(subset_intersect(left_img, right_img).empty(), "sum is disjoint", "coprojection images overlap");
  r.check(subset_union(left_img, right_img).size() == static_cast<size_t>(cp.sum.n), "injections cover the sum",
          "elements of the sum hit by no coprojection");

  for (size_t pi = 0; pi < probes.size(); ++pi) {
    const auto& h = probes[pi];
    const std::string at = "probe " + std::to_string(pi);
    if (!(h.cod == cp.sum)) {
      r.check(false, "probe codomain", at + " does not land in the sum");
      continue;
    }
    try {
      Subset z1 = preimage<C>(h, left_img);
      Subset z2 = preimage<C>(h, right_img);
      ComplementedSub<C> c1{h.dom, z1, subset_complement(z1, h.dom.n)};
      std::string why;
      if (!validate_complemented<C>(c1, &why)) {
        r.check(false, "preimage is complemented", at + ": " + why);
        continue;
      }
      r.check(subset_union(z1, z2).size() == static_cast<size_t>(h.dom.n) && subset_intersect(z1, z2).empty(),
              "preimages partition the probe", at);
      // The two squares over the injections must be pullbacks.
      auto q1 = corestrict<C>(restrict_dom<C>(h, z1), left_img);
      auto back1 = compose<C>(inverse<C>(corestrict<C>(cp.inj_left, left_img)), q1);
      r.check(is_pullback_square<C>(cp.inj_left, h, back1, inclusion_mor<C>(h.dom, z1)), "left square is a pullback",
              at);
      auto q2 = corestrict<C>(restrict_dom<C>(h, z2), right_img);
      auto back2 = compose<C>(inverse<C>(corestrict<C>(cp.inj_right, right_img)), q2);
      r.check(is_pullback_square<C>(cp.inj_right, h, back2, inclusion_mor<C>(h.dom, z2)), "right square is a pullback",
              at);
      // Universality: the top row is again a sum.
      auto top = coproduct<C>(C::restricted(h.dom, z1), C::restricted(h.dom, z2));
      auto u = copair<C>(inclusion_mor<C>(h.dom, z1), inclusion_mor<C>(h.dom, z2), top);
      r.check(is_iso<C>(u), "probe decomposes as a sum", at);
    } catch (const Error& e) {
      r.check(false, "probe decomposition well-formed", at + ": " + e.what());
    }
  }
  return r;
}

}  // namespace stabcat
