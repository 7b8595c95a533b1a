#pragma once

#include <map>

#include "stabcat/pretorsion.hpp"

namespace stabcat {

/// A partial morphism (alpha, f): src <- support -> dst, where the support is
/// a complemented subobject of src (a union of connected components) and the
/// map lives on the induced object.
template <PretorsionInstance C>
struct PartialMor {
  typename C::Obj src, dst;
  Subset support;
  typename C::Mor map;

  bool operator==(const PartialMor& o) const = default;
};

template <PretorsionInstance C>
PartialMor<C> make_partial(const typename C::Obj& src, const typename C::Obj& dst, Subset support,
                           typename C::Mor map) {
  ComplementedSub<C> cs{src, support, subset_complement(support, src.n)};
  std::string why;
  require(validate_complemented<C>(cs, &why), Errc::InvalidMorphism, "partial morphism support: " + why);
  require(map.dom == C::restricted(src, support), Errc::InvalidMorphism,
          "partial morphism map not defined on the induced support object");
  require(map.cod == dst, Errc::DomainMismatch, "partial morphism map has the wrong codomain");
  return {src, dst, std::move(support), std::move(map)};
}

template <PretorsionInstance C>
PartialMor<C> par_from_total(const typename C::Mor& f) {
  Subset all(f.dom.n);
  for (int i = 0; i < f.dom.n; ++i) all[i] = i;
  auto dom = C::restricted(f.dom, all);
  return {f.dom, f.cod, std::move(all), typename C::Mor(std::move(dom), f.cod, f.table)};
}

template <PretorsionInstance C>
PartialMor<C> par_identity(const typename C::Obj& x) {
  return par_from_total<C>(identity<C>(x));
}

/// Composite by pullback: restrict to the preimage of the second support.
template <PretorsionInstance C>
PartialMor<C> par_compose(const PartialMor<C>& second, const PartialMor<C>& first) {
  require(first.dst == second.src, Errc::DomainMismatch, "par_compose: middle objects differ");
  Subset support;
  std::vector<int> table;
  for (size_t i = 0; i < first.support.size(); ++i) {
    int mid = first.map.table[i];
    if (subset_contains(second.support, mid)) {
      support.push_back(first.support[i]);
      table.push_back(second.map.table[local_index(second.support, mid)]);
    }
  }
  auto dom = C::restricted(first.src, support);
  return {first.src, second.dst, std::move(support), typename C::Mor(std::move(dom), second.dst, std::move(table))};
}

template <PretorsionInstance C>
struct ZeroMorphisms {
  PartialMor<C> omega;  // X -> 0
  PartialMor<C> alpha;  // 0 -> Y
  PartialMor<C> zero;   // X -> Y
};

template <PretorsionInstance C>
PartialMor<C> par_zero(const typename C::Obj& x, const typename C::Obj& y) {
  return {x, y, {}, typename C::Mor(C::empty(), y, {})};
}

template <PretorsionInstance C>
ZeroMorphisms<C> zero_morphisms(const typename C::Obj& x, const typename C::Obj& y) {
  auto o = C::empty();
  return {par_zero<C>(x, o), par_zero<C>(o, y), par_zero<C>(x, y)};
}

/// Reduced representative of a congruence class: no component of the support
/// maps trivially. Equality of stable morphisms is literal equality of the
/// normal forms.
template <PretorsionInstance C>
struct StableMor {
  PartialMor<C> rep;

  const typename C::Obj& src() const { return rep.src; }
  const typename C::Obj& dst() const { return rep.dst; }
  const Subset& support() const { return rep.support; }
  bool is_zero() const { return rep.support.empty(); }

  bool operator==(const StableMor& o) const = default;
};

/// Drop every support component on which the map restricts to a trivial
/// morphism; the result is congruent to the input and canonical.
template <PretorsionInstance C>
StableMor<C> reduce(const PartialMor<C>& p) {
  Subset keep;
  for (const auto& local_comp : C::components(p.map.dom)) {
    auto piece = restrict_dom<C>(p.map, local_comp);
    if (!is_trivial<C>(piece))
      for (int l : local_comp) keep.push_back(p.support[l]);
  }
  std::sort(keep.begin(), keep.end());
  auto dom = C::restricted(p.src, keep);
  std::vector<int> table(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) table[i] = p.map.table[local_index(p.support, keep[i])];
  return {{p.src, p.dst, std::move(keep), typename C::Mor(std::move(dom), p.dst, std::move(table))}};
}

template <PretorsionInstance C>
StableMor<C> sigma(const typename C::Mor& f) {
  return reduce<C>(par_from_total<C>(f));
}

template <PretorsionInstance C>
StableMor<C> stable_zero(const typename C::Obj& x, const typename C::Obj& y) {
  return {par_zero<C>(x, y)};
}

template <PretorsionInstance C>
StableMor<C> stable_identity(const typename C::Obj& x) {
  return reduce<C>(par_identity<C>(x));
}

template <PretorsionInstance C>
StableMor<C> stable_compose(const StableMor<C>& q, const StableMor<C>& p) {
  return reduce<C>(par_compose<C>(q.rep, p.rep));
}

/// The witness making two parallel partial morphisms congruent: agreement on
/// the common part, triviality on the two complements.
template <PretorsionInstance C>
struct CongruenceDiagram {
  PartialMor<C> lhs, rhs;
  Subset common;  // C, complemented in both supports
  Subset comp1;   // support(lhs) minus C
  Subset comp2;   // support(rhs) minus C
};

template <PretorsionInstance C>
bool validate_congruence(const CongruenceDiagram<C>& d, std::string* why = nullptr) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (!(d.lhs.src == d.rhs.src) || !(d.lhs.dst == d.rhs.dst)) return bad("not parallel");
  if (subset_union(d.common, d.comp1) != d.lhs.support || !subset_intersect(d.common, d.comp1).empty())
    return bad("common and comp1 do not partition the left support");
  if (subset_union(d.common, d.comp2) != d.rhs.support || !subset_intersect(d.common, d.comp2).empty())
    return bad("common and comp2 do not partition the right support");
  for (const auto& comp : C::components(d.lhs.src)) {
    for (const Subset* part : {&d.common, &d.comp1, &d.comp2}) {
      bool in = subset_contains(*part, comp[0]);
      for (int e : comp)
        if (subset_contains(*part, e) != in) return bad("witness subset splits a component");
    }
  }
  for (int e : d.common)
    if (d.lhs.map.table[local_index(d.lhs.support, e)] != d.rhs.map.table[local_index(d.rhs.support, e)])
      return bad("maps disagree on the common part at element " + std::to_string(e));
  Subset loc1;
  for (int e : d.comp1) loc1.push_back(local_index(d.lhs.support, e));
  if (!is_trivial<C>(restrict_dom<C>(d.lhs.map, loc1))) return bad("left map not trivial off the common part");
  Subset loc2;
  for (int e : d.comp2) loc2.push_back(local_index(d.rhs.support, e));
  if (!is_trivial<C>(restrict_dom<C>(d.rhs.map, loc2))) return bad("right map not trivial off the common part");
  return true;
}

/// Decision procedure for the congruence: take the largest candidate common
/// part (components lying in both supports where the maps agree) and test
/// triviality of the two remainders. Any valid witness is contained in this
/// one, so the greedy choice is complete; the exhaustive search below
/// cross-checks that claim.
template <PretorsionInstance C>
std::optional<CongruenceDiagram<C>> stable_eq(const PartialMor<C>& p1, const PartialMor<C>& p2) {
  require(p1.src == p2.src && p1.dst == p2.dst, Errc::ParallelMismatch, "stable_eq on non-parallel morphisms");
  Subset common;
  for (const auto& comp : C::components(p1.src)) {
    if (!subset_includes(p1.support, comp) || !subset_includes(p2.support, comp)) continue;
    bool agree = true;
    for (int e : comp)
      if (p1.map.table[local_index(p1.support, e)] != p2.map.table[local_index(p2.support, e)]) {
        agree = false;
        break;
      }
    if (agree) common = subset_union(common, comp);
  }
  Subset rem1 = subset_difference(p1.support, common);
  Subset rem2 = subset_difference(p2.support, common);
  Subset loc1;
  for (int e : rem1) loc1.push_back(local_index(p1.support, e));
  if (!is_trivial<C>(restrict_dom<C>(p1.map, loc1))) return std::nullopt;
  Subset loc2;
  for (int e : rem2) loc2.push_back(local_index(p2.support, e));
  if (!is_trivial<C>(restrict_dom<C>(p2.map, loc2))) return std::nullopt;
  return CongruenceDiagram<C>{p1, p2, std::move(common), std::move(rem1), std::move(rem2)};
}

/// Existence of any congruence witness, by brute force over all candidate
/// common parts.
template <PretorsionInstance C>
bool stable_eq_exhaustive(const PartialMor<C>& p1, const PartialMor<C>& p2) {
  require(p1.src == p2.src && p1.dst == p2.dst, Errc::ParallelMismatch, "stable_eq on non-parallel morphisms");
  std::vector<Subset> eligible;
  for (const auto& comp : C::components(p1.src))
    if (subset_includes(p1.support, comp) && subset_includes(p2.support, comp)) eligible.push_back(comp);
  const int k = static_cast<int>(eligible.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    Subset common;
    for (int c = 0; c < k; ++c)
      if (mask & (1u << c)) common = subset_union(common, eligible[c]);
    bool agree = true;
    for (int e : common)
      if (p1.map.table[local_index(p1.support, e)] != p2.map.table[local_index(p2.support, e)]) {
        agree = false;
        break;
      }
    if (!agree) continue;
    Subset rem1 = subset_difference(p1.support, common);
    Subset loc1;
    for (int e : rem1) loc1.push_back(local_index(p1.support, e));
    if (!is_trivial<C>(restrict_dom<C>(p1.map, loc1))) continue;
    Subset rem2 = subset_difference(p2.support, common);
    Subset loc2;
    for (int e : rem2) loc2.push_back(local_index(p2.support, e));
    if (is_trivial<C>(restrict_dom<C>(p2.map, loc2))) return true;
  }
  return false;
}

/// All stable morphisms X -> Y, one reduced representative per congruence
/// class, in deterministic (support mask, table) order.
template <PretorsionInstance C>
std::vector<StableMor<C>> all_stable_morphisms(const typename C::Obj& x, const typename C::Obj& y) {
  std::vector<StableMor<C>> out;
  for (const auto& cs : complemented_subobjects<C>(x)) {
    auto dom = C::restricted(x, cs.members);
    for (const auto& m : all_morphisms<C>(dom, y)) {
      PartialMor<C> p{x, y, cs.members, m};
      auto red = reduce<C>(p);
      if (red.rep == p) out.push_back(std::move(red));
    }
  }
  return out;
}

template <PretorsionInstance C>
std::string stable_key(const StableMor<C>& s) {
  return "{" + join_ints(s.rep.support) + "}[" + join_ints(s.rep.map.table) + "]";
}

/// Memoized stable hom-sets; the oracles revisit the same pairs constantly.
/// Single-threaded use (the cache is not synchronized).
template <PretorsionInstance C>
const std::vector<StableMor<C>>& stable_hom_cached(const typename C::Obj& x, const typename C::Obj& y) {
  static std::map<std::string, std::vector<StableMor<C>>> cache;
  std::string key = C::encode(x) + "|" + C::encode(y);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(std::move(key), all_stable_morphisms<C>(x, y)).first;
  return it->second;
}

template <PretorsionInstance C>
struct StableCoproduct {
  CoproductData<C> base;
  StableMor<C> inj_left, inj_right;
};

template <PretorsionInstance C>
StableCoproduct<C> stable_coproduct(const typename C::Obj& x, const typename C::Obj& y) {
  auto cp = coproduct<C>(x, y);
  auto il = sigma<C>(cp.inj_left);
  auto ir = sigma<C>(cp.inj_right);
  return {std::move(cp), std::move(il), std::move(ir)};
}

/// Copairing in the stable category: union of the shifted supports carrying
/// both maps, then reduction.
template <PretorsionInstance C>
StableMor<C> stable_copair(const StableMor<C>& p, const StableMor<C>& q, const CoproductData<C>& base) {
  require(p.src() == base.left && q.src() == base.right, Errc::DomainMismatch, "stable_copair: sources do not match");
  require(p.dst() == q.dst(), Errc::DomainMismatch, "stable_copair: targets differ");
  Subset support;
  std::vector<int> table;
  for (size_t i = 0; i < p.support().size(); ++i) {
    support.push_back(base.inj_left.table[p.support()[i]]);
    table.push_back(p.rep.map.table[i]);
  }
  for (size_t i = 0; i < q.support().size(); ++i) {
    support.push_back(base.inj_right.table[q.support()[i]]);
    table.push_back(q.rep.map.table[i]);
  }
  auto dom = C::restricted(base.sum, support);
  PartialMor<C> par{base.sum, p.dst(), std::move(support), typename C::Mor(std::move(dom), p.dst(), std::move(table))};
  return reduce<C>(par);
}

/// Universal property of Sigma(X+Y) in the stable category: composing with
/// the stable coprojections is a bijection hom(X+Y, Z) -> hom(X, Z) x hom(Y, Z).
template <PretorsionInstance C>
Report verify_stable_coproduct(const typename C::Obj& x, const typename C::Obj& y,
                               const std::vector<typename C::Obj>& targets) {
  Report r;
  r.suite = "stable_coproduct";
  auto sc = stable_coproduct<C>(x, y);
  for (const auto& z : targets) {
    std::map<std::string, int> seen;
    for (const auto& u : stable_hom_cached<C>(sc.base.sum, z)) {
      auto left = stable_compose<C>(u, sc.inj_left);
      auto right = stable_compose<C>(u, sc.inj_right);
      seen[stable_key<C>(left) + "|" + stable_key<C>(right)]++;
    }
    long expected = 0;
    bool copair_ok = true;
    for (const auto& p : stable_hom_cached<C>(x, z))
      for (const auto& q : stable_hom_cached<C>(y, z)) {
        ++expected;
        auto key = stable_key<C>(p) + "|" + stable_key<C>(q);
        auto it = seen.find(key);
        r.check(it != seen.end() && it->second == 1, "copair exists uniquely",
                C::encode(z) + " pair " + key + " hit " + std::to_string(it == seen.end() ? 0 : it->second) +
                    " times");
        auto cp = stable_copair<C>(p, q, sc.base);
        if (!(stable_compose<C>(cp, sc.inj_left) == p) || !(stable_compose<C>(cp, sc.inj_right) == q))
          copair_ok = false;
      }
    r.check(copair_ok, "constructed copair restricts to the legs", C::encode(z));
    long total = 0;
    for (auto& [k, v] : seen) total += v;
    r.check(total == expected, "hom(X+Y,Z) matches hom(X,Z) x hom(Y,Z)",
            C::encode(z) + " " + std::to_string(total) + " vs " + std::to_string(expected));
  }
  return r;
}

/// Kernel oracle in the pointed stable category: s∘t = 0 and composition with
/// t is a bijection hom(N', N) -> {t' : s∘t' = 0} for every probe N'.
template <PretorsionInstance C>
Report verify_stable_kernel(const StableMor<C>& t, const StableMor<C>& s,
                            const std::vector<typename C::Obj>& probes) {
  Report r;
  r.suite = "stable_kernel";
  require(t.dst() == s.src(), Errc::DomainMismatch, "kernel candidate does not land in src");
  r.check(stable_compose<C>(s, t).is_zero(), "s∘t = 0", "kernel candidate not annihilated");
  for (const auto& np : probes) {
    std::map<std::string, int> image;
    for (const auto& v : stable_hom_cached<C>(np, t.src())) {
      auto tv = stable_compose<C>(t, v);
      image[stable_key<C>(tv)]++;
    }
    for (auto& [key, count] : image)
      r.check(count == 1, "composition with the kernel is injective",
              "probe " + C::encode(np) + " morphism " + key + " hit " + std::to_string(count) + " times");
    for (const auto& tp : stable_hom_cached<C>(np, s.src())) {
      bool killed = stable_compose<C>(s, tp).is_zero();
      bool lifts = image.count(stable_key<C>(tp)) > 0;
      r.check(killed == lifts, "lifts are exactly the annihilated morphisms",
              "probe " + C::encode(np) + " morphism " + stable_key<C>(tp));
    }
  }
  return r;
}

/// Dual cokernel oracle.
template <PretorsionInstance C>
Report verify_stable_cokernel(const StableMor<C>& s, const StableMor<C>& t,
                              const std::vector<typename C::Obj>& probes) {
  Report r;
  r.suite = "stable_cokernel";
  require(t.src() == s.dst(), Errc::DomainMismatch, "cokernel candidate does not start at dst");
  r.check(stable_compose<C>(t, s).is_zero(), "t∘s = 0", "cokernel candidate does not annihilate");
  for (const auto& wp : probes) {
    std::map<std::string, int> image;
    for (const auto& v : stable_hom_cached<C>(t.dst(), wp)) {
      auto vt = stable_compose<C>(v, t);
      image[stable_key<C>(vt)]++;
    }
    for (auto& [key, count] : image)
      r.check(count == 1, "composition with the cokernel is injective",
              "probe " + C::encode(wp) + " morphism " + key + " hit " + std::to_string(count) + " times");
    for (const auto& mp : stable_hom_cached<C>(s.dst(), wp)) {
      bool killed = stable_compose<C>(mp, s).is_zero();
      bool descends = image.count(stable_key<C>(mp)) > 0;
      r.check(killed == descends, "descents are exactly the annihilating morphisms",
              "probe " + C::encode(wp) + " morphism " + stable_key<C>(mp));
    }
  }
  return r;
}

/// Kernel of a stable morphism: the Z-kernel of the defining map joined with
/// the complement of the support, included into the source. The construction
/// is always validated against the kernel oracle before being returned.
template <PretorsionInstance C>
StableMor<C> stable_kernel(const StableMor<C>& s, const std::vector<typename C::Obj>& probes) {
  static_assert(C::has_z_kernels, "instance does not provide Z-kernels");
  auto k = C::z_kernel(s.rep.map);  // K -> A
  auto incl_a = typename C::Mor(s.rep.map.dom, s.src(), s.rep.support);
  auto leg1 = compose<C>(incl_a, k);
  Subset comp = subset_complement(s.rep.support, s.src().n);
  auto leg2 = inclusion_mor<C>(s.src(), comp);
  auto cp = coproduct<C>(k.dom, leg2.dom);
  auto u = copair<C>(leg1, leg2, cp);
  auto t = sigma<C>(u);
  auto rep = verify_stable_kernel<C>(t, s, probes);
  require(rep.ok(), Errc::KernelUnverified, "stable kernel failed the oracle: " + rep.summary());
  return t;
}

/// Cokernel of a stable morphism: Sigma of the Z-cokernel of the defining
/// map, validated against the cokernel oracle.
template <PretorsionInstance C>
StableMor<C> stable_cokernel(const StableMor<C>& s, const std::vector<typename C::Obj>& probes) {
  static_assert(C::has_z_kernels, "instance does not provide Z-cokernels");
  auto q = C::z_cokernel(s.rep.map);
  auto t = sigma<C>(q);
  auto rep = verify_stable_cokernel<C>(s, t, probes);
  require(rep.ok(), Errc::CokernelUnverified, "stable cokernel failed the oracle: " + rep.summary());
  return t;
}

/// Image of the canonical sequence under Sigma is short exact in the stable
/// category: Sigma(eps) is a kernel of Sigma(eta) and Sigma(eta) a cokernel
/// of Sigma(eps).
template <PretorsionInstance C>
Report exactness_image(const typename C::Obj& x, const std::vector<typename C::Obj>& probes) {
  Report r;
  r.suite = "exactness_image";
  auto seq = canonical_sequence<C>(x);
  auto se = sigma<C>(seq.counit);
  auto sh = sigma<C>(seq.unit);
  auto kr = verify_stable_kernel<C>(se, sh, probes);
  auto cr = verify_stable_cokernel<C>(se, sh, probes);
  r.cases += kr.cases + cr.cases;
  for (const auto& f : kr.failures) r.fail_case("Σ(ε) kernel of Σ(η): " + f.check, C::encode(x) + ": " + f.witness);
  for (const auto& f : cr.failures) r.fail_case("Σ(η) cokernel of Σ(ε): " + f.check, C::encode(x) + ": " + f.witness);
  return r;
}

}  // namespace stabcat
