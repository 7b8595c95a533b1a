#pragma once

#include <chrono>

#include "stabcat/endo.hpp"
#include "stabcat/preord.hpp"
#include "stabcat/setcat.hpp"
#include "stabcat/universality.hpp"

namespace stabcat::suites {

struct SuiteOptions {
  int max_n = 3;
  std::uint64_t seed = 0;
  int probe_n = 3;
  int random_count = 200;
  int random_n = 5;
  int stable_pairs = 500;
  int stable_src_n = 6;
  int stable_dst_n = 4;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma1", "closure", "magenta", "stable",
                                                 "exact",  "coproduct", "universal", "all"};
  return names;
}

template <PretorsionInstance C>
PartialMor<C> random_partial(const typename C::Obj& x, const typename C::Obj& y, Rng& rng) {
  auto subs = complemented_subobjects<C>(x);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const auto& cs = subs[rng.below(static_cast<int>(subs.size()))];
    auto dom = C::restricted(x, cs.members);
    auto all = all_morphisms<C>(dom, y);
    if (all.empty()) continue;
    return {x, y, cs.members, all[rng.below(static_cast<int>(all.size()))]};
  }
  return par_zero<C>(x, y);
}

/// Extend a partial morphism by a trivially-mapped component, when one is
/// available; produces a congruent representative.
template <PretorsionInstance C>
std::optional<PartialMor<C>> extend_by_trivial(const PartialMor<C>& p, Rng& rng) {
  std::vector<Subset> candidates;
  for (const auto& comp : C::components(p.src))
    if (!subset_includes(p.support, comp)) candidates.push_back(comp);
  if (candidates.empty()) return std::nullopt;
  const auto& comp = candidates[rng.below(static_cast<int>(candidates.size()))];
  auto trivials = detail::trivial_morphisms<C>(C::restricted(p.src, comp), p.dst);
  if (trivials.empty()) return std::nullopt;
  const auto& tm = trivials[rng.below(static_cast<int>(trivials.size()))];
  Subset support = subset_union(p.support, comp);
  std::vector<int> table(support.size());
  for (size_t i = 0; i < support.size(); ++i) {
    if (subset_contains(comp, support[i]))
      table[i] = tm.table[local_index(comp, support[i])];
    else
      table[i] = p.map.table[local_index(p.support, support[i])];
  }
  return PartialMor<C>{p.src, p.dst, support, typename C::Mor(C::restricted(p.src, support), p.dst, table)};
}

template <PretorsionInstance C>
std::pair<PartialMor<C>, PartialMor<C>> random_parallel_pair(const typename C::Obj& x, const typename C::Obj& y,
                                                             Rng& rng) {
  auto p1 = random_partial<C>(x, y, rng);
  switch (rng.below(4)) {
    case 0:
      return {p1, random_partial<C>(x, y, rng)};
    case 1:
      return {p1, reduce<C>(p1).rep};
    case 2: {
      auto ext = extend_by_trivial<C>(reduce<C>(p1).rep, rng);
      return {p1, ext ? *ext : random_partial<C>(x, y, rng)};
    }
    default: {
      auto all = all_morphisms<C>(p1.map.dom, y);
      auto p2 = p1;
      p2.map = all[rng.below(static_cast<int>(all.size()))];
      return {p1, p2};
    }
  }
}

/// Congruence decision vs. exhaustive witness search, plus normal-form laws,
/// on seeded random parallel pairs.
template <PretorsionInstance C>
Report stable_suite(const SuiteOptions& opt) {
  Report r;
  r.suite = std::string(C::name) + "/stable";
  Rng rng(opt.seed);
  for (int i = 0; i < opt.stable_pairs; ++i) {
    auto x = C::random_object(1 + rng.below(opt.stable_src_n), rng);
    auto y = C::random_object(1 + rng.below(opt.stable_dst_n), rng);
    auto [p1, p2] = random_parallel_pair<C>(x, y, rng);
    auto decision = stable_eq<C>(p1, p2);
    bool brute = stable_eq_exhaustive<C>(p1, p2);
    r.check(decision.has_value() == brute, "decision agrees with exhaustive search",
            "pair " + std::to_string(i) + " on " + C::encode(x) + " -> " + C::encode(y));
    if (decision) {
      std::string why;
      r.check(validate_congruence<C>(*decision, &why), "returned congruence diagram is valid",
              "pair " + std::to_string(i) + ": " + why);
    }
    auto r1 = reduce<C>(p1);
    r.check(reduce<C>(r1.rep) == r1, "reduce is idempotent", "pair " + std::to_string(i));
    auto back = stable_eq<C>(p1, r1.rep);
    r.check(back.has_value(), "reduce(p) ~ p", "pair " + std::to_string(i));
    // Composition respects the congruence, transitively chained variants agree.
    auto ext = extend_by_trivial<C>(r1.rep, rng);
    if (ext) {
      auto ext2 = extend_by_trivial<C>(*ext, rng);
      r.check(stable_eq<C>(r1.rep, ext2 ? *ext2 : *ext).has_value(), "congruence is transitive across extensions",
              "pair " + std::to_string(i));
      auto z = C::random_object(1 + rng.below(opt.stable_dst_n), rng);
      auto q = random_partial<C>(y, z, rng);
      r.check(stable_eq<C>(par_compose<C>(q, p1), par_compose<C>(q, *ext)).has_value(),
              "congruence compatible with postcomposition", "pair " + std::to_string(i));
      auto w = C::random_object(1 + rng.below(opt.stable_src_n), rng);
      auto pre = random_partial<C>(w, x, rng);
      r.check(stable_eq<C>(par_compose<C>(p1, pre), par_compose<C>(*ext, pre)).has_value(),
              "congruence compatible with precomposition", "pair " + std::to_string(i));
    }
    // Strict associativity of composition in Par(C) on the nose.
    auto z2 = C::random_object(1 + rng.below(opt.stable_dst_n), rng);
    auto q2 = random_partial<C>(y, z2, rng);
    auto w2 = C::random_object(1 + rng.below(opt.stable_src_n), rng);
    auto pre2 = random_partial<C>(w2, x, rng);
    r.check(par_compose<C>(par_compose<C>(q2, p1), pre2) == par_compose<C>(q2, par_compose<C>(p1, pre2)),
            "par_compose associative", "pair " + std::to_string(i));
    r.check(par_compose<C>(p1, par_identity<C>(x)) == p1 && par_compose<C>(par_identity<C>(y), p1) == p1,
            "par identities", "pair " + std::to_string(i));
  }

  // Reduced representatives are unique per congruence class: pairwise
  // distinct reduced morphisms between fixed objects are never congruent.
  auto uniqueness_at = [&](const typename C::Obj& x, const typename C::Obj& y) {
    auto homs = all_stable_morphisms<C>(x, y);
    for (size_t i = 0; i < homs.size(); ++i) {
      r.check(stable_eq<C>(homs[i].rep, homs[i].rep).has_value(), "congruence reflexive", stable_key<C>(homs[i]));
      for (size_t j = i + 1; j < homs.size(); ++j)
        r.check(!stable_eq<C>(homs[i].rep, homs[j].rep).has_value(), "distinct reduced forms are not congruent",
                C::encode(x) + " -> " + C::encode(y) + ": " + stable_key<C>(homs[i]) + " vs " +
                    stable_key<C>(homs[j]));
    }
  };
  for (const auto& x : objects_up_to<C>(2))
    for (const auto& y : objects_up_to<C>(2)) uniqueness_at(x, y);
  {
    Rng pick(opt.seed + 17);
    auto big = C::all_objects(3);
    for (int i = 0; i < 4 && !big.empty(); ++i) {
      const auto& x = big[pick.below(static_cast<int>(big.size()))];
      for (const auto& y : objects_up_to<C>(2)) uniqueness_at(x, y);
    }
  }
  return r;
}

/// Sigma sends Z-kernels/Z-cokernels of every fragment morphism to verified
/// kernels/cokernels, and the canonical sequences to short exact sequences.
template <PretorsionInstance C>
Report exact_suite(const SuiteOptions& opt) {
  Report r;
  r.suite = std::string(C::name) + "/exact";
  auto objs = objects_up_to<C>(opt.max_n);
  auto probes = objects_up_to<C>(opt.probe_n);
  for (const auto& x : objs) r.merge(exactness_image<C>(x, probes));
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& f : all_morphisms<C>(x, y)) {
        auto zk = C::z_kernel(f);
        auto kr = verify_stable_kernel<C>(sigma<C>(zk), sigma<C>(f), probes);
        r.cases += kr.cases;
        for (const auto& fl : kr.failures)
          r.fail_case("Σ(z_kernel) is a kernel: " + fl.check,
                      C::encode(x) + "->" + C::encode(y) + " [" + join_ints(f.table) + "] " + fl.witness);
        auto zq = C::z_cokernel(f);
        auto cr = verify_stable_cokernel<C>(sigma<C>(f), sigma<C>(zq), probes);
        r.cases += cr.cases;
        for (const auto& fl : cr.failures)
          r.fail_case("Σ(z_cokernel) is a cokernel: " + fl.check,
                      C::encode(x) + "->" + C::encode(y) + " [" + join_ints(f.table) + "] " + fl.witness);
      }
  return r;
}

/// Coproduct preservation by Sigma, exhaustively for small sums and on
/// seeded larger pairs.
template <PretorsionInstance C>
Report coproduct_suite(const SuiteOptions& opt) {
  Report r;
  r.suite = std::string(C::name) + "/coproduct";
  auto targets = objects_up_to<C>(opt.probe_n);
  for (const auto& x : objects_up_to<C>(opt.max_n))
    for (const auto& y : objects_up_to<C>(opt.max_n - x.n)) r.merge(verify_stable_coproduct<C>(x, y, targets));
  Rng rng(opt.seed + 5);
  for (int i = 0; i < 12; ++i) {
    auto x = C::random_object(1 + rng.below(3), rng);
    auto y = C::random_object(1 + rng.below(3), rng);
    std::vector<typename C::Obj> sampled;
    for (int k = 0; k < 4; ++k) sampled.push_back(C::random_object(1 + rng.below(opt.probe_n), rng));
    r.merge(verify_stable_coproduct<C>(x, y, sampled));
  }
  return r;
}

/// The full universality pipeline over a materialized fragment.
template <PretorsionInstance C>
Report universal_suite(int fragment_n, long budget, std::uint64_t seed) {
  Report r;
  r.suite = std::string(C::name) + "/universal";
  auto frag = make_fragment<C>(fragment_n);
  auto stab = make_stab_fragment<C>(frag);
  auto b = materialize_stab_category<C>(frag, stab);
  r.merge(validate_category(b, budget));
  r.merge(validate_torsion_theory(b));
  auto g = sigma_functor_table<C>(frag, stab, b);
  r.merge(is_torsion_theory_functor<C>(g, frag, b, budget));
  try {
    auto h = induced_H<C>(g, frag, stab, b, budget);
    r.merge(h.report);
    std::vector<int> sub;
    for (size_t i = 0; i < frag.objects.size(); ++i)
      if (frag.objects[i].n <= 2) sub.push_back(static_cast<int>(i));
    r.merge(verify_uniqueness<C>(g, h.table, frag, stab, b, sub));
  } catch (const Error& e) {
    r.check(false, "induced_H construction", e.what());
  }
  r.merge(stab_is_torsion_theory<C>(std::min(fragment_n, 2), std::min(fragment_n, 2)));
  (void)seed;
  return r;
}

inline std::vector<Report> run_suite(const std::string& name, const SuiteOptions& opt) {
  using P = preord::Cat;
  using E = endo::Cat;
  CheckOptions chk{opt.max_n, opt.random_count, opt.random_n, opt.seed, opt.probe_n};
  std::vector<Report> out;
  require(std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end(),
          Errc::IndexOutOfRange, "unknown suite '" + name + "'");
  auto want = [&](const char* n) { return name == n || name == "all"; };
  if (want("lemma1")) {
    out.push_back(check_lemma1<P>(chk));
    out.push_back(check_lemma1<E>(chk));
  }
  if (want("closure")) {
    out.push_back(check_closure_props<P>(chk));
    out.push_back(check_closure_props<E>(chk));
  }
  if (want("magenta")) {
    out.push_back(check_magenta<P>(chk));
    out.push_back(check_magenta<E>(chk));
  }
  if (want("stable")) {
    out.push_back(stable_suite<P>(opt));
    out.push_back(stable_suite<E>(opt));
  }
  if (want("exact")) {
    out.push_back(exact_suite<P>(opt));
    out.push_back(exact_suite<E>(opt));
  }
  if (want("coproduct")) {
    out.push_back(coproduct_suite<P>(opt));
    out.push_back(coproduct_suite<E>(opt));
  }
  if (want("universal")) {
    out.push_back(universal_suite<E>(std::min(opt.max_n, 3), 250000, opt.seed));
    out.push_back(universal_suite<P>(std::min(opt.max_n, 2), 250000, opt.seed));
  }
  return out;
}

}  // namespace stabcat::suites
