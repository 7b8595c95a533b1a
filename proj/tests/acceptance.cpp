// Acceptance suite: one criterion per run block, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "stabcat/dot.hpp"
#include "stabcat/io.hpp"
#include "stabcat/suites.hpp"

using namespace stabcat;
using P = preord::Cat;
using E = endo::Cat;
using S = setcat::Cat;

namespace {

struct Outcome {
  bool pass = true;
  long cases = 0;
  std::string detail;

  void absorb(const Report& r) {
    cases += r.cases;
    if (!r.ok()) {
      pass = false;
      if (detail.size() < 600) detail += (detail.empty() ? "" : " | ") + r.summary();
    }
  }

  void expect(bool cond, const std::string& what) {
    ++cases;
    if (!cond) {
      pass = false;
      if (detail.size() < 600) detail += (detail.empty() ? "" : " | ") + what;
    }
  }
};

int g_failures = 0;

void run(int number, const std::string& title, double budget_seconds,
         const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail += std::string(" exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0 && secs > budget_seconds) {
    out.pass = false;
    out.detail += " over time budget";
  }
  std::printf("criterion %2d %s %-52s (%ld cases, %.1fs)\n", number, out.pass ? "PASS" : "FAIL", title.c_str(),
              out.cases, secs);
  if (!out.pass) {
    std::printf("             %s\n", out.detail.c_str());
    ++g_failures;
  }
}

void criterion7_characterizations(Outcome& out, const endo::Obj& x) {
  bool forest = E::is_torsionfree(x);  // f^{|X|} = f^{|X|+1}
  bool eta_iso = is_iso<E>(E::torsionfree_part(x).second);
  bool no_long_cycle = true;
  for (int e : E::cyclic_elements(x))
    if (x.f[e] != e) no_long_cycle = false;
  out.expect(forest == eta_iso && eta_iso == no_long_cycle, "characterizations disagree on " + E::encode(x));
}

}  // namespace

int main() {
  // 1. Pretorsion axioms for all objects with n <= 3, full probe set n <= 3.
  run(1, "pretorsion axioms (hom-triviality, canonical sequences)", 60.0, [](Outcome& out) {
    CheckOptions opt{3, 0, 0, 0, 3};
    out.absorb(check_hom_triviality<P>(opt));
    out.absorb(check_canonical_sequences<P>(opt));
    out.absorb(check_hom_triviality<E>(opt));
    out.absorb(check_canonical_sequences<E>(opt));
    out.expect(objects_up_to<P>(3).size() == 35, "labeled preorder count n<=3");
    out.expect(objects_up_to<E>(3).size() == 33, "labeled endofunction count n<=3");
  });

  // 2. Lemma suite items (1),(2),(3),(5),(6),(7), exhaustive n <= 3 plus 200
  //    seeded instances at n <= 5; item (6) includes the pullback criterion
  //    over all monomorphisms at n <= 3.
  run(2, "closure lemmas, exhaustive and sampled", 0, [](Outcome& out) {
    CheckOptions opt{3, 200, 5, 0, 3};
    out.absorb(check_lemma1<P>(opt));
    out.absorb(check_lemma1<E>(opt));
  });

  // 3. Pullback-stability of triviality along complemented subobjects,
  //    monomorphisms and Z-kernels, exhaustive at n <= 3.
  run(3, "trivial ideal stable under pullback", 0, [](Outcome& out) {
    CheckOptions opt{3, 0, 0, 0, 3};
    out.absorb(check_magenta<P>(opt));
    out.absorb(check_magenta<E>(opt));
  });

  // 4. Congruence decision equals exhaustive search on >= 500 pairs per
  //    instance (src <= 6, dst <= 4), and 5. normal-form laws.
  run(4, "congruence decision soundness (500+ pairs/instance)", 0, [](Outcome& out) {
    suites::SuiteOptions opt;
    opt.stable_pairs = 500;
    opt.seed = 0;
    out.absorb(suites::stable_suite<P>(opt));
    out.absorb(suites::stable_suite<E>(opt));
  });

  run(5, "normal forms: idempotent, congruent, unique", 0, [](Outcome& out) {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
      auto x = P::random_object(1 + rng.below(5), rng);
      auto y = P::random_object(1 + rng.below(4), rng);
      auto p = suites::random_partial<P>(x, y, rng);
      auto r = reduce<P>(p);
      out.expect(reduce<P>(r.rep) == r, "reduce idempotent");
      out.expect(stable_eq<P>(p, r.rep).has_value(), "reduce(p) ~ p");
    }
    // Uniqueness of reduced representatives between fixed small objects.
    auto uniq = [&out](const auto& x, const auto& y, auto tag) {
      using C = decltype(tag);
      auto homs = all_stable_morphisms<C>(x, y);
      for (size_t i = 0; i < homs.size(); ++i)
        for (size_t j = i + 1; j < homs.size(); ++j)
          out.expect(!stable_eq<C>(homs[i].rep, homs[j].rep).has_value(),
                     "distinct reduced representatives congruent");
    };
    for (const auto& x : objects_up_to<P>(2))
      for (const auto& y : objects_up_to<P>(2)) uniq(x, y, P{});
    for (const auto& x : objects_up_to<E>(2))
      for (const auto& y : objects_up_to<E>(2)) uniq(x, y, E{});
    uniq(preord::codiscrete(3), preord::closure(2, {{0, 1}}), P{});
    uniq(endo::Obj(3, {1, 2, 0}), endo::Obj(2, {1, 0}), E{});
  });

  // 6. Sigma preserves coproducts, Z-kernels, Z-cokernels and exactness.
  run(6, "functor to the stable category preserves structure", 0, [](Outcome& out) {
    suites::SuiteOptions opt;
    out.absorb(suites::coproduct_suite<P>(opt));
    out.absorb(suites::coproduct_suite<E>(opt));
    out.absorb(suites::exact_suite<P>(opt));
    out.absorb(suites::exact_suite<E>(opt));
  });

  // 7. Forest characterizations agree on all tables with n <= 4 and 1000
  //    seeded tables at n <= 7.
  run(7, "endomap forest characterizations", 0, [](Outcome& out) {
    for (int n = 0; n <= 4; ++n)
      for (const auto& x : E::all_objects(n)) criterion7_characterizations(out, x);
    Rng rng(7);
    for (int i = 0; i < 1000; ++i)
      criterion7_characterizations(out, E::random_object(1 + rng.below(7), rng));
  });

  // 8. The degenerate (all, at-most-one-element) theory over finite sets.
  run(8, "degenerate pretorsion theory over finite sets", 0, [](Outcome& out) {
    CheckOptions opt{4, 0, 0, 0, 4};
    out.absorb(check_hom_triviality<S>(opt));
    out.absorb(check_canonical_sequences<S>(opt));
  });

  // 9. Universality of the stable category on a materialized fragment.
  run(9, "universal factorization through the stable category", 300.0, [](Outcome& out) {
    auto frag = make_fragment<E>(3);
    auto stab = make_stab_fragment<E>(frag);
    auto b = materialize_stab_category<E>(frag, stab);
    out.absorb(validate_category(b, 250000));
    out.absorb(validate_torsion_theory(b));
    auto g = sigma_functor_table<E>(frag, stab, b);
    out.absorb(is_torsion_theory_functor<E>(g, frag, b, 250000));
    out.absorb(verify_coproduct_preservation<E>(g, frag, b));
    auto h = induced_H<E>(g, frag, stab, b, 250000);
    out.absorb(h.report);
    // Exhaustive per-morphism value sweep on a three-object sub-fragment
    // (plus the zero object, which pins the zero morphisms).
    std::vector<int> sub{frag.object_id(E::empty()), frag.object_id(endo::identity_obj(1)),
                         frag.object_id(endo::Obj(2, {0, 0})), frag.object_id(endo::Obj(2, {1, 0}))};
    out.absorb(verify_uniqueness<E>(g, h.table, frag, stab, b, sub));
    // Perturbed candidates are rejected by the hypotheses.
    int caught = 0, perturbable = 0;
    for (const auto& [key, val] : h.table.morphism_map) {
      auto [a, c, k] = key;
      if (std::find(sub.begin(), sub.end(), a) == sub.end() ||
          std::find(sub.begin(), sub.end(), c) == sub.end())
        continue;
      for (int cand_val : b.hom_set(g.on_obj(a), g.on_obj(c))) {
        if (cand_val == val) continue;
        auto bad = h.table;
        bad.morphism_map[key] = cand_val;
        ++perturbable;
        if (reject_candidate<E>(bad, g, frag, stab, b, sub)) ++caught;
        break;
      }
      if (perturbable >= 12) break;
    }
    out.expect(perturbable > 0 && caught == perturbable,
               "perturbed candidates escaped: " + std::to_string(perturbable - caught));
    out.absorb(stab_is_torsion_theory<E>(2, 2));
  });

  // 10. Negative controls: every verifier catches its planted bug.
  run(10, "negative controls: planted bugs are caught", 0, [](Outcome& out) {
    // Corrupted sum: relation across the blocks / function across the blocks.
    auto x = preord::discrete(1);
    auto cp = coproduct<P>(x, x);
    cp.sum = preord::closure(2, {{0, 1}});
    cp.inj_left = preord::Mor(x, cp.sum, {0});
    cp.inj_right = preord::Mor(x, cp.sum, {1});
    std::vector<preord::Mor> probes{identity<P>(cp.sum)};
    auto rep = verify_extensivity<P>(cp, probes);
    out.expect(!rep.ok() && !rep.failures.empty(), "corrupted preorder sum not caught");

    auto e1 = endo::Obj(1, {0});
    auto ecp = coproduct<E>(e1, e1);
    ecp.sum = endo::Obj(2, {0, 0});
    ecp.inj_left = endo::Mor(e1, ecp.sum, {0});
    ecp.inj_right = endo::Mor(e1, ecp.sum, {0});
    std::vector<endo::Mor> eprobes{identity<E>(ecp.sum)};
    out.expect(!verify_extensivity<E>(ecp, eprobes).ok(), "corrupted endo sum not caught");

    // Honest sums pass (no false alarms).
    out.expect(verify_extensivity<P>(coproduct<P>(x, x), {identity<P>(preord::discrete(2))}).ok(),
               "false alarm on an honest sum");

    // Over-collapsed cokernel with a minimal witness.
    auto two_fix = endo::identity_obj(2);
    endo::Mor from_empty(E::empty(), two_fix, {});
    endo::Mor collapse(two_fix, endo::identity_obj(1), {0, 0});
    auto bad_q = verify_z_cokernel<E>(from_empty, collapse, objects_up_to<E>(2));
    out.expect(!bad_q.ok() && !bad_q.failures.empty(), "over-collapsed cokernel not caught");
    auto good_q = verify_z_cokernel<E>(from_empty, E::z_cokernel(from_empty), objects_up_to<E>(2));
    out.expect(good_q.ok(), "false alarm on the honest cokernel");

    // Fake kernel (empty subobject under a mono with trivial-free composites).
    auto chain = preord::closure(2, {{0, 1}});
    preord::Mor empty_into(P::empty(), chain, {});
    out.expect(!verify_z_kernel<P>(empty_into, identity<P>(chain), objects_up_to<P>(2)).ok(),
               "fake empty kernel not caught");

    // Perturbed H.
    auto frag = make_fragment<E>(2);
    auto stab = make_stab_fragment<E>(frag);
    auto b = materialize_stab_category<E>(frag, stab);
    auto g = sigma_functor_table<E>(frag, stab, b);
    auto h = induced_H<E>(g, frag, stab, b);
    std::vector<int> sub;
    for (size_t i = 0; i < frag.objects.size(); ++i) sub.push_back(static_cast<int>(i));
    bool one_caught = false;
    for (const auto& [key, val] : h.table.morphism_map) {
      auto [a, c, k] = key;
      for (int cand_val : b.hom_set(g.on_obj(a), g.on_obj(c)))
        if (cand_val != val) {
          auto bad = h.table;
          bad.morphism_map[key] = cand_val;
          one_caught = reject_candidate<E>(bad, g, frag, stab, b, sub).has_value();
          break;
        }
      if (one_caught) break;
    }
    out.expect(one_caught, "perturbed H not caught");
  });

  std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria PASS" : "acceptance: FAILURES present");
  return g_failures == 0 ? 0 : 1;
}
