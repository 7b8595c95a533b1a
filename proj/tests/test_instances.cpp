#include <catch2/catch_amalgamated.hpp>

#include "stabcat/category.hpp"
#include "stabcat/endo.hpp"
#include "stabcat/preord.hpp"
#include "stabcat/pretorsion.hpp"
#include "stabcat/setcat.hpp"

using namespace stabcat;
using P = preord::Cat;
using E = endo::Cat;
using S = setcat::Cat;

TEST_CASE("closure builds the smallest reflexive transitive relation") {
  auto d = preord::closure(2, {});
  CHECK(d == preord::discrete(2));

  auto chain3 = preord::closure(3, {{0, 1}, {1, 2}});
  CHECK(chain3.at(0, 2));
  CHECK_FALSE(chain3.at(2, 0));

  auto codisc = preord::closure(2, {{0, 1}, {1, 0}});
  CHECK(codisc == preord::codiscrete(2));

  CHECK_THROWS_AS(preord::closure(2, {{0, 5}}), Error);
}

TEST_CASE("composition satisfies the identity laws and table evaluation") {
  auto chain = preord::closure(2, {{0, 1}});
  auto f = preord::Mor(chain, chain, {0, 0});
  CHECK(compose<P>(identity<P>(chain), f) == f);
  CHECK(compose<P>(f, identity<P>(chain)) == f);

  auto to_one = preord::Mor(chain, chain, {1, 1});
  auto lift = preord::Mor(chain, chain, {0, 0});
  CHECK(compose<P>(to_one, lift).table == std::vector<int>{1, 1});

  auto other = preord::discrete(3);
  CHECK_THROWS_AS(compose<P>(preord::Mor(other, other, {0, 1, 2}), f), Error);
}

TEST_CASE("coproducts juxtapose and keep the left block first") {
  auto y = preord::closure(2, {{0, 1}});
  auto cp0 = coproduct<P>(P::empty(), y);
  CHECK(cp0.sum == y);
  CHECK(cp0.inj_right.table == std::vector<int>{0, 1});

  CHECK(coproduct<P>(preord::discrete(1), preord::discrete(1)).sum == preord::discrete(2));

  auto e = coproduct<E>(endo::Obj(2, {1, 0}), endo::Obj(1, {0}));
  CHECK(e.sum == endo::Obj(3, {1, 0, 2}));
}

TEST_CASE("copair folds and reproduces identities") {
  auto x = preord::closure(2, {{0, 1}});
  auto cp = coproduct<P>(x, x);
  auto fold = copair<P>(identity<P>(x), identity<P>(x), cp);
  CHECK(fold.table == std::vector<int>{0, 1, 0, 1});
  CHECK(copair<P>(cp.inj_left, cp.inj_right, cp) == identity<P>(cp.sum));

  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    auto a = P::random_object(1 + rng.below(3), rng);
    auto b = P::random_object(1 + rng.below(3), rng);
    auto z = P::random_object(1 + rng.below(3), rng);
    auto f = random_morphism<P>(a, z, rng);
    auto g = random_morphism<P>(b, z, rng);
    if (!f || !g) continue;
    auto sum = coproduct<P>(a, b);
    auto h = copair<P>(*f, *g, sum);
    CHECK(compose<P>(h, sum.inj_left) == *f);
    CHECK(compose<P>(h, sum.inj_right) == *g);
  }
}

TEST_CASE("complemented subobjects are exactly unions of components") {
  CHECK(complemented_subobjects<P>(preord::discrete(2)).size() == 4);
  auto chain = preord::closure(2, {{0, 1}});
  auto subs = complemented_subobjects<P>(chain);
  REQUIRE(subs.size() == 2);
  CHECK(subs[0].members.empty());
  CHECK(subs[1].members == Subset{0, 1});

  auto esubs = complemented_subobjects<E>(endo::Obj(3, {1, 0, 2}));
  CHECK(esubs.size() == 4);

  for (const auto& x : objects_up_to<P>(3))
    for (const auto& cs : complemented_subobjects<P>(x)) {
      std::string why;
      INFO(why);
      CHECK(validate_complemented<P>(cs, &why));
    }
  for (const auto& x : objects_up_to<E>(3))
    for (const auto& cs : complemented_subobjects<E>(x)) {
      std::string why;
      INFO(why);
      CHECK(validate_complemented<E>(cs, &why));
    }
}

TEST_CASE("coproduct decompositions recompose the ambient object") {
  for (const auto& x : objects_up_to<E>(3))
    for (const auto& cs : complemented_subobjects<E>(x)) {
      auto cp = coproduct<E>(E::restricted(x, cs.members), E::restricted(x, cs.complement));
      auto u = copair<E>(inclusion_mor<E>(x, cs.members), inclusion_mor<E>(x, cs.complement), cp);
      CHECK(is_iso<E>(u));
    }
}

TEST_CASE("pullback along complemented subobjects is the preimage") {
  auto chain = preord::closure(2, {{0, 1}});
  auto f = preord::Mor(chain, chain, {0, 1});
  auto full = complemented_subobjects<P>(chain)[1];
  auto [w, rest] = pullback_along_complemented<P>(f, full);
  CHECK(w.members == Subset{0, 1});
  CHECK(rest.table == f.table);

  auto none = complemented_subobjects<P>(chain)[0];
  auto [w0, rest0] = pullback_along_complemented<P>(f, none);
  CHECK(w0.members.empty());

  auto d3 = preord::discrete(3);
  auto constant = preord::Mor(d3, d3, {1, 1, 1});
  ComplementedSub<P> beta{d3, {1}, {0, 2}};
  auto [w1, rest1] = pullback_along_complemented<P>(constant, beta);
  CHECK(w1.members == Subset{0, 1, 2});
}

TEST_CASE("no morphisms into the empty object from anything nonempty") {
  for (const auto& x : objects_up_to<P>(2))
    if (x.n > 0) CHECK(all_morphisms<P>(x, P::empty()).empty());
  for (const auto& x : objects_up_to<E>(2))
    if (x.n > 0) CHECK(all_morphisms<E>(x, E::empty()).empty());
}

TEST_CASE("extensivity holds for honest sums and fails for corrupted ones") {
  Rng rng(3);
  for (int i = 0; i < 12; ++i) {
    auto x = P::random_object(1 + rng.below(4), rng);
    auto y = P::random_object(1 + rng.below(4), rng);
    auto cp = coproduct<P>(x, y);
    std::vector<preord::Mor> probes;
    for (int k = 0; k < 100 && static_cast<int>(probes.size()) < 100; ++k) {
      auto z = P::random_object(1 + rng.below(4), rng);
      if (auto m = random_morphism<P>(z, cp.sum, rng)) probes.push_back(*m);
    }
    auto rep = verify_extensivity<P>(cp, probes);
    INFO(rep.summary());
    CHECK(rep.ok());
  }

  // Corrupted sum: a relation crossing the two blocks.
  auto x = preord::discrete(1);
  auto cp = coproduct<P>(x, x);
  auto corrupted = cp;
  corrupted.sum = preord::closure(2, {{0, 1}});
  corrupted.inj_left = preord::Mor(x, corrupted.sum, {0});
  corrupted.inj_right = preord::Mor(x, corrupted.sum, {1});
  std::vector<preord::Mor> probes{identity<P>(corrupted.sum)};
  auto rep = verify_extensivity<P>(corrupted, probes);
  CHECK_FALSE(rep.ok());

  // Corrupted endo sum: the right block feeds into the left one.
  auto e1 = endo::Obj(1, {0});
  auto ecp = coproduct<E>(e1, e1);
  auto ecorrupt = ecp;
  ecorrupt.sum = endo::Obj(2, {0, 0});
  ecorrupt.inj_left = endo::Mor(e1, ecorrupt.sum, {0});
  ecorrupt.inj_right = endo::Mor(e1, ecorrupt.sum, {0});
  std::vector<endo::Mor> eprobes{identity<E>(ecorrupt.sum)};
  CHECK_FALSE(verify_extensivity<E>(ecorrupt, eprobes).ok());
}

TEST_CASE("preorder torsion and torsion-free parts") {
  auto d = preord::discrete(3);
  auto [td, ed] = P::torsion_part(d);
  CHECK(td == d);
  CHECK(ed == identity<P>(d));

  auto chain = preord::closure(2, {{0, 1}});
  CHECK(P::torsion_part(chain).first == preord::discrete(2));

  auto codisc = preord::codiscrete(2);
  CHECK(P::torsion_part(codisc).first == codisc);
  auto [fc, hc] = P::torsionfree_part(codisc);
  CHECK(fc.n == 1);

  auto [fch, hch] = P::torsionfree_part(chain);
  CHECK(fch == chain);
  CHECK(is_iso<P>(hch));

  // Two mutually comparable points below nothing, one extra point.
  auto mixed = preord::closure(3, {{0, 1}, {1, 0}});
  auto [fm, hm] = P::torsionfree_part(mixed);
  CHECK(fm.n == 2);
  CHECK(hm.table == std::vector<int>{0, 0, 1});
}

TEST_CASE("preorder maximal symmetric subrelation is maximal") {
  // The torsion part is the largest symmetric sub-preorder: enumerate all
  // sub-relations at small scale.
  for (const auto& x : objects_up_to<P>(3)) {
    auto t = P::torsion_part(x).first;
    const int off = x.n * x.n;
    for (std::uint32_t mask = 0; x.n <= 3 && mask < (1u << off); ++mask) {
      std::vector<std::uint8_t> rel(off);
      bool sub = true;
      for (int k = 0; k < off; ++k) {
        rel[k] = (mask >> k) & 1u;
        if (rel[k] && !x.le[k]) sub = false;
      }
      if (!sub) continue;
      bool refl = true, trans = true, symm = true;
      for (int i = 0; i < x.n; ++i) {
        if (!rel[i * x.n + i]) refl = false;
        for (int j = 0; j < x.n; ++j) {
          if (rel[i * x.n + j] && !rel[j * x.n + i]) symm = false;
          if (rel[i * x.n + j])
            for (int k = 0; k < x.n; ++k)
              if (rel[j * x.n + k] && !rel[i * x.n + k]) trans = false;
        }
      }
      if (!(refl && trans && symm)) continue;
      for (int k = 0; k < off; ++k) CHECK((!rel[k] || t.le[k]));
    }
  }
}

TEST_CASE("preorder triviality witnesses") {
  auto d2 = preord::discrete(2);
  auto chain = preord::closure(2, {{0, 1}});
  CHECK(is_trivial<P>(preord::Mor(d2, chain, {1, 0})));
  CHECK_FALSE(is_trivial<P>(identity<P>(chain)));
  CHECK(is_trivial<P>(preord::Mor(chain, chain, {1, 1})));

  for (const auto& x : objects_up_to<P>(2))
    for (const auto& y : objects_up_to<P>(2))
      for (const auto& f : all_morphisms<P>(x, y))
        if (auto w = P::trivial_witness(f)) {
          CHECK(P::is_trivial_obj(w->via));
          CHECK(compose<P>(w->embed, w->collapse) == f);
        }
}

TEST_CASE("preorder Z-kernels match the spec examples") {
  auto chain = preord::closure(2, {{0, 1}});
  auto trivial = preord::Mor(chain, chain, {1, 1});
  auto k = P::z_kernel(trivial);
  CHECK(k.dom == chain);  // whole domain kept with full relation

  auto kid = P::z_kernel(identity<P>(chain));
  CHECK(kid.dom == preord::discrete(2));

  auto codisc = preord::codiscrete(2);
  auto collapse = preord::Mor(codisc, preord::discrete(1), {0, 0});
  CHECK(P::z_kernel(collapse).dom == codisc);
}

TEST_CASE("preorder Z-cokernels match the spec examples") {
  auto d2 = preord::discrete(2);
  auto chain = preord::closure(2, {{0, 1}});
  auto f = preord::Mor(d2, chain, {0, 1});
  auto q = P::z_cokernel(f);
  CHECK(q.cod == chain);
  CHECK(is_iso<P>(q));

  auto qid = P::z_cokernel(identity<P>(chain));
  CHECK(qid.cod.n == 1);

  // A monotone image of the codiscrete pair lands on mutually comparable
  // points; the generated equivalence collapses them.
  auto codisc = preord::codiscrete(2);
  auto into = preord::Mor(codisc, preord::codiscrete(2), {0, 1});
  CHECK(P::z_cokernel(into).cod.n == 1);
}

TEST_CASE("specialization preorder of finite topologies") {
  CHECK(preord::from_finite_top(2, {{}, {0}, {1}, {0, 1}}) == preord::discrete(2));
  CHECK(preord::from_finite_top(2, {{}, {0, 1}}) == preord::codiscrete(2));
  CHECK(preord::from_finite_top(2, {{}, {1}, {0, 1}}) == preord::closure(2, {{0, 1}}));

  CHECK_THROWS_AS(preord::from_finite_top(2, {{}, {0}, {1}}), Error);  // missing full set
  try {
    preord::from_finite_top(3, {{}, {0}, {1}, {0, 1, 2}});
    FAIL("expected NotATopology");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotATopology);
    CHECK(std::string(e.what()).find("union") != std::string::npos);
  }
}

TEST_CASE("up-set topologies round-trip and classify the (P, K) theory") {
  for (const auto& x : objects_up_to<P>(3)) {
    std::vector<Subset> opens;
    for (const auto& s : all_subsets(x.n)) {
      bool up = true;
      for (int a : s)
        for (int b = 0; b < x.n; ++b)
          if (x.at(a, b) && !subset_contains(s, b)) up = false;
      if (up) opens.push_back(s);
    }
    CHECK(preord::from_finite_top(x.n, opens) == x);
    CHECK(preord::is_partition_topology(x.n, opens) == P::is_torsion(x));
    CHECK(preord::is_kolmogorov(x.n, opens) == P::is_torsionfree(x));
  }
}

TEST_CASE("endo weak components") {
  CHECK(E::components(endo::identity_obj(3)).size() == 3);
  CHECK(E::components(endo::Obj(3, {1, 2, 0})).size() == 1);
  auto comps = E::components(endo::Obj(3, {1, 0, 2}));
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == Subset{0, 1});
  CHECK(comps[1] == Subset{2});
}

TEST_CASE("endo cyclic part agrees with both characterizations") {
  auto rho = endo::Obj(5, {1, 2, 0, 3, 3});
  auto [t, eps] = E::torsion_part(rho);
  CHECK(eps.table == std::vector<int>{0, 1, 2, 3});
  CHECK(E::is_torsion(t));

  CHECK(E::torsion_part(endo::Obj(2, {0, 0})).second.table == std::vector<int>{0});

  auto perm = endo::Obj(3, {1, 2, 0});
  CHECK(E::torsion_part(perm).first == perm);

  for (int n = 0; n <= 4; ++n)
    for (const auto& x : E::all_objects(n)) {
      auto by_image = E::cyclic_elements(x);
      Subset by_orbit;
      for (int e = 0; e < x.n; ++e) {
        int at = e;
        for (int t2 = 1; t2 <= x.n; ++t2) {
          at = x.f[at];
          if (at == e) {
            by_orbit.push_back(e);
            break;
          }
        }
      }
      CHECK(by_image == by_orbit);
    }
}

TEST_CASE("endo torsion-free part collapses cycles") {
  auto fixonly = endo::Obj(3, {0, 0, 1});
  CHECK(E::torsionfree_part(fixonly).first == fixonly);

  CHECK(E::torsionfree_part(endo::Obj(3, {1, 2, 0})).first == endo::Obj(1, {0}));

  auto rho = endo::Obj(5, {1, 2, 0, 3, 3});
  auto [f, eta] = E::torsionfree_part(rho);
  CHECK(f == endo::Obj(3, {0, 1, 1}));
  CHECK(eta.table == std::vector<int>{0, 0, 0, 1, 2});
}

TEST_CASE("forest membership equals no long cycles for all small tables") {
  for (int n = 0; n <= 4; ++n)
    for (const auto& x : E::all_objects(n)) {
      bool no_long_cycle = true;
      for (int e : E::cyclic_elements(x))
        if (x.f[e] != e) no_long_cycle = false;
      CHECK(E::is_torsionfree(x) == no_long_cycle);
    }
}

TEST_CASE("endo triviality witnesses") {
  auto two_cycle = endo::Obj(2, {1, 0});
  CHECK_FALSE(is_trivial<E>(identity<E>(two_cycle)));

  auto target = endo::Obj(2, {0, 1});
  CHECK(is_trivial<E>(endo::Mor(two_cycle, target, {1, 1})));

  for (const auto& x : objects_up_to<E>(2))
    for (const auto& y : objects_up_to<E>(2))
      for (const auto& f : all_morphisms<E>(x, y))
        if (auto w = E::trivial_witness(f)) {
          CHECK(E::is_trivial_obj(w->via));
          CHECK(compose<E>(w->embed, w->collapse) == f);
        }
}

TEST_CASE("endo Z-kernels match the spec examples") {
  auto two_cycle = endo::Obj(2, {1, 0});
  CHECK(E::z_kernel(identity<E>(two_cycle)).dom.n == 0);

  auto swap = endo::Obj(2, {1, 0});
  auto pt = endo::Obj(1, {0});
  auto collapse = endo::Mor(swap, pt, {0, 0});
  CHECK(E::z_kernel(collapse).dom.n == 2);

  auto trivial_target = endo::identity_obj(2);
  auto triv = endo::Mor(endo::identity_obj(3), trivial_target, {0, 0, 1});
  CHECK(E::z_kernel(triv).dom.n == 3);
}

TEST_CASE("endo Z-cokernels match the spec examples") {
  auto y = endo::Obj(3, {1, 0, 2});
  auto from_empty = endo::Mor(E::empty(), y, {});
  auto q0 = E::z_cokernel(from_empty);
  CHECK(is_iso<E>(q0));

  // Identity: each weak component collapses to a fixed point.
  auto qid = E::z_cokernel(identity<E>(y));
  CHECK(qid.cod == endo::Obj(2, {0, 1}));
  CHECK(qid.table == std::vector<int>{0, 0, 1});

  // Hitting one 2-cycle leaves the other component alone.
  auto twoc = endo::Obj(2, {1, 0});
  auto both = coproduct<E>(twoc, twoc).sum;  // (4, [1,0,3,2])
  auto hit = endo::Mor(twoc, both, {0, 1});
  auto q = E::z_cokernel(hit);
  CHECK(q.cod == endo::Obj(3, {0, 2, 1}));
}

TEST_CASE("mono epi iso predicates behave on the classic counterexample") {
  auto d2 = preord::discrete(2);
  auto chain = preord::closure(2, {{0, 1}});
  preord::Mor comparison(d2, chain, {0, 1});
  CHECK(is_mono<P>(comparison));
  CHECK(is_epi<P>(comparison));
  CHECK_FALSE(is_iso<P>(comparison));
  CHECK(is_iso<P>(identity<P>(chain)));
}

TEST_CASE("extremal epi search agrees with the instance characterizations") {
  for (const auto& x : objects_up_to<P>(3))
    for (const auto& y : objects_up_to<P>(3)) {
      if (y.n > x.n) continue;
      for (const auto& q : all_epis<P>(x, y)) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < x.n; ++i)
          for (int j = 0; j < x.n; ++j)
            if (x.at(i, j)) pairs.emplace_back(q.table[i], q.table[j]);
        bool canonical = preord::closure(y.n, pairs) == y;
        CHECK(is_extremal_epi_search<P>(q) == canonical);
      }
    }
  for (const auto& x : objects_up_to<E>(3))
    for (const auto& y : objects_up_to<E>(3)) {
      if (y.n > x.n) continue;
      for (const auto& q : all_epis<E>(x, y)) CHECK(is_extremal_epi_search<E>(q));
    }
}

TEST_CASE("theory hooks are consistent across instances") {
  for (const auto& x : objects_up_to<P>(3))
    CHECK(P::is_trivial_obj(x) == (P::is_torsion(x) && P::is_torsionfree(x)));
  for (const auto& x : objects_up_to<E>(3))
    CHECK(E::is_trivial_obj(x) == (E::is_torsion(x) && E::is_torsionfree(x)));
  for (const auto& x : objects_up_to<S>(3))
    CHECK(S::is_trivial_obj(x) == (S::is_torsion(x) && S::is_torsionfree(x)));
}

TEST_CASE("finite sets carry the degenerate theory") {
  auto x = setcat::Obj(3);
  auto seq = canonical_sequence<S>(x);
  CHECK(seq.torsion == x);
  CHECK(seq.free.n == 1);
  auto rep = verify_short_z_exact<S>(seq.counit, seq.unit, objects_up_to<S>(3));
  INFO(rep.summary());
  CHECK(rep.ok());
}
