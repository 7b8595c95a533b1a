#include <catch2/catch_amalgamated.hpp>

#include "stabcat/endo.hpp"
#include "stabcat/preord.hpp"
#include "stabcat/pretorsion.hpp"
#include "stabcat/setcat.hpp"

using namespace stabcat;
using P = preord::Cat;
using E = endo::Cat;
using S = setcat::Cat;

TEST_CASE("canonical sequences of the landmark objects") {
  auto triv = preord::discrete(2);
  auto s1 = canonical_sequence<P>(triv);
  CHECK(is_iso<P>(s1.counit));
  CHECK(is_iso<P>(s1.unit));

  auto codisc = preord::codiscrete(2);
  auto s2 = canonical_sequence<P>(codisc);
  CHECK(s2.torsion == codisc);
  CHECK(s2.free.n == 1);

  auto cyc = endo::Obj(3, {1, 2, 0});
  auto s3 = canonical_sequence<E>(cyc);
  CHECK(s3.torsion == cyc);
  CHECK(s3.free.n == 1);
}

TEST_CASE("triviality of an object is the same as both units being isos") {
  for (const auto& x : objects_up_to<P>(3)) {
    auto s = canonical_sequence<P>(x);
    CHECK(P::is_trivial_obj(x) == (is_iso<P>(s.counit) && is_iso<P>(s.unit)));
  }
  for (const auto& x : objects_up_to<E>(3)) {
    auto s = canonical_sequence<E>(x);
    CHECK(E::is_trivial_obj(x) == (is_iso<E>(s.counit) && is_iso<E>(s.unit)));
  }
}

TEST_CASE("Z-kernel oracle accepts the construction and catches fakes") {
  auto probes = objects_up_to<P>(2);
  auto chain = preord::closure(2, {{0, 1}});

  for (const auto& x : objects_up_to<P>(2))
    for (const auto& y : objects_up_to<P>(2))
      for (const auto& f : all_morphisms<P>(x, y)) {
        auto rep = verify_z_kernel<P>(P::z_kernel(f), f, probes);
        INFO(rep.summary());
        CHECK(rep.ok());
      }

  // Trivial f: the identity is a Z-kernel.
  auto trivial = preord::Mor(chain, chain, {1, 1});
  CHECK(verify_z_kernel<P>(identity<P>(chain), trivial, probes).ok());

  // Fake kernel: the empty subobject under the identity of the chain misses
  // the constant probes.
  preord::Mor empty_into(P::empty(), chain, {});
  auto fake = verify_z_kernel<P>(empty_into, identity<P>(chain), probes);
  CHECK_FALSE(fake.ok());

  // On the 2-cycle the same shape is the honest Z-kernel.
  auto two_cycle = endo::Obj(2, {1, 0});
  endo::Mor eempty(E::empty(), two_cycle, {});
  CHECK(verify_z_kernel<E>(eempty, identity<E>(two_cycle), objects_up_to<E>(2)).ok());
}

TEST_CASE("Z-cokernel oracle accepts the construction and catches overcollapse") {
  auto probes = objects_up_to<E>(2);
  for (const auto& x : objects_up_to<E>(2))
    for (const auto& y : objects_up_to<E>(2))
      for (const auto& f : all_morphisms<E>(x, y)) {
        auto rep = verify_z_cokernel<E>(f, E::z_cokernel(f), probes);
        INFO(rep.summary());
        CHECK(rep.ok());
      }

  // Over-collapsed: two fixed points nothing maps onto get merged anyway.
  auto two_fix = endo::identity_obj(2);
  endo::Mor from_empty(E::empty(), two_fix, {});
  endo::Mor collapse(two_fix, endo::identity_obj(1), {0, 0});
  auto rep = verify_z_cokernel<E>(from_empty, collapse, probes);
  CHECK_FALSE(rep.ok());
  REQUIRE_FALSE(rep.failures.empty());
  CHECK(rep.failures[0].witness.find("μ") != std::string::npos);
}

TEST_CASE("short Z-exactness of every canonical sequence at small scale") {
  auto probes_p = objects_up_to<P>(2);
  for (const auto& x : objects_up_to<P>(2)) {
    auto s = canonical_sequence<P>(x);
    CHECK(verify_short_z_exact<P>(s.counit, s.unit, probes_p).ok());
  }
  auto probes_e = objects_up_to<E>(2);
  for (const auto& x : objects_up_to<E>(2)) {
    auto s = canonical_sequence<E>(x);
    CHECK(verify_short_z_exact<E>(s.counit, s.unit, probes_e).ok());
  }
}

TEST_CASE("torsion and torsion-free functors satisfy the functor laws") {
  auto objs = objects_up_to<P>(2);
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& f : all_morphisms<P>(x, y)) {
        auto tf = functor_on_mor<P>(WhichFunctor::Torsion, f);
        auto ff = functor_on_mor<P>(WhichFunctor::TorsionFree, f);
        // Naturality squares.
        CHECK(compose<P>(P::torsion_part(y).second, tf) == compose<P>(f, P::torsion_part(x).second));
        CHECK(compose<P>(ff, P::torsionfree_part(x).second) == compose<P>(P::torsionfree_part(y).second, f));
        for (const auto& z : objs)
          for (const auto& g : all_morphisms<P>(y, z)) {
            CHECK(functor_on_mor<P>(WhichFunctor::Torsion, compose<P>(g, f)) ==
                  compose<P>(functor_on_mor<P>(WhichFunctor::Torsion, g), tf));
            CHECK(functor_on_mor<P>(WhichFunctor::TorsionFree, compose<P>(g, f)) ==
                  compose<P>(functor_on_mor<P>(WhichFunctor::TorsionFree, g), ff));
          }
      }
  for (const auto& x : objs) {
    CHECK(functor_on_mor<P>(WhichFunctor::Torsion, identity<P>(x)) == identity<P>(P::torsion_part(x).first));
    CHECK(functor_on_mor<P>(WhichFunctor::TorsionFree, identity<P>(x)) ==
          identity<P>(P::torsionfree_part(x).first));
  }
}

TEST_CASE("endo functors act by restriction and by quotient factorization") {
  auto rho = endo::Obj(5, {1, 2, 0, 3, 3});
  auto pt = endo::Obj(1, {0});
  endo::Mor f(rho, pt, {0, 0, 0, 0, 0});
  auto tf = functor_on_mor<E>(WhichFunctor::Torsion, f);
  CHECK(tf.dom == E::torsion_part(rho).first);
  auto ff = functor_on_mor<E>(WhichFunctor::TorsionFree, f);
  CHECK(ff.dom == E::torsionfree_part(rho).first);
  CHECK(ff.table == std::vector<int>{0, 0, 0});
}

TEST_CASE("lemma suite passes exhaustively at n<=3 with sampled extras") {
  CheckOptions opt{3, 40, 5, 42, 2};
  auto rp = check_lemma1<P>(opt);
  INFO(rp.summary());
  CHECK(rp.ok());
  auto re = check_lemma1<E>(opt);
  INFO(re.summary());
  CHECK(re.ok());
}

TEST_CASE("closure suite passes at small scale") {
  CheckOptions opt{2, 25, 4, 7, 2};
  auto rp = check_closure_props<P>(opt);
  INFO(rp.summary());
  CHECK(rp.ok());
  auto re = check_closure_props<E>(opt);
  INFO(re.summary());
  CHECK(re.ok());
}

TEST_CASE("pullback-stability suite passes at small scale") {
  CheckOptions opt{2, 25, 4, 9, 2};
  auto rp = check_magenta<P>(opt);
  INFO(rp.summary());
  CHECK(rp.ok());
  auto re = check_magenta<E>(opt);
  INFO(re.summary());
  CHECK(re.ok());
}

TEST_CASE("hom-triviality and canonical sequences, the pretorsion axioms") {
  CheckOptions opt{2, 0, 0, 0, 2};
  CHECK(check_hom_triviality<P>(opt).ok());
  CHECK(check_hom_triviality<E>(opt).ok());
  CHECK(check_canonical_sequences<P>(opt).ok());
  CHECK(check_canonical_sequences<E>(opt).ok());
}

TEST_CASE("block-sum Z-cokernels satisfy the column lemma") {
  Rng rng(19);
  auto probes = objects_up_to<E>(2);
  for (int i = 0; i < 10; ++i) {
    auto a1 = E::random_object(1 + rng.below(2), rng);
    auto b1 = E::random_object(1 + rng.below(2), rng);
    auto a2 = E::random_object(1 + rng.below(2), rng);
    auto b2 = E::random_object(1 + rng.below(2), rng);
    auto g1 = random_morphism<E>(a1, b1, rng);
    auto g2 = random_morphism<E>(a2, b2, rng);
    if (!g1 || !g2) continue;
    auto rep = check_cokernel_columns<E>(*g1, *g2, probes);
    INFO(rep.summary());
    CHECK(rep.ok());
  }
}

TEST_CASE("extremal epis detected by factorization search") {
  auto chain = preord::closure(2, {{0, 1}});
  preord::Mor to_point(chain, preord::discrete(1), {0, 0});
  CHECK(is_extremal_epi_search<P>(to_point));

  auto d2 = preord::discrete(2);
  preord::Mor comparison(d2, chain, {0, 1});
  CHECK_FALSE(is_extremal_epi_search<P>(comparison));
  CHECK_FALSE(is_extremal_epi_search<P>(preord::Mor(d2, d2, {0, 0})));  // not epi
}

TEST_CASE("(Set, at-most-one-point) verifies as a pretorsion theory") {
  CheckOptions opt{3, 0, 0, 0, 3};
  auto h = check_hom_triviality<S>(opt);
  INFO(h.summary());
  CHECK(h.ok());
  auto c = check_canonical_sequences<S>(opt);
  INFO(c.summary());
  CHECK(c.ok());
}
