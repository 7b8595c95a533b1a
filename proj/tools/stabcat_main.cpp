#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "stabcat/dot.hpp"
#include "stabcat/io.hpp"
#include "stabcat/suites.hpp"

using namespace stabcat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerification = 2;
constexpr int kExitNegative = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::KernelUnverified:
    case Errc::CokernelUnverified:
    case Errc::ZKernelUnverified:
    case Errc::NoFactorization:
    case Errc::NotTTFunctor:
    case Errc::NotCoproductPreserving:
      return kExitVerification;
    default:
      return kExitInput;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int probe_bound(int cli_value) {
  if (const char* env = std::getenv("STABCAT_MAX_PROBE")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return cli_value;
}

template <PretorsionInstance C>
int run_canon(const typename C::Obj& x, int probes_n, const std::string& format) {
  if (format == "dot") {
    std::cout << dot::sequence<C>(x);
  }
  auto seq = canonical_sequence<C>(x);
  if (format != "dot") {
    std::cout << "object: " << C::encode(x) << "\n";
    std::cout << "T(X): " << C::encode(seq.torsion) << "\n";
    std::cout << "epsilon: " << join_ints(seq.counit.table) << "\n";
    std::cout << "F(X): " << C::encode(seq.free) << "\n";
    std::cout << "eta: " << join_ints(seq.unit.table) << "\n";
  }
  auto probes = objects_up_to<C>(probes_n);
  auto rep = verify_short_z_exact<C>(seq.counit, seq.unit, probes);
  std::cout << "oracle: " << (rep.ok() ? "short-Z-exact verified" : "FAILED") << " (" << rep.cases
            << " cases, probes up to carrier " << probes_n << ")\n";
  if (!rep.ok()) {
    std::cout << rep.summary() << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

template <PretorsionInstance C>
int run_stable_eq(const PartialMor<C>& p1, const PartialMor<C>& p2) {
  auto d = stable_eq<C>(p1, p2);
  if (!d) {
    std::cout << "equivalent: false\n";
    return kExitNegative;
  }
  std::cout << "equivalent: true\n";
  std::cout << "C    = " << join_ints(d->common) << "\n";
  std::cout << "C1c  = " << join_ints(d->comp1) << "\n";
  std::cout << "C2c  = " << join_ints(d->comp2) << "\n";
  return kExitOk;
}

template <PretorsionInstance C>
int run_kernel(const typename C::Mor& f, int probes_n, io::Kind kind) {
  auto k = C::z_kernel(f);
  std::cout << io::print_document({kind, k});
  auto rep = verify_z_kernel<C>(k, f, objects_up_to<C>(probes_n));
  std::cout << "oracle: " << (rep.ok() ? "Z-kernel verified" : "FAILED") << " (" << rep.cases << " cases)\n";
  return rep.ok() ? kExitOk : kExitVerification;
}

template <PretorsionInstance C>
int run_cokernel(const typename C::Mor& f, int probes_n, io::Kind kind) {
  auto q = C::z_cokernel(f);
  std::cout << io::print_document({kind, q});
  auto rep = verify_z_cokernel<C>(f, q, objects_up_to<C>(probes_n));
  std::cout << "oracle: " << (rep.ok() ? "Z-cokernel verified" : "FAILED") << " (" << rep.cases << " cases)\n";
  return rep.ok() ? kExitOk : kExitVerification;
}

template <PretorsionInstance C>
int run_stable_kernel(const PartialMor<C>& p, int probes_n, bool cokernel) {
  auto s = reduce<C>(p);
  auto probes = objects_up_to<C>(probes_n);
  auto t = cokernel ? stable_cokernel<C>(s, probes) : stable_kernel<C>(s, probes);
  std::cout << io::print_document({io::Kind::Partial, t.rep});
  std::cout << "oracle: " << (cokernel ? "cokernel" : "kernel") << " verified (probes up to carrier " << probes_n
            << ")\n";
  return kExitOk;
}

preord::Obj top_to_preord(const io::TopDoc& d) { return preord::from_finite_top(d.n, d.opens); }

int run_universal(const std::string& ttcat_path, const std::string& functor_path, long budget) {
  auto catdoc = io::parse_document(slurp(ttcat_path));
  require(catdoc.kind == io::Kind::TTCategory, Errc::ParseError, "first file must be a tt-category document");
  auto b = io::build_tt_category(std::get<io::TTCategoryDoc>(catdoc.payload));
  Report all;
  all.merge(validate_category(b));
  all.merge(validate_torsion_theory(b));
  auto fdoc = io::parse_document(slurp(functor_path));
  require(fdoc.kind == io::Kind::FunctorTable, Errc::ParseError, "second file must be a functor-table document");
  const auto& fd = std::get<io::FunctorTableDoc>(fdoc.payload);

  auto run = [&](auto tag) {
    using C = decltype(tag);
    auto frag = make_fragment<C>(fd.max_n);
    auto g = io::build_functor_table(fd, static_cast<int>(frag.objects.size()));
    all.merge(is_torsion_theory_functor<C>(g, frag, b, budget));
    all.merge(verify_coproduct_preservation<C>(g, frag, b));
    auto stab = make_stab_fragment<C>(frag);
    try {
      auto h = induced_H<C>(g, frag, stab, b, budget);
      all.merge(h.report);
      std::vector<int> sub;
      for (size_t i = 0; i < frag.objects.size(); ++i)
        if (frag.objects[i].n <= 2) sub.push_back(static_cast<int>(i));
      all.merge(verify_uniqueness<C>(g, h.table, frag, stab, b, sub));
    } catch (const Error& e) {
      all.check(false, "induced_H", e.what());
    }
  };
  if (fd.instance == "preord")
    run(preord::Cat{});
  else if (fd.instance == "endo")
    run(endo::Cat{});
  else
    fail(Errc::ParseError, "unknown functor-table instance '" + fd.instance + "'");
  std::cout << all.summary() << "\n";
  return all.ok() ? kExitOk : kExitVerification;
}

template <PretorsionInstance C>
void list_fragment(int max_n) {
  auto frag = make_fragment<C>(max_n);
  for (size_t i = 0; i < frag.objects.size(); ++i)
    std::cout << "obj " << i << " : " << C::encode(frag.objects[i]) << "\n";
  for (size_t a = 0; a < frag.objects.size(); ++a)
    for (size_t b = 0; b < frag.objects.size(); ++b)
      for (size_t k = 0; k < frag.hom[a][b].size(); ++k)
        std::cout << "mor " << a << " " << b << " " << k << " : [" << join_ints(frag.hom[a][b][k].table) << "]\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabcat: pretorsion theories, stable categories and their desk-scale verification"};
  app.require_subcommand(1);

  int max_n = 3;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string what = "graph";
  std::string file1, file2, suite, instance = "endo";
  bool list_frag = false;

  auto* canon = app.add_subcommand("canon", "canonical torsion / torsion-free sequence of an object");
  canon->add_option("file", file1, "object document")->required();
  canon->add_option("--max-n", max_n, "probe carrier bound for the oracle");
  canon->add_option("--format", format, "text or dot")->check(CLI::IsMember({"text", "dot"}));

  auto* seq = app.add_subcommand("stable-eq", "decide congruence of two parallel partial morphisms");
  seq->add_option("file1", file1)->required();
  seq->add_option("file2", file2)->required();

  auto* cmp = app.add_subcommand("compose", "compose two morphism or partial-morphism documents (second after first)");
  cmp->add_option("file1", file1, "first morphism (applied first)")->required();
  cmp->add_option("file2", file2, "second morphism")->required();

  auto* ker = app.add_subcommand("kernel", "Z-kernel of a morphism, or kernel of a partial morphism in Stab");
  ker->add_option("file", file1)->required();
  ker->add_option("--max-n", max_n, "probe carrier bound");

  auto* coker = app.add_subcommand("cokernel", "Z-cokernel of a morphism, or cokernel in Stab");
  coker->add_option("file", file1)->required();
  coker->add_option("--max-n", max_n, "probe carrier bound");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "lemma1|closure|magenta|stable|exact|coproduct|universal|all")->required();
  ver->add_option("--max-n", max_n, "exhaustive carrier bound");
  ver->add_option("--seed", seed, "seed for randomized phases");

  auto* dotc = app.add_subcommand("export-dot", "emit a DOT rendering of a document");
  dotc->add_option("file", file1)->required();
  dotc->add_option("--what", what, "graph, hasse or sequence")->check(CLI::IsMember({"graph", "hasse", "sequence"}));

  auto* uni = app.add_subcommand("universal", "verify a torsion theory functor and its induced factorization");
  uni->add_option("ttcat", file1, "tt-category document");
  uni->add_option("functor", file2, "functor-table document");
  uni->add_flag("--list-fragment", list_frag, "print the fragment enumeration instead");
  uni->add_option("--instance", instance, "instance for --list-fragment")->check(CLI::IsMember({"preord", "endo"}));
  uni->add_option("--max-n", max_n, "fragment carrier bound for --list-fragment");

  CLI11_PARSE(app, argc, argv);

  try {
    if (canon->parsed()) {
      auto doc = io::parse_document(slurp(file1));
      int pb = probe_bound(max_n);
      switch (doc.kind) {
        case io::Kind::Preord:
          return run_canon<preord::Cat>(std::get<preord::Obj>(doc.payload), pb, format);
        case io::Kind::Top:
          return run_canon<preord::Cat>(top_to_preord(std::get<io::TopDoc>(doc.payload)), pb, format);
        case io::Kind::Endo:
          return run_canon<endo::Cat>(std::get<endo::Obj>(doc.payload), pb, format);
        default:
          fail(Errc::ParseError, "canon expects an object document (preord, endo or top)");
      }
    }
    if (seq->parsed()) {
      auto d1 = io::parse_document(slurp(file1));
      auto d2 = io::parse_document(slurp(file2));
      require(d1.kind == io::Kind::Partial && d2.kind == io::Kind::Partial, Errc::ParseError,
              "stable-eq expects two partial-morphism documents");
      if (auto* p1 = std::get_if<PartialMor<preord::Cat>>(&d1.payload)) {
        auto* p2 = std::get_if<PartialMor<preord::Cat>>(&d2.payload);
        require(p2 != nullptr, Errc::ParallelMismatch, "documents use different instances");
        require(p1->src == p2->src && p1->dst == p2->dst, Errc::ParallelMismatch, "morphisms are not parallel");
        return run_stable_eq<preord::Cat>(*p1, *p2);
      }
      auto& p1 = std::get<PartialMor<endo::Cat>>(d1.payload);
      auto* p2 = std::get_if<PartialMor<endo::Cat>>(&d2.payload);
      require(p2 != nullptr, Errc::ParallelMismatch, "documents use different instances");
      require(p1.src == p2->src && p1.dst == p2->dst, Errc::ParallelMismatch, "morphisms are not parallel");
      return run_stable_eq<endo::Cat>(p1, *p2);
    }
    if (cmp->parsed()) {
      auto d1 = io::parse_document(slurp(file1));
      auto d2 = io::parse_document(slurp(file2));
      require(d1.kind == d2.kind, Errc::ParseError, "compose expects two documents of the same kind");
      if (d1.kind == io::Kind::Morphism) {
        if (auto* f = std::get_if<preord::Mor>(&d1.payload)) {
          auto* g = std::get_if<preord::Mor>(&d2.payload);
          require(g != nullptr, Errc::DomainMismatch, "documents use different instances");
          std::cout << io::print_document({io::Kind::Morphism, compose<preord::Cat>(*g, *f)});
          return kExitOk;
        }
        auto& f = std::get<endo::Mor>(d1.payload);
        auto* g = std::get_if<endo::Mor>(&d2.payload);
        require(g != nullptr, Errc::DomainMismatch, "documents use different instances");
        std::cout << io::print_document({io::Kind::Morphism, compose<endo::Cat>(*g, f)});
        return kExitOk;
      }
      require(d1.kind == io::Kind::Partial, Errc::ParseError, "compose expects morphism or partial documents");
      if (auto* f = std::get_if<PartialMor<preord::Cat>>(&d1.payload)) {
        auto* g = std::get_if<PartialMor<preord::Cat>>(&d2.payload);
        require(g != nullptr, Errc::DomainMismatch, "documents use different instances");
        std::cout << io::print_document({io::Kind::Partial, par_compose<preord::Cat>(*g, *f)});
        return kExitOk;
      }
      auto& f = std::get<PartialMor<endo::Cat>>(d1.payload);
      auto* g = std::get_if<PartialMor<endo::Cat>>(&d2.payload);
      require(g != nullptr, Errc::DomainMismatch, "documents use different instances");
      std::cout << io::print_document({io::Kind::Partial, par_compose<endo::Cat>(*g, f)});
      return kExitOk;
    }
    if (ker->parsed() || coker->parsed()) {
      bool want_coker = coker->parsed();
      auto doc = io::parse_document(slurp(file1));
      int pb = probe_bound(max_n);
      if (doc.kind == io::Kind::Morphism) {
        if (auto* f = std::get_if<preord::Mor>(&doc.payload))
          return want_coker ? run_cokernel<preord::Cat>(*f, pb, io::Kind::Morphism)
                            : run_kernel<preord::Cat>(*f, pb, io::Kind::Morphism);
        auto& f = std::get<endo::Mor>(doc.payload);
        return want_coker ? run_cokernel<endo::Cat>(f, pb, io::Kind::Morphism)
                          : run_kernel<endo::Cat>(f, pb, io::Kind::Morphism);
      }
      require(doc.kind == io::Kind::Partial, Errc::ParseError, "kernel expects a morphism or partial document");
      if (auto* p = std::get_if<PartialMor<preord::Cat>>(&doc.payload))
        return run_stable_kernel<preord::Cat>(*p, pb, want_coker);
      return run_stable_kernel<endo::Cat>(std::get<PartialMor<endo::Cat>>(doc.payload), pb, want_coker);
    }
    if (ver->parsed()) {
      suites::SuiteOptions opt;
      opt.max_n = max_n;
      opt.seed = seed;
      opt.probe_n = probe_bound(3);
      auto t0 = std::chrono::steady_clock::now();
      auto reports = suites::run_suite(suite, opt);
      long failures = 0, cases = 0;
      for (const auto& r : reports) {
        std::cout << r.summary() << "\n";
        failures += static_cast<long>(r.failures.size());
        cases += r.cases;
      }
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      std::cout << "total: " << cases << " cases, " << failures << " failures, " << ms.count() << " ms\n";
      return failures == 0 ? kExitOk : kExitVerification;
    }
    if (dotc->parsed()) {
      auto doc = io::parse_document(slurp(file1));
      if (what == "graph") {
        if (doc.kind == io::Kind::Preord)
          std::cout << dot::graph(std::get<preord::Obj>(doc.payload));
        else if (doc.kind == io::Kind::Top)
          std::cout << dot::graph(top_to_preord(std::get<io::TopDoc>(doc.payload)));
        else if (doc.kind == io::Kind::Endo)
          std::cout << dot::graph(std::get<endo::Obj>(doc.payload));
        else
          fail(Errc::ParseError, "graph export expects an object document");
      } else if (what == "hasse") {
        if (doc.kind == io::Kind::Preord)
          std::cout << dot::hasse(std::get<preord::Obj>(doc.payload));
        else if (doc.kind == io::Kind::Top)
          std::cout << dot::hasse(top_to_preord(std::get<io::TopDoc>(doc.payload)));
        else
          fail(Errc::ParseError, "hasse export expects a preorder or top document");
      } else {
        if (doc.kind == io::Kind::Preord)
          std::cout << dot::sequence<preord::Cat>(std::get<preord::Obj>(doc.payload));
        else if (doc.kind == io::Kind::Top)
          std::cout << dot::sequence<preord::Cat>(top_to_preord(std::get<io::TopDoc>(doc.payload)));
        else if (doc.kind == io::Kind::Endo)
          std::cout << dot::sequence<endo::Cat>(std::get<endo::Obj>(doc.payload));
        else
          fail(Errc::ParseError, "sequence export expects an object document");
      }
      return kExitOk;
    }
    if (uni->parsed()) {
      if (list_frag) {
        if (instance == "preord")
          list_fragment<preord::Cat>(max_n);
        else
          list_fragment<endo::Cat>(max_n);
        return kExitOk;
      }
      require(!file1.empty() && !file2.empty(), Errc::ParseError,
              "universal needs a tt-category and a functor-table document (or --list-fragment)");
      return run_universal(file1, file2, 250000);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
