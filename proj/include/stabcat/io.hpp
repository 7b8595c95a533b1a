#pragma once

#include <memory>
#include <sstream>
#include <variant>

#include "stabcat/endo.hpp"
#include "stabcat/partial.hpp"
#include "stabcat/preord.hpp"
#include "stabcat/universality.hpp"

namespace stabcat::io {

enum class Kind { Preord, Endo, Top, Morphism, Partial, FunctorTable, TTCategory };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Preord: return "preord";
    case Kind::Endo: return "endo";
    case Kind::Top: return "top";
    case Kind::Morphism: return "morphism";
    case Kind::Partial: return "partial";
    case Kind::FunctorTable: return "functor-table";
    case Kind::TTCategory: return "tt-category";
  }
  return "?";
}

struct TopDoc {
  int n = 0;
  std::vector<Subset> opens;
  bool operator==(const TopDoc&) const = default;
};

struct TTCategoryDoc {
  int objects = 0;
  int zero = -1;
  std::vector<std::array<int, 2>> mors;  // dom cod, ids sequential
  std::vector<std::array<int, 2>> ids;   // obj mor
  std::vector<std::array<int, 3>> comps;
  std::vector<std::array<int, 5>> sums;
  Subset torsion, torsionfree;
  std::vector<std::array<int, 3>> seqs;
  bool operator==(const TTCategoryDoc&) const = default;
};

struct FunctorTableDoc {
  std::string instance;
  int max_n = 0;
  std::vector<std::array<int, 2>> objects;     // fragment obj -> target obj
  std::vector<std::array<int, 4>> morphisms;   // dom idx, cod idx, position -> target mor
  bool operator==(const FunctorTableDoc&) const = default;
};

using Payload = std::variant<preord::Obj, endo::Obj, TopDoc, preord::Mor, endo::Mor, PartialMor<preord::Cat>,
                             PartialMor<endo::Cat>, TTCategoryDoc, FunctorTableDoc>;

struct Document {
  Kind kind;
  Payload payload;
  bool operator==(const Document&) const = default;
};

namespace detail {

[[noreturn]] inline void parse_fail(int line, int col, const std::string& msg) {
  fail(Errc::ParseError, "line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

struct KeyLine {
  int line = 0;
  std::string key;
  std::vector<std::string> values;
};

struct RawDoc {
  std::string kind;
  int header_line = 1;
  std::vector<KeyLine> entries;

  const KeyLine* find(const std::string& key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }

  const KeyLine& need(const std::string& key) const {
    const auto* e = find(key);
    if (!e) parse_fail(header_line, 1, "missing required key '" + key + "'");
    return *e;
  }
};

inline int to_int(const std::string& tok, int line) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (...) {
    parse_fail(line, 1, "expected an integer, got '" + tok + "'");
  }
  if (used != tok.size()) parse_fail(line, 1, "expected an integer, got '" + tok + "'");
  return v;
}

inline std::vector<int> to_ints(const KeyLine& e) {
  std::vector<int> out;
  out.reserve(e.values.size());
  for (const auto& v : e.values) out.push_back(to_int(v, e.line));
  return out;
}

inline RawDoc tokenize(const std::string& text) {
  RawDoc doc;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (!seen_header) {
      if (toks.size() != 2 || toks[0] != "stabcat/1")
        parse_fail(lineno, 1, "expected header 'stabcat/1 <kind>'");
      doc.kind = toks[1];
      doc.header_line = lineno;
      seen_header = true;
      continue;
    }
    if (toks.size() < 2 || toks[1] != "=")
      parse_fail(lineno, static_cast<int>(toks[0].size()) + 2, "expected 'key = values...'");
    KeyLine e;
    e.line = lineno;
    e.key = toks[0];
    e.values.assign(toks.begin() + 2, toks.end());
    doc.entries.push_back(std::move(e));
  }
  if (!seen_header) parse_fail(1, 1, "empty document");
  return doc;
}

inline preord::Obj parse_preord_payload(const RawDoc& raw, const std::string& prefix) {
  const auto& nk = raw.need(prefix + "n");
  if (nk.values.empty()) parse_fail(nk.line, 1, "n needs a value");
  int n = to_int(nk.values[0], nk.line);
  const auto& le = raw.need(prefix + "le");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& tok : le.values) {
    auto lt = tok.find('<');
    if (lt == std::string::npos) parse_fail(le.line, 1, "relation entries look like i<j, got '" + tok + "'");
    pairs.emplace_back(to_int(tok.substr(0, lt), le.line), to_int(tok.substr(lt + 1), le.line));
  }
  try {
    return preord::closure(n, pairs);
  } catch (const Error& e) {
    parse_fail(le.line, 1, e.what());
  }
}

inline endo::Obj parse_endo_payload(const RawDoc& raw, const std::string& prefix) {
  const auto& nk = raw.need(prefix + "n");
  if (nk.values.empty()) parse_fail(nk.line, 1, "n needs a value");
  int n = to_int(nk.values[0], nk.line);
  const auto& fk = raw.need(prefix + "f");
  auto f = to_ints(fk);
  try {
    return endo::Obj(n, std::move(f));
  } catch (const Error& e) {
    parse_fail(fk.line, 1, e.what());
  }
}

template <typename C, typename ObjParser>
PartialMor<C> parse_partial_payload(const RawDoc& raw, ObjParser parse_obj) {
  auto src = parse_obj(raw, "src.");
  auto dst = parse_obj(raw, "dst.");
  const auto& sup = raw.need("support");
  Subset support = to_ints(sup);
  const auto& mp = raw.need("map");
  auto table = to_ints(mp);
  try {
    return make_partial<C>(src, dst, support, typename C::Mor(C::restricted(src, support), dst, table));
  } catch (const Error& e) {
    parse_fail(mp.line, 1, e.what());
  }
}

}  // namespace detail

inline Document parse_document(const std::string& text) {
  using namespace detail;
  RawDoc raw = tokenize(text);
  if (raw.kind == "preord") return {Kind::Preord, parse_preord_payload(raw, "")};
  if (raw.kind == "endo") return {Kind::Endo, parse_endo_payload(raw, "")};
  if (raw.kind == "top") {
    TopDoc d;
    const auto& nk = raw.need("n");
    if (nk.values.empty()) parse_fail(nk.line, 1, "n needs a value");
    d.n = to_int(nk.values[0], nk.line);
    for (const auto& e : raw.entries)
      if (e.key == "open") {
        Subset s = to_ints(e);
        std::sort(s.begin(), s.end());
        d.opens.push_back(std::move(s));
      }
    return {Kind::Top, std::move(d)};
  }
  if (raw.kind == "morphism") {
    const auto& kk = raw.need("kind");
    if (kk.values.empty()) parse_fail(kk.line, 1, "kind needs a value");
    const auto& inst = kk.values[0];
    const auto& tk = raw.need("table");
    auto table = to_ints(tk);
    if (inst == "preord") {
      auto dom = parse_preord_payload(raw, "dom.");
      auto cod = parse_preord_payload(raw, "cod.");
      try {
        return {Kind::Morphism, preord::Mor(std::move(dom), std::move(cod), std::move(table))};
      } catch (const Error& e) {
        parse_fail(tk.line, 1, e.what());
      }
    }
    if (inst == "endo") {
      auto dom = parse_endo_payload(raw, "dom.");
      auto cod = parse_endo_payload(raw, "cod.");
      try {
        return {Kind::Morphism, endo::Mor(std::move(dom), std::move(cod), std::move(table))};
      } catch (const Error& e) {
        parse_fail(tk.line, 1, e.what());
      }
    }
    parse_fail(kk.line, 1, "unknown morphism kind '" + inst + "'");
  }
  if (raw.kind == "partial") {
    const auto& kk = raw.need("kind");
    if (kk.values.empty()) parse_fail(kk.line, 1, "kind needs a value");
    const auto& inst = kk.values[0];
    if (inst == "preord")
      return {Kind::Partial, parse_partial_payload<preord::Cat>(raw, detail::parse_preord_payload)};
    if (inst == "endo") return {Kind::Partial, parse_partial_payload<endo::Cat>(raw, detail::parse_endo_payload)};
    parse_fail(kk.line, 1, "unknown partial kind '" + inst + "'");
  }
  if (raw.kind == "tt-category") {
    TTCategoryDoc d;
    const auto& ok = raw.need("objects");
    if (ok.values.empty()) parse_fail(ok.line, 1, "objects needs a value");
    d.objects = to_int(ok.values[0], ok.line);
    const auto& zk = raw.need("zero");
    if (zk.values.empty()) parse_fail(zk.line, 1, "zero needs a value");
    d.zero = to_int(zk.values[0], zk.line);
    for (const auto& e : raw.entries) {
      auto ints = [&] { return to_ints(e); };
      if (e.key == "mor") {
        auto v = ints();
        if (v.size() != 3) parse_fail(e.line, 1, "mor = <id> <dom> <cod>");
        if (v[0] != static_cast<int>(d.mors.size())) parse_fail(e.line, 1, "morphism ids must be sequential");
        d.mors.push_back({v[1], v[2]});
      } else if (e.key == "id") {
        auto v = ints();
        if (v.size() != 2) parse_fail(e.line, 1, "id = <obj> <mor>");
        d.ids.push_back({v[0], v[1]});
      } else if (e.key == "comp") {
        auto v = ints();
        if (v.size() != 3) parse_fail(e.line, 1, "comp = <g> <f> <gf>");
        d.comps.push_back({v[0], v[1], v[2]});
      } else if (e.key == "sum") {
        auto v = ints();
        if (v.size() != 5) parse_fail(e.line, 1, "sum = <left> <right> <sum> <inj1> <inj2>");
        d.sums.push_back({v[0], v[1], v[2], v[3], v[4]});
      } else if (e.key == "torsion") {
        d.torsion = ints();
      } else if (e.key == "torsionfree") {
        d.torsionfree = ints();
      } else if (e.key == "seq") {
        auto v = ints();
        if (v.size() != 3) parse_fail(e.line, 1, "seq = <obj> <eps> <eta>");
        d.seqs.push_back({v[0], v[1], v[2]});
      }
    }
    return {Kind::TTCategory, std::move(d)};
  }
  if (raw.kind == "functor-table") {
    FunctorTableDoc d;
    const auto& kk = raw.need("kind");
    if (kk.values.empty()) parse_fail(kk.line, 1, "kind needs a value");
    d.instance = kk.values[0];
    const auto& mk = raw.need("max_n");
    if (mk.values.empty()) parse_fail(mk.line, 1, "max_n needs a value");
    d.max_n = to_int(mk.values[0], mk.line);
    for (const auto& e : raw.entries) {
      if (e.key == "obj") {
        auto v = to_ints(e);
        if (v.size() != 2) parse_fail(e.line, 1, "obj = <fragment index> <target object>");
        d.objects.push_back({v[0], v[1]});
      } else if (e.key == "mor") {
        auto v = to_ints(e);
        if (v.size() != 4) parse_fail(e.line, 1, "mor = <dom idx> <cod idx> <position> <target mor>");
        d.morphisms.push_back({v[0], v[1], v[2], v[3]});
      }
    }
    return {Kind::FunctorTable, std::move(d)};
  }
  detail::parse_fail(raw.header_line, 11, "unknown document kind '" + raw.kind + "'");
}

namespace detail {

inline void print_preord(std::ostream& os, const preord::Obj& x, const std::string& prefix) {
  os << prefix << "n = " << x.n << "\n" << prefix << "le =";
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (i != j && x.at(i, j)) os << " " << i << "<" << j;
  os << "\n";
}

inline void print_endo(std::ostream& os, const endo::Obj& x, const std::string& prefix) {
  os << prefix << "n = " << x.n << "\n" << prefix << "f = " << join_ints(x.f) << "\n";
}

}  // namespace detail

inline std::string print_document(const Document& doc) {
  std::ostringstream os;
  os << "stabcat/1 " << kind_name(doc.kind) << "\n";
  switch (doc.kind) {
    case Kind::Preord:
      detail::print_preord(os, std::get<preord::Obj>(doc.payload), "");
      break;
    case Kind::Endo:
      detail::print_endo(os, std::get<endo::Obj>(doc.payload), "");
      break;
    case Kind::Top: {
      const auto& d = std::get<TopDoc>(doc.payload);
      os << "n = " << d.n << "\n";
      for (const auto& o : d.opens) os << "open = " << join_ints(o) << "\n";
      break;
    }
    case Kind::Morphism: {
      if (const auto* m = std::get_if<preord::Mor>(&doc.payload)) {
        os << "kind = preord\n";
        detail::print_preord(os, m->dom, "dom.");
        detail::print_preord(os, m->cod, "cod.");
        os << "table = " << join_ints(m->table) << "\n";
      } else {
        const auto& em = std::get<endo::Mor>(doc.payload);
        os << "kind = endo\n";
        detail::print_endo(os, em.dom, "dom.");
        detail::print_endo(os, em.cod, "cod.");
        os << "table = " << join_ints(em.table) << "\n";
      }
      break;
    }
    case Kind::Partial: {
      if (const auto* p = std::get_if<PartialMor<preord::Cat>>(&doc.payload)) {
        os << "kind = preord\n";
        detail::print_preord(os, p->src, "src.");
        detail::print_preord(os, p->dst, "dst.");
        os << "support = " << join_ints(p->support) << "\n";
        os << "map = " << join_ints(p->map.table) << "\n";
      } else {
        const auto& ep = std::get<PartialMor<endo::Cat>>(doc.payload);
        os << "kind = endo\n";
        detail::print_endo(os, ep.src, "src.");
        detail::print_endo(os, ep.dst, "dst.");
        os << "support = " << join_ints(ep.support) << "\n";
        os << "map = " << join_ints(ep.map.table) << "\n";
      }
      break;
    }
    case Kind::TTCategory: {
      const auto& d = std::get<TTCategoryDoc>(doc.payload);
      os << "objects = " << d.objects << "\nzero = " << d.zero << "\n";
      for (size_t i = 0; i < d.mors.size(); ++i)
        os << "mor = " << i << " " << d.mors[i][0] << " " << d.mors[i][1] << "\n";
      for (const auto& e : d.ids) os << "id = " << e[0] << " " << e[1] << "\n";
      for (const auto& e : d.comps) os << "comp = " << e[0] << " " << e[1] << " " << e[2] << "\n";
      for (const auto& e : d.sums)
        os << "sum = " << e[0] << " " << e[1] << " " << e[2] << " " << e[3] << " " << e[4] << "\n";
      os << "torsion = " << join_ints(d.torsion) << "\n";
      os << "torsionfree = " << join_ints(d.torsionfree) << "\n";
      for (const auto& e : d.seqs) os << "seq = " << e[0] << " " << e[1] << " " << e[2] << "\n";
      break;
    }
    case Kind::FunctorTable: {
      const auto& d = std::get<FunctorTableDoc>(doc.payload);
      os << "kind = " << d.instance << "\nmax_n = " << d.max_n << "\n";
      for (const auto& e : d.objects) os << "obj = " << e[0] << " " << e[1] << "\n";
      for (const auto& e : d.morphisms)
        os << "mor = " << e[0] << " " << e[1] << " " << e[2] << " " << e[3] << "\n";
      break;
    }
  }
  return os.str();
}

/// Instantiate a tabulated category from its on-disk form, with full law
/// validation left to validate_category / validate_torsion_theory.
inline FiniteTTCategory build_tt_category(const TTCategoryDoc& d) {
  FiniteTTCategory b;
  b.n_objects = d.objects;
  require(d.zero >= 0 && d.zero < d.objects, Errc::ParseError, "zero object out of range");
  b.zero_object = d.zero;
  b.mors.resize(d.mors.size());
  b.hom.assign(d.objects, std::vector<std::vector<int>>(d.objects));
  for (size_t i = 0; i < d.mors.size(); ++i) {
    int dom = d.mors[i][0], cod = d.mors[i][1];
    require(dom >= 0 && dom < d.objects && cod >= 0 && cod < d.objects, Errc::ParseError, "morphism ends out of range");
    b.mors[i] = {dom, cod};
    b.hom[dom][cod].push_back(static_cast<int>(i));
  }
  b.identities.assign(d.objects, -1);
  for (const auto& e : d.ids) {
    require(e[0] >= 0 && e[0] < d.objects && e[1] >= 0 && e[1] < static_cast<int>(d.mors.size()), Errc::ParseError,
            "identity entry out of range");
    b.identities[e[0]] = e[1];
  }
  for (int a = 0; a < d.objects; ++a)
    require(b.identities[a] >= 0, Errc::ParseError, "object " + std::to_string(a) + " has no identity");
  auto table = std::make_shared<std::map<std::pair<int, int>, int>>();
  for (const auto& e : d.comps) (*table)[{e[0], e[1]}] = e[2];
  b.composer = [table](int g, int f) {
    auto it = table->find({g, f});
    require(it != table->end(), Errc::ParseError,
            "missing composition entry " + std::to_string(g) + "∘" + std::to_string(f));
    return it->second;
  };
  b.torsion.assign(d.objects, 0);
  b.torsionfree.assign(d.objects, 0);
  for (int t : d.torsion) b.torsion.at(t) = 1;
  for (int f : d.torsionfree) b.torsionfree.at(f) = 1;
  for (const auto& s : d.sums) b.sums.push_back({s[0], s[1], s[2], s[3], s[4]});
  for (const auto& s : d.seqs) b.seqs.push_back({s[0], s[1], s[2]});
  return b;
}

inline FunctorTable build_functor_table(const FunctorTableDoc& d, int n_fragment_objects) {
  FunctorTable g;
  g.object_map.assign(n_fragment_objects, -1);
  for (const auto& e : d.objects) {
    require(e[0] >= 0 && e[0] < n_fragment_objects, Errc::ParseError, "fragment object index out of range");
    g.object_map[e[0]] = e[1];
  }
  for (int i = 0; i < n_fragment_objects; ++i)
    require(g.object_map[i] >= 0, Errc::ParseError, "functor table misses fragment object " + std::to_string(i));
  for (const auto& e : d.morphisms) g.morphism_map[{e[0], e[1], e[2]}] = e[3];
  return g;
}

}  // namespace stabcat::io
