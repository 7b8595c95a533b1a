#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabcat {

enum class Errc {
  DomainMismatch,
  IndexOutOfRange,
  InvalidObject,
  InvalidMorphism,
  NotATopology,
  NoFactorization,
  KernelUnverified,
  CokernelUnverified,
  ZKernelUnverified,
  ParallelMismatch,
  NotTTFunctor,
  NotCoproductPreserving,
  ParseError,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

/// One failed check inside a report: which law broke and on what data.
struct Failure {
  std::string check;
  std::string witness;
};

/// Outcome of a report-valued verifier. Failures keep enumeration order,
/// so the first entry is the minimal counterexample.
struct Report {
  std::string suite;
  long cases = 0;
  std::vector<Failure> failures;

  bool ok() const { return failures.empty(); }

  void count() { ++cases; }

  void fail_case(const std::string& check, const std::string& witness) {
    failures.push_back({check, witness});
  }

  void check(bool cond, const std::string& what, const std::string& witness) {
    ++cases;
    if (!cond) failures.push_back({what, witness});
  }

  void merge(const Report& other) {
    cases += other.cases;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }

  std::string summary() const {
    std::ostringstream os;
    os << suite << ": " << cases << " cases, " << failures.size() << " failures";
    for (size_t i = 0; i < failures.size() && i < 8; ++i)
      os << "\n  [" << failures[i].check << "] " << failures[i].witness;
    if (failures.size() > 8) os << "\n  ... " << (failures.size() - 8) << " more";
    return os.str();
  }
};

/// Sorted list of element indices; the working representation of subobjects.
using Subset = std::vector<int>;

inline Subset subset_complement(const Subset& s, int n) {
  Subset out;
  out.reserve(static_cast<size_t>(n) - s.size());
  size_t k = 0;
  for (int i = 0; i < n; ++i) {
    if (k < s.size() && s[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

inline Subset subset_union(const Subset& a, const Subset& b) {
  Subset out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Subset subset_intersect(const Subset& a, const Subset& b) {
  Subset out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Subset subset_difference(const Subset& a, const Subset& b) {
  Subset out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset_contains(const Subset& a, int x) {
  return std::binary_search(a.begin(), a.end(), x);
}

inline bool subset_includes(const Subset& big, const Subset& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Position of each member of `s` inside `s`, i.e. global index -> local index.
inline int local_index(const Subset& s, int global) {
  auto it = std::lower_bound(s.begin(), s.end(), global);
  require(it != s.end() && *it == global, Errc::IndexOutOfRange, "element not in subset");
  return static_cast<int>(it - s.begin());
}

inline std::string join_ints(const std::vector<int>& v, const char* sep = " ") {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

class UnionFind {
public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  /// Blocks sorted by smallest member; each block sorted.
  std::vector<Subset> blocks() {
    const int n = static_cast<int>(parent_.size());
    std::vector<int> root_slot(n, -1);
    std::vector<Subset> out;
    for (int i = 0; i < n; ++i) {
      int r = find(i);
      if (root_slot[r] < 0) {
        root_slot[r] = static_cast<int>(out.size());
        out.emplace_back();
      }
      out[root_slot[r]].push_back(i);
    }
    return out;
  }

private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

/// Deterministic seeded generator. Bounded draws use modulo reduction so the
/// stream is identical across platforms (bias is irrelevant at desk scale).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  int below(int n) {
    require(n > 0, Errc::IndexOutOfRange, "Rng::below(0)");
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
  }

  bool chance(int num, int den) { return below(den) < num; }

private:
  std::mt19937_64 eng_;
};

/// All subsets of [0,n) as sorted index lists, in bitmask order.
inline std::vector<Subset> all_subsets(int n) {
  std::vector<Subset> out;
  out.reserve(1u << n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Subset s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

/// Odometer over all functions [0,m) -> [0,k), lexicographic.
class TableEnumerator {
public:
  TableEnumerator(int dom_size, int cod_size)
      : table_(dom_size, 0), cod_(cod_size), done_(dom_size > 0 && cod_size == 0) {}

  bool done() const { return done_; }
  const std::vector<int>& table() const { return table_; }

  void advance() {
    for (int i = static_cast<int>(table_.size()) - 1; i >= 0; --i) {
      if (++table_[i] < cod_) return;
      table_[i] = 0;
    }
    done_ = true;
  }

private:
  std::vector<int> table_;
  int cod_;
  bool done_;
};

}  // namespace stabcat
