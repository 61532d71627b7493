#pragma once

// Index lower bounds by iterating over prime-power degrees, the closed-form failure
// degree of the integrality obstruction, and the indecomposability certifier.

#include "brauer/hotchkiss.hpp"
#include "brauer/steenrod.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

namespace brauer {

// ---- failure degree -------------------------------------------------------

struct BoundParameters {
  int dim = 0;
  std::int64_t p = 0;
  int r = 0;
  std::int64_t rs = 0;
  Rational s;

  bool exceeds_dimension() const { return s >= dim; }
};

// floor(log_p(x)) for x >= 1.
inline int floor_log(std::int64_t x, std::int64_t p) {
  if (x < 1 || p < 2) throw Error("floor_log: invalid arguments");
  int k = 0;
  while (x >= p) {
    x /= p;
    ++k;
  }
  return k;
}

// Sum of the base-p digits of x.
inline std::int64_t digit_sum(std::int64_t x, std::int64_t p) {
  std::int64_t s = 0;
  for (; x > 0; x /= p) s += x % p;
  return s;
}

// rs = r g - floor((g-1)/(p-1)) + floor(log_p(g-1)) + 1, and s = rs / r.
inline BoundParameters failure_degree_bound(int g, std::int64_t p, int r) {
  if (g < 2) throw Error("failure_degree_bound: dimension must be at least 2");
  if (!is_prime(p)) throw Error("failure_degree_bound: p must be prime");
  if (r < 1) throw Error("failure_degree_bound: r must be positive");
  BoundParameters b;
  b.dim = g;
  b.p = p;
  b.r = r;
  b.rs = static_cast<std::int64_t>(r) * g - (g - 1) / (p - 1) + floor_log(g - 1, p) + 1;
  b.s = Rational(b.rs, r);
  b.s.canonicalize();
  return b;
}

inline std::string format_s(const BoundParameters &b) {
  if (b.exceeds_dimension()) return "-";
  return b.s.get_str();
}

inline const std::vector<std::int64_t> &table_columns() {
  static const std::vector<std::int64_t> cols{2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
  return cols;
}

// Cell of the failure-degree table for dimension g and prime power q.
inline std::string table_cell(int g, std::int64_t q) {
  auto f = factor(q);
  if (f.size() != 1) throw Error("table_cell: column must be a prime power");
  return format_s(failure_degree_bound(g, f[0].prime, f[0].exponent));
}

// ---- index lower bound ----------------------------------------------------

struct Methods {
  bool djp = true;
  bool refined = true;
  bool hotchkiss = false;
};

struct BoundOptions {
  Methods methods;
  std::vector<std::int64_t> primes{2};
  std::uint64_t budget = 1u << 16;
  bool short_circuit = true;
};

enum class Verdict { Obstructed, Unobstructed, Skipped, Inconclusive };

inline const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::Obstructed: return "obstructed";
  case Verdict::Unobstructed: return "unobstructed";
  case Verdict::Skipped: return "skipped";
  case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct DegreeRecord {
  std::int64_t component = 0; // prime-power period of the primary component
  std::int64_t d = 0;
  Verdict djp = Verdict::Skipped, refined = Verdict::Skipped, hotchkiss = Verdict::Skipped;
  std::string certificate;
  double elapsed_ms = 0;

  bool obstructed() const {
    return djp == Verdict::Obstructed || refined == Verdict::Obstructed || hotchkiss == Verdict::Obstructed;
  }
  bool inconclusive() const { return !obstructed() && hotchkiss == Verdict::Inconclusive; }
  std::string deciding_method() const {
    if (djp == Verdict::Obstructed) return "djp";
    if (refined == Verdict::Obstructed) return "refined";
    if (hotchkiss == Verdict::Obstructed) return "hotchkiss";
    return "";
  }
};

struct ComponentBound {
  std::int64_t period = 1;
  int symbol_length = 0;
  Integer lower_bound = 1;
  Integer cap = 1;
  std::string deciding_method = "period";
  bool inconclusive_above = false; // an inconclusive degree lies above the largest obstructed one
};

struct ObstructionReport {
  int g = 0;
  std::int64_t period = 1;
  std::vector<std::int64_t> coordinates;
  std::vector<ComponentBound> components;
  std::vector<DegreeRecord> degrees;
  Integer lower_bound = 1;
  Integer cap = 1;
  bool determined = true;

  bool inconclusive() const {
    return std::any_of(components.begin(), components.end(), [](const auto &c) { return c.inconclusive_above; });
  }
};

namespace detail {

inline std::string describe_residues(const PrimeCheck &check) {
  std::string s = "mod " + std::to_string(check.prime) + ": " + std::to_string(check.residues) + " residues";
  if (check.all_violate) {
    std::map<std::string, std::size_t> by;
    for (const auto &[u, rel] : check.violations) ++by[rel];
    s += " all violate";
    for (const auto &[rel, n] : by) s += " " + rel + " x" + std::to_string(n);
  } else if (check.survivor) {
    s += " survivor u=(";
    for (std::size_t j = 0; j < check.survivor->size(); ++j) s += (j ? "," : "") + std::to_string((*check.survivor)[j]);
    s += ")";
  }
  return s;
}

inline DegreeRecord evaluate_degree(const BrauerClassSpec &spec, std::int64_t d, const BoundOptions &opt) {
  DegreeRecord rec;
  rec.component = spec.period();
  rec.d = d;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> notes;
  bool done = false;

  std::optional<IntegralitySystem> sys;
  std::optional<AffineLattice> family;
  if (opt.methods.djp || opt.methods.refined) {
    sys = build_system(spec, d);
    family = solve_integrality(sys->P, sys->w);
  }
  if (opt.methods.djp) {
    rec.djp = family ? Verdict::Unobstructed : Verdict::Obstructed;
    if (!family) notes.push_back("djp: integrality system of " + std::to_string(sys->P.rows()) + "x" +
                                 std::to_string(sys->P.cols()) + " has no solution");
    done = !family && opt.short_circuit;
  }
  if (opt.methods.refined && !done) {
    if (!family) {
      rec.refined = Verdict::Obstructed;
      notes.push_back("refined: integrality family empty");
    } else {
      bool obstructed = false;
      std::string detail;
      for (auto p : opt.primes) {
        auto check = check_prime(spec.context(), *sys, *family, 1, p);
        detail += (detail.empty() ? "" : "; ") + describe_residues(check);
        if (check.all_violate) {
          obstructed = true;
          break;
        }
      }
      rec.refined = obstructed ? Verdict::Obstructed : Verdict::Unobstructed;
      notes.push_back("refined: " + detail);
    }
    done = rec.refined == Verdict::Obstructed && opt.short_circuit;
  }
  if (opt.methods.hotchkiss && !done) {
    auto h = hotchkiss_obstructed(spec, d, opt.budget);
    switch (h.outcome) {
    case HotchkissOutcome::Obstructed:
      rec.hotchkiss = Verdict::Obstructed;
      notes.push_back(h.stage_one_empty ? "hotchkiss: stage 1 family empty"
                                        : "hotchkiss: no residue has integral ch_" + std::to_string(h.failing_degree) +
                                              " after " + std::to_string(h.evaluations) + " evaluations");
      break;
    case HotchkissOutcome::Unobstructed:
      rec.hotchkiss = Verdict::Unobstructed;
      notes.push_back("hotchkiss: integral Chern character found after " + std::to_string(h.evaluations) +
                      " evaluations");
      break;
    case HotchkissOutcome::Inconclusive:
      rec.hotchkiss = Verdict::Inconclusive;
      notes.push_back("hotchkiss: budget of " + std::to_string(opt.budget) + " evaluations exceeded");
      break;
    }
  }
  for (std::size_t i = 0; i < notes.size(); ++i) rec.certificate += (i ? " | " : "") + notes[i];
  rec.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

} // namespace detail

// Lower bound for a class of prime-power period p^r: degrees p^k for r <= k < r*l are
// tested, and an obstruction at p^k shows ind does not divide p^k, so ind >= p^{k+1}.
inline ComponentBound component_lower_bound(const BrauerClassSpec &spec, const BoundOptions &opt,
                                            std::vector<DegreeRecord> *records = nullptr) {
  ComponentBound out;
  out.period = spec.period();
  if (spec.trivial()) {
    out.symbol_length = 0;
    return out;
  }
  auto f = factor(spec.period());
  if (f.size() != 1) throw Error("component_lower_bound: period must be a prime power");
  const std::int64_t p = f[0].prime;
  const int r = f[0].exponent;
  out.symbol_length = class_symbol_length(spec);
  out.cap = pow(Integer(static_cast<long>(p)), static_cast<unsigned long>(r * out.symbol_length));
  out.lower_bound = Integer(static_cast<long>(spec.period()));
  int largest = -1;
  for (int k = r; k < r * out.symbol_length; ++k) {
    const std::int64_t d = ipow(p, k);
    auto rec = detail::evaluate_degree(spec, d, opt);
    if (rec.obstructed()) {
      largest = k;
      out.deciding_method = rec.deciding_method();
      out.inconclusive_above = false;
    } else if (rec.inconclusive()) {
      out.inconclusive_above = true;
    }
    if (records) records->push_back(std::move(rec));
  }
  if (largest >= 0) out.lower_bound = pow(Integer(static_cast<long>(p)), static_cast<unsigned long>(largest + 1));
  if (!divides(out.lower_bound, out.cap))
    throw Error("index lower bound " + out.lower_bound.get_str() + " does not divide cap " + out.cap.get_str());
  return out;
}

inline ObstructionReport index_lower_bound(const BrauerClassSpec &spec, const BoundOptions &opt = {}) {
  ObstructionReport rep;
  rep.g = spec.genus();
  rep.period = spec.period();
  rep.coordinates = spec.coordinates();
  for (const auto &comp : primary_decomposition(spec)) {
    auto cb = component_lower_bound(comp, opt, &rep.degrees);
    rep.lower_bound *= cb.lower_bound;
    rep.cap *= cb.cap;
    rep.components.push_back(std::move(cb));
  }
  if (!divides(rep.lower_bound, rep.cap))
    throw Error("index lower bound " + rep.lower_bound.get_str() + " does not divide cap " + rep.cap.get_str());
  rep.determined = rep.lower_bound == rep.cap;
  return rep;
}

// ---- indecomposability ----------------------------------------------------

struct IndecomposabilityStats {
  std::uint64_t candidates = 0;
  std::uint64_t certified_by_first = 0;  // the bound for c reaches the target
  std::uint64_t certified_by_second = 0; // only the bound for b - c reaches it
  std::uint64_t uncertified = 0;
  std::map<std::string, std::uint64_t> by_method; // deciding method of the certifying side
  std::uint64_t distinct_classes = 0;

  void merge(const IndecomposabilityStats &o) {
    candidates += o.candidates;
    certified_by_first += o.certified_by_first;
    certified_by_second += o.certified_by_second;
    uncertified += o.uncertified;
    for (const auto &[k, v] : o.by_method) by_method[k] += v;
  }
};

struct IndecomposabilityResult {
  bool indecomposable = false;
  std::uint64_t group_order = 0;
  std::optional<std::uint64_t> witness_index;
  std::optional<std::vector<std::int64_t>> witness;
  IndecomposabilityStats stats;
};

// Coordinates of candidate number idx: base-n digits, least significant first.
inline std::vector<std::int64_t> candidate_coordinates(std::uint64_t idx, std::size_t length, std::int64_t n) {
  std::vector<std::int64_t> c(length);
  for (auto &x : c) {
    x = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(n));
    idx /= static_cast<std::uint64_t>(n);
  }
  return c;
}

// For every c in H^2(X, Z/n), checks that the bound for c or for b - c reaches the
// target index.  Workers take chunks of candidates in index order; the reported
// witness is the smallest failing index, so the result does not depend on `threads`.
inline IndecomposabilityResult indecomposability_test(const BrauerClassSpec &spec, const Integer &target,
                                                      const BoundOptions &opt, unsigned threads = 1) {
  if (target < 2) throw Error("indecomposability_test: target index must be at least 2");
  if (spec.trivial()) throw Error("indecomposability_test: class is trivial");
  const auto &ctx = spec.context();
  const std::int64_t n = spec.period();
  const std::size_t length = ctx->rank(2);
  Integer order = pow(Integer(static_cast<long>(n)), static_cast<unsigned long>(length));
  if (!order.fits_ulong_p()) throw Error("indecomposability_test: group too large");
  IndecomposabilityResult out;
  out.group_order = order.get_ui();

  struct Entry {
    bool reaches;
    std::string method;
  };
  std::mutex memo_lock;
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, Entry> memo;
  auto classify = [&](const std::vector<std::int64_t> &coords) -> Entry {
    auto cls = BrauerClassSpec::from_coordinates(ctx, coords, n);
    auto key = std::make_pair(cls.period(), canonical_coordinates(cls));
    {
      std::lock_guard<std::mutex> g(memo_lock);
      if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    auto rep = index_lower_bound(cls, opt);
    Entry e{rep.lower_bound >= target, ""};
    if (!rep.components.empty()) {
      // The deciding method of the component with the largest bound.
      auto best = std::max_element(rep.components.begin(), rep.components.end(),
                                   [](const auto &a, const auto &b) { return a.lower_bound < b.lower_bound; });
      e.method = best->deciding_method;
    }
    std::lock_guard<std::mutex> g(memo_lock);
    memo.emplace(std::move(key), e);
    return e;
  };

  const std::uint64_t chunk = 512;
  const std::uint64_t chunks = (out.group_order + chunk - 1) / chunk;
  struct ChunkResult {
    IndecomposabilityStats stats;
    std::optional<std::uint64_t> failure;
    bool done = false;
  };
  std::mutex results_lock;
  std::map<std::uint64_t, ChunkResult> results;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best_failure{std::numeric_limits<std::uint64_t>::max()};
  std::exception_ptr error;
  std::mutex error_lock;

  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t ci = next.fetch_add(1);
        if (ci >= chunks) return;
        const std::uint64_t lo = ci * chunk, hi = std::min(out.group_order, lo + chunk);
        if (lo > best_failure.load()) return; // chunks are claimed in increasing order
        ChunkResult res;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          auto c = candidate_coordinates(idx, length, n);
          std::vector<std::int64_t> rest(length);
          for (std::size_t i = 0; i < length; ++i) rest[i] = ((spec.coordinates()[i] - c[i]) % n + n) % n;
          ++res.stats.candidates;
          auto first = classify(c);
          if (first.reaches) {
            ++res.stats.certified_by_first;
            ++res.stats.by_method[first.method];
            continue;
          }
          auto second = classify(rest);
          if (second.reaches) {
            ++res.stats.certified_by_second;
            ++res.stats.by_method[second.method];
            continue;
          }
          ++res.stats.uncertified;
          res.failure = idx;
          std::uint64_t cur = best_failure.load();
          while (idx < cur && !best_failure.compare_exchange_weak(cur, idx)) {
          }
          break;
        }
        res.done = true;
        std::lock_guard<std::mutex> g(results_lock);
        results.emplace(ci, std::move(res));
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(error_lock);
      if (!error) error = std::current_exception();
    }
  };

  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);

  // Aggregate in index order up to and including the chunk holding the first failure.
  for (std::uint64_t ci = 0; ci < chunks; ++ci) {
    auto it = results.find(ci);
    if (it == results.end() || !it->second.done)
      throw Error("indecomposability_test: chunk skipped before the first failure");
    const auto &res = it->second;
    out.stats.merge(res.stats);
    if (res.failure) {
      out.witness_index = res.failure;
      out.witness = candidate_coordinates(*res.failure, length, n);
      break;
    }
  }
  out.indecomposable = !out.witness_index.has_value();
  out.stats.distinct_classes = memo.size();
  return out;
}

} // namespace brauer
