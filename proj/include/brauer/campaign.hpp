#pragma once

// Random sampling campaigns over classes {b + k theta} with bounded Hamming weight,
// and per-method index bounds for each sampled orbit.

#include "brauer/driver.hpp"
#include "brauer/forms.hpp"

#include <atomic>
#include <ostream>
#include <random>
#include <set>
#include <thread>

namespace brauer {

struct CampaignParameters {
  int g = 4;
  std::int64_t period = 2;
  std::size_t weight_bound = 6;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  Methods methods;
  std::vector<std::int64_t> primes{2};
  std::uint64_t budget = 1u << 16;
  bool orbit_uniform = false; // weight each orbit by 1/(members inside the weight ball)
  bool timing = false;        // record elapsed_ms; off keeps the CSV byte-identical across runs
  unsigned threads = 1;
};

struct SampleRecord {
  std::size_t id = 0;
  int g = 0;
  std::int64_t period = 1;
  std::string form;
  std::size_t hamming_weight = 0;
  int symbol_length = 0;
  std::string djp_bound, refined_bound, hotchkiss_bound;
  std::string cap;
  double elapsed_ms = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

inline const std::vector<std::string> &sample_columns() {
  static const std::vector<std::string> cols{"id",      "g",           "period",        "form",     "hamming_weight",
                                             "symbol_length", "djp_bound", "refined_bound", "hotchkiss_bound",
                                             "cap",     "elapsed_ms",  "seed",          "sample_index"};
  return cols;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Generator for draw `index` of a campaign; depends only on (seed, index).
inline std::mt19937_64 draw_generator(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

// Uniform draw from the coordinate vectors mod n with at most w nonzero entries.  The
// weight is chosen with probability proportional to C(L, k) (n-1)^k, then a uniform
// support and uniform nonzero values, which is the distribution of rejection sampling.
inline std::vector<std::int64_t> draw_bounded_weight(std::mt19937_64 &rng, std::size_t length, std::int64_t n,
                                                     std::size_t w) {
  w = std::min(w, length);
  std::vector<double> weights;
  for (std::size_t k = 0; k <= w; ++k) {
    Integer c = binomial(static_cast<long>(length), static_cast<long>(k)) *
                pow(Integer(static_cast<long>(n - 1)), static_cast<unsigned long>(k));
    weights.push_back(c.get_d());
  }
  std::discrete_distribution<std::size_t> pick_weight(weights.begin(), weights.end());
  const std::size_t k = pick_weight(rng);
  std::vector<std::size_t> positions(length);
  std::iota(positions.begin(), positions.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, length - 1);
    std::swap(positions[i], positions[pick(rng)]);
  }
  std::vector<std::int64_t> v(length, 0);
  std::uniform_int_distribution<std::int64_t> value(1, n - 1);
  for (std::size_t i = 0; i < k; ++i) v[positions[i]] = value(rng);
  return v;
}

// Number of representatives b + k theta (k mod n, distinct) with weight <= w.
inline std::size_t orbit_members_in_ball(const Context &ctx, const std::vector<std::int64_t> &coords, std::int64_t n,
                                         std::size_t w) {
  std::set<std::vector<std::int64_t>> seen;
  for (std::int64_t k = 0; k < n; ++k) {
    auto v = coords;
    for (int i = 1; i <= ctx->genus(); ++i) {
      auto &c = v[ctx->index_of(AlgebraContext::omega(i))];
      c = (c + k) % n;
    }
    if (static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto c) { return c != 0; })) <= w)
      seen.insert(std::move(v));
  }
  return seen.size();
}

struct CampaignDraw {
  std::uint64_t sample_index;
  BrauerClassSpec spec;
};

struct CampaignSelection {
  std::vector<CampaignDraw> draws;
  bool exhausted = false; // fewer than `count` distinct orbits were found
};

// Draws raw vectors in index order, canonicalizes and keeps the first draw of each orbit.
inline CampaignSelection select_orbits(const CampaignParameters &par) {
  if (par.weight_bound < 1) throw Error("sample: weight bound must be at least 1");
  if (par.count < 1) throw Error("sample: count must be at least 1");
  if (par.period < 2) throw Error("sample: period must be at least 2");
  auto ctx = make_context(par.g);
  const std::size_t length = ctx->rank(2);
  CampaignSelection out;
  std::set<std::pair<std::int64_t, std::vector<std::int64_t>>> seen;
  const std::uint64_t patience = 20000 + 200 * static_cast<std::uint64_t>(par.count);
  std::uint64_t since_new = 0;
  for (std::uint64_t idx = 0; out.draws.size() < par.count; ++idx) {
    if (since_new > patience) {
      out.exhausted = true;
      break;
    }
    ++since_new;
    auto rng = draw_generator(par.seed, idx);
    auto raw = draw_bounded_weight(rng, length, par.period, par.weight_bound);
    if (par.orbit_uniform) {
      auto members = orbit_members_in_ball(ctx, raw, par.period, par.weight_bound);
      std::uniform_int_distribution<std::size_t> accept(1, members);
      if (accept(rng) != 1) continue;
    }
    auto spec = canonical_representative(BrauerClassSpec::from_coordinates(ctx, raw, par.period));
    if (!seen.emplace(spec.period(), spec.coordinates()).second) continue;
    since_new = 0;
    out.draws.push_back({idx, std::move(spec)});
  }
  return out;
}

inline std::string bound_text(const ObstructionReport &rep) {
  return rep.inconclusive() ? "inconclusive" : rep.lower_bound.get_str();
}

inline SampleRecord evaluate_sample(const CampaignParameters &par, std::size_t id, const CampaignDraw &draw) {
  const auto start = std::chrono::steady_clock::now();
  const auto &spec = draw.spec;
  SampleRecord r;
  r.id = id;
  r.g = par.g;
  r.period = spec.period();
  r.form = print_form(spec.context(), spec.coordinates());
  r.hamming_weight = hamming_weight(spec);
  r.seed = par.seed;
  r.sample_index = draw.sample_index;
  int len = 0;
  for (const auto &c : primary_decomposition(spec)) len = std::max(len, class_symbol_length(c));
  r.symbol_length = len;

  auto run = [&](bool djp, bool refined, bool hotchkiss) {
    BoundOptions opt;
    opt.methods = {djp, refined, hotchkiss};
    opt.primes = par.primes;
    opt.budget = par.budget;
    return index_lower_bound(spec, opt);
  };
  auto cap = Integer(1);
  if (par.methods.djp) {
    auto rep = run(true, false, false);
    r.djp_bound = bound_text(rep);
    cap = rep.cap;
  } else {
    r.djp_bound = "skipped";
  }
  if (par.methods.refined) {
    auto rep = run(false, true, false);
    r.refined_bound = bound_text(rep);
    cap = rep.cap;
  } else {
    r.refined_bound = "skipped";
  }
  if (par.methods.hotchkiss) {
    auto rep = run(false, false, true);
    r.hotchkiss_bound = bound_text(rep);
    cap = rep.cap;
  } else {
    r.hotchkiss_bound = "skipped";
  }
  if (!par.methods.djp && !par.methods.refined && !par.methods.hotchkiss) cap = run(false, false, false).cap;
  r.cap = cap.get_str();
  if (par.timing)
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct CampaignResult {
  std::vector<SampleRecord> records;
  bool exhausted = false;
};

inline CampaignResult sample_campaign(const CampaignParameters &par) {
  auto sel = select_orbits(par);
  CampaignResult out;
  out.exhausted = sel.exhausted;
  out.records.resize(sel.draws.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  auto worker = [&] {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < sel.draws.size();) out.records[i] = evaluate_sample(par, i, sel.draws[i]);
    } catch (...) {
      std::lock_guard<std::mutex> g(error_lock);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, par.threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

inline void write_csv_header(std::ostream &os) {
  const auto &cols = sample_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
}

inline void write_csv_row(std::ostream &os, const SampleRecord &r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
  os << r.id << "," << r.g << "," << r.period << "," << r.form << "," << r.hamming_weight << "," << r.symbol_length
     << "," << r.djp_bound << "," << r.refined_bound << "," << r.hotchkiss_bound << "," << r.cap << "," << ms << ","
     << r.seed << "," << r.sample_index << "\n";
}

inline void write_csv(std::ostream &os, const std::vector<SampleRecord> &records) {
  write_csv_header(os);
  for (const auto &r : records) write_csv_row(os, r);
}

} // namespace brauer
