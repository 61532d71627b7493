#include "brauer.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace brauer;

namespace {

constexpr int exit_parse = 2;
constexpr int exit_mismatch = 3;

unsigned default_threads() {
  if (const char *env = std::getenv("BRAUER_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
    std::cerr << "warning: ignoring invalid BRAUER_THREADS=" << env << "\n";
  }
  return 1;
}

Methods parse_methods(const std::string &list) {
  Methods m{false, false, false};
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item == "djp") m.djp = true;
    else if (item == "refined") m.refined = true;
    else if (item == "hotchkiss") m.hotchkiss = true;
    else throw CLI::ValidationError("--methods", "unknown method '" + item + "'");
  }
  return m;
}

void write_json(const std::string &path, const nlohmann::json &j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << j.dump(2) << "\n";
}

struct ClassArgs {
  int g = 0;
  std::int64_t period = 0;
  std::string form;

  void add(CLI::App *cmd) {
    cmd->add_option("--g", g, "dimension of the abelian variety")->required()->check(CLI::Range(1, AlgebraContext::max_genus));
    cmd->add_option("--period", period, "period n of the B-field b/n")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--form", form, "integral 2-form, e.g. \"x1^y1 + 2*x2^y3\"")->required();
  }
  BrauerClassSpec spec() const { return BrauerClassSpec(parse_form(form, g).form, period); }
};

int run_bound(const ClassArgs &cls, const std::string &methods, const std::vector<std::int64_t> &primes,
              std::uint64_t budget, const std::string &json) {
  auto spec = cls.spec();
  BoundOptions opt;
  opt.methods = parse_methods(methods);
  opt.primes = primes;
  opt.budget = budget;
  auto rep = index_lower_bound(spec, opt);
  std::cout << "class: g=" << spec.genus() << " period=" << spec.period()
            << " form=" << print_form(spec.context(), spec.coordinates()) << "\n";
  for (const auto &c : rep.components)
    std::cout << "component " << c.period << ": symbol_length " << c.symbol_length << ", bound " << c.lower_bound
              << " (" << c.deciding_method << "), cap " << c.cap << (c.inconclusive_above ? ", inconclusive above" : "")
              << "\n";
  for (const auto &d : rep.degrees)
    std::cout << "  d=" << d.d << " djp=" << to_string(d.djp) << " refined=" << to_string(d.refined)
              << " hotchkiss=" << to_string(d.hotchkiss) << (d.certificate.empty() ? "" : "  [" + d.certificate + "]")
              << "\n";
  std::cout << "lower_bound " << rep.lower_bound << "\ncap " << rep.cap << "\ndetermined "
            << (rep.determined ? "true" : "false") << "\n";
  if (!json.empty()) write_json(json, to_json(spec, rep));
  return 0;
}

int run_indecomposable(const ClassArgs &cls, long target, unsigned threads, const std::string &json) {
  auto spec = cls.spec();
  auto res = indecomposability_test(spec, Integer(target), BoundOptions{}, threads);
  std::cout << "verdict " << (res.indecomposable ? "Indecomposable" : "Inconclusive") << "\n"
            << "group_order " << res.group_order << "\ncandidates " << res.stats.candidates << "\n"
            << "certified_by_first " << res.stats.certified_by_first << "\ncertified_by_second "
            << res.stats.certified_by_second << "\nuncertified " << res.stats.uncertified << "\ndistinct_classes "
            << res.stats.distinct_classes << "\n";
  for (const auto &[m, n] : res.stats.by_method) std::cout << "method " << m << " " << n << "\n";
  if (res.witness)
    std::cout << "witness " << *res.witness_index << " " << print_form(spec.context(), *res.witness) << "\n";
  if (!json.empty()) write_json(json, to_json(spec, Integer(target), res));
  return 0;
}

int run_table(int max_dim) {
  const auto &cols = table_columns();
  std::cout << std::setw(4) << "dim";
  for (auto q : cols) std::cout << std::setw(7) << q;
  std::cout << "\n";
  for (int g = 3; g <= max_dim; ++g) {
    std::cout << std::setw(4) << g;
    for (auto q : cols) std::cout << std::setw(7) << table_cell(g, q);
    std::cout << "\n";
  }
  return 0;
}

int run_verify(unsigned threads) {
  bool ok = true;
  for (const auto &c : verify_reference(threads)) {
    std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    ok = ok && c.ok;
  }
  return ok ? 0 : exit_mismatch;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Index lower bounds for topologically trivial Brauer classes on very general abelian varieties"};
  app.require_subcommand(1);

  ClassArgs bound_cls;
  std::string methods = "djp,refined", bound_json;
  std::vector<std::int64_t> primes{2};
  std::uint64_t budget = 1u << 16;
  auto *bound = app.add_subcommand("bound", "certified lower bound on the index");
  bound_cls.add(bound);
  bound->add_option("--methods", methods, "comma-separated subset of djp,refined,hotchkiss")->capture_default_str();
  bound->add_option("--primes", primes, "primes for the refined obstruction")->delimiter(',')->capture_default_str();
  bound->add_option("--budget", budget, "evaluation budget of the Chern character search")->capture_default_str();
  bound->add_option("--json", bound_json, "write a JSON report");

  ClassArgs indec_cls;
  long target = 0;
  unsigned threads = default_threads();
  std::string indec_json;
  auto *indec = app.add_subcommand("indecomposable", "certify that no decomposition reaches the target index");
  indec_cls.add(indec);
  indec->add_option("--target", target, "index the class is known to have")->required()->check(CLI::Range(2L, 1L << 62));
  indec->add_option("--threads", threads, "worker threads (default: BRAUER_THREADS or 1)")->check(CLI::PositiveNumber);
  indec->add_option("--json", indec_json, "write a JSON report");

  int max_dim = 12;
  auto *table = app.add_subcommand("table-s", "print the failure-degree table");
  table->add_option("--max-dim", max_dim, "largest dimension")->check(CLI::Range(3, 1000))->capture_default_str();

  CampaignParameters par;
  std::string sample_methods = "djp,refined", csv;
  std::size_t weight = 0;
  par.threads = default_threads();
  auto *sample = app.add_subcommand("sample", "random sampling campaign written as CSV");
  sample->add_option("--g", par.g, "dimension")->required()->check(CLI::Range(1, AlgebraContext::max_genus));
  sample->add_option("--period", par.period, "period")->required()->check(CLI::Range(2L, 1L << 31));
  sample->add_option("--weight", weight, "Hamming weight bound")->required()->check(CLI::PositiveNumber);
  sample->add_option("--count", par.count, "number of distinct orbits")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", par.seed, "seed")->required();
  sample->add_option("--methods", sample_methods, "comma-separated subset of djp,refined,hotchkiss")->capture_default_str();
  sample->add_option("--primes", par.primes, "primes for the refined obstruction")->delimiter(',');
  sample->add_option("--budget", par.budget, "evaluation budget of the Chern character search");
  sample->add_option("--csv", csv, "output path")->required();
  sample->add_option("--threads", par.threads, "worker threads (default: BRAUER_THREADS or 1)")->check(CLI::PositiveNumber);
  sample->add_flag("--orbit-uniform", par.orbit_uniform, "weight orbits uniformly instead of by raw draws");
  sample->add_flag("--timing", par.timing, "record elapsed_ms (makes the CSV run-dependent)");

  unsigned verify_threads = default_threads();
  auto *verify = app.add_subcommand("verify-paper", "run the built-in reference reproductions");
  verify->add_option("--threads", verify_threads, "worker threads (default: BRAUER_THREADS or 1)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_parse;
  }

  try {
    if (*bound) return run_bound(bound_cls, methods, primes, budget, bound_json);
    if (*indec) return run_indecomposable(indec_cls, target, threads, indec_json);
    if (*table) return run_table(max_dim);
    if (*verify) return run_verify(verify_threads);
    if (*sample) {
      par.weight_bound = weight;
      par.methods = parse_methods(sample_methods);
      auto res = sample_campaign(par);
      std::ofstream os(csv);
      if (!os) throw Error("cannot open " + csv + " for writing");
      write_csv(os, res.records);
      if (res.exhausted)
        std::cerr << "warning: only " << res.records.size() << " distinct orbits found, fewer than the requested "
                  << par.count << "\n";
      std::cout << "wrote " << res.records.size() << " records to " << csv << "\n";
      return 0;
    }
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const CLI::ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
