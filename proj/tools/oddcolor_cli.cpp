// oddcolor: generate instances, run online colorers, verify and benchmark.
//
//   oddcolor gen    --kind odd-cycle --g 31 --out c31.txt
//   oddcolor run    --input c31.txt --algo layered --k 1 --result r.json --audit a.jsonl
//   oddcolor verify --input c31.txt --result r.json --audit a.jsonl --level full --check-odd-girth
//   oddcolor audit  --input c31.txt --trace a.jsonl --result r.json --level full
//   oddcolor bench  --suite suite.txt --csv out.csv [--json out.json]
//
// Exit codes: 0 ok, 1 check failed, 2 usage, 3 malformed input, 4 I/O error,
// 5 promise violation.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oddcolor/oddcolor.hpp"

namespace {

using namespace oddcolor;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ODDCOLOR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("ODDCOLOR_SEED must be a non-negative integer");
    }
  }
  return 1;
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// --- gen ---------------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::optional<std::uint64_t> m, t, g, n, seed;
  std::optional<std::string> p;
  std::string order = "given";
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  std::map<std::string, std::string> kv{{"kind", a.kind}, {"order", a.order}};
  if (a.m) kv["m"] = std::to_string(*a.m);
  if (a.t) kv["t"] = std::to_string(*a.t);
  if (a.g) kv["g"] = std::to_string(*a.g);
  if (a.n) kv["n"] = std::to_string(*a.n);
  if (a.p) kv["p"] = *a.p;
  if (a.seed || a.order == "random" || a.kind == "random-bipartite") {
    kv["seed"] = std::to_string(a.seed ? *a.seed : default_seed());
  }
  GenSpec spec = gen_spec_from_map(kv);
  InstanceStream stream = generate(spec);
  GenGuarantees gg = guarantees(spec);

  std::string text = "# " + describe(spec) + "\n" + save_instance(stream);
  write_or_print(a.out, text);

  std::ostream& info = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
  info << "n " << stream.n() << "\n";
  info << "edges " << stream.edge_count() << "\n";
  info << "odd_girth " << (gg.odd_girth ? std::to_string(*gg.odd_girth) : "inf") << "\n";
  if (gg.girth) info << "girth " << *gg.girth << "\n";
  info << "bipartite " << (gg.bipartite ? "yes" : "no") << "\n";
  if (gg.first_fit_colors) info << "first_fit_colors " << *gg.first_fit_colors << "\n";
  return exit_code::kOk;
}

// --- run ---------------------------------------------------------------

struct RunArgs {
  std::string input, algo = "layered", result, audit;
  unsigned k = 0;
  bool unknown_n = false;
  std::uint64_t initial_guess = 4;
  bool check_promise = false;
  std::optional<std::uint64_t> ff_colors, delta;
};

/// Earliest vertex whose arrival creates an odd cycle shorter than `need`.
std::optional<VertexId> first_short_odd_cycle(const InstanceStream& stream, std::uint64_t need) {
  auto prefix_ok = [&](std::size_t len) {
    OnlineGraph g;
    for (std::size_t i = 0; i < len; ++i) g.reveal(stream[i]);
    auto og = odd_girth(g);
    return !og.is_finite() || og.value() >= need;
  };
  if (prefix_ok(stream.n())) return std::nullopt;
  std::size_t lo = 0, hi = stream.n();  // prefix lo ok, prefix hi not
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    (prefix_ok(mid) ? lo : hi) = mid;
  }
  return static_cast<VertexId>(hi - 1);
}

int cmd_run(const RunArgs& a) {
  InstanceStream stream = load_instance(read_text_file(a.input));
  Algorithm algo = algorithm_from_string(a.algo);
  PlanOverrides ov{a.ff_colors, a.delta};
  if (ov.any() && (algo == Algorithm::FirstFit || a.unknown_n)) {
    throw std::invalid_argument("--ff-colors/--delta apply to layered or kierstead runs with known n");
  }

  RunResult run;
  std::optional<PromiseDiagnostic> pre;
  if (a.check_promise && algo != Algorithm::FirstFit) {
    unsigned k = algo == Algorithm::Kierstead ? 0 : a.k;
    auto need = required_odd_girth(k);
    if (auto v = first_short_odd_cycle(stream, need)) {
      pre = PromiseDiagnostic{*v, std::nullopt,
                              "odd girth below the required " + std::to_string(need) + " for k = " + std::to_string(k)};
    }
  }
  if (pre) {
    run.algorithm = algo;
    run.k = algo == Algorithm::Layered ? a.k : 0;
    run.n = stream.n();
    run.promise_violation = pre;
  } else if (a.unknown_n) {
    if (algo == Algorithm::FirstFit) throw std::invalid_argument("--unknown-n needs layered or kierstead");
    run = unknown_n_wrapper(stream, a.k, a.initial_guess, algo);
  } else {
    switch (algo) {
      case Algorithm::FirstFit: run = first_fit(stream); break;
      case Algorithm::Kierstead: run = ov.any() ? layered_colorer(stream, 0, ov) : kierstead(stream); break;
      case Algorithm::Layered: run = layered_colorer(stream, a.k, ov); break;
    }
    if (algo == Algorithm::Kierstead) run.algorithm = Algorithm::Kierstead;
  }

  if (!a.result.empty()) write_text_file(a.result, to_json(run).dump(2) + "\n");
  if (!a.audit.empty()) write_text_file(a.audit, run.audit.to_jsonl());

  std::cout << "algorithm " << to_string(run.algorithm) << "\n";
  std::cout << "k " << run.k << "\n";
  std::cout << "n " << run.n << "\n";
  std::cout << "colors_used " << run.colors_used << "\n";
  std::cout << "max_color " << run.max_color << "\n";
  if (auto b = run_budget(run)) std::cout << "budget " << *b << "\n";
  if (run.unknown_n) std::cout << "restarts " << (run.guesses.empty() ? 0 : run.guesses.size() - 1) << "\n";
  if (run.promise_violation) {
    const auto& pv = *run.promise_violation;
    std::cout << "promise_violation vertex="
              << (pv.vertex ? std::to_string(*pv.vertex) : "null") << " conflicting_neighbor="
              << (pv.conflicting_neighbor ? std::to_string(*pv.conflicting_neighbor) : "null") << " reason=\""
              << pv.reason << "\"\n";
    return exit_code::kPromiseViolation;
  }
  return exit_code::kOk;
}

// --- verify / audit ----------------------------------------------------

struct VerifyArgs {
  std::string input, result, audit, level = "basic", report;
  bool check_odd_girth = false;
  std::optional<std::uint64_t> girth;
};

RunResult load_run(const std::string& path) {
  try {
    return run_result_from_json(nlohmann::json::parse(read_text_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(0, path + ": " + e.what());
  }
}

AuditTrace load_trace(const std::string& path) {
  try {
    return AuditTrace::from_jsonl(read_text_file(path));
  } catch (const std::invalid_argument& e) {
    throw FormatError(0, path + ": " + e.what());
  }
}

int finish_report(const AuditReport& report, const std::string& out) {
  std::cout << report.summary();
  if (!out.empty()) write_text_file(out, report.to_json().dump(2) + "\n");
  return report.passed() ? exit_code::kOk : exit_code::kCheckFailed;
}

int cmd_verify(const VerifyArgs& a) {
  InstanceStream stream = load_instance(read_text_file(a.input));
  RunResult run = load_run(a.result);
  if (run.n != stream.n()) throw std::invalid_argument("result has n = " + std::to_string(run.n) + ", instance has " +
                                                        std::to_string(stream.n()));
  if (run.promise_violation) {
    std::cout << "run recorded a promise violation; nothing to verify\n";
    return exit_code::kPromiseViolation;
  }
  if (run.coloring.colored_prefix() != stream.n()) {
    throw std::invalid_argument("result assignment covers " + std::to_string(run.coloring.colored_prefix()) + " of " +
                                std::to_string(stream.n()) + " vertices");
  }
  // colors_used / max_color must agree with the assignment itself.
  Coloring c = run.coloring;
  if (c.colors_used() != run.colors_used || c.max_color() != run.max_color) {
    throw std::invalid_argument("colors_used/max_color do not match the assignment");
  }

  AuditReport report = verify_proper(stream, run.coloring);
  report.append(verify_bounds(stream, run, a.girth));
  if (!a.audit.empty()) {
    report.append(verify_audit(stream, load_trace(a.audit), AuditConfig::of(run), audit_level_from_string(a.level)));
  }
  if (a.check_odd_girth) {
    auto og = odd_girth(OnlineGraph::replay(stream));
    if (run.algorithm == Algorithm::FirstFit) {
      report.pass("odd-girth", "odd girth " + og.to_string());
    } else {
      auto need = required_odd_girth(run.k);
      if (!og.is_finite() || og.value() >= need) {
        report.pass("odd-girth", "odd girth " + og.to_string() + " >= " + std::to_string(need));
      } else {
        report.fail("odd-girth", "odd girth " + og.to_string() + " below required " + std::to_string(need),
                    {{"odd_girth", og.value()}, {"required", need}});
      }
    }
  }
  return finish_report(report, a.report);
}

struct AuditArgs {
  std::string input, trace, result, algo = "layered", level = "basic", report;
  unsigned k = 0;
  std::optional<std::uint64_t> ff_colors, delta;
};

int cmd_audit(const AuditArgs& a) {
  InstanceStream stream = load_instance(read_text_file(a.input));
  AuditConfig config;
  if (!a.result.empty()) {
    config = AuditConfig::of(load_run(a.result));
  } else {
    config = {algorithm_from_string(a.algo), a.k, PlanOverrides{a.ff_colors, a.delta}};
  }
  return finish_report(verify_audit(stream, load_trace(a.trace), config, audit_level_from_string(a.level)), a.report);
}

// --- bench -------------------------------------------------------------

struct BenchArgs {
  std::string suite, csv, json;
  bool timing = false;
};

int cmd_bench(const BenchArgs& a) {
  auto suite = parse_suite(read_text_file(a.suite));
  auto rows = run_bench(suite, a.timing);
  write_or_print(a.csv, bench_csv(rows));
  if (!a.json.empty()) write_text_file(a.json, bench_json(rows).dump(2) + "\n");
  bool ok = true;
  for (const auto& r : rows) {
    if (!r.ok()) {
      std::cerr << "row " << r.instance_id << " (" << r.generator << ", " << to_string(r.algorithm) << "): " << r.status
                << "\n";
      ok = false;
    }
  }
  return ok ? exit_code::kOk : exit_code::kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online coloring of graphs with large odd girth"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate an instance file");
  g->add_option("--kind", gen.kind, "ff-adversary | odd-cycle | subdivided-clique | random-bipartite")->required();
  g->add_option("--m", gen.m, "adversary rounds / clique size");
  g->add_option("--t", gen.t, "subdivision length (odd)");
  g->add_option("--g", gen.g, "cycle length (odd)");
  g->add_option("--n", gen.n, "vertex count (random-bipartite)");
  g->add_option("--p", gen.p, "edge probability (random-bipartite)");
  g->add_option("--seed", gen.seed, "seed (default: $ODDCOLOR_SEED or 1)");
  g->add_option("--order", gen.order, "given | random")->check(CLI::IsMember({"given", "random"}));
  g->add_option("--out,-o", gen.out, "output file (default stdout)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Color an instance online");
  r->add_option("--input,-i", run.input)->required();
  r->add_option("--algo", run.algo, "first-fit | kierstead | layered");
  r->add_option("--k", run.k, "number of reducer layers");
  r->add_flag("--unknown-n", run.unknown_n, "hide n and use the guess-doubling wrapper");
  r->add_option("--initial-guess", run.initial_guess, "first guess of n for --unknown-n");
  r->add_flag("--check-promise", run.check_promise, "refuse inputs whose odd girth is below the requirement");
  r->add_option("--ff-colors", run.ff_colors, "override First-Fit width c (testing)");
  r->add_option("--delta", run.delta, "override group-coloring degree threshold (testing)");
  r->add_option("--result", run.result, "RunResult JSON output");
  r->add_option("--audit", run.audit, "audit trace JSON-lines output");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check a run: properness, bounds, audit trace");
  v->add_option("--input,-i", ver.input)->required();
  v->add_option("--result", ver.result)->required();
  v->add_option("--audit", ver.audit, "audit trace to check");
  v->add_option("--level", ver.level, "basic | full")->check(CLI::IsMember({"basic", "full"}));
  v->add_flag("--check-odd-girth", ver.check_odd_girth, "certify the odd girth requirement");
  v->add_option("--girth", ver.girth, "girth promise for first-fit bound checks");
  v->add_option("--report", ver.report, "AuditReport JSON output");

  AuditArgs aud;
  auto* au = app.add_subcommand("audit", "Check an audit trace only");
  au->add_option("--input,-i", aud.input)->required();
  au->add_option("--trace", aud.trace)->required();
  au->add_option("--result", aud.result, "take algorithm and k from this RunResult");
  au->add_option("--algo", aud.algo);
  au->add_option("--k", aud.k);
  au->add_option("--ff-colors", aud.ff_colors);
  au->add_option("--delta", aud.delta);
  au->add_option("--level", aud.level)->check(CLI::IsMember({"basic", "full"}));
  au->add_option("--report", aud.report);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a suite and write one CSV row per entry");
  b->add_option("--suite", bench.suite)->required();
  b->add_option("--csv", bench.csv, "CSV output (default stdout)");
  b->add_option("--json", bench.json, "JSON output");
  b->add_flag("--timing", bench.timing, "fill wall_time_ms (output no longer reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*r) return cmd_run(run);
    if (*v) return cmd_verify(ver);
    if (*au) return cmd_audit(aud);
    if (*b) return cmd_bench(bench);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return exit_code::kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kMalformedInput;
  }
  return exit_code::kUsage;
}
