#ifndef ODDCOLOR_HARNESS_HPP
#define ODDCOLOR_HARNESS_HPP

// Bench suites: generate an instance, run one colorer, verify, and report one
// CSV row per suite line.
//
// Suite file: one entry per line, '#' comments, key=value tokens
//
//   kind=ff-adversary m=200 algo=kierstead
//   kind=subdivided-clique m=5 t=11 algo=layered k=1
//   kind=random-bipartite n=400 p=0.05 seed=3 order=random algo=first-fit
//
// CSV columns (fixed):
//   instance_id,generator,n,odd_girth,algorithm,k,colors_used,budget,
//   budget_ratio,chromatic,wall_time_ms,status
// wall_time_ms is empty unless timing is requested, so that repeated runs are
// byte-identical.

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddcolor/colorers.hpp"
#include "oddcolor/generators.hpp"
#include "oddcolor/parity.hpp"
#include "oddcolor/verify.hpp"

namespace oddcolor {

/// Exit codes shared by the CLI verbs.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kMalformedInput = 3;
inline constexpr int kIoError = 4;
inline constexpr int kPromiseViolation = 5;
}  // namespace exit_code

/// Odd girth is computed for bench rows up to this many vertices.
inline constexpr std::size_t kBenchOddGirthMaxVertices = 5000;

inline std::map<std::string, std::string> parse_key_values(std::string_view line) {
  std::map<std::string, std::string> kv;
  for (auto tok : detail::split_ws(line)) {
    auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("expected key=value, got '" + std::string(tok) + "'");
    }
    std::string key(tok.substr(0, eq));
    if (!kv.emplace(key, std::string(tok.substr(eq + 1))).second) {
      throw std::invalid_argument("duplicate key '" + key + "'");
    }
  }
  return kv;
}

struct SuiteEntry {
  GenSpec spec;
  Algorithm algorithm = Algorithm::FirstFit;
  unsigned k = 0;
};

inline std::vector<SuiteEntry> parse_suite(std::string_view text) {
  std::vector<SuiteEntry> entries;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = detail::trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    try {
      auto kv = parse_key_values(line);
      SuiteEntry e;
      auto algo = kv.find("algo");
      if (algo == kv.end()) throw std::invalid_argument("missing 'algo'");
      e.algorithm = algorithm_from_string(algo->second);
      kv.erase(algo);
      if (auto k = kv.find("k"); k != kv.end()) {
        e.k = static_cast<unsigned>(detail::parse_uint(k->second, line_no, "k"));
        kv.erase(k);
      }
      e.spec = gen_spec_from_map(kv);
      entries.push_back(e);
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& err) {
      throw FormatError(line_no, err.what());
    }
  }
  return entries;
}

struct BenchRow {
  std::size_t instance_id = 0;
  std::string generator;
  std::size_t n = 0;
  std::optional<std::string> odd_girth;  // "inf" or a number
  Algorithm algorithm = Algorithm::FirstFit;
  unsigned k = 0;
  std::size_t colors_used = 0;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> chromatic;
  std::optional<double> wall_time_ms;
  std::string status;

  bool ok() const { return status == "ok" || status == "promise-violation"; }

  std::optional<double> budget_ratio() const {
    if (!budget || *budget == 0) return std::nullopt;
    return static_cast<double>(colors_used) / static_cast<double>(*budget);
  }
};

/// Generates, runs and verifies one suite entry.
inline BenchRow run_bench_entry(std::size_t instance_id, const SuiteEntry& entry, bool timing = false) {
  BenchRow row;
  row.instance_id = instance_id;
  row.generator = describe(entry.spec);
  row.algorithm = entry.algorithm;
  row.k = entry.algorithm == Algorithm::Layered ? entry.k : 0;

  InstanceStream stream = generate(entry.spec);
  GenGuarantees promised = guarantees(entry.spec);
  row.n = stream.n();
  OnlineGraph graph = OnlineGraph::replay(stream);

  std::optional<OddGirth> og;
  if (stream.n() <= kBenchOddGirthMaxVertices) {
    og = odd_girth(graph);
    row.odd_girth = og->to_string();
  }
  if (stream.n() <= kBruteChromaticMaxVertices) row.chromatic = brute_chromatic(graph);

  auto start = std::chrono::steady_clock::now();
  RunResult run;
  switch (entry.algorithm) {
    case Algorithm::FirstFit: run = first_fit(stream); break;
    case Algorithm::Kierstead: run = kierstead(stream); break;
    case Algorithm::Layered: run = layered_colorer(stream, entry.k); break;
  }
  if (timing) {
    row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  row.colors_used = run.colors_used;

  // Does the instance meet the colorer's promise?
  bool promise_honored = true;
  std::optional<std::uint64_t> ff_girth;
  if (entry.algorithm == Algorithm::FirstFit) {
    ff_girth = promised.girth;
    if (ff_girth) row.budget = best_first_fit_bound(*ff_girth, stream.n());
  } else {
    row.budget = color_budget(row.k, stream.n());
    std::uint64_t need = required_odd_girth(row.k);
    if (og) {
      promise_honored = !og->is_finite() || og->value() >= need;
    } else {
      promise_honored = promised.bipartite || (promised.odd_girth && *promised.odd_girth >= need);
    }
  }

  if (run.promise_violation) {
    row.status = promise_honored ? "fail:promise-violation" : "promise-violation";
    return row;
  }
  AuditReport report = verify_proper(stream, run.coloring);
  if (promise_honored) report.append(verify_bounds(stream, run, ff_girth));
  if (entry.algorithm != Algorithm::FirstFit) {
    report.append(verify_audit(stream, run.audit, AuditConfig::of(run), AuditLevel::Basic));
  }
  row.status = "ok";
  for (const auto& c : report.checks()) {
    if (c.status == CheckStatus::Fail) {
      row.status = "fail:" + c.name;
      break;
    }
  }
  return row;
}

inline std::vector<BenchRow> run_bench(const std::vector<SuiteEntry>& suite, bool timing = false) {
  std::vector<BenchRow> rows;
  rows.reserve(suite.size());
  for (std::size_t i = 0; i < suite.size(); ++i) rows.push_back(run_bench_entry(i + 1, suite[i], timing));
  return rows;
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "instance_id,generator,n,odd_girth,algorithm,k,colors_used,budget,budget_ratio,chromatic,wall_time_ms,status\n";
  for (const auto& r : rows) {
    out += std::to_string(r.instance_id) + ',' + r.generator + ',' + std::to_string(r.n) + ',' +
           r.odd_girth.value_or("") + ',' + to_string(r.algorithm) + ',' + std::to_string(r.k) + ',' +
           std::to_string(r.colors_used) + ',' + (r.budget ? std::to_string(*r.budget) : "") + ',' +
           (r.budget_ratio() ? format_fixed(*r.budget_ratio(), 4) : "") + ',' +
           (r.chromatic ? std::to_string(*r.chromatic) : "") + ',' +
           (r.wall_time_ms ? format_fixed(*r.wall_time_ms, 3) : "") + ',' + r.status + '\n';
  }
  return out;
}

inline nlohmann::json bench_json(const std::vector<BenchRow>& rows) {
  auto opt = [](const auto& o) { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); };
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"instance_id", r.instance_id},
                   {"generator", r.generator},
                   {"n", r.n},
                   {"odd_girth", opt(r.odd_girth)},
                   {"algorithm", to_string(r.algorithm)},
                   {"k", r.k},
                   {"colors_used", r.colors_used},
                   {"budget", opt(r.budget)},
                   {"budget_ratio", r.budget_ratio() ? nlohmann::json(format_fixed(*r.budget_ratio(), 4))
                                                     : nlohmann::json(nullptr)},
                   {"chromatic", opt(r.chromatic)},
                   {"wall_time_ms", opt(r.wall_time_ms)},
                   {"status", r.status}});
  }
  return arr;
}

}  // namespace oddcolor

#endif  // ODDCOLOR_HARNESS_HPP
