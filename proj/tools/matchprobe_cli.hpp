// Copyright 2026 The matchprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// matchprobe command line: gen, find, verify, offline, adversary, bench.
// Exit codes: 0 success, 1 negative verification verdict, 2 input error.

#ifndef MATCHPROBE_TOOLS_CLI_HPP_
#define MATCHPROBE_TOOLS_CLI_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "matchprobe/adversary.hpp"
#include "matchprobe/certify.hpp"
#include "matchprobe/fixtures.hpp"
#include "matchprobe/graph.hpp"
#include "matchprobe/instance_io.hpp"
#include "matchprobe/offline.hpp"
#include "matchprobe/solve.hpp"
#include "matchprobe/verify.hpp"

namespace matchprobe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;

// One line of output for find/verify/offline/adversary and one bench row.
struct Report {
  std::string instance;
  std::string family;
  int n = 0;
  std::string model;
  std::string task;
  std::size_t alg_queries = 0;
  std::optional<std::size_t> opt_queries;
  std::string bound_kind = "none";  // exact | lower-bound | upper-bound | none
  std::optional<std::size_t> lower_bound;
  std::string verdict;
  bool negative = false;
  double runtime_ms = 0;
  nlohmann::json extra = nlohmann::json::object();

  std::optional<double> ratio() const {
    if (negative || !opt_queries) return std::nullopt;
    // An empty certificate matched by an empty run counts as optimal.
    if (alg_queries == 0 && *opt_queries == 0) return 1.0;
    return static_cast<double>(alg_queries) /
           static_cast<double>(std::max<std::size_t>(*opt_queries, 1));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["instance"] = instance;
    j["model"] = model;
    j["task"] = task;
    j["alg_queries"] = alg_queries;
    j["opt_queries"] = opt_queries ? nlohmann::json(*opt_queries) : nlohmann::json();
    j["bound_kind"] = bound_kind;
    j["lower_bound"] = lower_bound ? nlohmann::json(*lower_bound) : nlohmann::json();
    const auto r = ratio();
    j["ratio"] = r ? nlohmann::json(*r) : nlohmann::json();
    j["verdict"] = verdict;
    j["runtime_ms"] = runtime_ms;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  }
};

struct GenOptions {
  std::string family;
  std::optional<int> n;
  std::uint64_t seed = 0;
  std::string graph;
};

inline Instance generate(const GenOptions& o) {
  auto need_n = [&]() -> int {
    if (!o.n) throw PreconditionError("family '" + o.family + "' needs --n");
    if (*o.n < 1) throw PreconditionError("--n must be positive");
    return *o.n;
  };
  auto fixed_two = [&] {
    if (o.n && *o.n != 2)
      throw PreconditionError("family '" + o.family + "' has n = 2 only");
  };
  auto need_graph = [&]() -> DirectedGraph {
    if (o.graph.empty()) throw PreconditionError("family '" + o.family + "' needs --graph");
    return load_edge_list(o.graph);
  };
  const std::string& f = o.family;
  if (f == "identity") return fixture_identity(need_n());
  if (f == "random") return random_instance(need_n(), o.seed);
  if (f == "equal-a") return fixture_equal(need_n());
  if (f == "rot2") {
    fixed_two();
    return fixture_rot2();
  }
  if (f == "twosided") {
    fixed_two();
    return fixture_two_sided();
  }
  if (f == "figure1") return fixture_figure1(need_n());
  if (f == "figure1-random") return gen_fig1_randomized(need_n(), o.seed);
  if (f == "fas") return gen_fas_reduction(need_graph());
  if (f == "fvs") return gen_fvs_reduction(need_graph());
  if (f == "interview-hard") return gen_interview_hardness(need_graph());
  throw PreconditionError("unknown family '" + f + "'");
}

inline CertTarget parse_target(const std::string& s) {
  if (s == "stable") return CertTarget::Stable;
  if (s == "a-optimal") return CertTarget::StableAOptimal;
  if (s == "b-optimal" || s == "stable-b-optimal") return CertTarget::StableBOptimal;
  throw PreconditionError("unknown target '" + s + "'");
}

// Queries needed just for stability of m, by model.
inline std::size_t stability_lower_bound(QueryModel model, const PreferenceProfile& p,
                                         const Matching& m) {
  switch (model) {
    case QueryModel::Comparison:
      return static_cast<std::size_t>(count_potential_blocking_pairs(p, m));
    case QueryModel::Interview: return interview_cost(p, m);
    case QueryModel::Set: {
      std::size_t c = 0;
      for (int b = 0; b < p.size(); ++b) c += !potential_blockers(p, m, b).empty();
      return c;
    }
  }
  return 0;
}

// Fills opt_queries: brute force within the oracle limit, else `bound`.
inline void fill_optimum(Report& r, const CertificateProblem& p,
                         std::optional<std::size_t> bound, std::optional<int> limit) {
  r.lower_bound = bound;
  const int cap = oracle_limit(p.model, limit);
  if (p.instance.size() <= cap) {
    auto q = p;
    q.limit = cap;
    r.opt_queries = min_certificate(q).size;
    r.bound_kind = "exact";
    return;
  }
  r.opt_queries = bound;
  r.bound_kind = bound ? "lower-bound" : "none";
}

struct RunOptions {
  std::string instance_path;
  std::string model = "comparison";
  std::string target = "b-optimal";
  bool two_sided = false;
  bool exact = false;
  bool greedy = false;
  std::optional<int> oracle_limit;
  std::optional<int> n;
};

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

inline Report base_report(const Instance& inst, const std::string& model,
                          const std::string& task) {
  Report r;
  r.instance = inst.label;
  r.n = inst.size();
  r.model = model;
  r.task = task;
  return r;
}

inline Report run_find(const Instance& inst, const RunOptions& o) {
  const auto model = parse_model(o.model);
  const auto target = parse_target(o.target);
  auto r = base_report(inst, o.model, "find:" + std::string(target_name(target)));
  const auto start = std::chrono::steady_clock::now();
  RealizationSource src(inst.hidden());
  SolveResult s;
  const bool equal_rows = std::all_of(
      inst.profile.rows().begin(), inst.profile.rows().end(),
      [&](const auto& row) { return row == inst.profile.rows().front(); });
  if (model == QueryModel::Comparison && target == CertTarget::Stable && equal_rows)
    s = find_stable_equal_prefs(inst.profile, src);
  else if (model == QueryModel::Comparison && target != CertTarget::StableBOptimal)
    s = find_a_optimal_comparison(inst.profile, src);
  else if (model == QueryModel::Comparison)
    s = find_b_optimal_comparison(inst.profile, src);
  else if (model == QueryModel::Interview && target != CertTarget::StableBOptimal)
    s = find_a_optimal_interview(inst.profile, src);
  else if (model == QueryModel::Interview)
    s = find_b_optimal_interview(inst.profile, src);
  else if (target == CertTarget::StableBOptimal)
    s = find_b_optimal_set(inst.profile, src);
  else
    throw PreconditionError("find: target '" + o.target + "' is not implemented for the set model");
  r.runtime_ms = elapsed_ms(start);
  r.alg_queries = s.queries();
  r.verdict = "found";
  r.extra["matching"] = s.matching.pairs();

  std::optional<std::size_t> bound;
  if (target == CertTarget::StableBOptimal) {
    std::size_t lb = stability_lower_bound(model, inst.profile, s.matching);
    lb = std::max(lb, 2 * s.stats.rotations_applied);
    if (model != QueryModel::Interview)
      lb = std::max(lb, static_cast<std::size_t>(std::max(inst.size() - 1, 0)));
    bound = lb;
  } else if (inst.size() <= 9) {
    std::size_t lb = SIZE_MAX;
    for (const auto& m : enumerate_stable_matchings(inst.profile, inst.hidden()))
      lb = std::min(lb, stability_lower_bound(model, inst.profile, m));
    bound = lb;
  }
  CertificateProblem p{model, target, inst, std::nullopt, std::nullopt, false};
  fill_optimum(r, p, bound, o.oracle_limit);
  return r;
}

inline Matching matching_to_check(const Instance& inst) {
  return inst.matching ? *inst.matching : b_optimal_matching(inst);
}

inline Report run_verify(const Instance& inst, const RunOptions& o) {
  const auto model = parse_model(o.model);
  const auto target = parse_target(o.target);
  if (target == CertTarget::StableAOptimal)
    throw PreconditionError("verify: target 'a-optimal' is not implemented");
  const Matching m = matching_to_check(inst);
  auto r = base_report(inst, o.model, "verify:" + std::string(target_name(target)));
  const auto start = std::chrono::steady_clock::now();
  VerifyResult v;
  if (o.two_sided) {
    if (model != QueryModel::Comparison || target != CertTarget::Stable)
      throw PreconditionError("--two-sided supports only comparison stability checks");
    RealizationSource a_side(inst.profile), b_side(inst.hidden());
    v = verify_stable_twosided(a_side, b_side, m);
    r.task = "verify:stable-two-sided";
  } else {
    RealizationSource src(inst.hidden());
    if (target == CertTarget::Stable && model == QueryModel::Comparison)
      v = verify_stable_comparison(inst.profile, m, src);
    else if (target == CertTarget::Stable && model == QueryModel::Interview)
      v = verify_stable_interview(inst.profile, m, src);
    else if (target == CertTarget::Stable)
      v = verify_stable_set(inst.profile, m, src);
    else if (model == QueryModel::Set)
      v = verify_b_optimal_set(inst.profile, m, src);
    else
      throw PreconditionError("verify: b-optimal checks are implemented for the set model only");
  }
  r.runtime_ms = elapsed_ms(start);
  r.alg_queries = v.queries();
  r.verdict = verdict_name(v.verdict);
  r.negative = !v.positive();
  r.extra["witness"] = v.witness_json();
  if (r.negative) return r;
  if (o.two_sided) {
    const std::size_t n = static_cast<std::size_t>(inst.size());
    r.lower_bound = n * n - n;
    r.opt_queries = r.lower_bound;
    r.bound_kind = "lower-bound";
    return r;
  }
  std::size_t lb = stability_lower_bound(model, inst.profile, m);
  if (target == CertTarget::StableBOptimal)
    lb = std::max(lb, static_cast<std::size_t>(std::max(inst.size() - 1, 0)));
  CertificateProblem p{model, target, inst, m, std::nullopt, false};
  fill_optimum(r, p, lb, o.oracle_limit);
  return r;
}

inline Report run_offline(const Instance& inst, const RunOptions& o) {
  const auto model = parse_model(o.model);
  const auto target = parse_target(o.target);
  auto r = base_report(inst, o.model, "offline:" + std::string(target_name(target)));
  const auto start = std::chrono::steady_clock::now();
  const Matching m = target == CertTarget::Stable        ? matching_to_check(inst)
                     : target == CertTarget::StableBOptimal ? b_optimal_matching(inst)
                                                            : a_optimal_matching(inst);
  std::optional<std::size_t> alg;
  if (target == CertTarget::StableBOptimal && model == QueryModel::Comparison) {
    const auto mode = o.exact ? SolveMode::Exact
                      : o.greedy ? SolveMode::Greedy
                      : (2 * inst.size() <= kExactFasVertexLimit ? SolveMode::Exact
                                                                 : SolveMode::Greedy);
    alg = certify_b_optimal_approx_comparison(inst, m, mode).size();
    r.extra["fas_mode"] = mode == SolveMode::Exact ? "exact" : "greedy";
  } else if (target == CertTarget::StableBOptimal && model == QueryModel::Set) {
    alg = certify_b_optimal_offline_set(inst, m).size();
  }
  std::size_t lb = stability_lower_bound(model, inst.profile, m);
  if (target == CertTarget::StableBOptimal && model != QueryModel::Interview)
    lb = std::max(lb, static_cast<std::size_t>(std::max(inst.size() - 1, 0)));
  std::optional<Matching> given;
  if (target == CertTarget::Stable && inst.matching) given = m;
  CertificateProblem p{model, target, inst, given, std::nullopt, false};
  fill_optimum(r, p, lb, o.oracle_limit);
  r.runtime_ms = elapsed_ms(start);
  r.verdict = "certified";
  if (alg) {
    r.alg_queries = *alg;
  } else if (r.bound_kind == "exact") {
    r.alg_queries = *r.opt_queries;
  } else {
    throw PreconditionError("offline: no polynomial certifier for this model and target, and n exceeds the oracle limit");
  }
  return r;
}

inline Report run_adversary(int n, const std::string& model_name_s) {
  const auto model = parse_model(model_name_s);
  Fig1Adversary adv(n);
  Report r;
  r.n = n;
  r.family = "figure1-adversary";
  r.model = model_name_s;
  r.task = "adversary:stable-b-optimal";
  const auto start = std::chrono::steady_clock::now();
  std::size_t queries = 0;
  switch (model) {
    case QueryModel::Comparison:
      queries = find_b_optimal_comparison(adv.profile(), adv).queries();
      break;
    case QueryModel::Interview:
      queries = find_b_optimal_interview(adv.profile(), adv).queries();
      break;
    case QueryModel::Set:
      queries = verify_b_optimal_set(adv.profile(), Matching::identity(n), adv).queries();
      break;
  }
  r.runtime_ms = elapsed_ms(start);
  const Instance inst = adv.finalized_instance();
  r.instance = inst.label;
  const auto cert = fig1_certificate(inst);
  const bool cert_ok =
      certifies_b_optimal(replay(cert, inst.hidden()), inst.profile, Matching::identity(n));
  r.alg_queries = queries;
  r.opt_queries = cert.size();
  r.bound_kind = "upper-bound";
  r.lower_bound = static_cast<std::size_t>(n - 1);
  r.verdict = "b-optimal";
  r.extra["forcing_threshold"] = n * n / 16;
  r.extra["finalize"] = "consistent";
  r.extra["certificate_valid"] = cert_ok;
  r.extra["resolved_agents"] = adv.resolved_agents().size();
  return r;
}

// ---- bench -------------------------------------------------------------

inline std::string csv_header() {
  return "n,family,model,task,alg_queries,opt_queries,bound_kind,ratio";
}

inline std::string csv_row(const Report& r) {
  std::ostringstream s;
  s << r.n << ',' << r.family << ',' << r.model << ',' << r.task << ',' << r.alg_queries
    << ',';
  if (r.opt_queries) s << *r.opt_queries;
  s << ',' << r.bound_kind << ',';
  if (auto q = r.ratio()) s << *q;
  return s.str();
}

inline std::vector<Report> bench_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<Report> rows;
  if (suite == "verification-exactness") {
    for (int k = 0; k < 200; ++k) {
      const int n = 2 + k % 4;
      auto inst = random_instance(n, seed + static_cast<std::uint64_t>(k));
      for (const auto& m : enumerate_stable_matchings(inst.profile, inst.hidden())) {
        inst.matching = m;
        RunOptions o;
        o.model = "comparison";
        o.target = "stable";
        auto r = run_verify(inst, o);
        r.family = "random";
        rows.push_back(std::move(r));
      }
    }
  } else if (suite == "b-optimal-ratio") {
    for (int n = 2; n <= 8; ++n)
      for (int k = 0; k < 20; ++k) {
        auto inst = random_instance(n, seed + static_cast<std::uint64_t>(1000 * n + k));
        RunOptions o;
        o.model = "comparison";
        o.target = "b-optimal";
        auto r = run_find(inst, o);
        r.family = "random";
        rows.push_back(std::move(r));
      }
  } else if (suite == "adversary-scaling") {
    for (int n : {8, 12, 16, 20}) rows.push_back(run_adversary(n, "comparison"));
  } else if (suite == "set-query-log") {
    for (int n : {8, 16, 32, 64})
      for (int k = 0; k < 10; ++k) {
        auto inst = random_instance(n, seed + static_cast<std::uint64_t>(1000 * n + k));
        inst.matching = b_optimal_matching(inst);
        RunOptions o;
        o.model = "set";
        o.target = "b-optimal";
        auto r = run_verify(inst, o);
        r.family = "random";
        int log2n = 0;
        while ((1 << log2n) < n) ++log2n;
        r.extra["bound"] = 2 * n * (log2n + 2);
        r.extra["within_bound"] = r.alg_queries <= static_cast<std::size_t>(2 * n * (log2n + 2));
        rows.push_back(std::move(r));
      }
  } else {
    throw PreconditionError("unknown suite '" + suite + "'");
  }
  return rows;
}

// Per-n mean and max ratio over rows with a ratio.
inline nlohmann::json bench_summary(const std::vector<Report>& rows) {
  std::map<int, std::vector<double>> by_n;
  for (const auto& r : rows)
    if (auto q = r.ratio()) by_n[r.n].push_back(*q);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [n, v] : by_n) {
    double sum = 0, mx = 0;
    for (double x : v) {
      sum += x;
      mx = std::max(mx, x);
    }
    out.push_back({{"n", n}, {"rows", v.size()}, {"mean_ratio", sum / v.size()},
                   {"max_ratio", mx}});
  }
  return out;
}

// ---- entry point -------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"matchprobe: query-efficient stable matching experiments"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("--family", gen.family, "instance family")->required();
  gen_cmd->add_option("--n", gen.n, "number of agents per side");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--graph", gen.graph, "edge list for reduction families");
  gen_cmd->add_option("--out", gen_out, "output file (default: stdout)");

  RunOptions run;
  std::string run_out;
  auto add_run_flags = [&](CLI::App* c, bool with_instance) {
    if (with_instance) c->add_option("--instance", run.instance_path, "instance file")->required();
    c->add_option("--model", run.model, "comparison | interview | set");
    c->add_option("--target", run.target, "stable | a-optimal | b-optimal | stable-b-optimal");
    c->add_option("--oracle-limit", run.oracle_limit, "brute-force size cap");
    c->add_option("--out", run_out, "write the report here as well");
  };
  auto* find_cmd = app.add_subcommand("find", "run an online algorithm");
  add_run_flags(find_cmd, true);
  auto* verify_cmd = app.add_subcommand("verify", "verify the instance's matching");
  add_run_flags(verify_cmd, true);
  verify_cmd->add_flag("--two-sided", run.two_sided, "both sides hidden");
  auto* offline_cmd = app.add_subcommand("offline", "offline certificates");
  add_run_flags(offline_cmd, true);
  offline_cmd->add_flag("--exact", run.exact, "exact feedback arc set");
  offline_cmd->add_flag("--greedy", run.greedy, "greedy feedback arc set");
  auto* adv_cmd = app.add_subcommand("adversary", "run the rotation search against the adaptive figure1 adversary");
  add_run_flags(adv_cmd, false);
  adv_cmd->add_option("--n", run.n, "multiple of 4")->required();

  std::string suite, bench_out;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  bench_cmd->add_option("--suite", suite,
                        "verification-exactness | b-optimal-ratio | adversary-scaling | set-query-log")
      ->required();
  bench_cmd->add_option("--out", bench_out, "JSON report; a .csv summary is written next to it");
  bench_cmd->add_option("--seed", bench_seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  auto emit = [&](const Report& r) {
    const auto j = r.to_json().dump();
    out << j << "\n";
    if (!run_out.empty()) {
      std::ofstream f(run_out);
      if (!f) throw InstanceFormatError("cannot write '" + run_out + "'");
      f << j << "\n";
    }
    return r.negative ? kExitNegative : kExitOk;
  };

  try {
    if (*gen_cmd) {
      auto inst = generate(gen);
      if (gen_out.empty())
        out << to_json(inst).dump(2) << "\n";
      else
        save_instance(inst, gen_out);
      return kExitOk;
    }
    if (*find_cmd) return emit(run_find(load_instance(run.instance_path), run));
    if (*verify_cmd) return emit(run_verify(load_instance(run.instance_path), run));
    if (*offline_cmd) {
      if (run.exact && run.greedy) throw PreconditionError("--exact and --greedy exclude each other");
      return emit(run_offline(load_instance(run.instance_path), run));
    }
    if (*adv_cmd) return emit(run_adversary(*run.n, run.model));
    if (*bench_cmd) {
      const auto rows = bench_suite(suite, bench_seed);
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) arr.push_back(r.to_json());
      const auto summary = bench_summary(rows);
      if (bench_out.empty()) {
        out << arr.dump(2) << "\n";
      } else {
        std::ofstream f(bench_out);
        if (!f) throw InstanceFormatError("cannot write '" + bench_out + "'");
        f << arr.dump(2) << "\n";
        std::string csv_path = bench_out;
        const auto dot = csv_path.rfind('.');
        const auto slash = csv_path.rfind('/');
        if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
          csv_path.erase(dot);
        csv_path += ".csv";
        std::ofstream c(csv_path);
        if (!c) throw InstanceFormatError("cannot write '" + csv_path + "'");
        c << csv_header() << "\n";
        for (const auto& r : rows) c << csv_row(r) << "\n";
      }
      out << nlohmann::json{{"suite", suite}, {"summary", summary}}.dump() << "\n";
      return kExitOk;
    }
  } catch (const MatchprobeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace matchprobe::cli

#endif  // MATCHPROBE_TOOLS_CLI_HPP_
