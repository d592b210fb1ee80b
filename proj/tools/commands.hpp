#pragma once

// Subcommand implementations, kept apart from argument parsing so tests can
// drive them with in-memory streams.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rbsc/rbsc.hpp"

namespace rbsc::cli {

enum Exit : int { kYes = 0, kNo = 1, kError = 2 };

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"auto", "fpt", "brute", "dp", "red-subsets", "two-blue", "rbsc-two-red"};
  return names;
}

/// Largest blue count for which `auto` prefers the subset DP.
inline constexpr std::size_t kAutoDpMaxBlues = 14;

struct SolveRun {
  std::string algo;  // the algorithm that actually ran
  std::optional<Solution> solution;
  SolverStats stats;
  double millis = 0;
};

namespace detail {

struct Shape {
  std::size_t max_red = 0;
  bool red_zero_or_two = true;
  bool linear = true;
  bool weighted = false;
};

inline Shape shape_of(const Instance& inst) {
  Shape s;
  for (const auto& set : inst.family) {
    auto p = rbsc::detail::profile(inst, set);
    s.max_red = std::max(s.max_red, p.red);
    if (p.red == 1) s.red_zero_or_two = false;
  }
  s.linear = is_linear_system(inst);
  s.weighted = inst.weighted();
  return s;
}

inline std::string choose_auto(const Instance& inst) {
  const Shape s = shape_of(inst);
  if (!inst.budget_lines) {
    if (!s.weighted && s.linear && s.red_zero_or_two) return "rbsc-two-red";
    return inst.red_count() <= kMaxBruteReds ? "red-subsets" : "brute";
  }
  if (!s.weighted && s.max_red <= 1 && inst.blue_count() <= kAutoDpMaxBlues) return "dp";
  if (!s.weighted && s.linear) return "fpt";
  return "brute";
}

inline void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp);
    out << text;
    if (!out.flush()) throw Error(ErrorCode::Io, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename " + tmp + " to " + path + ": " + ec.message());
}

inline std::string budget_text(const Instance& inst) {
  return "lines=" + (inst.budget_lines ? std::to_string(*inst.budget_lines) : std::string("inf")) +
         " red=" + std::to_string(inst.budget_red);
}

inline std::string size_text(const Instance& inst) {
  return "b=" + std::to_string(inst.blue_count()) + " r=" + std::to_string(inst.red_count()) +
         " l=" + std::to_string(inst.family_size()) + " " + budget_text(inst);
}

}  // namespace detail

/// Runs one algorithm. Precondition violations propagate as rbsc::Error.
inline SolveRun run_algorithm(const Instance& inst, const std::string& algo, bool force = false,
                              std::optional<std::uint64_t> degree = std::nullopt) {
  SolveRun run;
  run.algo = algo == "auto" ? detail::choose_auto(inst) : algo;
  const GuardOptions guard{!force};
  const auto start = std::chrono::steady_clock::now();
  if (run.algo == "fpt") {
    run.solution = degree ? solve_bounded_red(inst, *degree, &run.stats) : solve_kl_kr(inst, &run.stats);
  } else if (run.algo == "brute") {
    run.solution = brute_force_solve(inst, guard, &run.stats);
  } else if (run.algo == "dp") {
    run.solution = dp_solve(inst, &run.stats);
  } else if (run.algo == "red-subsets") {
    run.solution = solve_rbsc_by_red_subsets(inst, guard, &run.stats);
  } else if (run.algo == "two-blue") {
    run.solution = solve_two_blue_special(inst, &run.stats);
  } else if (run.algo == "rbsc-two-red") {
    run.solution = solve_rbsc_kr_two_red(inst, &run.stats);
  } else {
    throw Error(ErrorCode::Semantic, "unknown algorithm '" + algo + "'");
  }
  run.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (run.solution && !run.solution->feasible()) {
    throw Error(ErrorCode::InvalidInstance, run.algo + " returned an infeasible family: " + run.solution->failure_reason());
  }
  return run;
}

inline Instance load_validated(const std::string& path) {
  Instance inst = load_instance(path);
  auto report = validate(inst);
  if (!report.ok()) throw Error(ErrorCode::InvalidInstance, path + ":\n" + report.summary());
  return inst;
}

// ---------------------------------------------------------------------------

struct SolveOptions {
  std::string file;
  std::string algo = "auto";
  std::string output;
  bool force = false;
  std::optional<std::uint64_t> degree;
};

inline int cmd_solve(const SolveOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = load_validated(opt.file);
    SolveRun run = run_algorithm(inst, opt.algo, opt.force, opt.degree);
    out << "decision " << (run.solution ? "YES" : "NO") << '\n';
    out << "algo " << run.algo << '\n';
    out << "budgets " << detail::budget_text(inst) << '\n';
    out << "counters tuples=" << run.stats.tuples << " branches=" << run.stats.branches << " nodes=" << run.stats.nodes << '\n';
    err << "time_ms " << std::fixed << std::setprecision(3) << run.millis << '\n';
    const std::string text = serialize_solution(run.solution);
    if (opt.output.empty()) {
      out << text;
    } else {
      detail::write_atomically(opt.output, text);
    }
    return run.solution ? kYes : kNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// ---------------------------------------------------------------------------

struct KernelizeOptions {
  std::string file;
  std::string param = "kl-kr";
  std::string output;
  std::string trace;
};

inline int cmd_kernelize(const KernelizeOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = load_validated(opt.file);
    KernelResult res;
    if (opt.param == "kl-kr") {
      res = kernelize_kl_kr(inst);
    } else if (opt.param == "ell") {
      res = kernelize_ell(inst);
    } else if (opt.param == "kl-r") {
      res = kernelize_kl_r(inst);
    } else {
      throw Error(ErrorCode::Semantic, "unknown kernel parameter '" + opt.param + "'");
    }
    out << "before " << detail::size_text(inst) << '\n';
    if (!opt.trace.empty()) detail::write_atomically(opt.trace, res.trace.to_string());
    if (res.is_no()) {
      out << "NO " << *res.no_certificate << '\n';
      return kNo;
    }
    out << "after " << detail::size_text(res.kernel) << '\n';
    out << "forced";
    for (auto id : res.forced) out << ' ' << raw(id);
    out << '\n';
    const std::string text = serialize(res.kernel);
    if (opt.output.empty()) {
      out << text;
    } else {
      detail::write_atomically(opt.output, text);
    }
    return kYes;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// ---------------------------------------------------------------------------

struct GenerateOptions {
  std::string kind;
  std::string input;  // set cover file
  std::string graph;  // multicolored graph file
  std::optional<std::uint64_t> degree;
  std::uint64_t seed = 0;
  std::string profile = "geometric";
  std::string output;
};

inline Instance generate(const GenerateOptions& opt) {
  auto need = [](const std::string& path, const char* flag) {
    if (path.empty()) throw Error(ErrorCode::Semantic, std::string("missing ") + flag);
    return rbsc::detail::read_file(path);
  };
  if (opt.kind == "setcover") return gen_setcover_lines(parse_setcover(need(opt.input, "--input")));
  if (opt.kind == "setcover-uniqred") return gen_setcover_uniqred_lines(parse_setcover(need(opt.input, "--input")));
  if (opt.kind == "mcc-lines") {
    auto g = parse_mcgraph(need(opt.graph, "--graph"));
    std::uint64_t d = 0;
    if (opt.degree) {
      d = *opt.degree;
    } else if (auto r = g.regular_degree()) {
      d = *r;
    } else {
      throw Error(ErrorCode::NotRegular, "graph is not regular");
    }
    return gen_mcc_lines(g, d);
  }
  if (opt.kind == "mcc-sets") return gen_mcc_setsystem(parse_mcgraph(need(opt.graph, "--graph")));
  if (opt.kind == "random") return gen_random(opt.seed, opt.profile);
  throw Error(ErrorCode::Semantic, "unknown generator '" + opt.kind + "'");
}

inline int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = generate(opt);
    auto report = validate(inst);
    if (!report.ok()) throw Error(ErrorCode::InvalidInstance, "generated instance failed validation:\n" + report.summary());
    const std::string text = serialize(inst);
    if (opt.output.empty()) {
      out << text;
    } else {
      detail::write_atomically(opt.output, text);
    }
    return kYes;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// ---------------------------------------------------------------------------

inline int cmd_verify(const std::string& instance_path, const std::string& solution_path, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = load_instance(instance_path);
    SolutionFile claim = parse_solution(rbsc::detail::read_file(solution_path));
    if (!claim.yes) {
      out << "solution claims no; nothing to verify\n";
      return kNo;
    }
    Solution sol = verify(inst, claim.sets);
    out << "sets " << sol.chosen.size() << '\n';
    out << "red " << sol.red_covered << '\n';
    out << "blue " << sol.blue_covered << '/' << sol.blue_total << '\n';
    bool ok = sol.feasible();
    if (!ok) out << "infeasible: " << sol.failure_reason() << '\n';
    if (claim.red && *claim.red != sol.red_covered) {
      out << "stated red count " << *claim.red << " differs from recomputed " << sol.red_covered << '\n';
      ok = false;
    }
    if (claim.blue && *claim.blue != sol.blue_covered) {
      out << "stated blue count " << *claim.blue << " differs from recomputed " << sol.blue_covered << '\n';
      ok = false;
    }
    if (ok) out << "feasible\n";
    return ok ? kYes : kNo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string corpus;
  std::vector<std::string> algos = {"auto", "brute", "fpt", "dp", "red-subsets", "two-blue", "rbsc-two-red"};
  std::string csv;
  bool no_timing = false;
  bool force = false;
  std::size_t threads = 0;  // 0: RBSC_THREADS or 1
};

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string decision;  // yes, no, n/a, error
  double millis = 0;
  SolverStats stats;
  std::string note;
};

inline bool inapplicable(ErrorCode c) {
  switch (c) {
    case ErrorCode::PreconditionViolated:
    case ErrorCode::BoundedBudget:
    case ErrorCode::UnboundedBudget:
    case ErrorCode::RedDegreeExceeded:
    case ErrorCode::TooManyBlues:
    case ErrorCode::NotLinearSystem:
    case ErrorCode::DegreeExceeded:
    case ErrorCode::TooLarge:
      return true;
    default:
      return false;
  }
}

inline std::vector<std::string> corpus_files(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".rbsc") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline std::size_t thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RBSC_THREADS")) {
    try {
      auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<std::string> files;
  try {
    files = corpus_files(opt.corpus);
    for (const auto& a : opt.algos) {
      if (std::find(algorithm_names().begin(), algorithm_names().end(), a) == algorithm_names().end()) {
        throw Error(ErrorCode::Semantic, "unknown algorithm '" + a + "'");
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }

  std::vector<std::vector<BenchRow>> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string name = std::filesystem::path(files[i]).filename().string();
      std::optional<Instance> inst;
      std::string load_error;
      try {
        inst = load_validated(files[i]);
      } catch (const std::exception& e) {
        load_error = e.what();
      }
      for (const auto& algo : opt.algos) {
        BenchRow row{name, algo, "error", 0, {}, load_error};
        if (inst) {
          try {
            SolveRun run = run_algorithm(*inst, algo, opt.force);
            row.decision = run.solution ? "yes" : "no";
            row.millis = run.millis;
            row.stats = run.stats;
            if (algo == "auto") row.note = run.algo;
          } catch (const Error& e) {
            row.decision = inapplicable(e.code()) ? "n/a" : "error";
            row.note = e.what();
          } catch (const std::exception& e) {
            row.note = e.what();
          }
        }
        rows[i].push_back(std::move(row));
      }
    }
  };
  const std::size_t n_threads = std::min(thread_count(opt.threads), std::max<std::size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "instance,algo,decision,millis,tuples,branches,nodes\n";
  std::size_t disagreements = 0, errors = 0;
  out << std::left << std::setw(36) << "instance" << std::setw(14) << "algo" << std::setw(9) << "decision" << std::right
      << std::setw(11) << "millis" << std::setw(10) << "tuples" << std::setw(10) << "branches" << std::setw(12) << "nodes" << '\n';
  for (const auto& per : rows) {
    std::optional<std::string> agreed;
    bool split = false;
    for (const auto& r : per) {
      const double ms = opt.no_timing ? 0.0 : r.millis;
      csv << r.instance << ',' << r.algo << ',' << r.decision << ',' << std::fixed << std::setprecision(3) << ms << ','
          << r.stats.tuples << ',' << r.stats.branches << ',' << r.stats.nodes << '\n';
      out << std::left << std::setw(36) << r.instance << std::setw(14) << r.algo << std::setw(9) << r.decision << std::right
          << std::setw(11) << std::fixed << std::setprecision(3) << ms << std::setw(10) << r.stats.tuples << std::setw(10)
          << r.stats.branches << std::setw(12) << r.stats.nodes << '\n';
      if (r.decision == "error") {
        ++errors;
        err << r.instance << " " << r.algo << ": " << r.note << '\n';
      }
      if (r.decision == "yes" || r.decision == "no") {
        if (agreed && *agreed != r.decision) split = true;
        agreed = r.decision;
      }
    }
    if (split) {
      ++disagreements;
      out << "DISAGREEMENT " << per.front().instance << '\n';
    }
  }
  out << "instances " << files.size() << " disagreements " << disagreements << " errors " << errors << '\n';
  if (!opt.csv.empty()) {
    try {
      detail::write_atomically(opt.csv, csv.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kError;
    }
  }
  return disagreements == 0 ? kYes : kNo;
}

}  // namespace rbsc::cli
