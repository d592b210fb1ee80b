// rbsc: solve, kernelize, generate, verify and benchmark red-blue set cover
// instances. Exit status 0 = YES / feasible, 1 = NO / infeasible, 2 = error.

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rbsc::cli;
  CLI::App app{"Exact solvers for generalized red-blue set cover with lines"};
  app.require_subcommand(1);

  SolveOptions solve;
  std::uint64_t degree = 0;
  auto* s = app.add_subcommand("solve", "Decide an instance and write a solution file");
  s->add_option("file", solve.file, "Instance file")->required();
  s->add_option("--algo", solve.algo, "Algorithm")->check(CLI::IsMember(algorithm_names()));
  s->add_option("-o,--output", solve.output, "Solution file (stdout if omitted)");
  s->add_flag("--force", solve.force, "Disable the brute-force size guards");
  auto* degree_opt = s->add_option("--degree", degree, "With --algo fpt: every set has at most this many reds");

  KernelizeOptions kern;
  auto* k = app.add_subcommand("kernelize", "Apply a kernelization pipeline");
  k->add_option("file", kern.file, "Instance file")->required();
  k->add_option("--param", kern.param, "Pipeline")->check(CLI::IsMember({"kl-kr", "ell", "kl-r"}));
  k->add_option("-o,--output", kern.output, "Kernel file (stdout if omitted)");
  k->add_option("--trace", kern.trace, "Trace file");

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Generate an instance");
  g->add_option("kind", gen.kind, "Generator")
      ->required()
      ->check(CLI::IsMember({"setcover", "setcover-uniqred", "mcc-lines", "mcc-sets", "random"}));
  g->add_option("--input", gen.input, "Set Cover input (setcover, setcover-uniqred)");
  g->add_option("--graph", gen.graph, "Multicolored graph (mcc-lines, mcc-sets)");
  std::uint64_t gen_degree = 0;
  auto* gen_degree_opt = g->add_option("--degree", gen_degree, "Regularity degree for mcc-lines (default: detected)");
  g->add_option("--seed", gen.seed, "Seed for random");
  g->add_option("--profile", gen.profile, "Profile for random")->check(CLI::IsMember(rbsc::profile_names()));
  g->add_option("-o,--output", gen.output, "Instance file (stdout if omitted)");

  std::string verify_instance, verify_solution;
  auto* v = app.add_subcommand("verify", "Check a solution file against an instance");
  v->add_option("instance", verify_instance, "Instance file")->required();
  v->add_option("solution", verify_solution, "Solution file")->required();

  BenchOptions bench;
  std::string algos;
  auto* b = app.add_subcommand("bench", "Run algorithms over a corpus and compare decisions");
  b->add_option("corpus", bench.corpus, "Directory of .rbsc files")->required();
  b->add_option("--algos", algos, "Comma-separated algorithms");
  b->add_option("--csv", bench.csv, "CSV output file");
  b->add_flag("--no-timing", bench.no_timing, "Report 0 ms so output is byte-stable");
  b->add_flag("--force", bench.force, "Disable the brute-force size guards");
  b->add_option("--threads", bench.threads, "Worker count (default RBSC_THREADS or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  if (*s) {
    if (*degree_opt) solve.degree = degree;
    return cmd_solve(solve, std::cout, std::cerr);
  }
  if (*k) return cmd_kernelize(kern, std::cout, std::cerr);
  if (*g) {
    if (*gen_degree_opt) gen.degree = gen_degree;
    return cmd_generate(gen, std::cout, std::cerr);
  }
  if (*v) return cmd_verify(verify_instance, verify_solution, std::cout, std::cerr);
  if (*b) {
    if (!algos.empty()) bench.algos = split_list(algos);
    return cmd_bench(bench, std::cout, std::cerr);
  }
  return kError;
}
