#include <CLI11.hpp>

#include "streett/cli.hpp"

using namespace streett;

namespace {

std::vector<long long> parse_sizes(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(static_cast<long long>(std::stod(tok)));
  }
  if (out.empty()) throw CLI::ValidationError("--sizes", "no sizes given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"winning sets for strong-fairness (Streett) objectives on graphs and MDPs"};
  app.require_subcommand(1);

  // solve subcommands share one argument block
  cli::SolveArgs solve;
  auto add_solve = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("instance", solve.instance_path, "instance file")->required();
    sub->add_flag("--json", solve.json, "structured output");
    if (name == "graph-streett" || name == "mdp-streett")
      sub->add_option("--trace-out", solve.trace_out_path,
                      "write the deletion trace as 'D <u> <v>' lines");
    if (name == "mec")
      sub->add_flag("--include-trivial", solve.include_trivial,
                    "also report isolated player vertices as trivial MECs");
    if (name == "asreach")
      sub->add_option("--target", solve.targets, "target vertex ids")->required()
          ->delimiter(',');
    if (name == "decmec") {
      sub->add_option("--deletions", solve.deletions_path,
                      "file of player-1 edge deletions, one 'D <u> <v>' per line")
          ->required();
      sub->add_flag("--verbose", solve.verbose, "print the full partition after each step");
    }
    sub->callback([&, name] { solve.mode = name; });
    return sub;
  };
  add_solve("graph-streett", "winning set for a Streett objective on a graph");
  add_solve("mdp-streett", "almost-sure winning set for a Streett objective on an MDP");
  add_solve("mec", "maximal end-component decomposition");
  add_solve("asreach", "almost-sure reachability winning set");
  add_solve("decmec", "replay player-1 edge deletions through the decremental MEC structure");

  cli::GenArgs gen;
  std::string gen_kind = "graph";
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--kind", gen_kind, "graph|mdp")
      ->check(CLI::IsMember({"graph", "mdp"}));
  gen_cmd->add_option("--n", gen.params.n, "vertex count")->required();
  gen_cmd->add_option("--m", gen.params.m, "edge count")->required();
  gen_cmd->add_option("--k", gen.params.k, "Streett pair count");
  gen_cmd->add_option("--seed", gen.params.seed, "rng seed");
  gen_cmd->add_option("--p-random", gen.params.p_random, "random-vertex probability (mdp)");
  gen_cmd->add_option("--out", gen.out_path, "output file (default stdout)");

  cli::CheckArgs check;
  CLI::App* check_cmd =
      app.add_subcommand("check", "differential check of fast paths against the oracles");
  check_cmd->add_option("--trials", check.options.trials, "trials per suite");
  check_cmd->add_option("--max-n", check.options.max_n, "max vertex count");
  check_cmd->add_option("--seed", check.options.seed, "rng seed");
  check_cmd->add_option("--suite", check.suite, "graph|mec|asreach|mdp|decmec|all")
      ->check(CLI::IsMember({"graph", "mec", "asreach", "mdp", "decmec", "all"}));

  cli::BenchArgs bench;
  std::string sizes_text = "1e4,3e4,1e5";
  std::string bench_suite = "all";
  CLI::App* bench_cmd = app.add_subcommand("bench", "scaling benchmark, CSV output");
  bench_cmd->add_option("--sizes", sizes_text, "comma-separated edge counts (1e4,3e4,...)");
  bench_cmd->add_option("--reps", bench.config.reps, "timing repetitions (median)");
  bench_cmd->add_option("--seed", bench.config.seed, "rng seed");
  bench_cmd->add_option("--suite", bench_suite, "graph|mec|asreach|all")
      ->check(CLI::IsMember({"graph", "mec", "asreach", "all"}));
  bench_cmd->add_option("--out", bench.out_path, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (gen_cmd->parsed()) {
    gen.params.kind = gen_kind == "mdp" ? GenParams::Kind::Mdp : GenParams::Kind::Graph;
    return cli::cmd_gen(gen, std::cout, std::cerr);
  }
  if (check_cmd->parsed()) return cli::cmd_check(check, std::cout, std::cerr);
  if (bench_cmd->parsed()) {
    bench.config.sizes = parse_sizes(sizes_text);
    if (bench_suite != "all") bench.config.suites = {bench_suite};
    return cli::cmd_bench(bench, std::cout, std::cerr);
  }
  return cli::cmd_solve(solve, std::cout, std::cerr);
}
