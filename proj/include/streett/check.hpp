#pragma once

#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <string>

#include "streett/dec_mec.hpp"
#include "streett/gen.hpp"
#include "streett/good_component.hpp"
#include "streett/mdp_streett.hpp"
#include "streett/mec.hpp"
#include "streett/oracles.hpp"
#include "streett/parse.hpp"

namespace streett {

/// Differential checking of the fast paths against the brute-force oracles on
/// seeded random instances. The solver hooks exist so tests can inject a
/// mutated fast path and watch the checker catch it.
struct CheckOptions {
  long long trials = 100;
  Vertex max_n = 30;
  uint64_t seed = 0;
  std::function<VertexSet(const MDPModel&, const StreettSpec&)> graph_solver =
      [](const MDPModel& m, const StreettSpec& s) { return winning_set_graph(m, s); };
  std::function<MecDecomposition(const MDPModel&)> mec_solver =
      [](const MDPModel& m) { return mec_decomposition(m); };
  std::function<VertexSet(const MDPModel&, const VertexSet&)> asreach_solver =
      [](const MDPModel& m, const VertexSet& t) { return asw_reach(m, t); };
  std::function<VertexSet(const MDPModel&, const StreettSpec&)> mdp_solver =
      [](const MDPModel& m, const StreettSpec& s) { return winning_set_mdp(m, s); };
};

namespace detail {

inline void print_set(std::ostream& os, const VertexSet& s) {
  for (Vertex v : s) os << ' ' << v;
  os << '\n';
}

inline void report_counterexample(std::ostream& os, const std::string& suite, long long trial,
                                  const Instance& inst, const std::string& context,
                                  const VertexSet& got, const VertexSet& expected) {
  os << "counterexample in suite " << suite << ", trial " << trial << ":\n"
     << serialize_instance(inst.model, inst.spec);
  if (!context.empty()) os << context << '\n';
  os << "got:     ";
  print_set(os, got);
  os << "expected:";
  print_set(os, expected);
}

inline Instance check_instance(std::mt19937_64& rng, bool mdp, Vertex max_n, int max_k) {
  GenParams p;
  p.kind = mdp ? GenParams::Kind::Mdp : GenParams::Kind::Graph;
  p.n = 1 + static_cast<Vertex>(rng() % max_n);
  p.m = std::min<long long>(rng() % (4 * p.n + 1), static_cast<long long>(p.n) * p.n);
  p.k = max_k > 0 ? static_cast<int>(rng() % (max_k + 1)) : 0;
  p.seed = rng();
  p.p_random = 0.2 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
  return generate_instance(p);
}

}  // namespace detail

/// Runs `trials` differential trials for one suite; returns the number of
/// disagreements (0 = pass) and reports the first counterexample verbatim.
inline long long run_check_suite(const std::string& suite, const CheckOptions& opt,
                                 std::ostream& os) {
  std::mt19937_64 rng(opt.seed);
  long long failures = 0;
  for (long long t = 0; t < opt.trials; ++t) {
    if (suite == "graph") {
      Instance inst = detail::check_instance(rng, false, opt.max_n, 4);
      VertexSet got = opt.graph_solver(inst.model, inst.spec);
      VertexSet expected = oracle_streett_graph(inst.model, inst.spec);
      if (got != expected) {
        if (failures++ == 0) detail::report_counterexample(os, suite, t, inst, "", got, expected);
      }
    } else if (suite == "mec") {
      Instance inst = detail::check_instance(rng, true, opt.max_n, 0);
      MecDecomposition got = opt.mec_solver(inst.model);
      MecDecomposition expected = oracle_mec(inst.model);
      if (got.mecs != expected.mecs || got.residue != expected.residue) {
        if (failures++ == 0) {
          VertexSet gf, ef;
          for (const auto& s : got.mecs) gf.insert(gf.end(), s.begin(), s.end());
          for (const auto& s : expected.mecs) ef.insert(ef.end(), s.begin(), s.end());
          detail::report_counterexample(os, suite, t, inst, "(flattened MEC members)", gf, ef);
        }
      }
    } else if (suite == "asreach") {
      Instance inst = detail::check_instance(rng, true, opt.max_n, 0);
      VertexSet targets;
      for (Vertex v = 0; v < inst.model.vertex_count(); ++v)
        if (rng() % 4 == 0) targets.push_back(v);
      VertexSet got = opt.asreach_solver(inst.model, targets);
      VertexSet expected = oracle_asw_reach(inst.model, targets);
      if (got != expected) {
        if (failures++ == 0) {
          std::string ctx = "targets:";
          for (Vertex v : targets) ctx += ' ' + std::to_string(v);
          detail::report_counterexample(os, suite, t, inst, ctx, got, expected);
        }
      }
    } else if (suite == "mdp") {
      Instance inst = detail::check_instance(rng, true, opt.max_n, 3);
      VertexSet got = opt.mdp_solver(inst.model, inst.spec);
      VertexSet expected = oracle_mdp_streett(inst.model, inst.spec);
      if (got != expected) {
        if (failures++ == 0) detail::report_counterexample(os, suite, t, inst, "", got, expected);
      }
    } else if (suite == "decmec") {
      Instance inst = detail::check_instance(rng, true, opt.max_n, 0);
      const MDPModel& m = inst.model;
      DecMecEngine engine(m);
      std::vector<Edge> order;
      for (const Edge& e : m.edges())
        if (m.is_player(e.from)) order.push_back(e);
      for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
      std::set<Edge> deleted;
      std::string ctx = "deletions:";
      for (const Edge& del : order) {
        engine.delete_player_edge(del.from, del.to);
        deleted.insert(del);
        ctx += " (" + std::to_string(del.from) + "," + std::to_string(del.to) + ")";
        std::vector<Edge> rest;
        for (const Edge& e : m.edges())
          if (!deleted.count(e)) rest.push_back(e);
        MDPModel res(m.vertex_count(), m.owners(), std::move(rest));
        MecDecomposition expected = oracle_mec(res);
        if (engine.current_mecs() != expected.mecs) {
          if (failures++ == 0) {
            VertexSet gf, ef;
            for (const auto& s : engine.current_mecs()) gf.insert(gf.end(), s.begin(), s.end());
            for (const auto& s : expected.mecs) ef.insert(ef.end(), s.begin(), s.end());
            detail::report_counterexample(os, suite, t, inst, ctx, gf, ef);
          }
          break;
        }
      }
    } else {
      throw std::invalid_argument("unknown check suite: " + suite);
    }
  }
  os << "suite " << suite << ": " << (opt.trials - failures) << "/" << opt.trials
     << " trials ok\n";
  return failures;
}

inline long long run_check(const std::string& suite, const CheckOptions& opt, std::ostream& os) {
  if (suite != "all") return run_check_suite(suite, opt, os);
  long long failures = 0;
  for (const char* s : {"graph", "mec", "asreach", "mdp", "decmec"})
    failures += run_check_suite(s, opt, os);
  return failures;
}

}  // namespace streett
