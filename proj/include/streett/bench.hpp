#pragma once

#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "streett/gen.hpp"
#include "streett/good_component.hpp"
#include "streett/mec.hpp"

namespace streett {

struct BenchRow {
  std::string suite;
  Vertex n = 0;
  long long m = 0;
  long long b = 0;
  double seconds = 0.0;
  long long deletions = 0;
  long long small_charges = 0;
  long long fixpoint_iterations = 0;
  double slope = 0.0;  // per-suite fitted log-log slope, repeated on each row
};

struct BenchConfig {
  std::vector<long long> sizes;          // edge counts
  int reps = 1;                          // timing repetitions, median reported
  uint64_t seed = 0;
  std::vector<std::string> suites = {"graph", "mec", "asreach"};
};

namespace detail {

template <typename F>
double time_median_seconds(int reps, F&& body) {
  std::vector<double> times;
  for (int r = 0; r < std::max(1, reps); ++r) {
    auto start = std::chrono::steady_clock::now();
    body();
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start;
    times.push_back(d.count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

inline double fit_loglog_slope(const std::vector<std::pair<long long, double>>& points) {
  if (points.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [m, t] : points) {
    double x = std::log(static_cast<double>(m));
    double y = std::log(std::max(t, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline long long sum_counters(const std::vector<int32_t>& v) {
  long long s = 0;
  for (int32_t x : v) s += x;
  return s;
}

}  // namespace detail

/// Times one suite over the configured edge counts; non-timing columns are
/// deterministic under the seed.
inline std::vector<BenchRow> run_bench_suite(const std::string& suite, const BenchConfig& cfg,
                                             std::ostream* progress = nullptr) {
  std::vector<BenchRow> rows;
  for (size_t i = 0; i < cfg.sizes.size(); ++i) {
    const long long m = cfg.sizes[i];
    BenchRow row;
    row.suite = suite;
    row.m = m;
    if (suite == "graph") {
      Instance inst = generate_bench_graph(m, 8, cfg.seed + i);
      row.n = inst.model.vertex_count();
      row.m = static_cast<long long>(inst.model.edge_count());
      row.b = inst.spec.bits();
      GraphSolveResult result;
      row.seconds = detail::time_median_seconds(
          cfg.reps, [&] { result = winning_set_graph_full(inst.model, inst.spec); });
      row.deletions = result.stats.edges_deleted;
      row.small_charges = detail::sum_counters(result.stats.small_appearances);
    } else if (suite == "mec") {
      Instance inst = generate_bench_mdp(m, cfg.seed + i);
      row.n = inst.model.vertex_count();
      row.m = static_cast<long long>(inst.model.edge_count());
      row.b = 0;
      MecStats stats;
      row.seconds = detail::time_median_seconds(cfg.reps, [&] {
        stats = MecStats{};
        mec_decomposition_full(inst.model, false, &stats);
      });
      row.deletions = stats.deletions;
      row.small_charges = detail::sum_counters(stats.small_appearances);
    } else if (suite == "asreach") {
      Instance inst = generate_bench_mdp(m, cfg.seed + i);
      row.n = inst.model.vertex_count();
      row.m = static_cast<long long>(inst.model.edge_count());
      row.b = 0;
      std::mt19937_64 rng(cfg.seed + i);
      VertexSet targets;
      for (int t = 0; t < std::max(1, row.n / 100); ++t)
        targets.push_back(static_cast<Vertex>(rng() % row.n));
      targets = canonical(std::move(targets));
      MecStats stats;
      row.seconds = detail::time_median_seconds(cfg.reps, [&] {
        stats = MecStats{};
        asw_reach_full(inst.model, targets, &stats);
      });
      row.deletions = stats.deletions;
      row.small_charges = detail::sum_counters(stats.small_appearances);
      row.fixpoint_iterations = stats.fixpoint_iterations;
    } else {
      throw std::invalid_argument("unknown bench suite: " + suite);
    }
    if (progress)
      *progress << "# " << suite << " m=" << row.m << " time=" << row.seconds << "s\n";
    rows.push_back(row);
  }
  std::vector<std::pair<long long, double>> points;
  for (const BenchRow& r : rows) points.emplace_back(r.m, r.seconds);
  double slope = detail::fit_loglog_slope(points);
  for (BenchRow& r : rows) r.slope = slope;
  return rows;
}

inline std::vector<BenchRow> run_bench(const BenchConfig& cfg, std::ostream* progress = nullptr) {
  std::vector<BenchRow> rows;
  for (const std::string& suite : cfg.suites) {
    std::vector<BenchRow> part = run_bench_suite(suite, cfg, progress);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "suite,n,m,b,seconds,deletions,small_charges,fixpoint_iterations,slope\n";
  for (const BenchRow& r : rows) {
    os << r.suite << ',' << r.n << ',' << r.m << ',' << r.b << ',' << r.seconds << ','
       << r.deletions << ',' << r.small_charges << ',' << r.fixpoint_iterations << ','
       << r.slope << '\n';
  }
}

}  // namespace streett
