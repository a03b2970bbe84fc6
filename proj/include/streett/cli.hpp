#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "streett/bench.hpp"
#include "streett/check.hpp"
#include "streett/dec_mec.hpp"
#include "streett/gen.hpp"
#include "streett/good_component.hpp"
#include "streett/mdp_streett.hpp"
#include "streett/mec.hpp"
#include "streett/parse.hpp"

namespace streett::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitValidation = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

inline std::string partition_text(const std::vector<VertexSet>& mecs, const VertexSet& residue) {
  std::ostringstream os;
  for (const VertexSet& mec : mecs) {
    os << 'M';
    for (Vertex v : mec) os << ' ' << v;
    os << '\n';
  }
  os << 'R';
  for (Vertex v : residue) os << ' ' << v;
  os << '\n';
  return std::move(os).str();
}

inline void print_vertex_line(std::ostream& os, const char* label, const VertexSet& s) {
  os << label;
  for (Vertex v : s) os << ' ' << v;
  os << '\n';
}

inline VertexSet residue_of(const MDPModel& m, const std::vector<VertexSet>& mecs) {
  std::vector<char> covered(m.vertex_count(), 0);
  for (const VertexSet& mec : mecs)
    for (Vertex v : mec) covered[v] = 1;
  VertexSet out;
  for (Vertex v = 0; v < m.vertex_count(); ++v)
    if (!covered[v]) out.push_back(v);
  return out;
}

/// Deletion trace file: one `D <u> <v>` per line, '#' comments allowed.
inline std::vector<Edge> parse_deletions(const std::string& text) {
  streett::detail::LineLexer lex{text};
  std::vector<std::string_view> tok;
  std::vector<Edge> out;
  while (lex.next(tok)) {
    if (tok[0] != "D" || tok.size() != 3)
      throw ParseError(lex.line_no, "expected 'D <u> <v>'");
    out.push_back({static_cast<Vertex>(streett::detail::parse_int(tok[1], lex.line_no, "u")),
                   static_cast<Vertex>(streett::detail::parse_int(tok[2], lex.line_no, "v"))});
  }
  return out;
}

}  // namespace detail

struct SolveArgs {
  std::string mode;  // graph-streett | mdp-streett | mec | asreach | decmec
  std::string instance_path;
  bool json = false;
  bool verbose = false;
  bool include_trivial = false;
  VertexSet targets;           // asreach
  std::string deletions_path;  // decmec
  std::string trace_out_path;  // graph-streett / mdp-streett deletion-trace log
};

namespace detail {

inline void write_trace(const std::string& path, const std::vector<Edge>& trace) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write file: " + path);
  for (const Edge& e : trace) f << "D " << e.from << ' ' << e.to << '\n';
}

}  // namespace detail

inline int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = parse_instance(detail::read_file(args.instance_path));
    nlohmann::json j;
    if (args.mode == "graph-streett" || args.mode == "mdp-streett") {
      VertexSet winning;
      if (args.mode == "graph-streett") {
        GraphSolveResult res = winning_set_graph_full(inst.model, inst.spec);
        if (!args.trace_out_path.empty())
          detail::write_trace(args.trace_out_path, res.deletion_trace);
        winning = std::move(res.winning);
      } else {
        MdpSolveResult res = winning_set_mdp_full(inst.model, inst.spec);
        if (!args.trace_out_path.empty())
          detail::write_trace(args.trace_out_path, res.deletion_trace);
        winning = std::move(res.winning);
      }
      if (args.json) {
        j["winning"] = winning;
        out << j.dump() << '\n';
      } else {
        detail::print_vertex_line(out, "WINNING", winning);
      }
    } else if (args.mode == "mec") {
      MecDecomposition dec = mec_decomposition(inst.model, args.include_trivial);
      if (args.json) {
        j["mecs"] = dec.mecs;
        j["residue"] = dec.residue;
        out << j.dump() << '\n';
      } else {
        for (const VertexSet& mec : dec.mecs) detail::print_vertex_line(out, "MEC", mec);
        detail::print_vertex_line(out, "RESIDUE", dec.residue);
      }
    } else if (args.mode == "asreach") {
      VertexSet targets = canonical(args.targets);
      if (!targets.empty() &&
          (targets.front() < 0 || targets.back() >= inst.model.vertex_count()))
        throw std::invalid_argument("target out of range");
      VertexSet winning = asw_reach(inst.model, targets);
      if (args.json) {
        j["winning"] = winning;
        out << j.dump() << '\n';
      } else {
        detail::print_vertex_line(out, "WINNING", winning);
      }
    } else if (args.mode == "decmec") {
      std::vector<Edge> deletions =
          detail::parse_deletions(detail::read_file(args.deletions_path));
      DecMecEngine engine(inst.model);
      auto snapshot = [&] {
        std::vector<VertexSet> mecs = engine.current_mecs();
        VertexSet residue = detail::residue_of(inst.model, mecs);
        return std::pair(std::move(mecs), std::move(residue));
      };
      auto [mecs0, residue0] = snapshot();
      std::string digest0 =
          detail::hex64(detail::fnv1a(detail::partition_text(mecs0, residue0)));
      nlohmann::json steps = nlohmann::json::array();
      if (args.json) {
        steps.push_back({{"digest", digest0}});
      } else {
        out << "STEP 0 DIGEST " << digest0 << '\n';
        if (args.verbose) {
          for (const VertexSet& mec : mecs0) detail::print_vertex_line(out, "  MEC", mec);
          detail::print_vertex_line(out, "  RESIDUE", residue0);
        }
      }
      for (size_t i = 0; i < deletions.size(); ++i) {
        const Edge& e = deletions[i];
        auto res = engine.delete_player_edge(e.from, e.to);
        auto [mecs, residue] = snapshot();
        std::string digest =
            detail::hex64(detail::fnv1a(detail::partition_text(mecs, residue)));
        if (args.json) {
          nlohmann::json step;
          step["delete"] = {e.from, e.to};
          step["digest"] = digest;
          step["new_mecs"] = res.new_mecs.size();
          step["orphaned"] = res.orphaned;
          steps.push_back(std::move(step));
        } else {
          out << "STEP " << (i + 1) << " DELETE " << e.from << ' ' << e.to << " DIGEST "
              << digest << " NEW " << res.new_mecs.size() << '\n';
          if (args.verbose) {
            for (const VertexSet& mec : mecs) detail::print_vertex_line(out, "  MEC", mec);
            detail::print_vertex_line(out, "  RESIDUE", residue);
          }
        }
      }
      auto [mecs, residue] = snapshot();
      if (args.json) {
        j["steps"] = std::move(steps);
        j["mecs"] = mecs;
        j["residue"] = residue;
        out << j.dump() << '\n';
      } else {
        for (const VertexSet& mec : mecs) detail::print_vertex_line(out, "MEC", mec);
        detail::print_vertex_line(out, "RESIDUE", residue);
      }
    } else {
      err << "error: unknown solve mode '" << args.mode << "'\n";
      return kExitValidation;
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

struct GenArgs {
  GenParams params;
  std::string out_path;  // empty = stdout
};

inline int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Instance inst = generate_instance(args.params);
    std::string text = serialize_instance(inst.model, inst.spec);
    if (args.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(args.out_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write file: " + args.out_path);
      f << text;
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

struct CheckArgs {
  std::string suite = "all";
  CheckOptions options;
};

inline int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  try {
    return run_check(args.suite, args.options, out) == 0 ? kExitOk : kExitCheckFailed;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitValidation;
  }
}

struct BenchArgs {
  BenchConfig config;
  std::string out_path;  // empty = stdout
};

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  try {
    std::vector<BenchRow> rows = run_bench(args.config, &err);
    if (args.out_path.empty()) {
      write_bench_csv(out, rows);
    } else {
      std::ofstream f(args.out_path, std::ios::binary);
      if (!f) throw std::invalid_argument("cannot write file: " + args.out_path);
      write_bench_csv(f, rows);
    }
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace streett::cli
