#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "streett/model.hpp"

namespace streett {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

namespace detail {

struct LineLexer {
  std::string_view text;
  size_t pos = 0;
  int line_no = 0;

  /// Next non-empty, non-comment line as whitespace-separated tokens.
  bool next(std::vector<std::string_view>& tokens) {
    while (pos < text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      tokens.clear();
      size_t i = 0;
      while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
      }
      if (tokens.empty()) continue;
      if (tokens[0].front() == '#') continue;
      return true;
    }
    return false;
  }
};

inline long long parse_int(std::string_view tok, int line, const char* what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" +
                               std::string(tok) + "'");
  return value;
}

}  // namespace detail

/// Parses the line-oriented instance format:
///   MDP <n> <m> <k>
///   n lines  V <id> <P|R>
///   m lines  E <u> <v>
///   for j = 1..k:  L <j> <c> <id...>  then  U <j> <c> <id...>
/// '#' starts a comment line. Malformed input is rejected with a
/// position-bearing ParseError.
inline Instance parse_instance(std::string_view text) {
  detail::LineLexer lex{text};
  std::vector<std::string_view> tok;

  if (!lex.next(tok)) throw ParseError(lex.line_no, "missing header");
  if (tok[0] != "MDP" || tok.size() != 4)
    throw ParseError(lex.line_no, "expected header 'MDP <n> <m> <k>'");
  const long long n = detail::parse_int(tok[1], lex.line_no, "n");
  const long long m = detail::parse_int(tok[2], lex.line_no, "m");
  const long long k = detail::parse_int(tok[3], lex.line_no, "k");
  if (n < 0 || m < 0 || k < 0) throw ParseError(lex.line_no, "negative count in header");

  std::vector<Owner> owners(n, Owner::Player1);
  std::vector<char> declared(n, 0);
  for (long long i = 0; i < n; ++i) {
    if (!lex.next(tok)) throw ParseError(lex.line_no, "count mismatch: expected vertex line");
    if (tok[0] != "V" || tok.size() != 3)
      throw ParseError(lex.line_no, "expected 'V <id> <P|R>'");
    long long id = detail::parse_int(tok[1], lex.line_no, "vertex id");
    if (id < 0 || id >= n)
      throw ParseError(lex.line_no, "vertex id " + std::to_string(id) + " out of range");
    if (declared[id])
      throw ParseError(lex.line_no, "duplicate vertex declaration " + std::to_string(id));
    declared[id] = 1;
    if (tok[2] == "P")
      owners[id] = Owner::Player1;
    else if (tok[2] == "R")
      owners[id] = Owner::Random;
    else
      throw ParseError(lex.line_no, "vertex tag must be P or R");
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  {
    std::unordered_set<uint64_t> seen;
    seen.reserve(2 * m);
    for (long long i = 0; i < m; ++i) {
      if (!lex.next(tok)) throw ParseError(lex.line_no, "count mismatch: expected edge line");
      if (tok[0] != "E" || tok.size() != 3) throw ParseError(lex.line_no, "expected 'E <u> <v>'");
      long long u = detail::parse_int(tok[1], lex.line_no, "edge source");
      long long v = detail::parse_int(tok[2], lex.line_no, "edge target");
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw ParseError(lex.line_no, "edge endpoint out of range");
      if (!seen.insert((static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v)).second)
        throw ParseError(lex.line_no, "duplicate edge (" + std::to_string(u) + "," +
                                          std::to_string(v) + ")");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
  }

  StreettSpec spec;
  spec.L.resize(k);
  spec.U.resize(k);
  for (long long j = 1; j <= k; ++j) {
    for (const char* which : {"L", "U"}) {
      if (!lex.next(tok))
        throw ParseError(lex.line_no, std::string("count mismatch: expected ") + which + " " +
                                          std::to_string(j));
      if (tok[0] != std::string_view(which) || tok.size() < 3)
        throw ParseError(lex.line_no,
                         std::string("expected '") + which + " <j> <c> <id...>'");
      long long jj = detail::parse_int(tok[1], lex.line_no, "pair index");
      if (jj != j)
        throw ParseError(lex.line_no, std::string("expected pair index ") + std::to_string(j));
      long long c = detail::parse_int(tok[2], lex.line_no, "set size");
      if (c != static_cast<long long>(tok.size()) - 3)
        throw ParseError(lex.line_no, std::string("count mismatch in ") + which + " " +
                                          std::to_string(j));
      VertexSet set;
      for (size_t t = 3; t < tok.size(); ++t) {
        long long id = detail::parse_int(tok[t], lex.line_no, "set member");
        if (id < 0 || id >= n) throw ParseError(lex.line_no, "set member out of range");
        set.push_back(static_cast<Vertex>(id));
      }
      size_t before = set.size();
      set = canonical(std::move(set));
      if (set.size() != before)
        throw ParseError(lex.line_no, std::string("duplicate id in ") + which + " " +
                                          std::to_string(j));
      (*which == 'L' ? spec.L : spec.U)[j - 1] = std::move(set);
    }
  }
  if (lex.next(tok)) throw ParseError(lex.line_no, "unexpected trailing line");

  Instance inst{MDPModel(static_cast<Vertex>(n), std::move(owners), std::move(edges)),
                std::move(spec)};
  inst.model.validate_input();
  inst.spec.validate(inst.model.vertex_count());
  return inst;
}

/// Canonical serialization: ascending ids everywhere; parse(serialize(x)) is
/// the identity on canonical instances.
inline std::string serialize_instance(const MDPModel& m, const StreettSpec& spec) {
  std::ostringstream os;
  os << "MDP " << m.vertex_count() << ' ' << m.edge_count() << ' ' << spec.pair_count() << '\n';
  for (Vertex v = 0; v < m.vertex_count(); ++v)
    os << "V " << v << ' ' << (m.is_random(v) ? 'R' : 'P') << '\n';
  for (const Edge& e : m.edges()) os << "E " << e.from << ' ' << e.to << '\n';
  for (int j = 0; j < spec.pair_count(); ++j) {
    os << "L " << (j + 1) << ' ' << spec.L[j].size();
    for (Vertex v : spec.L[j]) os << ' ' << v;
    os << '\n';
    os << "U " << (j + 1) << ' ' << spec.U[j].size();
    for (Vertex v : spec.U[j]) os << ' ' << v;
    os << '\n';
  }
  return std::move(os).str();
}

}  // namespace streett
