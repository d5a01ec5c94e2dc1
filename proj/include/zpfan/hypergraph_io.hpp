#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/hypergraph.hpp"

namespace zpfan {

/// Parses the line format
///   v <n>
///   e <v1> <v2> ...
/// with 1-based vertices and '#' comments.
inline Hypergraph parse_hypergraph(std::istream& in) {
  int n = -1;
  std::vector<std::vector<int>> edges;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      if (n != -1) fail("duplicate vertex count");
      if (!(ls >> n) || n < 1) fail("expected a positive vertex count");
    } else if (tag == "e") {
      if (n == -1) fail("edge before vertex count");
      std::vector<int> e;
      int v;
      while (ls >> v) {
        if (v < 1 || v > n) fail("vertex " + std::to_string(v) + " out of range");
        e.push_back(v - 1);
      }
      if (!ls.eof()) fail("malformed vertex");
      if (e.empty()) fail("empty edge");
      edges.push_back(std::move(e));
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (tag == "v" && (ls >> extra)) fail("trailing text after vertex count");
  }
  if (n == -1) throw std::runtime_error("missing 'v <n>' line");
  return build_hypergraph(n, edges);
}

inline Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  return parse_hypergraph(in);
}

inline Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_hypergraph(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline std::string format_hypergraph(const Hypergraph& h) {
  std::ostringstream out;
  out << "v " << h.vertex_count() << "\n";
  for (VertexSet e : h.edges()) {
    out << "e";
    for_each_member(e, [&](int v) { out << ' ' << v + 1; });
    out << "\n";
  }
  return out.str();
}

/// "{1,2,3}" style rendering with 1-based vertices.
inline std::string format_set(VertexSet s) {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](int v) {
    if (!first) out += ",";
    out += std::to_string(v + 1);
    first = false;
  });
  return out + "}";
}


/// Built-in instances by name: K<n> (complete graph), K<n>_<k> (complete
/// k-uniform), C<n> (cycle), KG<n>_<k> (Kneser graph KG(n,k)), petersen.
inline Hypergraph named_hypergraph(const std::string& name) {
  auto numbers = [&](std::size_t from) {
    std::vector<int> out;
    std::size_t pos = from;
    while (pos < name.size()) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(name.substr(pos), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("unknown hypergraph name '" + name + "'");
      }
      if (v < 1) throw std::invalid_argument("unknown hypergraph name '" + name + "'");
      out.push_back(v);
      pos += used;
      if (pos < name.size()) {
        if (name[pos] != '_') throw std::invalid_argument("unknown hypergraph name '" + name + "'");
        ++pos;
      }
    }
    return out;
  };
  if (name == "petersen") return usual_kneser(5, 2, 2).graph;
  if (name.rfind("KG", 0) == 0) {
    const std::vector<int> a = numbers(2);
    if (a.size() == 2) return usual_kneser(a[0], a[1], 2).graph;
  } else if (name.rfind("K", 0) == 0) {
    const std::vector<int> a = numbers(1);
    if (a.size() == 1) return complete_hypergraph(a[0], 2);
    if (a.size() == 2) return complete_hypergraph(a[0], a[1]);
  } else if (name.rfind("C", 0) == 0) {
    const std::vector<int> a = numbers(1);
    if (a.size() == 1 && a[0] >= 3) return cycle_graph(a[0]);
  }
  throw std::invalid_argument("unknown hypergraph name '" + name + "'");
}

}  // namespace zpfan
