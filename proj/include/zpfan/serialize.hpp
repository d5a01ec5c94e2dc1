#pragma once

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/complex.hpp"
#include "zpfan/poset.hpp"

// Line-based text format shared by complexes and posets:
//
//   complex | poset
//   group cyclic <p>            or   group table <q>  followed by q "row ..." lines
//   vertex <index> <label>      one per vertex / element
//   action <g> <image of 0> <image of 1> ...
//   simplex <v> <v> ...         maximal simplices (complexes)
//   cover <a> <b>               covering pairs a < b (posets)
//   end

namespace zpfan {

namespace detail {

inline void write_group(std::ostream& out, const FiniteGroup& g) {
  if (g.is_cyclic()) {
    out << "group cyclic " << g.order() << "\n";
    return;
  }
  out << "group table " << g.order() << "\n";
  for (int a = 0; a < g.order(); ++a) {
    out << "row";
    for (int b = 0; b < g.order(); ++b) out << ' ' << g.mul(a, b);
    out << "\n";
  }
}

inline void write_vertices_and_action(std::ostream& out, const std::vector<std::string>& labels,
                                      const std::vector<std::vector<int>>& action) {
  for (std::size_t v = 0; v < labels.size(); ++v) out << "vertex " << v << ' ' << labels[v] << "\n";
  for (std::size_t g = 1; g < action.size(); ++g) {
    out << "action " << g;
    for (int x : action[g]) out << ' ' << x;
    out << "\n";
  }
}

struct ParsedHeader {
  std::string kind;
  std::vector<std::vector<int>> table;
  int cyclic = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> action;  // rows for g >= 1
  std::vector<std::vector<int>> items;   // simplices or cover pairs

  FiniteGroup group() const { return cyclic ? FiniteGroup::cyclic(cyclic) : FiniteGroup(table); }

  std::vector<std::vector<int>> full_action() const {
    const int order = cyclic ? cyclic : static_cast<int>(table.size());
    std::vector<std::vector<int>> out(order);
    out[0].resize(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v) out[0][v] = static_cast<int>(v);
    if (static_cast<int>(action.size()) != order - 1) throw std::runtime_error("action rows missing");
    for (int g = 1; g < order; ++g) out[g] = action[g - 1];
    return out;
  }
};

inline ParsedHeader parse_serialized(std::istream& in, const std::string& expected_kind, const std::string& item_word) {
  ParsedHeader h;
  std::string line;
  int lineno = 0;
  bool done = false;
  auto fail = [&](const std::string& msg) { throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg); };
  while (!done && std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (h.kind.empty()) {
      if (word != expected_kind) fail("expected '" + expected_kind + "'");
      h.kind = word;
      continue;
    }
    if (word == "group") {
      std::string how;
      int q = 0;
      if (!(ls >> how >> q) || q < 2) fail("bad group line");
      if (how == "cyclic") h.cyclic = q;
      else if (how != "table") fail("unknown group kind");
    } else if (word == "row") {
      std::vector<int> row;
      for (int x; ls >> x;) row.push_back(x);
      h.table.push_back(row);
    } else if (word == "vertex") {
      int idx = -1;
      std::string label;
      if (!(ls >> idx >> label) || idx != static_cast<int>(h.labels.size())) fail("vertices must be listed in order");
      h.labels.push_back(label);
    } else if (word == "action") {
      int g = 0;
      if (!(ls >> g) || g != static_cast<int>(h.action.size()) + 1) fail("action rows must be listed in order");
      std::vector<int> row;
      for (int x; ls >> x;) row.push_back(x);
      h.action.push_back(row);
    } else if (word == item_word) {
      std::vector<int> item;
      for (int x; ls >> x;) item.push_back(x);
      h.items.push_back(item);
    } else if (word == "end") {
      done = true;
    } else {
      fail("unknown keyword '" + word + "'");
    }
  }
  if (!done) throw std::runtime_error("missing 'end'");
  return h;
}

}  // namespace detail

inline std::string serialize(const SimplicialGComplex& k) {
  std::ostringstream out;
  out << "complex\n";
  detail::write_group(out, k.group());
  detail::write_vertices_and_action(out, k.labels(), k.action());
  for (const Simplex& s : k.maximal_simplices()) {
    out << "simplex";
    for (int v : s) out << ' ' << v;
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

inline std::string serialize(const GPoset& p) {
  std::ostringstream out;
  out << "poset\n";
  detail::write_group(out, p.group());
  detail::write_vertices_and_action(out, p.labels(), p.action());
  for (auto [a, b] : p.cover_pairs()) out << "cover " << a << ' ' << b << "\n";
  out << "end\n";
  return out.str();
}

inline SimplicialGComplex parse_complex(std::istream& in) {
  detail::ParsedHeader h = detail::parse_serialized(in, "complex", "simplex");
  return SimplicialGComplex::from_maximal(h.group(), h.labels, h.full_action(), h.items);
}

inline SimplicialGComplex parse_complex(const std::string& text) {
  std::istringstream in(text);
  return parse_complex(in);
}

inline GPoset parse_poset(std::istream& in) {
  detail::ParsedHeader h = detail::parse_serialized(in, "poset", "cover");
  std::vector<std::pair<int, int>> covers;
  for (const auto& c : h.items) {
    if (c.size() != 2) throw std::runtime_error("cover line needs two elements");
    covers.emplace_back(c[0], c[1]);
  }
  return GPoset::from_relations(h.group(), h.labels, h.full_action(), covers);
}

inline GPoset parse_poset(const std::string& text) {
  std::istringstream in(text);
  return parse_poset(in);
}

}  // namespace zpfan
