#pragma once

#include <chrono>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zpfan/alternation.hpp"
#include "zpfan/chromatic.hpp"
#include "zpfan/colorful.hpp"
#include "zpfan/constructions.hpp"
#include "zpfan/equivariant_search.hpp"
#include "zpfan/index_bounds.hpp"

namespace zpfan {

/// One quantity in the hierarchy. `upper` is empty when only a lower bound
/// is known; `applicable` is false when a hypothesis fails.
struct BoundEntry {
  std::string name;
  bool applicable = true;
  int lower = 0;
  std::optional<int> upper;
  std::string provenance;
  nlohmann::json certificate = nlohmann::json::object();
  double wall_ms = 0;
  std::string note;

  bool exact() const { return applicable && upper && *upper == lower; }

  std::string value_text() const {
    if (!applicable) return "n/a";
    if (exact()) return std::to_string(lower);
    return "[" + std::to_string(lower) + ", " + (upper ? std::to_string(*upper) : std::string("?")) + "]";
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"name", name}, {"applicable", applicable}, {"provenance", provenance},
                     {"certificate", certificate}, {"wall_ms", wall_ms}};
    if (applicable) {
      j["lower"] = lower;
      j["upper"] = upper ? nlohmann::json(*upper) : nlohmann::json(nullptr);
      j["exact"] = exact();
    }
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

struct BoundsReport {
  std::string instance;
  int r = 2, p = 2;
  int ground_vertices = 0;
  std::vector<BoundEntry> entries;  // in the order of the chain
  std::vector<std::string> violations;

  bool consistent() const { return violations.empty(); }

  nlohmann::json to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const BoundEntry& e : entries) list.push_back(e.to_json());
    return {{"instance", instance}, {"r", r},        {"p", p}, {"ground_vertices", ground_vertices},
            {"entries", list},      {"consistent", consistent()}, {"violations", violations}};
  }

  std::string table() const {
    std::ostringstream out;
    out << "instance " << instance << "  r=" << r << " p=" << p << "\n";
    std::size_t w = 8;
    for (const BoundEntry& e : entries) w = std::max(w, e.name.size());
    for (const BoundEntry& e : entries) {
      out << "  " << std::left << std::setw(static_cast<int>(w)) << e.name << "  " << std::setw(9) << e.value_text()
          << "  " << e.provenance;
      if (!e.note.empty()) out << " (" << e.note << ")";
      out << "  " << std::fixed << std::setprecision(1) << e.wall_ms << " ms\n";
    }
    out << "chain " << (consistent() ? "consistent" : "INCONSISTENT") << "\n";
    for (const std::string& v : violations) out << "  violation: " << v << "\n";
    return out.str();
  }
};

struct BoundsOptions {
  IndBoundsOptions ind{};
  XindOptions xind{1, SearchBudget{20'000'000}};
  SearchBudget search{50'000'000};
  bool with_xind = true;
  bool allow_nonprime = false;
};

namespace detail {

template <class Fn>
BoundEntry timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  BoundEntry e = fn();
  e.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

inline long long binomial(int n, int k) {
  long long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace detail

/// Flags every pair a before b in the chain with a certified lower bound of
/// a above a certified upper bound of b.
inline std::vector<std::string> chain_violations(const std::vector<BoundEntry>& chain) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < chain.size(); ++a)
    for (std::size_t b = a + 1; b < chain.size(); ++b) {
      if (!chain[a].applicable || !chain[b].applicable || !chain[b].upper) continue;
      if (chain[a].lower > *chain[b].upper)
        out.push_back(chain[a].name + " >= " + std::to_string(chain[a].lower) + " exceeds " + chain[b].name +
                      " <= " + std::to_string(*chain[b].upper));
    }
  return out;
}

/// cd_p(F) <= |V(F)| - alt_p(F) <= ind(B_0(KG^r(F), Z_p)) + 1
///   <= Xind(Hom(K^r_p, KG^r(F))) + p <= (r-1) chi(KG^r(F)),
/// the Xind entry only when KG^r(F) has a clique of size p.
inline BoundsReport bounds_report(const Hypergraph& f, int r, int p, const std::string& instance,
                                  const BoundsOptions& opt = {}) {
  require_modulus(p, r, opt.allow_nonprime, "bounds_report");
  BoundsReport rep;
  rep.instance = instance;
  rep.r = r;
  rep.p = p;
  rep.ground_vertices = f.vertex_count();
  const int n = f.vertex_count();
  const KneserHypergraph kg = kneser(f, r);

  rep.entries.push_back(detail::timed([&] {
    BoundEntry e;
    e.name = "cd_p(F)";
    const DefectResult d = colorability_defect(f, p, opt.search);
    e.lower = d.value;
    if (d.exact) e.upper = d.value;
    e.provenance = "exact search over removal sets";
    e.certificate = {{"removed", members(d.removed)}};
    return e;
  }));

  rep.entries.push_back(detail::timed([&] {
    BoundEntry e;
    e.name = "|V(F)|-alt_p(F)";
    const detail::AltBound a = detail::alternation_for_bound(f, p, opt.ind);
    e.lower = n - a.alt;
    if (a.optimal) {
      e.upper = n - a.alt;
      e.provenance = "alt_p minimised over all orderings";
    } else {
      e.provenance = "alt_p(F, sigma) over sampled orderings";
      e.note = "alt_p is only bounded above";
    }
    e.certificate = {{"alt", a.alt}, {"ordering", a.ordering}};
    return e;
  }));

  rep.entries.push_back(detail::timed([&] {
    BoundEntry e;
    e.name = "ind(B0(KG^r(F)))+1";
    const IndexInterval iv = ind_bounds(kneser_box_complex(kg, p, opt.allow_nonprime), opt.ind);
    e.lower = iv.lower + 1;
    e.upper = iv.upper + 1;
    e.provenance = "certified index interval";
    e.certificate = iv.to_json();
    return e;
  }));

  if (opt.with_xind) {
    rep.entries.push_back(detail::timed([&] {
      BoundEntry e;
      e.name = "Xind(Hom(K^r_p,KG^r(F)))+p";
      const int omega = clique_number(kg.graph, r);
      if (omega < p) {
        e.applicable = false;
        e.provenance = "clique number " + std::to_string(omega) + " below p";
        return e;
      }
      const HomPoset hom = hom_poset(kg.graph, p, opt.allow_nonprime);
      // Delta Hom(K^r_p, KG^r(F)) has index at least |V(F)| - alt_p(F, sigma) - p,
      // so smaller values need no refutation
      const detail::AltBound a = detail::alternation_for_bound(f, p, opt.ind);
      XindOptions xo = opt.xind;
      xo.start = std::max(xo.start, n - a.alt - p);
      const XindResult x = xind_exact(hom.poset, kg.graph.vertex_count(), xo);
      if (x.status == XindResult::Status::Exact) {
        e.lower = x.value + p;
        e.upper = x.value + p;
        e.provenance = x.start > 0 && x.value == x.start ? "explicit order map, lower bound from alternation"
                                                         : "exact cross-index search";
      } else {
        e.lower = x.value + p;
        e.provenance = "cross-index refuted below " + std::to_string(x.value);
        e.note = "search budget exhausted";
      }
      e.certificate = {{"poset_size", hom.poset.size()}, {"nodes", x.nodes}, {"start", x.start}, {"map", x.map}};
      return e;
    }));
  }

  rep.entries.push_back(detail::timed([&] {
    BoundEntry e;
    e.name = "(r-1)chi(KG^r(F))";
    const ChromaticResult chi = chromatic_number(kg.graph, opt.search);
    e.lower = (r - 1) * chi.lower;
    e.upper = (r - 1) * chi.upper;
    e.provenance = chi.exact ? "exact colouring search" : "colouring search interval";
    e.certificate = {{"coloring", chi.witness.colors}};
    if (auto k = f.uniformity(); k && f.edge_count() == detail::binomial(n, *k)) {
      const int afl = std::max(1, ceil_div(n - r * (*k - 1), r - 1));
      e.note = "formula chi = " + std::to_string(afl);
    }
    return e;
  }));

  rep.violations = chain_violations(rep.entries);
  return rep;
}

}  // namespace zpfan
