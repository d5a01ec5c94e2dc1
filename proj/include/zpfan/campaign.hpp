#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "zpfan/colorful.hpp"
#include "zpfan/hypergraph_io.hpp"
#include "zpfan/index_bounds.hpp"
#include "zpfan/parallel.hpp"
#include "zpfan/tucker.hpp"

namespace zpfan {

// Campaign manifests
//
//   {"lemma": "zp-fan" | "colorful" | "theorem-c" | "zigzag",
//    "mode": "exhaustive" | "sampled", "samples": 1000, "seed": 1,
//    "grid": [ {...}, ... ]}
//
// Grid points by lemma:
//   zp-fan     {"n", "m", "p", "alpha"}
//   colorful   {"hypergraph", "p", "colors", "target"?}   target defaults to
//              the certified lower bound of ind(B_0(H, Z_p)) plus one
//   theorem-c  {"ground", "p", "colors"}   H = KG^p(F), target |V(F)| - alt_p(F)
//   zigzag     {"graph", "colors", "t"?}
// Hypergraphs are given by name (see named_hypergraph) or {"file": path}.

struct CampaignOptions {
  int threads = 1;
  std::optional<std::uint64_t> seed;  // overrides the manifest
  bool allow_nonprime = false;
  std::uint64_t exhaustive_cap = 1'000'000;
};

struct CampaignOutcome {
  nlohmann::json report;
  std::uint64_t counterexamples = 0;
  std::uint64_t budget_exhausted = 0;

  // 0 clean, 2 counterexample, 3 budget exhausted
  int exit_code() const { return counterexamples ? 2 : budget_exhausted ? 3 : 0; }
};

inline Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  if (j.is_string()) return named_hypergraph(j.get<std::string>());
  if (j.is_object() && j.contains("file")) return load_hypergraph(j.at("file").get<std::string>());
  throw std::invalid_argument("hypergraph must be a name or {\"file\": path}");
}

namespace detail {

inline nlohmann::json labels_json(const std::vector<Label>& labels) {
  nlohmann::json out = nlohmann::json::array();
  for (const Label& l : labels) out.push_back({l.sign, l.level});
  return out;
}

inline nlohmann::json witness_json(const ColorfulWitness& w) {
  nlohmann::json parts = nlohmann::json::array();
  for (VertexSet u : w.parts.parts) {
    nlohmann::json part = nlohmann::json::array();
    for (int v : members(u)) part.push_back(v + 1);
    parts.push_back(part);
  }
  return {{"parts", parts}, {"colors", w.colors}, {"total_size", w.total_size}};
}

inline nlohmann::json zigzag_json(const ZigzagWitness& w) {
  nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
  for (int v : members(w.side_a)) a.push_back(v + 1);
  for (int v : members(w.side_b)) b.push_back(v + 1);
  return {{"side_a", a}, {"side_b", b}, {"colors_a", w.colors_a}, {"colors_b", w.colors_b}};
}

struct Corpus {
  std::vector<Coloring> colorings;
  bool truncated = false;
};

inline Corpus coloring_corpus(const Hypergraph& h, int colors, bool exhaustive, std::uint64_t samples,
                              std::uint64_t seed, std::uint64_t cap) {
  Corpus c;
  if (exhaustive) {
    const std::uint64_t n = for_each_proper_coloring(h, colors, [&](const Coloring& x) { c.colorings.push_back(x); }, cap);
    c.truncated = n >= cap;
  } else {
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
      auto x = random_proper_coloring(h, colors, rng);
      if (!x) throw std::invalid_argument("no proper colouring with " + std::to_string(colors) + " colours");
      c.colorings.push_back(std::move(*x));
    }
  }
  return c;
}

inline nlohmann::json run_fan_point(const nlohmann::json& g, bool exhaustive, std::uint64_t samples,
                                    std::uint64_t seed, const CampaignOptions& opt, CampaignOutcome& agg) {
  const int n = g.at("n"), m = g.at("m"), p = g.at("p"), alpha = g.at("alpha");
  if (!is_prime(p) && !opt.allow_nonprime) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  SweepOptions so;
  so.exhaustive = exhaustive;
  so.samples = samples;
  so.seed = seed;
  so.threads = opt.threads;
  const SweepResult r = fan_lemma_sweep(n, m, p, alpha, so);
  agg.counterexamples += r.counterexamples;
  agg.budget_exhausted += r.budget_exhausted;
  // admissible labelings outside the inequality regime contradict the lemma
  const bool vacuity_broken = !r.inequality_regime && r.admissible > 0;
  if (vacuity_broken) ++agg.counterexamples;
  nlohmann::json out{{"params", g},
                     {"admissible", r.admissible},
                     {"chains_found", r.chains_found},
                     {"counterexamples", r.counterexamples},
                     {"budget_exhausted", r.budget_exhausted},
                     {"inequality_regime", r.inequality_regime},
                     {"experimental", !is_prime(p)},
                     {"verdict", r.clean() ? "clean" : "counterexample"}};
  if (r.first_chain) {
    nlohmann::json vecs = nlohmann::json::array();
    const SignedVectorSpace space(p, n);
    for (int x : r.first_chain->chain) vecs.push_back(space.vector(x).to_string());
    out["witness"] = {{"chain", vecs}, {"labels", labels_json(r.first_chain->labels)}};
  }
  if (r.first_counterexample) out["counterexample"] = labels_json(*r.first_counterexample);
  return out;
}

template <class Check>
nlohmann::json run_coloring_point(const Hypergraph& h, const Corpus& corpus, const CampaignOptions& opt,
                                  CampaignOutcome& agg, Check&& check) {
  std::vector<WitnessStatus> status(corpus.colorings.size());
  std::vector<nlohmann::json> witness(corpus.colorings.size());
  parallel_for(corpus.colorings.size(), opt.threads, [&](std::size_t i) {
    auto [s, w] = check(h, corpus.colorings[i]);
    status[i] = s;
    witness[i] = std::move(w);
  });
  std::uint64_t found = 0, bad = 0, budget = 0;
  nlohmann::json out;
  for (std::size_t i = 0; i < status.size(); ++i) {
    if (status[i] == WitnessStatus::Found) {
      ++found;
      if (!out.contains("witness")) out["witness"] = {{"coloring", corpus.colorings[i].colors}, {"witness", witness[i]}};
    } else if (status[i] == WitnessStatus::BudgetExhausted) {
      ++budget;
    } else {
      ++bad;
      if (!out.contains("counterexample"))
        out["counterexample"] = {{"coloring", corpus.colorings[i].colors}, {"best", witness[i]}};
    }
  }
  agg.counterexamples += bad;
  agg.budget_exhausted += budget;
  out["colorings"] = corpus.colorings.size();
  out["truncated"] = corpus.truncated;
  out["found"] = found;
  out["counterexamples"] = bad;
  out["budget_exhausted"] = budget;
  out["verdict"] = bad ? "counterexample" : budget ? "budget-exhausted" : "clean";
  return out;
}

}  // namespace detail

inline CampaignOutcome run_campaign(const nlohmann::json& manifest, const CampaignOptions& opt = {}) {
  const std::string lemma = manifest.at("lemma").get<std::string>();
  const std::string mode = manifest.value("mode", std::string("exhaustive"));
  if (mode != "exhaustive" && mode != "sampled") throw std::invalid_argument("mode must be exhaustive or sampled");
  const bool exhaustive = mode == "exhaustive";
  const std::uint64_t samples = manifest.value("samples", std::uint64_t{1000});
  const std::uint64_t seed = opt.seed.value_or(manifest.value("seed", std::uint64_t{1}));
  CampaignOutcome agg;
  nlohmann::json results = nlohmann::json::array();
  std::uint64_t index = 0;
  for (const nlohmann::json& g : manifest.at("grid")) {
    const std::uint64_t point_seed = seed + 1'000'003 * index++;
    if (lemma == "zp-fan") {
      results.push_back(detail::run_fan_point(g, exhaustive, samples, point_seed, opt, agg));
      continue;
    }
    const int colors = g.at("colors");
    if (lemma == "colorful") {
      const Hypergraph h = hypergraph_from_json(g.at("hypergraph"));
      const int p = g.at("p");
      const int target = g.contains("target") ? g.at("target").get<int>()
                                              : ind_bounds(box_complex(h, p, opt.allow_nonprime)).lower + 1;
      const detail::Corpus corpus = detail::coloring_corpus(h, colors, exhaustive, samples, point_seed, opt.exhaustive_cap);
      ColorfulOptions co;
      co.allow_nonprime = opt.allow_nonprime;
      nlohmann::json r = detail::run_coloring_point(h, corpus, opt, agg, [&](const Hypergraph& hh, const Coloring& c) {
        const ColorfulResult res = find_colorful_balanced(hh, c, p, target, co);
        return std::pair{res.status, detail::witness_json(res.witness)};
      });
      r["params"] = g;
      r["target"] = target;
      results.push_back(r);
    } else if (lemma == "theorem-c") {
      const Hypergraph f = hypergraph_from_json(g.at("ground"));
      const int p = g.at("p");
      const KneserHypergraph kg = kneser(f, p);
      const int alt = detail::alternation_for_bound(f, p, IndBoundsOptions{}).alt;
      const int target = f.vertex_count() - alt;
      const detail::Corpus corpus =
          detail::coloring_corpus(kg.graph, colors, exhaustive, samples, point_seed, opt.exhaustive_cap);
      ColorfulOptions co;
      co.allow_nonprime = opt.allow_nonprime;
      nlohmann::json r = detail::run_coloring_point(kg.graph, corpus, opt, agg, [&](const Hypergraph& hh, const Coloring& c) {
        const ColorfulResult res = find_colorful_balanced(hh, c, p, target, co);
        return std::pair{res.status, detail::witness_json(res.witness)};
      });
      r["params"] = g;
      r["target"] = target;
      r["alt"] = alt;
      results.push_back(r);
    } else if (lemma == "zigzag") {
      const Hypergraph h = hypergraph_from_json(g.at("graph"));
      std::optional<int> t;
      if (g.contains("t")) t = g.at("t").get<int>();
      const detail::Corpus corpus = detail::coloring_corpus(h, colors, exhaustive, samples, point_seed, opt.exhaustive_cap);
      if (!t) {
        const XindResult x = xind_exact(hom_poset(h, 2).poset, h.vertex_count());
        if (x.status != XindResult::Status::Exact) throw std::runtime_error("zigzag: cross-index not determined");
        t = x.value + 2;
      }
      nlohmann::json r = detail::run_coloring_point(h, corpus, opt, agg, [&](const Hypergraph& hh, const Coloring& c) {
        const ZigzagResult res = zigzag_check(hh, c, t);
        return std::pair{res.status, detail::zigzag_json(res.witness)};
      });
      r["params"] = g;
      r["t"] = *t;
      results.push_back(r);
    } else {
      throw std::invalid_argument("unknown lemma '" + lemma + "'");
    }
  }
  agg.report = {{"lemma", lemma},
                {"mode", mode},
                {"seed", seed},
                {"samples", samples},
                {"results", results},
                {"counterexamples", agg.counterexamples},
                {"budget_exhausted", agg.budget_exhausted}};
  return agg;
}

}  // namespace zpfan
