#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zpfan/campaign.hpp"
#include "zpfan/colorful.hpp"
#include "zpfan/hypergraph_io.hpp"
#include "zpfan/index_bounds.hpp"
#include "zpfan/report.hpp"
#include "zpfan/serialize.hpp"

using namespace zpfan;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCounterexample = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  int threads = 1;
  bool allow_nonprime = false;
  std::uint64_t budget = 50'000'000;
};

struct Input {
  std::string file;
  std::string graph;

  void attach(CLI::App* cmd) {
    cmd->add_option("--file", file, "hypergraph file (v/e line format)");
    cmd->add_option("--graph", graph, "built-in instance: K<n>, K<n>_<k>, C<n>, KG<n>_<k>, petersen");
  }
  Hypergraph load() const {
    if (!file.empty() && !graph.empty()) throw UsageError("give --file or --graph, not both");
    if (!file.empty()) return load_hypergraph(file);
    if (!graph.empty()) return named_hypergraph(graph);
    throw UsageError("an input hypergraph is required (--file or --graph)");
  }
  std::string id() const { return !file.empty() ? std::filesystem::path(file).stem().string() : graph; }
};

void check_modulus(const Globals& g, int p) {
  if (p < 2) throw UsageError("p must be at least 2");
  if (!is_prime(p) && !g.allow_nonprime) throw UsageError("p = " + std::to_string(p) + " is not prime (use --allow-nonprime)");
}

Coloring read_coloring(const std::string& spec, const Hypergraph& h) {
  if (spec.empty()) return chromatic_number(h).witness;
  std::string text = spec;
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  for (char& ch : text)
    if (ch == ',') ch = ' ';
  std::istringstream in(text);
  std::vector<int> colors;
  int c;
  while (in >> c) colors.push_back(c);
  if (!in.eof()) throw UsageError("malformed colouring");
  if (static_cast<int>(colors.size()) != h.vertex_count())
    throw UsageError("colouring has " + std::to_string(colors.size()) + " entries, expected " +
                     std::to_string(h.vertex_count()));
  try {
    return Coloring::from(colors);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json vertex_list(VertexSet s) {
  json out = json::array();
  for (int v : members(s)) out.push_back(v + 1);
  return out;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int status_code(WitnessStatus s) {
  return s == WitnessStatus::Found ? kOk : s == WitnessStatus::Counterexample ? kCounterexample : kBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zpfan: topological lower bounds and colorful witnesses for uniform hypergraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--seed", g.seed, "seed for sampled corpora and orderings");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--allow-nonprime", g.allow_nonprime, "accept a non-prime modulus (experimental)");
  app.add_option("--budget", g.budget, "node budget per search")->check(CLI::PositiveNumber);

  int result = kOk;

  // chromatic
  Input chromatic_in;
  auto* chromatic = app.add_subcommand("chromatic", "chromatic number");
  chromatic_in.attach(chromatic);
  chromatic->callback([&] {
    const Hypergraph h = chromatic_in.load();
    const ChromaticResult r = chromatic_number(h, SearchBudget{g.budget});
    json j{{"chromatic", r.value()}, {"lower", r.lower}, {"upper", r.upper}, {"exact", r.exact}, {"infinite", r.infinite},
           {"coloring", r.witness.colors}};
    std::ostringstream t;
    if (r.infinite)
      t << "no proper colouring (singleton edge)\n";
    else
      t << "chi = " << (r.exact ? std::to_string(r.value()) : "[" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]") << "\n";
    emit(g, j, t.str());
    if (!r.exact && !r.infinite) result = kBudget;
  });

  // local
  Input local_in;
  int local_p = 0;
  auto* local = app.add_subcommand("local", "local chromatic number, optionally with the cross-index bound");
  local_in.attach(local);
  local->add_option("--p", local_p, "modulus for the bound");
  local->callback([&] {
    const Hypergraph h = local_in.load();
    if (local_p == 0) {
      const LocalChromaticResult r = local_chromatic_number(h, SearchBudget{g.budget});
      emit(g, {{"local_chromatic", r.value()}, {"exact", r.exact}, {"coloring", r.witness.colors}},
           "chi_l = " + std::to_string(r.value()) + (r.exact ? "" : " (upper bound)") + "\n");
      if (!r.exact) result = kBudget;
      return;
    }
    check_modulus(g, local_p);
    LocalOptions opt;
    opt.budget = SearchBudget{g.budget};
    opt.xind.budget = SearchBudget{g.budget};
    opt.xind.threads = g.threads;
    opt.allow_nonprime = g.allow_nonprime;
    const LocalReport rep = certify_local(h, local_p, opt);
    json j{{"verdict", to_string(rep.verdict)}, {"reason", rep.reason}, {"omega", rep.omega}};
    std::ostringstream t;
    t << "omega = " << rep.omega << "\n";
    if (rep.verdict != LocalVerdict::NotApplicable && rep.xind >= 0) {
      j.update({{"xind", rep.xind},
                {"t", rep.t},
                {"bound", rep.bounds.hypergraph},
                {"graph_bound", rep.bounds.graph},
                {"local_chromatic", rep.chi_l.value()},
                {"local_exact", rep.chi_l.exact}});
      t << "Xind(Hom(K^r_p,H)) = " << rep.xind << ", t = " << rep.t << "\n"
        << "bound = " << rep.bounds.hypergraph << "\nchi_l = " << rep.chi_l.value() << "\n";
      if (rep.certificate) {
        j["certificate"] = {{"case", rep.certificate->case_number},
                            {"edge", vertex_list(rep.certificate->edge)},
                            {"u", rep.certificate->u + 1},
                            {"counted_colors", rep.certificate->counted_colors},
                            {"neighbourhood_colors", rep.certificate->neighbourhood_colors},
                            {"holds", rep.certificate->holds}};
        t << "case " << rep.certificate->case_number << " certificate "
          << (rep.certificate->holds ? "holds" : "fails: " + rep.certificate->problem) << "\n";
      }
    }
    t << "verdict: " << to_string(rep.verdict) << (rep.reason.empty() ? "" : " (" + rep.reason + ")") << "\n";
    emit(g, j, t.str());
    if (rep.verdict == LocalVerdict::Violated || (rep.certificate && !rep.certificate->holds)) result = kCounterexample;
    if (rep.verdict == LocalVerdict::Undetermined) result = kBudget;
  });

  // kneser
  Input kneser_in;
  int kneser_r = 2;
  auto* kneser_cmd = app.add_subcommand("kneser", "Kneser hypergraph KG^r(F) in the v/e format");
  kneser_in.attach(kneser_cmd);
  kneser_cmd->add_option("--r", kneser_r, "uniformity of the Kneser hypergraph")->check(CLI::Range(2, 64));
  kneser_cmd->callback([&] {
    const KneserHypergraph kg = kneser(kneser_in.load(), kneser_r);
    json vertices = json::array();
    for (VertexSet e : kg.ground.edges()) vertices.push_back(vertex_list(e));
    json edges = json::array();
    for (VertexSet e : kg.graph.edges()) edges.push_back(vertex_list(e));
    emit(g, {{"vertices", vertices}, {"edges", edges}}, format_hypergraph(kg.graph));
  });

  // alt
  Input alt_in;
  int alt_p = 2;
  bool alt_sampled = false;
  std::uint64_t alt_samples = 2000;
  auto* alt = app.add_subcommand("alt", "alternation number alt_p(F)");
  alt_in.attach(alt);
  alt->add_option("--p", alt_p, "modulus");
  alt->add_flag("--sampled", alt_sampled, "minimise over sampled orderings only");
  alt->add_option("--samples", alt_samples, "orderings sampled");
  alt->callback([&] {
    check_modulus(g, alt_p);
    const Hypergraph f = alt_in.load();
    const bool exact = !alt_sampled && f.vertex_count() <= kAltExactMaxVertices;
    const AltMinResult r = alt_min(f, alt_p, exact ? AltMode::Exact : AltMode::Budgeted, alt_samples, g.seed);
    json order = json::array();
    for (int v : r.ordering) order.push_back(v + 1);
    emit(g,
         {{"alt", r.value}, {"optimal", r.optimal}, {"ordering", order}, {"witness", r.witness.to_string()},
          {"vertices", f.vertex_count()}, {"vertices_minus_alt", f.vertex_count() - r.value}},
         "alt_" + std::to_string(alt_p) + " = " + std::to_string(r.value) + (r.optimal ? "" : " (upper bound)") +
             "\n|V|-alt = " + std::to_string(f.vertex_count() - r.value) + "\n");
  });

  // cd
  Input cd_in;
  int cd_p = 2;
  auto* cd = app.add_subcommand("cd", "colorability defect cd_p(F)");
  cd_in.attach(cd);
  cd->add_option("--p", cd_p, "number of colours");
  cd->callback([&] {
    if (cd_p < 2) throw UsageError("p must be at least 2");
    const DefectResult r = colorability_defect(cd_in.load(), cd_p, SearchBudget{g.budget});
    emit(g, {{"cd", r.value}, {"exact", r.exact}, {"removed", vertex_list(r.removed)}},
         "cd_" + std::to_string(cd_p) + " = " + std::to_string(r.value) + "\n");
    if (!r.exact) result = kBudget;
  });

  // box / hom
  Input box_in;
  int box_p = 2;
  std::string box_out;
  auto* box = app.add_subcommand("box", "box complex B_0(H, Z_p)");
  box_in.attach(box);
  box->add_option("--p", box_p, "modulus");
  box->add_option("--out", box_out, "write the serialized complex here");
  box->callback([&] {
    check_modulus(g, box_p);
    const SimplicialGComplex k = box_complex(box_in.load(), box_p, g.allow_nonprime);
    if (!box_out.empty()) std::ofstream(box_out) << serialize(k);
    emit(g, {{"vertices", k.vertex_count()}, {"maximal_simplices", k.maximal_simplices().size()}, {"dimension", k.dimension()}},
         "B_0: " + std::to_string(k.vertex_count()) + " vertices, " + std::to_string(k.maximal_simplices().size()) +
             " maximal simplices, dimension " + std::to_string(k.dimension()) + "\n");
  });

  Input hom_in;
  int hom_p = 2;
  std::string hom_out;
  auto* hom = app.add_subcommand("hom", "hom poset Hom(K^r_p, H)");
  hom_in.attach(hom);
  hom->add_option("--p", hom_p, "modulus");
  hom->add_option("--out", hom_out, "write the serialized poset here");
  hom->callback([&] {
    check_modulus(g, hom_p);
    const HomPoset hp = hom_poset(hom_in.load(), hom_p, g.allow_nonprime);
    if (!hom_out.empty()) std::ofstream(hom_out) << serialize(hp.poset);
    emit(g, {{"elements", hp.poset.size()}, {"height", hp.poset.empty() ? -1 : hp.poset.height()}},
         "Hom: " + std::to_string(hp.poset.size()) + " elements\n");
  });

  // xind
  Input xind_in;
  std::string xind_poset = "hom";
  int xind_p = 2, xind_nmax = -1;
  auto* xind = app.add_subcommand("xind", "cross-index of a Z_p-poset");
  xind_in.attach(xind);
  xind->add_option("--poset", xind_poset, "'hom' (built from the input) or a serialized poset file");
  xind->add_option("--p", xind_p, "modulus");
  xind->add_option("--n-max", xind_nmax, "largest value searched");
  xind->callback([&] {
    check_modulus(g, xind_p);
    GPoset poset = xind_poset == "hom" ? hom_poset(xind_in.load(), xind_p, g.allow_nonprime).poset : [&] {
      std::ifstream in(xind_poset);
      if (!in) throw UsageError("cannot open " + xind_poset);
      return parse_poset(in);
    }();
    XindOptions opt;
    opt.threads = g.threads;
    opt.budget = SearchBudget{g.budget};
    const XindResult r = xind_exact(poset, xind_nmax >= 0 ? xind_nmax : std::max(8, poset.height() + 1), opt);
    const char* status = r.status == XindResult::Status::Exact ? "exact"
                         : r.status == XindResult::Status::AboveBound ? "above-bound"
                                                                     : "budget-exhausted";
    emit(g, {{"xind", r.value}, {"status", status}, {"nodes", r.nodes}, {"elements", poset.size()}},
         r.status == XindResult::Status::Exact ? std::to_string(r.value) + "\n"
                                               : std::string(status) + ", at least " + std::to_string(r.value) + "\n");
    if (r.status != XindResult::Status::Exact) result = kBudget;
  });

  // indbounds
  Input ind_in;
  std::string ind_complex = "box";
  int ind_p = 2, ind_r = 2, ind_depth = 0;
  auto* indbounds = app.add_subcommand("indbounds", "certified interval for the Z_p-index");
  ind_in.attach(indbounds);
  indbounds->add_option("--complex", ind_complex, "box, kneser-box, kneser-hom, or a serialized complex file");
  indbounds->add_option("--p", ind_p, "modulus");
  indbounds->add_option("--r", ind_r, "Kneser uniformity for kneser-box / kneser-hom");
  indbounds->add_option("--depth", ind_depth, "subdivision depth for the map search");
  indbounds->callback([&] {
    check_modulus(g, ind_p);
    SimplicialGComplex k = [&] {
      if (ind_complex == "box") return box_complex(ind_in.load(), ind_p, g.allow_nonprime);
      if (ind_complex == "kneser-box") return kneser_box_complex(kneser(ind_in.load(), ind_r), ind_p, g.allow_nonprime);
      if (ind_complex == "kneser-hom")
        return kneser_hom_order_complex(kneser(ind_in.load(), ind_r), ind_p, g.allow_nonprime);
      std::ifstream in(ind_complex);
      if (!in) throw UsageError("cannot open " + ind_complex);
      return parse_complex(in);
    }();
    IndBoundsOptions opt;
    opt.depth = ind_depth;
    opt.threads = g.threads;
    opt.budget = SearchBudget{g.budget};
    opt.seed = g.seed;
    const IndexInterval iv = ind_bounds(k, opt);
    std::ostringstream t;
    t << "ind in [" << iv.lower << ", " << iv.upper << "]\n";
    for (const Certificate& c : iv.certificates)
      t << "  " << (c.upper ? "upper " : "lower ") << c.bound << "  " << c.kind << "\n";
    emit(g, iv.to_json(), t.str());
  });

  // bounds
  Input bounds_in;
  int bounds_r = 2, bounds_p = 2;
  bool bounds_no_xind = false;
  auto* bounds = app.add_subcommand("bounds", "the chain cd_p(F) <= |V|-alt_p(F) <= ... <= (r-1) chi(KG^r(F))");
  bounds_in.attach(bounds);
  bounds->add_option("--r", bounds_r, "Kneser uniformity");
  bounds->add_option("--p", bounds_p, "modulus");
  bounds->add_flag("--no-xind", bounds_no_xind, "skip the cross-index entry");
  bounds->callback([&] {
    check_modulus(g, bounds_p);
    if (bounds_p < bounds_r) throw UsageError("p must be at least r");
    BoundsOptions opt;
    opt.allow_nonprime = g.allow_nonprime;
    opt.with_xind = !bounds_no_xind;
    opt.ind.threads = opt.xind.threads = g.threads;
    opt.ind.seed = g.seed;
    opt.search = SearchBudget{g.budget};
    const BoundsReport rep = bounds_report(bounds_in.load(), bounds_r, bounds_p, bounds_in.id(), opt);
    emit(g, rep.to_json(), rep.table());
    if (!rep.consistent()) result = kCounterexample;
  });

  // colorful
  Input colorful_in;
  int colorful_p = 2, colorful_target = -1;
  std::string colorful_coloring;
  auto* colorful = app.add_subcommand("colorful", "colorful balanced complete partite subhypergraph");
  colorful_in.attach(colorful);
  colorful->add_option("--p", colorful_p, "number of parts");
  colorful->add_option("--coloring", colorful_coloring, "comma separated colours or a file; default an optimal colouring");
  colorful->add_option("--target", colorful_target, "vertices required; default ind(B_0(H,Z_p)) lower bound + 1");
  colorful->callback([&] {
    check_modulus(g, colorful_p);
    const Hypergraph h = colorful_in.load();
    const Coloring c = read_coloring(colorful_coloring, h);
    if (!is_proper(h, c)) throw UsageError("colouring is not proper");
    const int target =
        colorful_target >= 0 ? colorful_target : ind_bounds(box_complex(h, colorful_p, g.allow_nonprime)).lower + 1;
    ColorfulOptions opt;
    opt.budget = SearchBudget{g.budget};
    opt.allow_nonprime = g.allow_nonprime;
    const ColorfulResult r = find_colorful_balanced(h, c, colorful_p, target, opt);
    json j = detail::witness_json(r.witness);
    j.update({{"status", to_string(r.status)}, {"target", target}, {"max_total", r.max_total}});
    std::ostringstream t;
    t << to_string(r.status) << ": target " << target << ", reached " << r.max_total << "\n";
    for (std::size_t i = 0; i < r.witness.parts.parts.size(); ++i)
      t << "  U" << i + 1 << " = " << format_set(r.witness.parts.parts[i]) << "\n";
    emit(g, j, t.str());
    result = status_code(r.status);
  });

  // zigzag
  Input zig_in;
  int zig_t = -1;
  std::string zig_coloring;
  auto* zigzag = app.add_subcommand("zigzag", "multicolored complete bipartite subgraph with alternating colours");
  zig_in.attach(zigzag);
  zigzag->add_option("--coloring", zig_coloring, "comma separated colours or a file; default an optimal colouring");
  zigzag->add_option("--t", zig_t, "vertices required; default Xind(Hom(K_2,G)) + 2");
  zigzag->callback([&] {
    const Hypergraph h = zig_in.load();
    const Coloring c = read_coloring(zig_coloring, h);
    if (h.uniformity() != 2) throw UsageError("zigzag needs a graph");
    if (!is_proper(h, c)) throw UsageError("colouring is not proper");
    ZigzagOptions opt;
    opt.budget = SearchBudget{g.budget};
    opt.xind.budget = SearchBudget{g.budget};
    opt.xind.threads = g.threads;
    const ZigzagResult r = zigzag_check(h, c, zig_t >= 0 ? std::optional<int>(zig_t) : std::nullopt, opt);
    json j = detail::zigzag_json(r.witness);
    j.update({{"status", to_string(r.status)}, {"t", r.t}, {"longest", r.longest}});
    std::ostringstream t;
    t << to_string(r.status) << ": t = " << r.t << ", longest alternating " << r.longest << "\n";
    if (r.status == WitnessStatus::Found)
      t << "  A = " << format_set(r.witness.side_a) << "  B = " << format_set(r.witness.side_b) << "\n";
    emit(g, j, t.str());
    result = status_code(r.status);
  });

  // verify
  std::string manifest_path, lemma;
  int vn = 0, vm = 0, vp = 2, valpha = 0, vcolors = 0, vtarget = -1, vt = -1;
  std::string vhyper;
  bool vexhaustive = false;
  std::uint64_t vsamples = 0;
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("--manifest", manifest_path, "campaign manifest (JSON)");
  verify->add_option("--lemma", lemma, "zp-fan, colorful, theorem-c or zigzag (single grid point)");
  verify->add_option("--n", vn);
  verify->add_option("--m", vm);
  verify->add_option("--p", vp);
  verify->add_option("--alpha", valpha);
  verify->add_option("--hypergraph", vhyper, "instance name or file for colorful / theorem-c / zigzag");
  verify->add_option("--colors", vcolors, "colours in the corpus");
  verify->add_option("--target", vtarget);
  verify->add_option("--t", vt);
  verify->add_flag("--exhaustive", vexhaustive, "enumerate everything");
  verify->add_option("--samples", vsamples, "sampled mode with this many samples");
  verify->callback([&] {
    json manifest;
    if (!manifest_path.empty()) {
      std::ifstream in(manifest_path);
      if (!in) throw UsageError("cannot open " + manifest_path);
      try {
        manifest = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError(std::string("malformed manifest: ") + e.what());
      }
    } else {
      if (lemma.empty()) throw UsageError("verify needs --manifest or --lemma");
      if (vexhaustive && vsamples) throw UsageError("--exhaustive and --samples exclude each other");
      json point;
      auto as_hypergraph = [&](const std::string& s) {
        return std::filesystem::exists(s) ? json{{"file", s}} : json(s);
      };
      if (lemma == "zp-fan") {
        point = {{"n", vn}, {"m", vm}, {"p", vp}, {"alpha", valpha}};
      } else if (lemma == "colorful") {
        point = {{"hypergraph", as_hypergraph(vhyper)}, {"p", vp}, {"colors", vcolors}};
        if (vtarget >= 0) point["target"] = vtarget;
      } else if (lemma == "theorem-c") {
        point = {{"ground", as_hypergraph(vhyper)}, {"p", vp}, {"colors", vcolors}};
      } else if (lemma == "zigzag") {
        point = {{"graph", as_hypergraph(vhyper)}, {"colors", vcolors}};
        if (vt >= 0) point["t"] = vt;
      } else {
        throw UsageError("unknown lemma '" + lemma + "'");
      }
      manifest = {{"lemma", lemma}, {"mode", vsamples ? "sampled" : "exhaustive"}, {"grid", json::array({point})}};
      if (vsamples) manifest["samples"] = vsamples;
    }
    CampaignOptions opt;
    opt.threads = g.threads;
    opt.seed = g.seed;
    opt.allow_nonprime = g.allow_nonprime;
    const CampaignOutcome out = run_campaign(manifest, opt);
    std::ostringstream t;
    t << "lemma " << out.report["lemma"].get<std::string>() << ", mode " << out.report["mode"].get<std::string>() << "\n";
    for (const json& r : out.report["results"]) {
      t << "  " << r["params"].dump() << ": " << r["verdict"].get<std::string>();
      if (r.contains("admissible"))
        t << ", " << r["admissible"] << " admissible, " << r["chains_found"] << " chains, " << r["counterexamples"]
          << " counterexamples";
      else
        t << ", " << r["colorings"] << " colourings, " << r["found"] << " witnesses, " << r["counterexamples"]
          << " counterexamples";
      t << "\n";
    }
    t << out.report["counterexamples"] << " counterexamples in total\n";
    emit(g, out.report, t.str());
    result = out.exit_code();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return result;
}
