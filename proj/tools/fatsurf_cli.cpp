#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fatsurf/beads.hpp"
#include "fatsurf/bounder.hpp"
#include "fatsurf/pants.hpp"
#include "fatsurf/sampling.hpp"
#include "fatsurf/thinpipe.hpp"

using namespace fatsurf;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// one loop per line: the word, then optional tag gaps; blank lines and # comments are skipped
std::vector<TaggedLoop> read_loops(const std::string& path) {
  std::vector<TaggedLoop> out;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string w;
    if (!(ls >> w)) continue;
    std::vector<int> tags;
    int t;
    while (ls >> t) tags.push_back(t);
    std::sort(tags.begin(), tags.end());
    out.emplace_back(parse_word(w), tags);
  }
  return out;
}

Word read_single_word(const std::string& path) {
  auto loops = read_loops(path);
  if (loops.size() != 1) throw Error("ParseError", path + " must hold exactly one word");
  return loops[0].word;
}

int rank_of(const std::vector<TaggedLoop>& loops, int given) {
  int k = given;
  for (auto& l : loops) k = std::max(k, max_generator(l.word));
  return std::max(2, k);
}

json tagged_json(const TaggedLoop& l) { return json{{"word", to_string(l.word)}, {"tags", l.tags}}; }

json header(const std::string& command, uint64_t seed, const json& params) {
  json j;
  j["schema"] = "fatsurf.report/1";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["params"] = params;
  return j;
}

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream f(out);
    if (!f) throw Error("IOError", "cannot write " + out);
    f << text;
  }
}

std::vector<int> parse_lengths(const std::string& s) {
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    int a = 0, b = 0, st = 1;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> a >> c1 >> b)) throw CLI::ValidationError("--lengths", "expected a:b or a:b:step");
    if (in >> c2 >> st) {
    }
    if (st <= 0 || b < a) throw CLI::ValidationError("--lengths", "empty range");
    for (int x = a; x <= b; x += st) out.push_back(x);
  } else {
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ','))
      if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw CLI::ValidationError("--lengths", "no lengths");
  return out;
}

Presentation read_presentation(const std::string& path) {
  std::string text = slurp(path);
  Presentation P;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    P.rank = j.value("rank", 2);
    for (auto& r : j.at("relators")) P.relators.push_back(cyclic_canonical(parse_word(r.get<std::string>())));
    return P;
  }
  auto loops = read_loops(path);
  for (auto& l : loops) P.relators.push_back(cyclic_canonical(l.word));
  P.rank = rank_of(loops, 2);
  return P;
}

json convexity_json(const ConvexityReport& c) {
  json j{{"pass", c.pass}, {"alpha", c.alpha}, {"paths_checked", c.paths_checked}, {"longest", c.longest}};
  if (!c.pass)
    j["witness"] = {{"relator", c.relator},
                    {"inverse", c.inverse},
                    {"start_point", c.witness.start_point},
                    {"start_index", c.witness.start_index},
                    {"length", c.witness.length}};
  return j;
}

json cprime_json(const CPrimeReport& c) {
  return json{{"max_piece", c.max_piece}, {"ratios", c.ratios}, {"lambda", c.lambda}, {"pass", c.pass},
              {"anchor", c.anchor}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fatsurf: fatgraphs, pants and beaded surfaces in free groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  uint64_t seed = 0;
  std::string out;

  // sample
  auto* sample = app.add_subcommand("sample", "cyclically reduced words, one per line");
  int s_n = 10, s_rank = 2, s_count = 1;
  bool s_trivial = false;
  sample->add_option("--n", s_n, "word length")->required()->check(CLI::PositiveNumber);
  sample->add_option("--rank", s_rank)->check(CLI::Range(2, 26));
  sample->add_option("--count", s_count)->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed);
  sample->add_flag("--trivial", s_trivial, "homologically trivial words only");
  sample->add_option("--out", out);

  // pseudorandom
  auto* pr = app.add_subcommand("pseudorandom", "(T, epsilon)-pseudorandomness report");
  std::string pr_file;
  int pr_T = 2, pr_rank = 0;
  double pr_eps = 0.1;
  pr->add_option("--word-file", pr_file)->required();
  pr->add_option("--T", pr_T)->check(CLI::PositiveNumber);
  pr->add_option("--epsilon", pr_eps);
  pr->add_option("--rank", pr_rank);
  pr->add_option("--out", out);

  // bounds
  auto* bd = app.add_subcommand("bounds", "does a loop collection bound a trivalent fatgraph");
  std::string bd_file;
  int bd_rank = 0, bd_L = 0;
  uint64_t bd_budget = 200000000;
  bool bd_any = false, bd_annuli = false;
  bd->add_option("--loops", bd_file)->required();
  bd->add_option("--rank", bd_rank);
  bd->add_option("--L", bd_L, "minimum edge length");
  bd->add_option("--budget", bd_budget, "search node budget");
  bd->add_flag("--any-valence", bd_any, "drop the trivalence requirement");
  bd->add_flag("--allow-annuli", bd_annuli);
  bd->add_option("--out", out);

  // experiment-trivalent
  auto* ex = app.add_subcommand("experiment-trivalent", "fraction of random loops bounding trivalent fatgraphs");
  int ex_rank = 3, ex_samples = 100, ex_workers = 0;
  std::string ex_lengths = "10:60:2";
  uint64_t ex_budget = 200000000;
  ex->add_option("--rank", ex_rank)->check(CLI::Range(2, 26));
  ex->add_option("--lengths", ex_lengths, "a:b:step or a comma list");
  ex->add_option("--samples", ex_samples)->check(CLI::PositiveNumber);
  ex->add_option("--seed", seed);
  ex->add_option("--budget", ex_budget);
  ex->add_option("--workers", ex_workers, "0: FATSURF_WORKERS or the hardware count");
  ex->add_option("--out", out);

  // pants-bound
  auto* pb = app.add_subcommand("pants-bound", "good pants and annuli for an integral vector over S(L)");
  std::string pb_file;
  int pb_rank = 0, pb_L = 0;
  bool pb_tagged = false, pb_strict = false;
  pb->add_option("--loops", pb_file)->required();
  pb->add_option("--L", pb_L, "checked against the loop lengths");
  pb->add_option("--rank", pb_rank);
  pb->add_flag("--tagged", pb_tagged);
  pb->add_flag("--strict", pb_strict);
  pb->add_option("--out", out);

  // thin
  auto* th = app.add_subcommand("thin", "thin fatgraph pipeline");
  std::string th_file;
  int th_L = 1, th_scale = 2, th_rank = 2, th_T = 0, th_Tp = 0, th_synth = 0;
  bool th_paper = false, th_matched = false, th_exact = false;
  th->add_option("--loops", th_file);
  th->add_option("--L", th_L)->check(CLI::PositiveNumber);
  th->add_option("--scale", th_scale, "letters per 10L unit")->check(CLI::PositiveNumber);
  th->add_option("--seed", seed);
  th->add_flag("--paper-constants", th_paper);
  th->add_option("--T", th_T);
  th->add_option("--Tprime", th_Tp);
  th->add_option("--rank", th_rank);
  th->add_option("--synthetic", th_synth, "build this many synthetic loops instead of reading --loops");
  th->add_flag("--matched", th_matched, "synthetic remainders cancel against the reservoir");
  th->add_flag("--exact-finish", th_exact);
  th->add_option("--out", out);

  // beads
  auto* be = app.add_subcommand("beads", "bead decomposition of a relator");
  std::string be_file;
  int be_sample = 0, be_rank = 2;
  BeadParams bp;
  bool be_trivial = false;
  auto bead_flags = [&](CLI::App* a) {
    a->add_option("--delta", bp.delta);
    a->add_option("--C", bp.C);
    a->add_option("--band", bp.band);
    a->add_option("--target", bp.target, "bead length override");
    a->add_option("--chunk", bp.chunk, "scan window override");
    a->add_option("--lip", bp.lip, "lip length override");
    a->add_option("--candidate-cap", bp.candidate_cap);
  };
  be->add_option("--word", be_file);
  be->add_option("--sample", be_sample, "sample a relator of this length");
  be->add_option("--rank", be_rank);
  be->add_option("--seed", seed);
  be->add_flag("--trivial-beads", be_trivial, "retry until every bead is homologically trivial");
  bead_flags(be);
  be->add_option("--out", out);

  // surface
  auto* su = app.add_subcommand("surface", "beaded surface for a relator");
  std::string su_file, su_backend = "exact";
  int su_sample = 0, su_rank = 2;
  SurfaceParams sp;
  su->add_option("--relator", su_file);
  su->add_option("--sample", su_sample);
  su->add_option("--rank", su_rank);
  su->add_option("--seed", seed);
  su->add_option("--N", sp.N)->check(CLI::PositiveNumber);
  su->add_option("--L", sp.L);
  su->add_option("--backend", su_backend)->check(CLI::IsMember({"exact", "thin", "annulus"}));
  su->add_option("--budget", sp.node_budget);
  bead_flags(su);
  su->add_option("--out", out);

  // certify
  auto* ce = app.add_subcommand("certify", "alpha-convexity and C'(lambda) certificate");
  std::string ce_surface, ce_pres;
  double ce_alpha = 0.5, ce_lambda = 1.0 / 6;
  ce->add_option("--surface", ce_surface)->required();
  ce->add_option("--presentation", ce_pres)->required();
  ce->add_option("--alpha", ce_alpha);
  ce->add_option("--lambda", ce_lambda);
  ce->add_option("--out", out);

  // cprime
  auto* cp = app.add_subcommand("cprime", "small cancellation report");
  std::string cp_pres;
  int cp_n = 0, cp_rank = 2;
  long cp_count = 1;
  double cp_D = -1, cp_lambda = 1.0 / 6;
  cp->add_option("--presentation", cp_pres);
  cp->add_option("--sample", cp_n, "sample relators of this length");
  cp->add_option("--rank", cp_rank);
  cp->add_option("--count", cp_count, "few-relators model");
  cp->add_option("--density", cp_D, "density model");
  cp->add_option("--seed", seed);
  cp->add_option("--lambda", cp_lambda);
  cp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) {
      std::string text = "# fatsurf sample version=" + std::string(kVersion) + " n=" + std::to_string(s_n) +
                         " rank=" + std::to_string(s_rank) + " count=" + std::to_string(s_count) +
                         " seed=" + std::to_string(seed) + " trivial=" + (s_trivial ? "1" : "0") + "\n";
      for (int i = 0; i < s_count; ++i) {
        SamplerSeed ss{seed, uint64_t(i)};
        CyclicWord w = s_trivial ? sample_homologically_trivial(s_n, s_rank, ss) : sample_cyclically_reduced(s_n, s_rank, ss);
        text += w.str() + "\n";
      }
      if (out.empty() || out == "-")
        std::fwrite(text.data(), 1, text.size(), stdout);
      else
        std::ofstream(out) << text;
      return 0;
    }
    if (*pr) {
      auto loops = read_loops(pr_file);
      int k = rank_of(loops, pr_rank);
      json j = header("pseudorandom", 0, {{"word_file", pr_file}, {"T", pr_T}, {"epsilon", pr_eps}, {"rank", k}});
      j["reports"] = json::array();
      bool all = true;
      for (auto& l : loops) {
        PseudorandomParams pp;
        pp.T = pr_T;
        pp.epsilon = pr_eps;
        auto r = pseudorandomness_report(l.word, k, pp);
        all = all && r.pass;
        json o{{"pass", r.pass}, {"worst_deviation", r.worst_deviation}, {"blocks", r.blocks}};
        if (!r.pass)
          o["witness"] = {{"word", to_string(r.witness)}, {"offset", r.witness_offset}, {"ratio", r.witness_ratio}};
        j["reports"].push_back(o);
      }
      j["pass"] = all;
      emit(j, out);
      return 0;
    }
    if (*bd) {
      auto loops = read_loops(bd_file);
      int k = rank_of(loops, bd_rank);
      LoopCollection c(k, loops);
      BoundOptions o;
      o.require_trivalent = !bd_any;
      o.allow_annulus_components = bd_annuli;
      o.min_edge_length = bd_L;
      o.node_budget = bd_budget;
      BoundResult r = bounds(c, o);
      json j = header("bounds", 0,
                      {{"loops", bd_file}, {"rank", k}, {"L", bd_L}, {"budget", bd_budget}, {"trivalent", !bd_any},
                       {"allow_annuli", bd_annuli}});
      j["status"] = to_string(r.status);
      j["nodes"] = r.nodes;
      if (r.yes()) {
        j["fatgraph"] = json::parse(serialize(*r.witness));
        auto g = r.witness->genus();
        j["genus"] = json::array();
        for (auto& x : g) j["genus"].push_back(x.genus);
      }
      emit(j, out);
      return 0;
    }
    if (*ex) {
      auto lengths = parse_lengths(ex_lengths);
      BoundOptions o;
      o.node_budget = ex_budget;
      auto rows = trivalent_experiment(ex_rank, lengths, ex_samples, seed, o, ex_workers);
      std::string text = "# fatsurf experiment-trivalent version=" + std::string(kVersion) +
                         " rank=" + std::to_string(ex_rank) + " lengths=" + ex_lengths +
                         " samples=" + std::to_string(ex_samples) + " seed=" + std::to_string(seed) +
                         " budget=" + std::to_string(ex_budget) + "\n" + experiment_csv(rows);
      if (out.empty() || out == "-")
        std::fwrite(text.data(), 1, text.size(), stdout);
      else
        std::ofstream(out) << text;
      return 0;
    }
    if (*pb) {
      auto loops = read_loops(pb_file);
      int k = rank_of(loops, pb_rank);
      if (pb_L && !loops.empty() && int(loops[0].size()) != pb_L)
        throw Error("LengthMismatch", "loops have length " + std::to_string(loops[0].size()));
      LoopCollection v(k, loops);
      PantsBound res = bound_with_pants_annuli(v, pb_tagged);
      VerifyCertificate vc = verify_pieces(v, res.pieces, pb_strict ? Strictness::Strict : Strictness::Default,
                                           res.certificate.multiplier);
      json j = header("pants-bound", 0,
                      {{"loops", pb_file}, {"rank", k}, {"L", loops.empty() ? 0 : int(loops[0].size())},
                       {"tagged", pb_tagged}, {"strict", pb_strict}});
      j["pieces"] = json::parse(serialize(res.pieces));
      json t = json::array();
      for (auto& l : res.certificate.t) t.push_back(tagged_json(l));
      j["certificate"] = {{"multiplier", res.certificate.multiplier},
                          {"t", t},
                          {"twisting_annuli", res.certificate.twisting_annuli}};
      j["verify"] = {{"pass", vc.pass}, {"message", vc.message}, {"n", vc.n}, {"implicit_annuli", vc.implicit_annuli}};
      emit(j, out);
      return vc.pass ? 0 : 1;
    }
    if (*th) {
      ThinParams p = th_paper ? ThinParams::paper(th_L) : ThinParams::desk(th_L, th_scale);
      if (th_T) p.T = th_T;
      if (th_Tp) p.Tprime = th_Tp;
      p.seed = seed;
      p.exact_finish = th_exact;
      LoopCollection g;
      if (th_synth > 0) {
        g = synthetic_thin_input(th_rank, th_synth, p, seed, th_matched);
      } else {
        if (th_file.empty()) throw CLI::RequiredError("--loops or --synthetic");
        auto loops = read_loops(th_file);
        g = LoopCollection(rank_of(loops, th_rank), loops);
      }
      ThinReport rep;
      json j = header("thin", seed,
                      {{"loops", th_file}, {"synthetic", th_synth}, {"matched", th_matched}, {"rank", g.rank},
                       {"L", p.L}, {"scale", th_scale}, {"paper_constants", th_paper}, {"stem", p.stem},
                       {"flower", p.flower}, {"margin", p.margin}, {"T", p.T}, {"Tprime", p.Tprime},
                       {"exact_finish", th_exact}});
      int code = 0;
      try {
        ThinResult r = run_thin_pipeline(g, p, &rep);
        j["status"] = "ok";
        j["N"] = r.N;
        j["fatgraph"] = json::parse(serialize(r.fatgraph));
      } catch (const StageFailure& e) {
        j["status"] = "failed";
        j["stage"] = e.stage;
        j["diagnosis"] = e.diagnosis;
        code = 1;
      }
      json census = json::object();
      j["report"] = {{"warnings", rep.warnings},
                     {"blocks", rep.blocks},
                     {"tagged_blocks", rep.tagged_blocks},
                     {"poppies", rep.poppies},
                     {"flowers", rep.flowers},
                     {"paired_blocks", rep.paired_blocks},
                     {"remainder_fraction", rep.remainder_fraction},
                     {"remainder_loops", rep.remainder_loops},
                     {"remainder_mass", rep.remainder_mass},
                     {"reservoir_kinds", rep.reservoir_kinds},
                     {"reservoir_min", rep.reservoir_min},
                     {"reservoir_max", rep.reservoir_max},
                     {"flowers_consumed", rep.flowers_consumed},
                     {"consumption", rep.consumption},
                     {"pants", rep.pants},
                     {"annuli", rep.annuli},
                     {"surplus_loops", rep.surplus_loops},
                     {"finish", rep.finish},
                     {"pants_fallback", rep.pants_fallback},
                     {"N", rep.N},
                     {"min_tag_distance_after_pairing", rep.min_tag_distance_after_pairing}};
      emit(j, out);
      return code;
    }
    if (*be) {
      Word r;
      if (be_sample > 0) {
        Rng rng(seed, 0xbead);
        r = sample_cyclically_reduced_word(rng, be_sample, be_rank);
      } else {
        if (be_file.empty()) throw CLI::RequiredError("--word or --sample");
        r = read_single_word(be_file);
        be_rank = std::max(be_rank, max_generator(r));
      }
      json j = header("beads", seed,
                      {{"word", be_file}, {"sample", be_sample}, {"rank", be_rank}, {"delta", bp.delta}, {"C", bp.C},
                       {"band", bp.band}, {"target", bp.target}, {"chunk", bp.chunk}, {"lip", bp.lip},
                       {"trivial_beads", be_trivial}});
      BeadDecomposition d;
      if (be_trivial) {
        auto t = find_homologically_trivial_beads(r, be_rank, bp);
        j["candidates_tried"] = t.candidates_tried;
        if (!t.decomposition) throw Error("NoDecomposition", "no homologically trivial bead decomposition found");
        d = *t.decomposition;
      } else {
        d = find_bead_decomposition(r, be_rank, bp);
      }
      auto chk = check_decomposition(d);
      j["n"] = d.n();
      j["M"] = d.M;
      j["target"] = d.target;
      j["chunk"] = d.chunk;
      j["lip_length"] = d.lip_length;
      j["C"] = d.C;
      json lips = json::array();
      for (auto& l : d.lips) lips.push_back({{"bottom", l.bottom}, {"top", l.top}, {"word", to_string(l.word)}});
      j["lips"] = lips;
      json bs = json::array();
      for (auto& b : beads(d)) bs.push_back(tagged_json(b));
      j["beads"] = bs;
      j["check"] = {{"reassembly", chk.reassembly}, {"lips_inverse", chk.lips_inverse}, {"bands", chk.bands},
                    {"message", chk.message}};
      j["warnings"] = d.warnings;
      emit(j, out);
      return chk.ok() ? 0 : 1;
    }
    if (*su) {
      Word r;
      if (su_sample > 0) {
        Rng rng(seed, 0x5ace);
        r = sample_cyclically_reduced_word(rng, su_sample, su_rank);
      } else {
        if (su_file.empty()) throw CLI::RequiredError("--relator or --sample");
        r = read_single_word(su_file);
        su_rank = std::max(su_rank, max_generator(r));
      }
      sp.beads = bp;
      sp.backend = su_backend == "exact" ? BeadBackend::Exact
                   : su_backend == "thin" ? BeadBackend::Thin
                                          : BeadBackend::Annulus;
      BeadedSurface s = build_beaded_surface(r, su_rank, sp);
      auto audit = audit_surface(s);
      json j = json::parse(serialize(s));
      j["report"] = header("surface", seed,
                           {{"relator", su_file}, {"sample", su_sample}, {"rank", su_rank}, {"N", sp.N}, {"L", sp.L},
                            {"backend", su_backend}, {"budget", sp.node_budget}, {"delta", bp.delta}, {"C", bp.C},
                            {"band", bp.band}, {"target", bp.target}, {"chunk", bp.chunk}, {"lip", bp.lip}});
      j["report"]["audit"] = {{"boundary_exact", audit.boundary_exact}, {"folded", audit.folded},
                              {"lips_twice", audit.lips_twice}};
      j["report"]["candidates_tried"] = s.candidates_tried;
      j["report"]["warnings"] = s.warnings;
      emit(j, out);
      return 0;
    }
    if (*ce) {
      std::string text = slurp(ce_surface);
      Fatgraph y = deserialize(text);
      Presentation P = read_presentation(ce_pres);
      auto conv = alpha_convexity_check(y, P, ce_alpha);
      auto cpr = cprime_report(P, ce_lambda);
      json j = header("certify", 0,
                      {{"surface", ce_surface}, {"presentation", ce_pres}, {"alpha", ce_alpha}, {"lambda", ce_lambda}});
      auto v = validate(y);
      j["folded"] = v.folded;
      j["convexity"] = convexity_json(conv);
      j["cprime"] = cprime_json(cpr);
      j["pass"] = v.folded && conv.pass && cpr.pass;
      emit(j, out);
      return 0;
    }
    if (*cp) {
      Presentation P;
      if (cp_n > 0) {
        PresentationModel m;
        m.density_model = cp_D >= 0;
        m.D = cp_D;
        m.count = cp_count;
        P = sample_presentation(cp_rank, cp_n, m, seed);
      } else {
        if (cp_pres.empty()) throw CLI::RequiredError("--presentation or --sample");
        P = read_presentation(cp_pres);
      }
      auto c = cprime_report(P, cp_lambda);
      json j = header("cprime", seed,
                      {{"presentation", cp_pres}, {"sample", cp_n}, {"rank", P.rank}, {"count", cp_count},
                       {"density", cp_D}, {"lambda", cp_lambda}});
      j["relators"] = int(P.relators.size());
      j["warnings"] = P.warnings;
      j["report"] = cprime_json(c);
      emit(j, out);
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    json j{{"schema", "fatsurf.error/1"}, {"error", e.code}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    json j{{"schema", "fatsurf.error/1"}, {"error", "Internal"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", j.dump().c_str());
    return 1;
  }
  return 2;
}
