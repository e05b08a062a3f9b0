#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fatsurf/beads.hpp"
#include "fatsurf/bounder.hpp"
#include "fatsurf/pants.hpp"
#include "fatsurf/sampling.hpp"
#include "fatsurf/thinpipe.hpp"

namespace py = pybind11;
using namespace fatsurf;

namespace {

LoopCollection loops_of(int rank, const std::vector<std::string>& words) {
  std::vector<TaggedLoop> ls;
  for (auto& w : words) ls.emplace_back(parse_word(w));
  return LoopCollection(rank, ls);
}

std::vector<std::string> strings(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (auto& w : ws) out.push_back(to_string(w));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "fatgraphs, good pants and beaded surfaces over free groups";

  static py::exception<Error> err(m, "FatsurfError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      err(e.what());
    }
  });

  // words
  m.def("reduce", [](const std::string& w) { return to_string(reduce(parse_word(w))); });
  m.def("inverse", [](const std::string& w) { return to_string(inverse(parse_word(w))); });
  m.def("cyclic_canonical", [](const std::string& w) { return cyclic_canonical(parse_word(w)).str(); });
  m.def(
      "homology", [](const std::string& w, int k) { return homology_class(parse_word(w), k); }, py::arg("word"),
      py::arg("rank"));
  m.def(
      "longest_common_length",
      [](const std::string& u, const std::string& v, bool inverses) {
        return longest_common_length(parse_word(u), parse_word(v), inverses);
      },
      py::arg("u"), py::arg("v"), py::arg("allow_inverses") = true);

  // sampling
  m.def(
      "sample_cyclically_reduced",
      [](int n, int k, uint64_t seed, uint64_t stream) { return sample_cyclically_reduced(n, k, {seed, stream}).str(); },
      py::arg("n"), py::arg("rank"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "sample_homologically_trivial",
      [](int n, int k, uint64_t seed, uint64_t stream) {
        return sample_homologically_trivial(n, k, {seed, stream}).str();
      },
      py::arg("n"), py::arg("rank"), py::arg("seed"), py::arg("stream") = 0);
  m.def(
      "pseudorandom",
      [](const std::string& w, int k, int T, double eps) {
        PseudorandomParams p;
        p.T = T;
        p.epsilon = eps;
        auto r = pseudorandomness_report(parse_word(w), k, p);
        py::dict d;
        d["pass"] = r.pass;
        d["worst_deviation"] = r.worst_deviation;
        d["witness"] = to_string(r.witness);
        return d;
      },
      py::arg("word"), py::arg("rank"), py::arg("T"), py::arg("epsilon"));

  // fatgraphs and the bounder
  py::class_<Fatgraph>(m, "Fatgraph")
      .def_property_readonly("num_vertices", &Fatgraph::num_vertices)
      .def_property_readonly("num_edges", &Fatgraph::num_edges)
      .def("euler_characteristic", &Fatgraph::euler_characteristic)
      .def("genus", [](const Fatgraph& y) {
        std::vector<std::pair<int, int>> out;
        for (auto& c : genus(y)) out.emplace_back(c.genus, c.boundaries);
        return out;
      })
      .def("boundary", [](const Fatgraph& y) { return strings(boundary_words(y)); })
      .def("validate",
           [](const Fatgraph& y, int L) {
             auto v = validate(y, L);
             py::dict d;
             d["folded"] = v.folded;
             d["trivalent"] = v.trivalent;
             d["min_edge_length"] = v.min_edge_length;
             return d;
           },
           py::arg("L") = 0)
      .def("serialize", [](const Fatgraph& y) { return serialize(y); });
  m.def("deserialize", &deserialize);
  m.def(
      "quotient",
      [](int rank, const std::vector<std::string>& words, const std::vector<int>& partner) {
        Pairing p;
        p.partner = partner;
        return quotient(loops_of(rank, words), p);
      },
      py::arg("rank"), py::arg("loops"), py::arg("partner"));
  m.def(
      "bounds",
      [](int rank, const std::vector<std::string>& words, bool trivalent, int min_edge, uint64_t budget)
          -> py::tuple {
        BoundOptions o;
        o.require_trivalent = trivalent;
        o.min_edge_length = min_edge;
        o.node_budget = budget;
        auto r = bounds(loops_of(rank, words), o);
        return py::make_tuple(to_string(r.status), r.witness ? py::cast(*r.witness) : py::none());
      },
      py::arg("rank"), py::arg("loops"), py::arg("trivalent") = true, py::arg("min_edge_length") = 0,
      py::arg("budget") = 200000000);

  // pants
  m.def(
      "pants_bound",
      [](int rank, const std::vector<std::string>& words) {
        auto v = loops_of(rank, words);
        auto r = bound_with_pants_annuli(v);
        auto c = verify_pieces(v, r.pieces, Strictness::Default, r.certificate.multiplier);
        py::dict d;
        d["pants"] = r.pieces.pants.size();
        d["annuli"] = r.pieces.annuli.size();
        d["multiplier"] = r.certificate.multiplier;
        d["verified"] = c.pass;
        d["pieces"] = serialize(r.pieces);
        return d;
      },
      py::arg("rank"), py::arg("loops"));

  // thin pipeline on synthetic input at desk scale
  m.def(
      "thin_synthetic",
      [](int rank, int loops, uint64_t seed, int unit, int Tprime, int T) {
        ThinParams p = ThinParams::desk(1, unit);
        p.margin = std::max(1, unit / 2);
        p.Tprime = Tprime;
        p.T = T;
        p.seed = seed;
        p.finalize();
        auto g = synthetic_thin_input(rank, loops, p, seed, true);
        ThinReport rep;
        py::dict d;
        try {
          auto r = run_thin_pipeline(g, p, &rep);
          d["status"] = "ok";
          d["N"] = r.N;
          d["fatgraph"] = r.fatgraph;
        } catch (const StageFailure& e) {
          d["status"] = "failed";
          d["stage"] = e.stage;
        }
        d["finish"] = rep.finish;
        std::vector<std::string> in;
        for (auto& l : g.loops) in.push_back(to_string(l.word));
        d["input"] = in;
        return d;
      },
      py::arg("rank"), py::arg("loops"), py::arg("seed"), py::arg("unit") = 2, py::arg("Tprime") = 30,
      py::arg("T") = 32);

  // beads and small cancellation
  m.def(
      "bead_decomposition",
      [](const std::string& r, int k) {
        auto d = find_bead_decomposition(parse_word(r), k);
        auto c = check_decomposition(d);
        py::dict out;
        out["M"] = d.M;
        out["lip_length"] = d.lip_length;
        out["ok"] = c.ok();
        std::vector<std::string> bs;
        for (auto& b : beads(d)) bs.push_back(to_string(b.word));
        out["beads"] = bs;
        return out;
      },
      py::arg("relator"), py::arg("rank") = 2);
  m.def(
      "cprime",
      [](const std::vector<std::string>& relators, double lambda) {
        Presentation P;
        for (auto& r : relators) P.relators.push_back(cyclic_canonical(parse_word(r)));
        auto c = cprime_report(P, lambda);
        return py::make_tuple(c.max_piece, c.pass);
      },
      py::arg("relators"), py::arg("lambda_") = 1.0 / 6);
}
