#pragma once
#include <string>
#include <vector>

#include "fatsurf/words.hpp"

namespace fatsurf {

struct LoopCollection {
  int rank = 2;
  std::vector<TaggedLoop> loops;

  LoopCollection() = default;
  LoopCollection(int k, std::vector<TaggedLoop> l) : rank(k), loops(std::move(l)) {}
  static LoopCollection from_words(int k, const std::vector<Word>& ws);
  static LoopCollection parse(int k, const std::vector<std::string>& ws);
  size_t total_length() const;
  std::vector<size_t> offsets() const;  // global index of letter 0 of each loop
  HomologyVector homology() const;
  Letter letter(size_t global) const;
  // global position -> (loop, index)
  std::pair<int, int> locate(size_t global) const;
  std::vector<CyclicWord> cyclic_words() const;
};

// Fixed-point-free involution on global letter positions.  A normal pair joins
// inverse letters; a twisted pair (nonorientable band) joins equal letters.
struct Pairing {
  std::vector<int> partner;
  std::vector<char> twisted;  // empty, or per position
  bool nonorientable() const;
  bool complete() const;
};

struct HalfEdge {
  int edge;
  bool forward;  // leaves the tail, reading the label
  bool operator==(const HalfEdge& o) const { return edge == o.edge && forward == o.forward; }
};

struct Edge {
  int tail = 0, head = 0;
  Word label;
};

struct ComponentGenus {
  int vertices = 0, edges = 0, boundaries = 0;
  int euler = 0;
  bool orientable = true;
  int genus = 0;      // orientable components
  int demigenus = 0;  // nonorientable components
};

struct ValidationReport {
  bool folded = false;
  bool trivalent = false;
  bool thin = false;
  int min_edge_length = 0;
  int min_special_distance = 0;  // between distinct trivalent or tagged vertices
  bool has_annulus_component = false;
  std::vector<int> tag_separations;  // per tag: distance to the nearest other special vertex
};

class Fatgraph {
 public:
  int rank = 2;
  std::vector<Edge> edges;
  // cyclic order of half-edges at each vertex
  std::vector<std::vector<HalfEdge>> rotation;
  std::vector<int> vertex_tags;

  // letter level view, present when built by quotient()
  bool has_source = false;
  LoopCollection source;
  Pairing pairing;
  std::vector<int> gap_class;    // per global position: class of the gap before it
  std::vector<int> class_size;   // letter-level valence of each gap class
  std::vector<int> class_tags;
  std::vector<int> class_vertex;  // kept vertex id, or -1 when suppressed
  std::vector<ComponentGenus> components_cache;

  int num_vertices() const { return int(rotation.size()); }
  int num_edges() const { return int(edges.size()); }
  int euler_characteristic() const { return num_vertices() - num_edges(); }
  int valence(int v) const { return int(rotation[v].size()) + (vertex_tags.empty() ? 0 : vertex_tags[v]); }
  Letter outgoing_letter(const HalfEdge& h) const;
  int other_end(const HalfEdge& h) const;  // vertex reached along h
  int start_vertex(const HalfEdge& h) const;
  Word half_edge_word(const HalfEdge& h) const;
  std::vector<ComponentGenus> genus() const;
  bool nonorientable() const { return has_source && pairing.nonorientable(); }
};

// Builds a ribbon graph directly from edges and rotations (used for pants, annuli, tests).
Fatgraph make_ribbon(int rank, std::vector<Edge> edges, std::vector<std::vector<HalfEdge>> rotation,
                     std::vector<int> vertex_tags = {});

Fatgraph quotient(const LoopCollection& gamma, const Pairing& p);
// Traverses the fattened boundary; each loop returned as a linear word starting at a vertex.
std::vector<Word> boundary_words(const Fatgraph& y);
LoopCollection boundary(const Fatgraph& y);
// Canonical multiset of boundary cyclic words (sorted).
std::vector<CyclicWord> boundary_multiset(const Fatgraph& y);
ValidationReport validate(const Fatgraph& y, int L = 0);
std::vector<ComponentGenus> genus(const Fatgraph& y);

// Letter-level pairing realizing a ribbon graph on its own boundary.
std::pair<LoopCollection, Pairing> letter_level(const Fatgraph& y);

std::string serialize(const Fatgraph& y);
Fatgraph deserialize(const std::string& text);
std::string validation_csv_header();
std::string validation_csv_row(const std::string& name, const ValidationReport& r);

std::vector<CyclicWord> sorted_cyclic(const std::vector<Word>& ws);

}  // namespace fatsurf
