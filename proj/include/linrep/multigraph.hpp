#ifndef LINREP_MULTIGRAPH_HPP
#define LINREP_MULTIGRAPH_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace linrep {

/// Directed half of an undirected edge.  partner() is a fixed-point-free
/// involution pairing each directed edge with its reversal; a self-loop
/// contributes two directed edges at its vertex, partnered with each other.
struct HalfEdge {
  int src;
  int dst;
  int partner;
};

class Multigraph {
public:
  /// Build from an undirected edge list (0-based endpoints, repeats allowed,
  /// "v v" for a self-loop).
  static Multigraph from_undirected(int vertex_count,
                                    std::span<const std::pair<int, int>> edges);

  int vertex_count() const { return vertex_count_; }
  int half_edge_count() const { return static_cast<int>(edges_.size()); }
  const HalfEdge& half_edge(int id) const { return edges_[id]; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }
  int degree(int v) const { return static_cast<int>(out_[v].size()); }

  bool connected() const;

private:
  int vertex_count_ = 0;
  std::vector<HalfEdge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

struct RegularityReport {
  int degree = 0;
  int vertex_count = 0;
  bool connected = false;
};

/// Returns the common degree d (plus connectivity and size); throws
/// NonRegularError listing the offending vertices if degrees differ.
RegularityReport validate_regular(const Multigraph& g);

// Text format: line 1 "vertices <n>", then "u v" per undirected edge.
Multigraph read_graph_text(std::istream& is);
Multigraph parse_graph_text(const std::string& text);
std::string graph_to_text(const Multigraph& g);

// Catalog builders (small graphs used for exact verification).
Multigraph complete_graph(int n);
/// Circulant on n vertices with the given offsets in [1, n/2]; an offset of
/// exactly n/2 contributes one edge per vertex pair, every other offset two
/// per vertex.  multiplicity repeats every edge.
Multigraph circulant_graph(int n, std::span<const int> offsets, int multiplicity = 1);
/// Triangle (or any cycle) with every edge repeated `multiplicity` times.
Multigraph multiplied_cycle(int n, int multiplicity);
/// The 3-vertex family from the return-bound analysis: x joined to y by d-1
/// parallel edges, x and y each joined to z by one edge, z padded with
/// self-loops up to degree d.  Requires even d >= 4.
Multigraph case_ii_graph(int d);
/// Single vertex carrying `loops` self-loops (degree 2*loops).
Multigraph bouquet(int loops);

}  // namespace linrep

#endif
