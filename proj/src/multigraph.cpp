#include "linrep/multigraph.hpp"

#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "linrep/errors.hpp"

namespace linrep {

Multigraph Multigraph::from_undirected(int vertex_count,
                                       std::span<const std::pair<int, int>> edges) {
  if (vertex_count < 1) throw std::invalid_argument("multigraph needs at least one vertex");
  Multigraph g;
  g.vertex_count_ = vertex_count;
  g.edges_.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    int a = static_cast<int>(g.edges_.size());
    int b = a + 1;
    g.edges_.push_back(HalfEdge{u, v, b});
    g.edges_.push_back(HalfEdge{v, u, a});
  }
  g.out_.assign(vertex_count, {});
  g.in_.assign(vertex_count, {});
  for (int id = 0; id < static_cast<int>(g.edges_.size()); ++id) {
    g.out_[g.edges_[id].src].push_back(id);
    g.in_[g.edges_[id].dst].push_back(id);
  }
  return g;
}

namespace {

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

bool Multigraph::connected() const {
  std::vector<int> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), 0);
  for (const HalfEdge& e : edges_) {
    int a = uf_find(parent, e.src);
    int b = uf_find(parent, e.dst);
    if (a != b) parent[a] = b;
  }
  int root = uf_find(parent, 0);
  for (int v = 1; v < vertex_count_; ++v) {
    if (uf_find(parent, v) != root) return false;
  }
  return true;
}

RegularityReport validate_regular(const Multigraph& g) {
  int d = g.degree(0);
  std::vector<int> offenders;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != d) offenders.push_back(v);
  }
  if (!offenders.empty()) {
    std::ostringstream os;
    os << "multigraph is not regular; degree(0)=" << d << ", offending vertices:";
    for (int v : offenders) os << ' ' << v;
    throw NonRegularError(os.str(), std::move(offenders));
  }
  return RegularityReport{d, g.vertex_count(), g.connected()};
}

Multigraph read_graph_text(std::istream& is) {
  std::string tag;
  int n = 0;
  if (!(is >> tag >> n) || tag != "vertices") {
    throw std::invalid_argument("graph text must start with 'vertices <n>'");
  }
  std::vector<std::pair<int, int>> edges;
  int u, v;
  while (is >> u >> v) edges.emplace_back(u, v);
  if (!is.eof()) throw std::invalid_argument("malformed edge line in graph text");
  return Multigraph::from_undirected(n, edges);
}

Multigraph parse_graph_text(const std::string& text) {
  std::istringstream is(text);
  return read_graph_text(is);
}

std::string graph_to_text(const Multigraph& g) {
  std::ostringstream os;
  os << "vertices " << g.vertex_count() << "\n";
  for (int id = 0; id < g.half_edge_count(); id += 2) {
    const HalfEdge& e = g.half_edge(id);
    os << e.src << ' ' << e.dst << "\n";
  }
  return os.str();
}

Multigraph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Multigraph::from_undirected(n, edges);
}

Multigraph circulant_graph(int n, std::span<const int> offsets, int multiplicity) {
  if (multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int o : offsets) {
    if (o < 1 || 2 * o > n) throw std::invalid_argument("circulant offset out of range");
    int span = (2 * o == n) ? n / 2 : n;  // offset n/2 pairs each vertex once
    for (int i = 0; i < span; ++i)
      for (int rep = 0; rep < multiplicity; ++rep) edges.emplace_back(i, (i + o) % n);
  }
  return Multigraph::from_undirected(n, edges);
}

Multigraph multiplied_cycle(int n, int multiplicity) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int rep = 0; rep < multiplicity; ++rep) edges.emplace_back(i, (i + 1) % n);
  return Multigraph::from_undirected(n, edges);
}

Multigraph case_ii_graph(int d) {
  if (d < 4 || d % 2 != 0) throw std::invalid_argument("case II family needs even d >= 4");
  std::vector<std::pair<int, int>> edges;
  for (int rep = 0; rep < d - 1; ++rep) edges.emplace_back(0, 1);  // x=0, y=1
  edges.emplace_back(0, 2);
  edges.emplace_back(1, 2);
  for (int rep = 0; rep < (d - 2) / 2; ++rep) edges.emplace_back(2, 2);
  return Multigraph::from_undirected(3, edges);
}

Multigraph bouquet(int loops) {
  std::vector<std::pair<int, int>> edges(static_cast<size_t>(loops), {0, 0});
  return Multigraph::from_undirected(1, edges);
}

}  // namespace linrep
