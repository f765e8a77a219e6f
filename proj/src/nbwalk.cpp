#include "linrep/nbwalk.hpp"

#include <stdexcept>
#include <string>

namespace linrep {

namespace detail {

int walk_degree(const Multigraph& g) {
  RegularityReport rep = validate_regular(g);
  if (rep.degree < 2) {
    throw PreconditionError("nonbacktracking walk undefined for degree " +
                            std::to_string(rep.degree));
  }
  return rep.degree;
}

}  // namespace detail

std::vector<mpq_class> return_probability_series(const Multigraph& g, int start, int t_max) {
  if (t_max < 2) throw std::invalid_argument("t_max must be >= 2");
  EdgeDistribution<mpq_class> dist = nbw_initial<mpq_class>(g, start);
  std::vector<mpq_class> out;
  out.reserve(t_max - 1);
  for (int t = 2; t <= t_max; ++t) {
    nbw_step_inplace(g, dist);
    mpq_class p = 0;
    for (int id : g.in_edges(start)) p += dist.prob[id];
    out.push_back(p);
  }
  return out;
}

std::vector<mpq_class> q_max_series(const Multigraph& g, int start, int t_max) {
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  EdgeDistribution<mpq_class> dist = nbw_initial<mpq_class>(g, start);
  std::vector<mpq_class> out;
  out.reserve(t_max);
  auto maximum = [&]() {
    mpq_class mx = dist.prob.empty() ? mpq_class(0) : dist.prob[0];
    for (const mpq_class& p : dist.prob)
      if (p > mx) mx = p;
    return mx;
  };
  out.push_back(maximum());
  for (int t = 2; t <= t_max; ++t) {
    nbw_step_inplace(g, dist);
    out.push_back(maximum());
  }
  return out;
}

int nbw_sample(const Multigraph& g, int start, int t, SplitRng& rng) {
  if (t < 1) throw std::invalid_argument("walk length must be >= 1");
  detail::walk_degree(g);
  const auto& first_choices = g.out_edges(start);
  int edge = first_choices[rng.below(first_choices.size())];
  for (int s = 1; s < t; ++s) {
    const HalfEdge& e = g.half_edge(edge);
    const auto& choices = g.out_edges(e.dst);
    // d-1 allowed edges: skip the reversal of the one just traversed.
    size_t r = rng.below(choices.size() - 1);
    size_t banned = 0;
    while (choices[banned] != e.partner) ++banned;
    if (r >= banned) ++r;
    edge = choices[r];
  }
  return g.half_edge(edge).dst;
}

ReturnBoundReport check_return_bound(const Multigraph& g, int start, int t_max) {
  RegularityReport rep = validate_regular(g);
  if (rep.degree < 4) {
    throw PreconditionError("return bound requires d >= 4, got d=" +
                            std::to_string(rep.degree));
  }
  if (rep.vertex_count <= 2) {
    throw PreconditionError("return bound requires more than 2 vertices");
  }
  if (!rep.connected) throw DisconnectedError("return bound requires a connected multigraph");
  if (t_max < 2) throw std::invalid_argument("t_max must be >= 2");

  ReturnBoundReport out;
  out.degree = rep.degree;
  out.vertex_count = rep.vertex_count;
  out.t_max = t_max;
  out.bound = mpq_class(rep.degree - 2, rep.degree - 1);
  out.values = return_probability_series(g, start, t_max);
  out.max_value = 0;
  out.argmax_t = 2;
  for (size_t i = 0; i < out.values.size(); ++i) {
    if (out.values[i] > out.max_value) {
      out.max_value = out.values[i];
      out.argmax_t = static_cast<int>(i) + 2;
    }
  }
  out.holds = out.max_value <= out.bound;
  return out;
}

}  // namespace linrep
