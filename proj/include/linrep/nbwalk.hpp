#ifndef LINREP_NBWALK_HPP
#define LINREP_NBWALK_HPP

#include <vector>

#include <gmpxx.h>

#include "linrep/errors.hpp"
#include "linrep/multigraph.hpp"
#include "linrep/rng.hpp"

namespace linrep {

/// Probability of each directed edge having been traversed at step t.
/// Scalar is mpq_class (exact mode) or double (float mode).
template <class Scalar>
struct EdgeDistribution {
  int t = 0;
  std::vector<Scalar> prob;  // indexed by directed edge id
};

namespace detail {
int walk_degree(const Multigraph& g);  // validates regularity, requires d >= 2
}

/// Distribution after the first step from `start`: uniform over its d
/// incident directed edges.
template <class Scalar>
EdgeDistribution<Scalar> nbw_initial(const Multigraph& g, int start) {
  int d = detail::walk_degree(g);
  if (start < 0 || start >= g.vertex_count()) throw std::invalid_argument("start vertex out of range");
  EdgeDistribution<Scalar> dist;
  dist.t = 1;
  dist.prob.assign(g.half_edge_count(), Scalar(0));
  for (int e : g.out_edges(start)) dist.prob[e] = Scalar(1) / Scalar(d);
  return dist;
}

/// One application of the directed-edge transfer recursion:
///   q_{t+1}(e) = (1/(d-1)) * sum over f entering src(e), f != reversal of e.
template <class Scalar>
void nbw_step_inplace(const Multigraph& g, EdgeDistribution<Scalar>& dist) {
  int d = detail::walk_degree(g);
  std::vector<Scalar> incoming(g.vertex_count(), Scalar(0));
  for (int id = 0; id < g.half_edge_count(); ++id) {
    incoming[g.half_edge(id).dst] += dist.prob[id];
  }
  std::vector<Scalar> next(g.half_edge_count());
  const Scalar inv(Scalar(1) / Scalar(d - 1));
  for (int id = 0; id < g.half_edge_count(); ++id) {
    const HalfEdge& e = g.half_edge(id);
    next[id] = (incoming[e.src] - dist.prob[e.partner]) * inv;
  }
  dist.prob = std::move(next);
  ++dist.t;
}

template <class Scalar>
EdgeDistribution<Scalar> nbw_step(const Multigraph& g, const EdgeDistribution<Scalar>& dist) {
  EdgeDistribution<Scalar> out = dist;
  nbw_step_inplace(g, out);
  return out;
}

/// P(N(t) = w) for each vertex w: the sum of q_t over edges into w.
template <class Scalar>
std::vector<Scalar> vertex_distribution(const Multigraph& g,
                                        const EdgeDistribution<Scalar>& dist) {
  std::vector<Scalar> out(g.vertex_count(), Scalar(0));
  for (int id = 0; id < g.half_edge_count(); ++id) {
    out[g.half_edge(id).dst] += dist.prob[id];
  }
  return out;
}

template <class Scalar>
std::vector<Scalar> nbw_distribution(const Multigraph& g, int start, int t) {
  if (t < 1) throw std::invalid_argument("walk length must be >= 1");
  EdgeDistribution<Scalar> dist = nbw_initial<Scalar>(g, start);
  for (int s = 1; s < t; ++s) nbw_step_inplace(g, dist);
  return vertex_distribution(g, dist);
}

template <class Scalar>
Scalar return_probability(const Multigraph& g, int start, int t) {
  return nbw_distribution<Scalar>(g, start, t)[start];
}

/// P(N(t) = start) for every t in [2, t_max], one sweep.
std::vector<mpq_class> return_probability_series(const Multigraph& g, int start, int t_max);

/// Q(t) = max over directed edges of q_t(e), for t in [1, t_max].
std::vector<mpq_class> q_max_series(const Multigraph& g, int start, int t_max);

/// Sample one trajectory endpoint; each non-initial step is uniform over the
/// d-1 edges other than the reversal of the previous one.
int nbw_sample(const Multigraph& g, int start, int t, SplitRng& rng);

struct ReturnBoundReport {
  int degree = 0;
  int vertex_count = 0;
  int t_max = 0;
  mpq_class bound;                // (d-2)/(d-1)
  std::vector<mpq_class> values;  // P(N(t)=start) for t = 2..t_max
  mpq_class max_value;
  int argmax_t = 0;
  bool holds = false;
};

/// Exact verification that P(N(t)=start) <= (d-2)/(d-1) for all t in
/// [2, t_max].  Enforces the hypotheses: d >= 4, more than 2 vertices,
/// connected.
ReturnBoundReport check_return_bound(const Multigraph& g, int start, int t_max);

}  // namespace linrep

#endif
