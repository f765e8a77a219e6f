#include "linrep/matrep.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "linrep/errors.hpp"
#include "linrep/nbwalk.hpp"

namespace linrep {

mpz_class gl_order(int k, const mpz_class& q) {
  if (k < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  mpz_class qk;
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
  mpz_class out = 1;
  mpz_class qi = 1;
  for (int i = 0; i < k; ++i) {
    out *= qk - qi;
    qi *= q;
  }
  return out;
}

GlGroup GlGroup::build(const Field& f, int k, std::uint64_t cap) {
  if (k < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  mpz_class candidates;
  mpz_ui_pow_ui(candidates.get_mpz_t(), f.q(), static_cast<unsigned long>(k) * k);
  if (candidates > cap) {
    throw CapExceeded("enumerating GL_" + std::to_string(k) + "(F_" + std::to_string(f.q()) +
                      ") requires scanning " + candidates.get_str() + " matrices, cap is " +
                      std::to_string(cap));
  }
  GlGroup g;
  g.k_ = k;
  const std::uint64_t n = candidates.get_ui();
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    FqMatrix m(k);
    std::uint64_t x = idx;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        m.at(r, c) = static_cast<std::uint32_t>(x % f.q());
        x /= f.q();
      }
    }
    if (auto inv = mat_inverse(f, m)) {
      g.mats_.push_back(std::move(m));
      g.invs_.push_back(std::move(*inv));
    }
  }
  return g;
}

TupleEnumerator::TupleEnumerator(const GlGroup& gl, int m, std::uint64_t cap)
    : gl_(gl), m_(m) {
  if (m < 1) throw std::invalid_argument("tuple arity must be >= 1");
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(gl.size()),
                static_cast<unsigned long>(m));
  if (total > cap) {
    throw CapExceeded("tuple enumeration requires " + total.get_str() +
                      " tuples, cap is " + std::to_string(cap));
  }
  total_ = total.get_ui();
  odometer_.assign(m, 0);
}

bool TupleEnumerator::next(MatrixTuple& out) {
  if (index_ >= total_) return false;
  out.a.resize(m_);
  out.ainv.resize(m_);
  for (int i = 0; i < m_; ++i) {
    out.a[i] = gl_.matrix(odometer_[i]);
    out.ainv[i] = gl_.inverse(odometer_[i]);
  }
  ++index_;
  for (int i = m_ - 1; i >= 0; --i) {
    if (++odometer_[i] < gl_.size()) break;
    odometer_[i] = 0;
  }
  return true;
}

FqMatrix evaluate_word(const Field& f, std::span<const Letter> w, const MatrixTuple& t) {
  const int k = t.a.empty() ? 1 : t.a[0].k();
  FqMatrix out = FqMatrix::identity(k);
  for (const Letter& a : w) {
    if (a.generator < 1 || a.generator > t.m()) {
      throw std::invalid_argument("letter index exceeds tuple arity");
    }
    const FqMatrix& g = a.sign > 0 ? t.a[a.generator - 1] : t.ainv[a.generator - 1];
    out = mat_mul(f, out, g);
  }
  return out;
}

std::vector<FqMatrix> generated_subgroup(const Field& f, const MatrixTuple& t,
                                         std::uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("subgroup cap must be >= 1");
  const int k = t.a[0].k();
  std::vector<FqMatrix> elements;
  std::unordered_map<FqMatrix, int, FqMatrixHash> index;
  std::deque<int> queue;
  elements.push_back(FqMatrix::identity(k));
  index.emplace(elements[0], 0);
  queue.push_back(0);
  while (!queue.empty()) {
    int at = queue.front();
    queue.pop_front();
    for (int i = 0; i < t.m(); ++i) {
      for (const FqMatrix* gen : {&t.a[i], &t.ainv[i]}) {
        FqMatrix nxt = mat_mul(f, elements[at], *gen);
        if (index.contains(nxt)) continue;
        if (elements.size() >= cap) {
          throw CapExceeded("generated subgroup exceeds cap " + std::to_string(cap));
        }
        index.emplace(nxt, static_cast<int>(elements.size()));
        elements.push_back(std::move(nxt));
        queue.push_back(static_cast<int>(elements.size()) - 1);
      }
    }
  }
  return elements;
}

Multigraph cayley_multigraph(const Field& f, const MatrixTuple& t, std::uint64_t cap) {
  std::vector<FqMatrix> elements = generated_subgroup(f, t, cap);
  std::unordered_map<FqMatrix, int, FqMatrixHash> index;
  for (size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<int>(i));
  std::vector<std::pair<int, int>> edges;
  edges.reserve(elements.size() * t.m());
  for (size_t g = 0; g < elements.size(); ++g) {
    for (int i = 0; i < t.m(); ++i) {
      FqMatrix target = mat_mul(f, elements[g], t.a[i]);
      edges.emplace_back(static_cast<int>(g), index.at(target));
    }
  }
  return Multigraph::from_undirected(static_cast<int>(elements.size()), edges);
}

const char* image_class_name(ImageClass c) {
  switch (c) {
    case ImageClass::trivial: return "trivial";
    case ImageClass::order_two: return "order_two";
    case ImageClass::large: return "large";
  }
  return "?";
}

ImageInfo classify_image(const Field& f, const MatrixTuple& t) {
  ImageInfo info;
  const FqMatrix* nontrivial = nullptr;
  for (const FqMatrix& a : t.a) {
    if (a.is_identity()) continue;
    if (!mat_mul(f, a, a).is_identity()) {
      info.cls = ImageClass::large;
      return info;
    }
    if (nontrivial == nullptr) {
      nontrivial = &a;
    } else if (!(*nontrivial == a)) {
      info.cls = ImageClass::large;
      return info;
    }
  }
  if (nontrivial == nullptr) {
    info.cls = ImageClass::trivial;
  } else {
    info.cls = ImageClass::order_two;
    info.witness = *nontrivial;
  }
  return info;
}

SearchResult search_representations(const Field& f, const GlGroup& gl,
                                    const Presentation& p, const Caps& caps,
                                    bool emit_survivors) {
  const long u = static_cast<long>(p.relators.size());
  SearchResult res;
  // first_violation histogram: trajectory[j] = #{tuples surviving first j}
  std::vector<long> violated_at(static_cast<size_t>(u) + 1, 0);
  TupleEnumerator en(gl, p.m, caps.tuples);
  MatrixTuple t;
  while (en.next(t)) {
    long satisfied = 0;
    for (const Word& w : p.relators) {
      if (!evaluate_word(f, w, t).is_identity()) break;
      ++satisfied;
    }
    ++violated_at[satisfied];
    if (satisfied == u) {
      switch (classify_image(f, t).cls) {
        case ImageClass::trivial: ++res.n_trivial; break;
        case ImageClass::order_two: ++res.n_order2; break;
        case ImageClass::large: ++res.n_large; break;
      }
      if (emit_survivors) res.survivors.push_back(t);
    }
  }
  res.survivor_trajectory.assign(static_cast<size_t>(u) + 1, 0);
  long acc = 0;
  for (long j = u; j >= 0; --j) {
    acc += violated_at[j];
    res.survivor_trajectory[j] = acc;
  }
  return res;
}

SearchResult search_representations(const Field& f, int k, const Presentation& p,
                                    const Caps& caps, bool emit_survivors) {
  GlGroup gl = GlGroup::build(f, k, caps.tuples);
  return search_representations(f, gl, p, caps, emit_survivors);
}

mpq_class survival_probability(const Field& f, const MatrixTuple& t, int l,
                               std::uint64_t subgroup_cap) {
  if (l < 1) throw std::invalid_argument("word length must be >= 1");
  Multigraph g = cayley_multigraph(f, t, subgroup_cap);
  return return_probability<mpq_class>(g, 0, l);
}

namespace {

// Bitset over the large-class tuples; a word's signature has bit j set when
// the word evaluates to the identity on tuple j.
struct Signature {
  std::vector<std::uint64_t> w;

  bool any() const {
    for (auto x : w)
      if (x) return true;
    return false;
  }
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : s.w) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

Signature intersect(const Signature& a, const Signature& b) {
  Signature out;
  out.w.resize(a.w.size());
  for (size_t i = 0; i < a.w.size(); ++i) out.w[i] = a.w[i] & b.w[i];
  return out;
}

std::vector<MatrixTuple> collect_large_tuples(const Field& f, int m, int k,
                                              const Caps& caps) {
  GlGroup gl = GlGroup::build(f, k, caps.tuples);
  TupleEnumerator en(gl, m, caps.tuples);
  std::vector<MatrixTuple> large;
  MatrixTuple t;
  while (en.next(t)) {
    if (classify_image(f, t).cls == ImageClass::large) large.push_back(t);
  }
  return large;
}

}  // namespace

std::vector<mpq_class> exact_survival_curve(const Field& f, int m, int k, int l,
                                            int u_max, const Caps& caps) {
  if (u_max < 0) throw std::invalid_argument("u_max must be >= 0");
  std::vector<MatrixTuple> large = collect_large_tuples(f, m, k, caps);
  const size_t n_large = large.size();
  std::vector<mpq_class> curve(static_cast<size_t>(u_max) + 1, 0);
  if (n_large == 0) return curve;  // no large image exists even with no relators
  curve[0] = 1;
  if (u_max == 0) return curve;

  // Satisfaction signature of every word of S_l, with multiplicity.
  const size_t words_per_sig = (n_large + 63) / 64;
  std::unordered_map<Signature, std::uint64_t, SignatureHash> sig_count;
  mpz_class total_words = sphere_size(m, l);
  for_each_reduced_word(m, l, caps.words, [&](const Word& w) {
    Signature s;
    s.w.assign(words_per_sig, 0);
    for (size_t j = 0; j < n_large; ++j) {
      if (evaluate_word(f, w, large[j]).is_identity()) s.w[j / 64] |= 1ULL << (j % 64);
    }
    ++sig_count[s];
  });

  // DP over reachable intersections of signatures.
  Signature full;
  full.w.assign(words_per_sig, ~0ULL);
  if (n_large % 64) full.w.back() = (1ULL << (n_large % 64)) - 1;
  std::unordered_map<Signature, mpq_class, SignatureHash> dist;
  dist.emplace(full, mpq_class(1));
  for (int step = 1; step <= u_max; ++step) {
    std::unordered_map<Signature, mpq_class, SignatureHash> next;
    for (const auto& [state, prob] : dist) {
      if (!state.any()) {
        next[state] += prob;  // empty set is absorbing
        continue;
      }
      for (const auto& [sig, count] : sig_count) {
        mpq_class q(count);
        q /= mpq_class(total_words);
        next[intersect(state, sig)] += prob * q;
      }
    }
    if (next.size() > caps.oracle_states) {
      throw CapExceeded("signature DP state count exceeds cap " +
                        std::to_string(caps.oracle_states));
    }
    dist = std::move(next);
    mpq_class alive = 0;
    for (const auto& [state, prob] : dist) {
      if (state.any()) alive += prob;
    }
    curve[static_cast<size_t>(step)] = alive;
  }
  return curve;
}

mpq_class exact_nontrivial_survival(const Field& f, int m, int k, int l, int u,
                                    const Caps& caps) {
  return exact_survival_curve(f, m, k, l, u, caps).back();
}

std::vector<mpq_class> large_tuple_survival_probabilities(const Field& f, int m,
                                                          int k, int l,
                                                          const Caps& caps) {
  std::vector<MatrixTuple> large = collect_large_tuples(f, m, k, caps);
  std::vector<mpq_class> out;
  out.reserve(large.size());
  for (const MatrixTuple& t : large) {
    out.push_back(survival_probability(f, t, l, caps.subgroup));
  }
  return out;
}

}  // namespace linrep
