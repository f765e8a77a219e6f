#ifndef LINREP_MATREP_HPP
#define LINREP_MATREP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "linrep/field.hpp"
#include "linrep/matrix.hpp"
#include "linrep/multigraph.hpp"
#include "linrep/words.hpp"

namespace linrep {

/// Enumeration / closure budgets.  Exceeding one is an error, never silent
/// truncation.
struct Caps {
  std::uint64_t subgroup = 100000;        // subgroup / Cayley graph elements
  std::uint64_t tuples = 100000000;       // tuple enumeration
  std::uint64_t words = 10000000;         // exhaustive word enumeration
  std::uint64_t oracle_states = 1 << 22;  // signature-DP reachable states
};

/// |GL_k(F_q)| = prod_{i=0}^{k-1} (q^k - q^i), exact.
mpz_class gl_order(int k, const mpz_class& q);

/// All invertible k x k matrices over the field, with inverses cached.
class GlGroup {
public:
  static GlGroup build(const Field& f, int k, std::uint64_t cap = 100000000);

  int k() const { return k_; }
  std::size_t size() const { return mats_.size(); }
  const FqMatrix& matrix(std::size_t i) const { return mats_[i]; }
  const FqMatrix& inverse(std::size_t i) const { return invs_[i]; }

private:
  int k_ = 0;
  std::vector<FqMatrix> mats_;
  std::vector<FqMatrix> invs_;
};

/// A point of GL_k(F_q)^m: the m matrices with their inverses cached.
struct MatrixTuple {
  std::vector<FqMatrix> a;
  std::vector<FqMatrix> ainv;

  int m() const { return static_cast<int>(a.size()); }
  friend bool operator==(const MatrixTuple&, const MatrixTuple&) = default;
};

/// Odometer over GL_k(F_q)^m in row-major index order.
class TupleEnumerator {
public:
  TupleEnumerator(const GlGroup& gl, int m, std::uint64_t cap);

  std::uint64_t total() const { return total_; }
  /// Fills `out` and advances; false once exhausted.
  bool next(MatrixTuple& out);

private:
  const GlGroup& gl_;
  int m_;
  std::uint64_t total_;
  std::uint64_t index_ = 0;
  std::vector<std::size_t> odometer_;
};

/// Product of the letters' matrices (inverse matrices for negative letters),
/// left to right.
FqMatrix evaluate_word(const Field& f, std::span<const Letter> w, const MatrixTuple& t);

/// Breadth-first closure of {identity} under right multiplication by the
/// A_i^{+-1}; element 0 is the identity.  Deterministic order.
std::vector<FqMatrix> generated_subgroup(const Field& f, const MatrixTuple& t,
                                         std::uint64_t cap);

/// Cayley multigraph of the tuple: vertices are the subgroup elements, one
/// undirected edge {g, g.A_i} per vertex and generator.  2m-regular; an
/// identity generator yields one self-loop per vertex, an involution a
/// parallel edge, so the reduced-word <-> nonbacktracking correspondence is
/// exact.  Vertex 0 is the identity.
Multigraph cayley_multigraph(const Field& f, const MatrixTuple& t, std::uint64_t cap);

enum class ImageClass { trivial, order_two, large };
const char* image_class_name(ImageClass c);

struct ImageInfo {
  ImageClass cls = ImageClass::trivial;
  std::optional<FqMatrix> witness;  // the distinct non-identity image, when order_two
};

/// trivial iff all A_i = I; order_two iff not trivial, every A_i^2 = I and
/// all non-identity A_i coincide; large otherwise.  Equivalent to
/// |<A>| <= 2 deciding between {trivial, order_two} and large.
ImageInfo classify_image(const Field& f, const MatrixTuple& t);

struct SearchResult {
  long n_trivial = 0;
  long n_order2 = 0;
  long n_large = 0;
  /// E_j survivor counts: index j = tuples satisfying the first j relators,
  /// j = 0..u.  Pointwise non-increasing.
  std::vector<long> survivor_trajectory;
  std::vector<MatrixTuple> survivors;  // populated when emit_survivors
};

/// Brute-force search over all of GL_k(F_q)^m for tuples satisfying every
/// relator, classified by image size.
SearchResult search_representations(const Field& f, const GlGroup& gl,
                                    const Presentation& p, const Caps& caps,
                                    bool emit_survivors = false);

/// Convenience overload that builds the GL list itself.
SearchResult search_representations(const Field& f, int k, const Presentation& p,
                                    const Caps& caps, bool emit_survivors = false);

/// p_A = P(w(A) = 1) for w uniform over S_l, computed exactly as the
/// nonbacktracking return probability at time l on the tuple's Cayley
/// multigraph.
mpq_class survival_probability(const Field& f, const MatrixTuple& t, int l,
                               std::uint64_t subgroup_cap);

/// Exact probability, over u i.i.d. uniform length-l relators, that at least
/// one tuple with large image survives; returned for every u in [0, u_max].
/// Computed by exhaustive word enumeration and dynamic programming over
/// reachable intersections of word satisfaction signatures.
std::vector<mpq_class> exact_survival_curve(const Field& f, int m, int k, int l,
                                            int u_max, const Caps& caps);

mpq_class exact_nontrivial_survival(const Field& f, int m, int k, int l, int u,
                                    const Caps& caps);

/// Per-tuple survival probabilities of every large-class tuple; the exact
/// union bound at u relators is sum of p_A^u over these.
std::vector<mpq_class> large_tuple_survival_probabilities(const Field& f, int m,
                                                          int k, int l,
                                                          const Caps& caps);

}  // namespace linrep

#endif
