#ifndef LINREP_CERTIFY_HPP
#define LINREP_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "linrep/polynomial.hpp"
#include "linrep/words.hpp"

namespace linrep {

/// Variable layout for encoding m-tuples of k x k matrices and their formal
/// inverses: generator i owns k^2 entry variables for A_i followed by k^2
/// for its inverse, 2*m*k^2 variables in total.
struct MatrixVariableLayout {
  int m = 0;
  int k = 0;

  int count() const { return 2 * m * k * k; }
  int index(int generator, bool inverse, int row, int col) const {
    return (((generator - 1) * 2 + (inverse ? 1 : 0)) * k + row) * k + col;
  }
};

/// The m*k^2 quadratics A_i * Abar_i - I cutting out (GL_k)^m.
std::vector<IntPolynomial> variety_polynomials(int m, int k);

/// The k^2 entries of (product of the word's variable matrices) - I; formal
/// inverse variables stand in for negative letters.  Total degree <= |w|.
std::vector<IntPolynomial> relation_polynomials(const Word& w, int m, int k);

/// Certificate degree cap Q = (n+1)(n+2)(d+1)^(n+2).
mpz_class brownawell_degree_cap(int n, int d);

/// Number of monomials of total degree <= d in n variables: C(d+n, n).
/// Always <= (d+1)^n.
mpz_class poly_space_dim(int d, int n);

struct Certificate {
  std::vector<IntPolynomial> q;  // integer coefficients
  mpz_class b;                   // positive
  unsigned nu = 1;
  long degree_cap_used = 0;
};

struct CertificateOptions {
  /// Max total degree of the q_i.  Defaults to the Brownawell cap, which
  /// explodes beyond n = 1; pass an explicit cap for multivariate systems.
  std::optional<long> degree_cap;
  unsigned nu_max = 8;
  /// Guard on t * (monomial count): refuse to build absurd linear systems.
  std::uint64_t max_unknowns = 200000;
};

/// Search for q_i, b, nu with sum p_i q_i = b r^nu, deg q_i <= cap, by exact
/// linear algebra, smallest nu first, then smallest workable degree.  A
/// nullopt result is inconclusive: it only means no certificate exists within
/// this cap and nu_max, not that r is outside the radical.
std::optional<Certificate> find_certificate(std::span<const IntPolynomial> ps,
                                            const IntPolynomial& r,
                                            const CertificateOptions& opts = {});

/// Exact polynomial identity check of sum p_i q_i = b r^nu.
bool verify_certificate(std::span<const IntPolynomial> ps, const IntPolynomial& r,
                        const Certificate& cert);

/// base^exponent carried symbolically; materialized only when small enough
/// to print.
struct PowExpr {
  mpz_class base;
  mpz_class exponent;
  double log10_value = 0;
  std::optional<mpz_class> exact;
};

PowExpr make_pow_expr(const mpz_class& base, const mpz_class& exponent);

/// d^min(m, n): bound on the number of irreducible components of a variety
/// cut out by m polynomials of degree <= d in n variables.
mpz_class bezout_component_bound(int m, int n, const mpz_class& d);

struct ComponentClaim {
  mpz_class degree;  // >= 1
  int dimension = 0;
};

struct DecompositionClaim {
  int n = 0;
  mpz_class d;
  std::vector<ComponentClaim> components;
};

/// True iff sum_j degree_j * d^(dim_j) <= d^n, exact arithmetic.
bool check_weighted_bezout(const DecompositionClaim& claim);

/// Coefficient-size bounds for the certificate constant b.  log is natural.
/// c_constant is the paper-style absolute constant, exposed non-normatively
/// (default 1).
struct HeightBoundReport {
  int n = 0;
  int d = 0;
  double log_h = 0;
  double rank_log = 0;           // log R
  double hadamard_log_b = 0;     // R (log h + 0.5 log R)
  double theorem_log_b = 0;      // C^n n^(2n) (d+1)^(n(n+2)) (log h + C n^2 log d)
  PowExpr simplified_factor;     // (2d)^(n(n+2)+1)
  double simplified_log_b = 0;   // simplified_factor * log h; only valid for large d
  double c_constant = 1;
};

HeightBoundReport height_bound_report(int n, int d, double log_h, const mpz_class& rank,
                                      double c_constant = 1.0);

/// The closed-form quantities attached to the collapse statement for
/// parameters (m, k, l); astronomically large ones stay symbolic.
struct TheoremBounds {
  int m = 0, k = 0, l = 0;
  long u_min = 0;              // ceil(15 m^3 k^4 ln l)
  PowExpr relator_threshold;   // (3l)^(7 m^2 k^4)
  PowExpr log_b_cap;           // (2l)^(7 m^2 k^4)
  PowExpr component_bound;     // l^(2 m k^2)
  PowExpr height_estimate;     // (2 m k^2)^l
  double lambda_threshold = 0; // 5 m^2 k^2 ln l
  long lambda_denominator = 0; // 2 m k^2 + 1; lambda = u / this
};

TheoremBounds theorem_bounds(int m, int k, int l);

}  // namespace linrep

#endif
