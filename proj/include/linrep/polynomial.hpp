#ifndef LINREP_POLYNOMIAL_HPP
#define LINREP_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "linrep/field.hpp"

namespace linrep {

/// Degree of the zero polynomial (the -infinity sentinel).
constexpr std::int64_t kDegreeNegInf = INT64_MIN;

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial: exponent vector -> coefficient, exact
/// arithmetic.  Coeff is mpz_class or mpq_class.
template <class Coeff>
class Polynomial {
public:
  explicit Polynomial(int vars = 0) : n_(vars) {}

  static Polynomial constant(int vars, Coeff c) {
    Polynomial p(vars);
    p.add_term(Exponents(vars, 0), std::move(c));
    return p;
  }

  /// The monomial x_{index}^power (0-based variable index).
  static Polynomial variable(int vars, int index, std::uint32_t power = 1) {
    Polynomial p(vars);
    Exponents e(vars, 0);
    e.at(index) = power;
    p.add_term(std::move(e), Coeff(1));
    return p;
  }

  int vars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Exponents, Coeff>& terms() const { return terms_; }

  void add_term(Exponents e, Coeff c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::int64_t total_degree() const {
    if (terms_.empty()) return kDegreeNegInf;
    std::int64_t best = 0;
    for (const auto& [e, c] : terms_) {
      std::int64_t d = 0;
      for (auto x : e) d += x;
      if (d > best) best = d;
    }
    return best;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }

  Polynomial operator-(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
    return out;
  }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial out(n_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        Exponents e(n_);
        for (int i = 0; i < n_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    }
    return out;
  }

  Polynomial operator*(const Coeff& s) const {
    Polynomial out(n_);
    if (s == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
    return out;
  }

  Polynomial pow(unsigned exp) const {
    Polynomial out = constant(n_, Coeff(1));
    Polynomial base = *this;
    while (exp) {
      if (exp & 1) out = out * base;
      base = base * base;
      exp >>= 1;
    }
    return out;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  int n_;
  std::map<Exponents, Coeff> terms_;
};

using IntPolynomial = Polynomial<mpz_class>;
using RatPolynomial = Polynomial<mpq_class>;

/// max |coefficient|; 0 for the zero polynomial.
mpz_class height(const IntPolynomial& p);

/// Evaluate mod the field's characteristic at a point of field elements.
std::uint32_t eval_mod(const IntPolynomial& p, const Field& f,
                       std::span<const std::uint32_t> point);

// Text format: sum of terms "c*x1^a1*x2^a2", e.g. "2*x1^2*x2 - 3*x1 + 1".
// Variables are 1-based in the text, 0-based in Exponents.
IntPolynomial parse_polynomial(const std::string& text, int vars);
std::string polynomial_to_text(const IntPolynomial& p);

RatPolynomial to_rational(const IntPolynomial& p);

}  // namespace linrep

#endif
