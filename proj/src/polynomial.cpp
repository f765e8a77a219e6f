#include "linrep/polynomial.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace linrep {

mpz_class height(const IntPolynomial& p) {
  mpz_class h = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_class a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

std::uint32_t eval_mod(const IntPolynomial& p, const Field& f,
                       std::span<const std::uint32_t> point) {
  if (static_cast<int>(point.size()) != p.vars()) {
    throw std::invalid_argument("evaluation point arity mismatch");
  }
  std::uint32_t acc = 0;
  for (const auto& [e, c] : p.terms()) {
    mpz_class residue = c % f.characteristic();
    if (residue < 0) residue += f.characteristic();
    std::uint32_t term = f.from_residue(static_cast<std::uint32_t>(residue.get_ui()));
    for (size_t i = 0; i < point.size(); ++i) {
      if (e[i]) term = f.mul(term, f.pow(point[i], e[i]));
    }
    acc = f.add(acc, term);
  }
  return acc;
}

namespace {

struct Parser {
  const std::string& s;
  size_t i = 0;
  int vars;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool peek_digit() { return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); }

  mpz_class parse_integer() {
    size_t start = i;
    while (peek_digit()) ++i;
    if (start == i) throw std::invalid_argument("expected integer in polynomial text");
    return mpz_class(s.substr(start, i - start));
  }

  // term := [integer] {'*'? 'x' index ['^' exp]}*
  void parse_term(IntPolynomial& out, int sign) {
    skip_ws();
    mpz_class coeff = 1;
    bool saw_factor = false;
    if (peek_digit()) {
      coeff = parse_integer();
      saw_factor = true;
    }
    Exponents e(vars, 0);
    for (;;) {
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws();
      }
      if (i >= s.size() || s[i] != 'x') break;
      ++i;
      mpz_class idx = parse_integer();
      if (idx < 1 || idx > vars) {
        throw std::invalid_argument("variable index out of range in polynomial text");
      }
      std::uint32_t power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        mpz_class p = parse_integer();
        if (p < 0 || !p.fits_uint_p()) throw std::invalid_argument("bad exponent");
        power = static_cast<std::uint32_t>(p.get_ui());
      }
      e[static_cast<size_t>(idx.get_si()) - 1] += power;
      saw_factor = true;
    }
    if (!saw_factor) throw std::invalid_argument("empty term in polynomial text");
    out.add_term(std::move(e), sign < 0 ? mpz_class(-coeff) : coeff);
  }
};

}  // namespace

IntPolynomial parse_polynomial(const std::string& text, int vars) {
  if (vars < 0) throw std::invalid_argument("variable count must be >= 0");
  IntPolynomial out(vars);
  Parser p{text, 0, vars};
  p.skip_ws();
  if (p.i == text.size()) throw std::invalid_argument("empty polynomial text");
  int sign = 1;
  if (text[p.i] == '-') {
    sign = -1;
    ++p.i;
  } else if (text[p.i] == '+') {
    ++p.i;
  }
  for (;;) {
    p.parse_term(out, sign);
    p.skip_ws();
    if (p.i == text.size()) break;
    if (text[p.i] == '+') {
      sign = 1;
    } else if (text[p.i] == '-') {
      sign = -1;
    } else {
      throw std::invalid_argument("unexpected character '" + std::string(1, text[p.i]) +
                                  "' in polynomial text");
    }
    ++p.i;
  }
  return out;
}

std::string polynomial_to_text(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // map order is lexicographic in the exponent vector; stable and canonical
  for (const auto& [e, c] : p.terms()) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool all_zero = true;
    for (auto x : e)
      if (x) all_zero = false;
    if (a != 1 || all_zero) os << a.get_str();
    bool needs_star = (a != 1 || all_zero);
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (needs_star) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      needs_star = true;
    }
  }
  return os.str();
}

RatPolynomial to_rational(const IntPolynomial& p) {
  RatPolynomial out(p.vars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, mpq_class(c));
  return out;
}

}  // namespace linrep
