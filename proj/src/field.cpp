#include "linrep/field.hpp"

#include <sstream>
#include <stdexcept>

#include "linrep/errors.hpp"

namespace linrep {

namespace {

constexpr std::uint32_t kTableCap = 512;  // build q*q mul table below this

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, constant first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// f mod g, g monic, in place arithmetic over GF(p).
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const size_t dg = g.size() - 1;
  while (f.size() >= g.size()) {
    std::uint64_t lead = f.back();
    size_t shift = f.size() - 1 - dg;
    for (size_t i = 0; i <= dg; ++i) {
      std::uint64_t sub = (lead * g[i]) % p;
      std::uint64_t cur = f[shift + i];
      f[shift + i] = static_cast<std::uint32_t>((cur + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>(
          (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return out;
}

// Index <-> polynomial, digits base p.
Poly decode(std::uint32_t idx, std::uint32_t p, std::uint32_t e) {
  Poly f(e, 0);
  for (std::uint32_t i = 0; i < e && idx; ++i) {
    f[i] = idx % p;
    idx /= p;
  }
  trim(f);
  return f;
}

std::uint32_t encode(const Poly& f, std::uint32_t p) {
  std::uint32_t idx = 0;
  for (size_t i = f.size(); i-- > 0;) idx = idx * p + f[i];
  return idx;
}

bool divides(const Poly& g, const Poly& f, std::uint32_t p) {
  Poly r = poly_mod(f, g, p);
  return r.empty();
}

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const size_t deg = f.size() - 1;
  for (size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t lo = 0; lo < count; ++lo) {
      Poly g(d + 1, 0);
      std::uint64_t x = lo;
      for (size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      g[d] = 1;
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

std::uint32_t mod_inverse_prime(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on integers
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t qt = r / new_r;
    t -= qt * new_t;
    std::swap(t, new_t);
    r -= qt * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Extended Euclid over GF(p)[x]; returns the inverse of a mod the modulus.
Poly poly_inverse(const Poly& a, const Poly& modulus, std::uint32_t p) {
  Poly r0 = modulus, r1 = a;
  Poly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1
    Poly q;
    Poly rem = r0;
    trim(rem);
    std::uint32_t lead_inv = mod_inverse_prime(r1.back(), p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      std::uint64_t c = (static_cast<std::uint64_t>(rem.back()) * lead_inv) % p;
      size_t shift = rem.size() - r1.size();
      q[shift] = static_cast<std::uint32_t>(c);
      for (size_t i = 0; i < r1.size(); ++i) {
        std::uint64_t sub = (c * r1[i]) % p;
        rem[shift + i] = static_cast<std::uint32_t>((rem[shift + i] + p - sub) % p);
      }
      trim(rem);
    }
    // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - q*t1)
    Poly qt = poly_mul(q, t1, p);
    Poly nt(std::max(t0.size(), qt.size()), 0);
    for (size_t i = 0; i < nt.size(); ++i) {
      std::uint32_t x = i < t0.size() ? t0[i] : 0;
      std::uint32_t y = i < qt.size() ? qt[i] : 0;
      nt[i] = (x + p - y) % p;
    }
    trim(nt);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  // r0 is the gcd; it must be a nonzero constant
  if (r0.size() != 1) throw std::logic_error("element not invertible (modulus not irreducible?)");
  std::uint32_t scale = mod_inverse_prime(r0[0], p);
  Poly out(t0.size());
  for (size_t i = 0; i < t0.size(); ++i)
    out[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(t0[i]) * scale) % p);
  trim(out);
  return out;
}

}  // namespace

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field Field::make(std::uint32_t p, std::uint32_t e, std::uint64_t q_cap) {
  if (!is_prime_u32(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > q_cap) {
      throw CapExceeded("field order p^e exceeds cap " + std::to_string(q_cap));
    }
  }
  Field f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);
  if (e >= 2) {
    // first irreducible monic polynomial of degree e, by index
    for (std::uint64_t lo = 0;; ++lo) {
      if (lo >= q) throw std::logic_error("no irreducible modulus found");
      Poly g(e + 1, 0);
      std::uint64_t x = lo;
      for (std::uint32_t i = 0; i < e; ++i) {
        g[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      g[e] = 1;
      if (is_irreducible(g, p)) {
        f.modulus_ = g;
        break;
      }
    }
  }
  f.build_tables();
  return f;
}

Field Field::make_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                               std::uint64_t q_cap) {
  if (!is_prime_u32(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 3 || modulus.back() != 1) {
    throw std::invalid_argument("modulus must be monic of degree >= 2");
  }
  for (std::uint32_t c : modulus) {
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  }
  if (!is_irreducible(modulus, p)) throw std::invalid_argument("modulus is not irreducible");
  std::uint32_t e = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > q_cap) throw CapExceeded("field order p^e exceeds cap " + std::to_string(q_cap));
  }
  Field f;
  f.p_ = p;
  f.e_ = e;
  f.q_ = static_cast<std::uint32_t>(q);
  f.modulus_ = std::move(modulus);
  f.build_tables();
  return f;
}

void Field::build_tables() {
  if (q_ > kTableCap) return;
  mul_table_.assign(static_cast<size_t>(q_) * q_, 0);
  inv_table_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    for (std::uint32_t b = a; b < q_; ++b) {
      std::uint32_t r = mul_nocache(a, b);
      mul_table_[static_cast<size_t>(a) * q_ + b] = r;
      mul_table_[static_cast<size_t>(b) * q_ + a] = r;
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a) inv_table_[a] = inv_nocache(a);
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p_);
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    out += ((da + db) % p_) * mult;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t da = a % p_;
    a /= p_;
    out += (da == 0 ? 0 : p_ - da) * mult;
    mult *= p_;
  }
  return out;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::mul_nocache(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
  Poly fa = decode(a, p_, e_);
  Poly fb = decode(b, p_, e_);
  Poly prod = poly_mul(fa, fb, p_);
  if (prod.size() >= modulus_.size()) prod = poly_mod(std::move(prod), modulus_, p_);
  return encode(prod, p_);
}

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<size_t>(a) * q_ + b];
  return mul_nocache(a, b);
}

std::uint32_t Field::inv_nocache(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  if (e_ == 1) return mod_inverse_prime(a, p_);
  Poly fa = decode(a, p_, e_);
  return encode(poly_inverse(fa, modulus_, p_), p_);
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  if (!inv_table_.empty()) return inv_table_[a];
  return inv_nocache(a);
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t n) const {
  std::uint32_t out = 1, base = a;
  while (n) {
    if (n & 1) out = mul(out, base);
    base = mul(base, base);
    n >>= 1;
  }
  return out;
}

std::string Field::element_to_string(std::uint32_t a) const {
  if (e_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << a << "#";  // index form; digits base p are the poly coefficients
  Poly f = decode(a, p_, e_);
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) os << "+";
    os << f[i];
    if (i >= 1) os << "t^" << i;
  }
  return os.str();
}

}  // namespace linrep
