#include "linrep/certify.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "linrep/errors.hpp"
#include "linrep/linsolve.hpp"

namespace linrep {

std::vector<IntPolynomial> variety_polynomials(int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("need m >= 1 and k >= 1");
  MatrixVariableLayout lay{m, k};
  const int n = lay.count();
  std::vector<IntPolynomial> out;
  out.reserve(static_cast<size_t>(m) * k * k);
  for (int i = 1; i <= m; ++i) {
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        IntPolynomial p(n);
        for (int j = 0; j < k; ++j) {
          Exponents e(n, 0);
          ++e[lay.index(i, false, r, j)];
          ++e[lay.index(i, true, j, c)];
          p.add_term(std::move(e), 1);
        }
        if (r == c) p.add_term(Exponents(n, 0), -1);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<IntPolynomial> relation_polynomials(const Word& w, int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("need m >= 1 and k >= 1");
  if (!is_reduced(w)) throw std::invalid_argument("relation word must be reduced");
  MatrixVariableLayout lay{m, k};
  const int n = lay.count();
  // running symbolic product, entry (r, c)
  std::vector<IntPolynomial> cur(static_cast<size_t>(k) * k, IntPolynomial(n));
  for (int r = 0; r < k; ++r) cur[r * k + r] = IntPolynomial::constant(n, 1);
  for (const Letter& a : w) {
    if (a.generator < 1 || a.generator > m) {
      throw std::invalid_argument("letter index exceeds generator count");
    }
    const bool inv = a.sign < 0;
    std::vector<IntPolynomial> next(static_cast<size_t>(k) * k, IntPolynomial(n));
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        IntPolynomial acc(n);
        for (int j = 0; j < k; ++j) {
          acc = acc + cur[r * k + j] * IntPolynomial::variable(n, lay.index(a.generator, inv, j, c));
        }
        next[r * k + c] = std::move(acc);
      }
    }
    cur = std::move(next);
  }
  for (int r = 0; r < k; ++r) cur[r * k + r].add_term(Exponents(n, 0), -1);
  return cur;
}

mpz_class brownawell_degree_cap(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("need n >= 1 and d >= 1");
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), static_cast<unsigned long>(d + 1),
                static_cast<unsigned long>(n + 2));
  return mpz_class(n + 1) * (n + 2) * pow;
}

mpz_class poly_space_dim(int d, int n) {
  if (d < 0 || n < 0) throw std::invalid_argument("need d >= 0 and n >= 0");
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(d + n),
               static_cast<unsigned long>(n));
  mpz_class cap;
  mpz_ui_pow_ui(cap.get_mpz_t(), static_cast<unsigned long>(d + 1),
                static_cast<unsigned long>(n));
  if (out > cap) throw std::logic_error("monomial count exceeded (d+1)^n");
  return out;
}

namespace {

void enumerate_monomials(int n, long cap, Exponents& cur, int pos, long remaining,
                         std::vector<Exponents>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  for (long e = 0; e <= remaining; ++e) {
    cur[pos] = static_cast<std::uint32_t>(e);
    enumerate_monomials(n, cap, cur, pos + 1, remaining - e, out);
  }
  cur[pos] = 0;
}

std::vector<Exponents> monomials_up_to(int n, long cap) {
  std::vector<Exponents> out;
  Exponents cur(n, 0);
  enumerate_monomials(n, cap, cur, 0, cap, out);
  return out;
}

// Try to solve sum p_i q_i = r^nu with deg q_i <= cap.  Returns the rational
// coefficient vectors of the q_i on success.
std::optional<std::vector<RatPolynomial>> try_cap(std::span<const IntPolynomial> ps,
                                                  const IntPolynomial& r_nu, int n,
                                                  long cap, std::uint64_t max_unknowns) {
  const size_t t = ps.size();
  mpz_class fcap = poly_space_dim(static_cast<int>(cap), n);
  if (fcap * static_cast<unsigned long>(t) > max_unknowns) {
    throw CapExceeded("certificate system needs " + mpz_class(fcap * t).get_str() +
                      " unknowns (cap " + std::to_string(max_unknowns) +
                      "); pass a smaller degree_cap");
  }
  std::vector<Exponents> basis = monomials_up_to(n, cap);
  const size_t per_q = basis.size();

  // rows: every monomial in the support of the equation
  std::map<Exponents, size_t> row_of;
  auto row_index = [&](const Exponents& e) {
    auto [it, fresh] = row_of.emplace(e, row_of.size());
    return it->second;
  };
  struct Entry {
    size_t row, col;
    mpz_class v;
  };
  std::vector<Entry> entries;
  for (size_t i = 0; i < t; ++i) {
    for (size_t bidx = 0; bidx < per_q; ++bidx) {
      for (const auto& [e, c] : ps[i].terms()) {
        Exponents sum(n);
        for (int v = 0; v < n; ++v) sum[v] = e[v] + basis[bidx][v];
        entries.push_back(Entry{row_index(sum), i * per_q + bidx, c});
      }
    }
  }
  std::vector<mpz_class> rhs_sparse;
  std::vector<size_t> rhs_rows;
  for (const auto& [e, c] : r_nu.terms()) {
    rhs_rows.push_back(row_index(e));
    rhs_sparse.push_back(c);
  }

  IntMatrix mat(row_of.size(), t * per_q);
  for (const Entry& en : entries) mat.at(en.row, en.col) += en.v;
  std::vector<mpz_class> rhs(row_of.size(), 0);
  for (size_t i = 0; i < rhs_rows.size(); ++i) rhs[rhs_rows[i]] += rhs_sparse[i];

  auto sol = solve_integer_system(std::move(mat), std::move(rhs));
  if (!sol) return std::nullopt;

  std::vector<RatPolynomial> qs;
  qs.reserve(t);
  for (size_t i = 0; i < t; ++i) {
    RatPolynomial q(n);
    for (size_t bidx = 0; bidx < per_q; ++bidx) {
      const mpq_class& c = (*sol)[i * per_q + bidx];
      if (c != 0) q.add_term(basis[bidx], c);
    }
    qs.push_back(std::move(q));
  }
  return qs;
}

}  // namespace

std::optional<Certificate> find_certificate(std::span<const IntPolynomial> ps,
                                            const IntPolynomial& r,
                                            const CertificateOptions& opts) {
  if (ps.empty()) throw std::invalid_argument("need at least one p_i");
  const int n = r.vars();
  for (const IntPolynomial& p : ps) {
    if (p.vars() != n) throw std::invalid_argument("variable count mismatch between p_i and r");
  }
  long d = 1;
  for (const IntPolynomial& p : ps) d = std::max<long>(d, std::max<std::int64_t>(0, p.total_degree()));
  d = std::max<long>(d, std::max<std::int64_t>(0, r.total_degree()));

  long cap;
  if (opts.degree_cap) {
    cap = *opts.degree_cap;
    if (cap < 0) throw std::invalid_argument("degree_cap must be >= 0");
  } else {
    mpz_class q = brownawell_degree_cap(n, static_cast<int>(d));
    if (!q.fits_slong_p()) {
      throw CapExceeded("default Brownawell degree cap " + q.get_str() +
                        " is not materializable; pass an explicit degree_cap");
    }
    cap = q.get_si();
  }

  const long deg_r = static_cast<long>(std::max<std::int64_t>(0, r.total_degree()));
  long max_deg_p = 0;
  for (const IntPolynomial& p : ps) {
    max_deg_p = std::max<long>(max_deg_p, std::max<std::int64_t>(0, p.total_degree()));
  }

  for (unsigned nu = 1; nu <= opts.nu_max; ++nu) {
    IntPolynomial r_nu = r.pow(nu);
    // caps to try: the smallest degree that can reach deg(r^nu), then a
    // doubling schedule up to the configured cap
    long floor_cap = std::max<long>(0, static_cast<long>(nu) * deg_r - max_deg_p);
    if (floor_cap > cap) continue;
    std::vector<long> schedule;
    long step = 1;
    for (long c = floor_cap; c < cap; c += step, step *= 2) schedule.push_back(c);
    schedule.push_back(cap);
    for (long c : schedule) {
      auto qs = try_cap(ps, r_nu, n, c, opts.max_unknowns);
      if (!qs) continue;
      // clear denominators: b = lcm of all (reduced) denominators
      mpz_class b = 1;
      for (const RatPolynomial& q : *qs) {
        for (const auto& [e, coeff] : q.terms()) {
          mpz_class den = coeff.get_den();
          mpz_lcm(b.get_mpz_t(), b.get_mpz_t(), den.get_mpz_t());
        }
      }
      Certificate cert;
      cert.b = b;
      cert.nu = nu;
      cert.degree_cap_used = c;
      for (const RatPolynomial& q : *qs) {
        IntPolynomial qi(n);
        for (const auto& [e, coeff] : q.terms()) {
          mpq_class scaled = coeff * mpq_class(b);
          scaled.canonicalize();
          qi.add_term(e, scaled.get_num());
        }
        cert.q.push_back(std::move(qi));
      }
      if (!verify_certificate(ps, r, cert)) {
        throw std::logic_error("internal error: solver produced a non-verifying certificate");
      }
      return cert;
    }
  }
  return std::nullopt;
}

bool verify_certificate(std::span<const IntPolynomial> ps, const IntPolynomial& r,
                        const Certificate& cert) {
  if (cert.q.size() != ps.size()) return false;
  if (cert.b <= 0 || cert.nu < 1) return false;
  const int n = r.vars();
  IntPolynomial lhs(n);
  for (size_t i = 0; i < ps.size(); ++i) {
    if (cert.q[i].vars() != n || ps[i].vars() != n) return false;
    lhs = lhs + ps[i] * cert.q[i];
  }
  IntPolynomial rhs = r.pow(cert.nu) * cert.b;
  return lhs == rhs;
}

PowExpr make_pow_expr(const mpz_class& base, const mpz_class& exponent) {
  if (base < 1 || exponent < 0) throw std::invalid_argument("PowExpr needs base >= 1, exponent >= 0");
  PowExpr out;
  out.base = base;
  out.exponent = exponent;
  const double lg = std::log10(base.get_d());
  out.log10_value = exponent.get_d() * lg;
  // materialize only printable values; everything else stays symbolic
  if (exponent <= 1000000 && out.log10_value <= 4096) {
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
    out.exact = v;
  }
  return out;
}

mpz_class bezout_component_bound(int m, int n, const mpz_class& d) {
  if (m < 0 || n < 1 || d < 1) throw std::invalid_argument("need m >= 0, n >= 1, d >= 1");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(std::min(m, n)));
  return out;
}

bool check_weighted_bezout(const DecompositionClaim& claim) {
  if (claim.n < 1 || claim.d < 1) throw std::invalid_argument("need n >= 1 and d >= 1");
  mpz_class budget;
  mpz_pow_ui(budget.get_mpz_t(), claim.d.get_mpz_t(), static_cast<unsigned long>(claim.n));
  mpz_class sum = 0;
  for (const ComponentClaim& c : claim.components) {
    if (c.degree < 1) throw std::invalid_argument("component degree must be >= 1");
    if (c.dimension < 0 || c.dimension > claim.n) {
      throw std::invalid_argument("component dimension must lie in [0, n]");
    }
    mpz_class w;
    mpz_pow_ui(w.get_mpz_t(), claim.d.get_mpz_t(), static_cast<unsigned long>(c.dimension));
    sum += c.degree * w;
  }
  return sum <= budget;
}

HeightBoundReport height_bound_report(int n, int d, double log_h, const mpz_class& rank,
                                      double c_constant) {
  if (n < 1 || d < 1 || rank < 1) throw std::invalid_argument("need n, d, rank >= 1");
  HeightBoundReport out;
  out.n = n;
  out.d = d;
  out.log_h = log_h;
  out.c_constant = c_constant;
  const double log_r = std::log(rank.get_d());
  out.rank_log = log_r;
  out.hadamard_log_b = rank.get_d() * (log_h + 0.5 * log_r);
  out.theorem_log_b = std::pow(c_constant, n) * std::pow(static_cast<double>(n), 2.0 * n) *
                      std::pow(static_cast<double>(d) + 1.0, static_cast<double>(n) * (n + 2)) *
                      (log_h + c_constant * n * n * std::log(static_cast<double>(d)));
  out.simplified_factor =
      make_pow_expr(mpz_class(2 * d), mpz_class(static_cast<long>(n) * (n + 2) + 1));
  out.simplified_log_b = out.simplified_factor.exact
                             ? out.simplified_factor.exact->get_d() * log_h
                             : std::pow(10.0, out.simplified_factor.log10_value) * log_h;
  return out;
}

TheoremBounds theorem_bounds(int m, int k, int l) {
  if (m < 2 || k < 1 || l < 2) throw std::invalid_argument("need m >= 2, k >= 1, l >= 2");
  TheoremBounds out;
  out.m = m;
  out.k = k;
  out.l = l;
  const long double ln_l = std::log(static_cast<long double>(l));
  const long double u_min = 15.0L * m * m * m * k * k * k * k * ln_l;
  out.u_min = static_cast<long>(std::ceil(u_min));
  mpz_class mk2 = mpz_class(m) * k * k;
  mpz_class exp7 = 7 * mpz_class(m) * m * mpz_class(k) * k * mpz_class(k) * k;  // 7 m^2 k^4
  out.relator_threshold = make_pow_expr(mpz_class(3 * l), exp7);
  out.log_b_cap = make_pow_expr(mpz_class(2 * l), exp7);
  out.component_bound = make_pow_expr(mpz_class(l), 2 * mk2);
  out.height_estimate = make_pow_expr(2 * mk2, mpz_class(l));
  out.lambda_threshold = static_cast<double>(5.0L * m * m * k * k * ln_l);
  out.lambda_denominator = 2 * m * k * k + 1;
  return out;
}

}  // namespace linrep
