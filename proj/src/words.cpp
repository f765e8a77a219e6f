#include "linrep/words.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "linrep/errors.hpp"

namespace linrep {

namespace {

void check_params(int m, int l) {
  if (m < 2) throw std::invalid_argument("need at least 2 generators, got m=" + std::to_string(m));
  if (l < 1) throw std::invalid_argument("word length must be >= 1, got l=" + std::to_string(l));
}

}  // namespace

bool is_reduced(std::span<const Letter> w) {
  for (size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i].generator == w[i + 1].generator && w[i].sign == -w[i + 1].sign) return false;
  }
  return true;
}

Word reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& a : w) {
    if (!out.empty() && out.back().generator == a.generator && out.back().sign == -a.sign) {
      out.pop_back();
    } else {
      out.push_back(a);
    }
  }
  return out;
}

Word word_inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

mpz_class sphere_size(int m, int l) {
  check_params(m, l);
  mpz_class base = 2 * m - 1;
  mpz_class pow;
  mpz_pow_ui(pow.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(l - 1));
  return 2 * m * pow;
}

mpz_class relator_count(int m, int l, const mpq_class& density) {
  if (density < 0 || density > 1) {
    throw std::invalid_argument("density must lie in [0, 1]");
  }
  mpq_class d(density);
  d.canonicalize();
  const mpz_class& num = d.get_num();
  const mpz_class& den = d.get_den();
  if (!num.fits_ulong_p() || !den.fits_ulong_p()) {
    throw std::invalid_argument("density numerator/denominator out of range");
  }
  // floor(S^(p/q)) = floor((S^p)^(1/q)), with the q-th root taken exactly
  // over the integers.
  mpz_class s = sphere_size(m, l);
  mpz_class spow;
  mpz_pow_ui(spow.get_mpz_t(), s.get_mpz_t(), num.get_ui());
  mpz_class root;
  mpz_root(root.get_mpz_t(), spow.get_mpz_t(), den.get_ui());
  return root;
}

Word sample_reduced_word(int m, int l, SplitRng& rng) {
  check_params(m, l);
  Word w;
  w.reserve(l);
  int prev = static_cast<int>(rng.below(2 * m));
  w.push_back(letter_from_id(prev));
  for (int i = 1; i < l; ++i) {
    int r = static_cast<int>(rng.below(2 * m - 1));
    if (r >= inverse_id(prev)) ++r;  // skip the inverse of the previous letter
    w.push_back(letter_from_id(r));
    prev = r;
  }
  return w;
}

void for_each_reduced_word(int m, int l, std::uint64_t cap,
                           const std::function<void(const Word&)>& fn) {
  check_params(m, l);
  mpz_class total = sphere_size(m, l);
  if (total > cap) {
    throw CapExceeded("sphere S_" + std::to_string(l) + " has " + total.get_str() +
                      " words, cap is " + std::to_string(cap));
  }
  Word w(l, Letter{1, 1});
  std::vector<int> ids(l, 0);
  // Depth-first odometer over letter ids, skipping inverse pairs.
  int depth = 0;
  std::vector<int> choice(l, -1);
  while (depth >= 0) {
    if (depth == l) {
      fn(w);
      --depth;
      continue;
    }
    int limit = depth == 0 ? 2 * m : 2 * m - 1;
    if (++choice[depth] >= limit) {
      choice[depth] = -1;
      --depth;
      continue;
    }
    int id = choice[depth];
    if (depth > 0 && id >= inverse_id(ids[depth - 1])) ++id;
    ids[depth] = id;
    w[depth] = letter_from_id(id);
    ++depth;
  }
}

Presentation sample_presentation(int m, int l, long u, std::uint64_t seed) {
  check_params(m, l);
  if (u < 0) throw std::invalid_argument("relator count must be >= 0");
  Presentation p;
  p.m = m;
  p.l = l;
  p.seed = seed;
  p.relators.reserve(static_cast<size_t>(u));
  SplitRng root(seed);
  for (long j = 0; j < u; ++j) {
    SplitRng stream = root.split(static_cast<std::uint64_t>(j));
    p.relators.push_back(sample_reduced_word(m, l, stream));
  }
  return p;
}

Presentation sample_presentation(int m, int l, const mpq_class& density,
                                 std::uint64_t seed) {
  mpz_class u = relator_count(m, l, density);
  if (!u.fits_slong_p()) {
    throw CapExceeded("relator count " + u.get_str() + " does not fit in a machine word");
  }
  Presentation p = sample_presentation(m, l, u.get_si(), seed);
  p.density = density;
  return p;
}

std::string word_to_text(std::span<const Letter> w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << w[i].sign * w[i].generator;
  }
  return os.str();
}

Word parse_word(const std::string& text, int m) {
  std::istringstream is(text);
  Word w;
  long v;
  while (is >> v) {
    if (v == 0 || std::abs(v) > m) {
      throw std::invalid_argument("letter index " + std::to_string(v) +
                                  " out of range for m=" + std::to_string(m));
    }
    w.push_back(Letter{static_cast<int>(std::abs(v)), v < 0 ? -1 : +1});
  }
  if (!is.eof()) throw std::invalid_argument("malformed word text: " + text);
  return w;
}

void write_presentation(std::ostream& os, const Presentation& p) {
  os << "m=" << p.m << " l=" << p.l << " seed=" << p.seed << "\n";
  for (const Word& w : p.relators) os << word_to_text(w) << "\n";
}

Presentation read_presentation(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("empty presentation file");
  Presentation p;
  unsigned long long seed = 0;
  if (std::sscanf(header.c_str(), "m=%d l=%d seed=%llu", &p.m, &p.l, &seed) != 3) {
    throw std::invalid_argument("bad presentation header: " + header);
  }
  p.seed = seed;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Word w = parse_word(line, p.m);
    if (static_cast<int>(w.size()) != p.l) {
      throw std::invalid_argument("relator length " + std::to_string(w.size()) +
                                  " does not match l=" + std::to_string(p.l));
    }
    if (!is_reduced(w)) throw std::invalid_argument("relator is not reduced: " + line);
    p.relators.push_back(std::move(w));
  }
  return p;
}

mpq_class parse_density(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty density");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class num(text.substr(0, slash));
      mpz_class den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    if (digits.empty() || frac_len == 0) throw std::invalid_argument("bad decimal");
    mpz_class num(digits);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse density '" + text + "'");
  }
}

}  // namespace linrep
