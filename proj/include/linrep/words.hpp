#ifndef LINREP_WORDS_HPP
#define LINREP_WORDS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "linrep/rng.hpp"

namespace linrep {

/// One letter x_i^{+1} or x_i^{-1}.  generator is 1-based.
struct Letter {
  int generator;  // in [1, m]
  int sign;       // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Compact letter id in [0, 2m): (generator-1)*2 for x_i, +1 for x_i^{-1}.
constexpr int letter_id(Letter a) { return (a.generator - 1) * 2 + (a.sign < 0 ? 1 : 0); }
constexpr int inverse_id(int id) { return id ^ 1; }
constexpr Letter letter_from_id(int id) { return Letter{id / 2 + 1, (id & 1) ? -1 : +1}; }

inline Letter inverse(Letter a) { return Letter{a.generator, -a.sign}; }

bool is_reduced(std::span<const Letter> w);

/// Free reduction: repeatedly cancel adjacent inverse pairs.
Word reduce(std::span<const Letter> w);

Word word_inverse(std::span<const Letter> w);

/// |S_l| = 2m(2m-1)^{l-1}, exact.  Rejects m < 2 or l < 1.
mpz_class sphere_size(int m, int l);

/// floor(|S_l|^density) with density an exact rational in [0, 1].  The floor
/// is computed as the exact den-th integer root of |S_l|^num; no floating
/// point is involved.
mpz_class relator_count(int m, int l, const mpq_class& density);

/// Uniform over S_l: first letter uniform over 2m, each later letter uniform
/// over the 2m-1 letters excluding the inverse of its predecessor.
Word sample_reduced_word(int m, int l, SplitRng& rng);

/// Visit every reduced word of length l over m generators.  Throws
/// CapExceeded if |S_l| > cap before visiting anything.
void for_each_reduced_word(int m, int l, std::uint64_t cap,
                           const std::function<void(const Word&)>& fn);

struct Presentation {
  int m = 0;
  int l = 0;
  std::vector<Word> relators;          // multiset; repeats kept
  std::optional<mpq_class> density;    // set when sampled from the density model
  std::uint64_t seed = 0;
};

/// u relators sampled i.i.d. uniform over S_l; relator j is drawn from the
/// stream split(seed, j), so the result is independent of sampling order.
Presentation sample_presentation(int m, int l, long u, std::uint64_t seed);

/// Density model: u = relator_count(m, l, density).
Presentation sample_presentation(int m, int l, const mpq_class& density,
                                 std::uint64_t seed);

// Text formats.  Word: "1 -2 1 2" (signed generator indices).  Presentation:
// header "m=<m> l=<l> seed=<seed>" then one relator per line.
std::string word_to_text(std::span<const Letter> w);
Word parse_word(const std::string& text, int m);
void write_presentation(std::ostream& os, const Presentation& p);
Presentation read_presentation(std::istream& is);

/// Parse a density given as a decimal ("0.25") or a fraction ("1/3") into an
/// exact rational.  Throws std::invalid_argument on malformed input.
mpq_class parse_density(const std::string& text);

}  // namespace linrep

#endif
