#ifndef LINREP_FIELD_HPP
#define LINREP_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace linrep {

/// GF(p^e) with exact arithmetic.  Elements are indices in [0, q): the base-p
/// digits of an index are the coefficients of the residue polynomial, least
/// significant digit first, so 0 and 1 are the field's zero and one for every
/// (p, e).  For e = 1 this degenerates to arithmetic mod p.
class Field {
public:
  static constexpr std::uint64_t kDefaultQCap = 1u << 16;

  /// Prime field or extension field with a generated modulus (the first
  /// irreducible monic polynomial of degree e in index order).
  static Field make(std::uint32_t p, std::uint32_t e = 1,
                    std::uint64_t q_cap = kDefaultQCap);

  /// Extension field with an explicit monic modulus, coefficients in [0, p),
  /// constant term first, length e+1.  Verified irreducible.
  static Field make_with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                 std::uint64_t q_cap = kDefaultQCap);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;  // throws on a == 0
  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const;

  /// Embed a (possibly huge) integer via its residue mod p.  Used when
  /// reducing integer polynomial coefficients into the field.
  std::uint32_t from_residue(std::uint32_t residue_mod_p) const { return residue_mod_p % p_; }

  std::string element_to_string(std::uint32_t a) const;

private:
  Field() = default;
  void build_tables();
  std::uint32_t mul_nocache(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_nocache(std::uint32_t a) const;

  std::uint32_t p_ = 0;
  std::uint32_t e_ = 1;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;  // monic, length e+1 (for e >= 2)
  // Multiplication/inverse tables, populated for small q only.
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;
};

bool is_prime_u32(std::uint32_t n);

}  // namespace linrep

#endif
