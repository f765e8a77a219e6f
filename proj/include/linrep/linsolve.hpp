#ifndef LINREP_LINSOLVE_HPP
#define LINREP_LINSOLVE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace linrep {

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  mpz_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

/// Solve A x = b exactly over the rationals by fraction-free (Bareiss)
/// elimination.  Underdetermined systems are fine: free variables are set to
/// zero, so the result is deterministic.  Returns nullopt when inconsistent.
std::optional<std::vector<mpq_class>> solve_integer_system(IntMatrix a,
                                                           std::vector<mpz_class> b);

}  // namespace linrep

#endif
