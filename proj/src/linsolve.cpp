#include "linrep/linsolve.hpp"

#include <stdexcept>
#include <utility>

namespace linrep {

std::optional<std::vector<mpq_class>> solve_integer_system(IntMatrix m,
                                                           std::vector<mpz_class> b) {
  if (b.size() != m.rows) throw std::invalid_argument("rhs size does not match row count");
  const std::size_t R = m.rows;
  const std::size_t C = m.cols;

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < C && r < R; ++col) {
    std::size_t pr = r;
    while (pr < R && m.at(pr, col) == 0) ++pr;
    if (pr == R) continue;
    if (pr != r) {
      for (std::size_t j = col; j < C; ++j) std::swap(m.at(r, j), m.at(pr, j));
      std::swap(b[r], b[pr]);
    }
    const mpz_class& pivot = m.at(r, col);
    // Every row below is updated, zero multiplier or not: the one-step
    // Bareiss identity needs the pivot/prev rescaling to stay exact.
    for (std::size_t i = r + 1; i < R; ++i) {
      mpz_class mult = m.at(i, col);
      for (std::size_t j = col + 1; j < C; ++j) {
        mpz_class t = m.at(i, j) * pivot - mult * m.at(r, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      mpz_class t = b[i] * pivot - mult * b[r];
      mpz_divexact(b[i].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      m.at(i, col) = 0;
    }
    prev = pivot;
    pivots.emplace_back(r, col);
    ++r;
  }

  // Rows below the last pivot have zero coefficients; nonzero rhs there means
  // the system is inconsistent.
  for (std::size_t i = r; i < R; ++i) {
    if (b[i] != 0) return std::nullopt;
  }

  std::vector<mpq_class> x(C, 0);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    auto [row, col] = *it;
    mpq_class sum(b[row]);
    for (std::size_t j = col + 1; j < C; ++j) {
      if (m.at(row, j) != 0) sum -= mpq_class(m.at(row, j)) * x[j];
    }
    x[col] = sum / mpq_class(m.at(row, col));
    x[col].canonicalize();
  }
  return x;
}

}  // namespace linrep
