#include "linrep/matrix.hpp"

#include <sstream>

namespace linrep {

FqMatrix mat_mul(const Field& f, const FqMatrix& a, const FqMatrix& b) {
  const int k = a.k();
  FqMatrix out(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      std::uint32_t acc = 0;
      for (int j = 0; j < k; ++j) acc = f.add(acc, f.mul(a.at(r, j), b.at(j, c)));
      out.at(r, c) = acc;
    }
  }
  return out;
}

std::optional<FqMatrix> mat_inverse(const Field& f, const FqMatrix& a) {
  const int k = a.k();
  FqMatrix m = a;
  FqMatrix inv = FqMatrix::identity(k);
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r) {
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      for (int c = 0; c < k; ++c) {
        std::swap(m.at(pivot, c), m.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    std::uint32_t scale = f.inv(m.at(col, col));
    for (int c = 0; c < k; ++c) {
      m.at(col, c) = f.mul(m.at(col, c), scale);
      inv.at(col, c) = f.mul(inv.at(col, c), scale);
    }
    for (int r = 0; r < k; ++r) {
      if (r == col || m.at(r, col) == 0) continue;
      std::uint32_t factor = m.at(r, col);
      for (int c = 0; c < k; ++c) {
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(col, c)));
        inv.at(r, c) = f.sub(inv.at(r, c), f.mul(factor, inv.at(col, c)));
      }
    }
  }
  return inv;
}

std::string FqMatrix::to_string(const Field& f) const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < k_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < k_; ++c) {
      if (c) os << " ";
      os << f.element_to_string(at(r, c));
    }
  }
  os << "]";
  return os.str();
}

}  // namespace linrep
