#ifndef LINREP_MATRIX_HPP
#define LINREP_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linrep/field.hpp"

namespace linrep {

/// k x k matrix over a Field, row-major, entries stored as field indices.
class FqMatrix {
public:
  FqMatrix() = default;
  explicit FqMatrix(int k) : k_(k), a_(static_cast<size_t>(k) * k, 0) {}
  static FqMatrix identity(int k) {
    FqMatrix m(k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
  }

  int k() const { return k_; }
  std::uint32_t& at(int r, int c) { return a_[static_cast<size_t>(r) * k_ + c]; }
  std::uint32_t at(int r, int c) const { return a_[static_cast<size_t>(r) * k_ + c]; }
  const std::vector<std::uint32_t>& entries() const { return a_; }

  bool is_identity() const {
    for (int r = 0; r < k_; ++r)
      for (int c = 0; c < k_; ++c)
        if (at(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
  }

  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : a_) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return h ^ static_cast<std::uint64_t>(k_);
  }

  std::string to_string(const Field& f) const;

private:
  int k_ = 0;
  std::vector<std::uint32_t> a_;
};

struct FqMatrixHash {
  std::size_t operator()(const FqMatrix& m) const { return static_cast<std::size_t>(m.hash()); }
};

FqMatrix mat_mul(const Field& f, const FqMatrix& a, const FqMatrix& b);

/// Gauss-Jordan inverse; nullopt when singular.
std::optional<FqMatrix> mat_inverse(const Field& f, const FqMatrix& a);

}  // namespace linrep

#endif
