#ifndef LINREP_ERRORS_HPP
#define LINREP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linrep {

/// A configured budget (subgroup size, tuple count, word count, ...) would be
/// exceeded.  Exceeding a cap is always an error, never silent truncation.
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A multigraph failed the d-regularity check; carries the offending vertices.
class NonRegularError : public std::runtime_error {
public:
  NonRegularError(const std::string& what, std::vector<int> offenders)
      : std::runtime_error(what), offenders_(std::move(offenders)) {}
  const std::vector<int>& offenders() const { return offenders_; }

private:
  std::vector<int> offenders_;
};

class DisconnectedError : public std::runtime_error {
public:
  explicit DisconnectedError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its stated hypotheses (e.g. the return
/// bound checker on a graph with d < 4 or at most two vertices).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace linrep

#endif
