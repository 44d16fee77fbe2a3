#ifndef WALKLAB_ERROR_HPP_
#define WALKLAB_ERROR_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace walklab {

enum class ErrorKind {
  invalid_input,
  usage,
  unsupported_operation,
  budget_exceeded,
  insufficient_depth,
  degenerate_growth,
  undefined_drift,
  optimization_failed,
  unreliable_comparison,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when an element or table budget runs out. `completed` is the last
// fully finished level/step; `partial` holds whatever per-level counts were
// finished before the budget ran out (may be empty).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t completed,
                 std::vector<std::uint64_t> partial = {})
      : Error(ErrorKind::budget_exceeded, what),
        completed_(completed),
        partial_(std::move(partial)) {}

  std::size_t completed() const noexcept { return completed_; }
  const std::vector<std::uint64_t>& partial() const noexcept {
    return partial_;
  }

 private:
  std::size_t completed_;
  std::vector<std::uint64_t> partial_;
};

}  // namespace walklab

#endif  // WALKLAB_ERROR_HPP_
