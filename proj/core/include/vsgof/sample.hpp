#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vsgof {

/// Validated observations with a cached ascending view.
///
/// Immutable after construction, so it can be shared read-only between
/// workers. All values are finite; the constructor throws DataError
/// otherwise, or when the input is empty.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return raw_.size(); }
  [[nodiscard]] std::span<const double> raw() const noexcept { return raw_; }
  /// Order statistics X(1) <= ... <= X(n).
  [[nodiscard]] std::span<const double> sorted() const noexcept { return sorted_; }
  /// Largest multiplicity of a single value (1 when there are no ties).
  [[nodiscard]] std::size_t max_tie_run() const noexcept { return max_tie_run_; }
  [[nodiscard]] bool has_ties() const noexcept { return max_tie_run_ > 1; }

  [[nodiscard]] double min() const noexcept { return sorted_.front(); }
  [[nodiscard]] double max() const noexcept { return sorted_.back(); }

 private:
  std::vector<double> raw_;
  std::vector<double> sorted_;
  std::size_t max_tie_run_ = 1;
};

}  // namespace vsgof
