#include "vsgof/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsgof/error.hpp"

namespace vsgof {

Sample::Sample(std::vector<double> values) : raw_(std::move(values)) {
  if (raw_.empty()) {
    throw DataError("sample is empty");
  }
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    if (!std::isfinite(raw_[i])) {
      throw DataError("observation " + std::to_string(i + 1) + " is not a finite number");
    }
  }
  sorted_ = raw_;
  std::sort(sorted_.begin(), sorted_.end());

  std::size_t run = 1;
  for (std::size_t i = 1; i < sorted_.size(); ++i) {
    run = (sorted_[i] == sorted_[i - 1]) ? run + 1 : 1;
    max_tie_run_ = std::max(max_tie_run_, run);
  }
}

}  // namespace vsgof
