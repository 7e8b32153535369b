#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vsgof/distributions.hpp"
#include "vsgof/sample.hpp"

namespace vsgof {

// Classical EDF goodness-of-fit statistics for a fully specified null,
// computed on the probability-integral transform u = F0(x).

enum class EdfTest { ks, cvm, ad };

[[nodiscard]] std::string_view to_string(EdfTest test) noexcept;

struct EdfTestReport {
  EdfTest test = EdfTest::ks;
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Kolmogorov-Smirnov D_n from sorted PIT values.
[[nodiscard]] double ks_from_pit(std::span<const double> sorted_u);
/// Cramer-von Mises W^2 from sorted PIT values.
[[nodiscard]] double cvm_from_pit(std::span<const double> sorted_u);
/// Anderson-Darling A^2 from sorted PIT values (clamped 1e-15 away from 0 and 1).
[[nodiscard]] double ad_from_pit(std::span<const double> sorted_u);

/// Sorted PIT values of x under `null`. Throws DataError when every value
/// maps to the same boundary (0 or 1).
[[nodiscard]] std::vector<double> pit(const Sample& x, const Distribution& null);

[[nodiscard]] double ks_statistic(const Sample& x, const Distribution& null);
[[nodiscard]] double cvm_statistic(const Sample& x, const Distribution& null);
[[nodiscard]] double ad_statistic(const Sample& x, const Distribution& null);
[[nodiscard]] double edf_statistic(EdfTest test, const Sample& x, const Distribution& null);

/// Monte-Carlo p-value #{T_i >= T_obs} / B with B samples from `null`.
/// Replicate i draws from the substream derive_seed(seed, i).
[[nodiscard]] double edf_mc_p_value(const Sample& x, const Distribution& null, EdfTest test,
                                    std::size_t replicates, std::uint64_t seed,
                                    unsigned threads = 1);

/// Several EDF tests sharing one set of null replicates.
[[nodiscard]] std::vector<EdfTestReport> edf_mc_tests(const Sample& x, const Distribution& null,
                                                      std::span<const EdfTest> tests,
                                                      std::size_t replicates, std::uint64_t seed,
                                                      unsigned threads = 1);

}  // namespace vsgof
