#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stats.hpp"
#include "trunca/analytics.hpp"
#include "trunca/sampling.hpp"

namespace trunca::testing {

/// Sample Kendall tau of columns j1, j2 with a standard error from the
/// spread of tau over disjoint batches.
inline MeanEstimate tau_with_se(const SampleMatrix& s, int j1, int j2, std::size_t batches = 40) {
  const auto x = s.column(j1);
  const auto y = s.column(j2);
  const std::size_t len = x.size() / batches;
  std::vector<double> taus(batches);
  for (std::size_t k = 0; k < batches; ++k)
    taus[k] = kendall_tau(std::span(x).subspan(k * len, len), std::span(y).subspan(k * len, len));
  const auto batch = mean_se(taus);
  return {kendall_tau(x, y), batch.se};
}

}  // namespace trunca::testing
