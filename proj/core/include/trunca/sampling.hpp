#pragma once

// Copula-level sampling: frailty constructions for (tilted, outer power,
// nested) Archimedean copulas, the shock construction for Marshall-Olkin,
// rejection from the untruncated model, and rank transforms.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trunca/copulas.hpp"
#include "trunca/rng.hpp"

namespace trunca {

struct SampleMeta {
  /// Serialized model, filled in by callers that have one.
  std::string model_spec;
  std::vector<double> t;
  std::uint64_t seed = 0;
  std::string method;
};

/// n x d observations, row-major.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(std::size_t n, int d);
  SampleMatrix(std::size_t n, int d, std::vector<double> data);

  std::size_t rows() const { return n_; }
  int cols() const { return d_; }
  double& operator()(std::size_t i, int j) { return data_[index(i, j)]; }
  double operator()(std::size_t i, int j) const { return data_[index(i, j)]; }
  std::span<double> row(std::size_t i) { return {data_.data() + index(i, 0), width()}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + index(i, 0), width()}; }
  std::vector<double> column(int j) const;
  const std::vector<double>& data() const { return data_; }

  /// Appends the rows of other; column counts must match.
  void append(const SampleMatrix& other);

  SampleMeta meta;

 private:
  std::size_t width() const { return static_cast<std::size_t>(d_); }
  std::size_t index(std::size_t i, int j) const { return i * width() + static_cast<std::size_t>(j); }

  std::size_t n_ = 0;
  int d_ = 0;
  std::vector<double> data_;
};

/// U_j = psi(E_j / V) with V drawn from the frailty of g (tilt included).
SampleMatrix sample_archimedean(const GeneratorLike& g, int d, std::size_t n, RngStream& rng);

/// Nested Archimedean samples for an independence root, sectors equal to the
/// root, stable-type stacks (independence or Gumbel bases) and Clayton
/// stacks. Other combinations throw UnsupportedError.
SampleMatrix sample_nested(const NestedArchimedean& m, std::size_t n, RngStream& rng);

/// Samples from any model.
SampleMatrix sample_model(const CopulaModel& m, std::size_t n, RngStream& rng);

struct OracleStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  double rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
  }
};

/// Draws from C until U <= t, n times. The rows are on the original scale
/// (in [0, t]); map them with transform_margins. max_tries = 0 means
/// 100 n / C(t). Exceeding it throws SamplingError with the observed
/// acceptance rate.
SampleMatrix oracle_sample(const CopulaModel& m, const TruncationPoint& t, std::size_t n,
                           RngStream& rng, std::uint64_t max_tries = 0,
                           OracleStats* stats = nullptr);

/// Maps each column through F_{t,j}(x) = C(x; t_{-j}) / C(t). Entries above
/// t_j throw std::domain_error.
SampleMatrix transform_margins(const SampleMatrix& raw, const CopulaModel& m,
                               const TruncationPoint& t);

enum class SamplingMethod { Auto, Tilted, Oracle };

/// Samples from C_t. Auto takes the closed-form path when there is one and
/// rejection otherwise; Tilted insists on the closed-form path and throws
/// UnsupportedError without one.
SampleMatrix sample_truncated(const TruncatedCopula& tc, std::size_t n, RngStream& rng,
                              SamplingMethod method = SamplingMethod::Auto,
                              OracleStats* stats = nullptr);

/// Samples of U | U <= t itself (original scale).
SampleMatrix sample_truncated_raw(const TruncatedCopula& tc, std::size_t n, RngStream& rng,
                                  SamplingMethod method = SamplingMethod::Auto,
                                  OracleStats* stats = nullptr);

/// Columnwise average ranks divided by n + 1. Requires n >= 2.
SampleMatrix pseudo_observations(const SampleMatrix& data);

/// Largest absolute difference of the two empirical copulas over the grid
/// {0, 1/g, ..., 1}^d. grid = 0 picks g from the dimension.
double empirical_copula_distance(const SampleMatrix& a, const SampleMatrix& b, int grid = 0);

/// Splits n rows over workers, worker w drawing from RngStream(seed, w + 1),
/// and concatenates the blocks in worker order.
SampleMatrix sample_parallel(const std::function<SampleMatrix(std::size_t, RngStream&)>& draw,
                             std::size_t n, unsigned workers, std::uint64_t seed);

}  // namespace trunca
