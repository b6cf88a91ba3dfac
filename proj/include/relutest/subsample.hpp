// Sample plans, size formulas, and subsampled evaluation.
//
// The two-sided testers look only at a random subnetwork: s input nodes and
// t hidden nodes, drawn without replacement.  The sampled value
//   (n m / s t) * w^T relu(T A S x)
// is an unbiased-scale stand-in for the full pre-activation; with the full
// plan (s = n, t = m) it reduces to the exact evaluation through the same
// arithmetic path.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "relutest/bits.hpp"
#include "relutest/oracle_access.hpp"
#include "relutest/rng.hpp"

namespace relutest {

struct TesterConfig {
  double epsilon = 0.25;
  double delta = 1.0;
  double lambda = 0.25;
  double constant_scale = 1.0;  // multiplies the leading constants of all size formulas
  int enum_cap = 24;            // log2 of the witness-search budget
  std::uint64_t seed = 0;

  void validate() const;
};

class EnumerationCapError : public std::runtime_error {
 public:
  explicit EnumerationCapError(const std::string& what)
      : std::runtime_error(what) {}
};

struct FormulaSizesShl {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
};

// s = ceil(scale * 2^20 eps^-2 ln(1/(eps lambda)))
// t = ceil(scale * 2^30 eps^-4 ln(1/(eps lambda)))
FormulaSizesShl formula_sizes_shl(const TesterConfig& cfg);

// s = ceil(scale * 128 ln(2m/lambda) / eps^2) for the one-sided testers.
std::uint64_t one_sided_sample_size(const TesterConfig& cfg, std::size_t m);

struct SamplePlan {
  std::vector<std::vector<std::uint32_t>> layers;  // sorted index lists
  bool clamped = false;  // some requested size exceeded the layer size
};

SamplePlan draw_plan_shl(std::size_t n, std::size_t m, std::uint64_t s,
                         std::uint64_t t, Rng& rng);

// sizes[k] applies to layer dimension dims[k], k = 0..ell.
SamplePlan draw_plan_deep(const std::vector<std::size_t>& dims,
                          const std::vector<std::uint64_t>& sizes, Rng& rng);

// Extracted subnetwork over the sampled coordinates.  Building it touches
// exactly the s*t first-layer and t second-layer entries through the oracle.
struct SubShl {
  std::size_t s = 0, t = 0;
  std::vector<std::uint32_t> inputs, hidden;
  std::vector<double> a;  // t x s, row-major
  std::vector<double> w;  // t
  double scale = 1.0;     // n m / (s t)
};

SubShl extract_sub_shl(ShlOracle& oracle, const SamplePlan& plan);

// Sampled value on an assignment over the s sampled inputs (length s).
double sub_value(const SubShl& sub, const BitVector& xs);

// Spec-level convenience: sampled value for a full-length input.
double scaled_value_shl(ShlOracle& oracle, const SamplePlan& plan,
                        const BitVector& x);

// Deep analogue: per-layer sampled matrices.
struct SubDeep {
  std::vector<std::vector<std::uint32_t>> idx;  // sampled indices per layer 0..ell
  std::vector<std::vector<double>> mats;  // k < ell: s_{k+1} x s_k; last: 1 x s_ell
  std::vector<std::size_t> sizes;         // s_0..s_ell
  double scale = 1.0;                     // prod m_i / s_i
};

SubDeep extract_sub_deep(DeepOracle& oracle, const SamplePlan& plan);

// Sampled value on an assignment over the s_0 sampled inputs (length s_0).
double sub_value_deep(const SubDeep& sub, const BitVector& x0);

double scaled_value_deep(DeepOracle& oracle, const SamplePlan& plan,
                         const BitVector& x);

// Exhaustive witness search over free bits, in ascending lexicographic order
// (earlier free positions are more significant; the all-zero assignment comes
// first).  Throws EnumerationCapError when nbits > enum_cap.
enum class Direction { Above, Below };

std::optional<BitVector> find_witness(
    const std::function<double(const BitVector&)>& eval, std::size_t nbits,
    double threshold, Direction dir, int enum_cap);

}  // namespace relutest
