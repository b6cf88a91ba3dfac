// Network model types and forward evaluation.
//
// All networks are immutable after construction.  Weights live in [-1, 1];
// construction rejects NaN/Inf and out-of-range entries.  The output bit is
// sign(relu(v)) with strict sign: positive -> 1, zero (or negative pre-relu)
// -> 0.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "relutest/bits.hpp"

namespace relutest {

// Single hidden layer, single output: f(x) = sign(relu(w^T relu(A x))).
struct ShlNetwork {
  std::size_t n = 0;  // inputs
  std::size_t m = 0;  // hidden nodes
  std::vector<double> a;  // m x n, row-major: a[j*n + i]
  std::vector<double> w;  // m

  ShlNetwork(std::size_t n_, std::size_t m_, std::vector<double> a_,
             std::vector<double> w_);

  double a_at(std::size_t j, std::size_t i) const { return a[j * n + i]; }
};

// Single hidden layer, r outputs: f(x) = sign(relu(W^T relu(A x))).
struct MoNetwork {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t r = 0;
  std::vector<double> a;      // m x n, row-major
  std::vector<double> wmat;   // m x r, row-major: wmat[j*r + o]

  MoNetwork(std::size_t n_, std::size_t m_, std::size_t r_,
            std::vector<double> a_, std::vector<double> wmat_);
};

// ell >= 1 hidden layers: dims = (m_0, ..., m_{ell+1}); layer k maps
// dimension m_k to m_{k+1} (row-major m_{k+1} x m_k).  f applies relu between
// layers and sign(relu(.)) per output coordinate at the end.
struct DeepNetwork {
  std::vector<std::size_t> dims;
  std::vector<std::vector<double>> layers;

  DeepNetwork(std::vector<std::size_t> dims_,
              std::vector<std::vector<double>> layers_);

  std::size_t depth() const { return dims.size() - 2; }  // number of hidden layers
  std::size_t inputs() const { return dims.front(); }
  std::size_t outputs() const { return dims.back(); }
};

struct ShlEval {
  double value = 0.0;  // w^T relu(A x), before the outer relu/sign
  int bit = 0;
};

struct VectorEval {
  std::vector<double> values;  // pre-relu output activations
  std::vector<int> bits;
};

ShlEval eval_shl(const ShlNetwork& net, const BitVector& x);
VectorEval eval_mo(const MoNetwork& net, const BitVector& x);
VectorEval eval_deep(const DeepNetwork& net, const BitVector& x);

// Single-output restriction: keep output j (1-based), drop the rest.
ShlNetwork restrict_output(const MoNetwork& net, std::size_t j);
DeepNetwork restrict_output(const DeepNetwork& net, std::size_t j);

// Checked weight write helpers used by constructions.
void validate_weight(double v);

}  // namespace relutest
