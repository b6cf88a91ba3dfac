#include "relutest/model.hpp"

#include <cmath>
#include <stdexcept>

namespace relutest {

void validate_weight(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("weight is not finite");
  if (v < -1.0 || v > 1.0) throw std::invalid_argument("weight outside [-1, 1]");
}

namespace {

void validate_all(const std::vector<double>& v) {
  for (double x : v) validate_weight(x);
}

}  // namespace

ShlNetwork::ShlNetwork(std::size_t n_, std::size_t m_, std::vector<double> a_,
                       std::vector<double> w_)
    : n(n_), m(m_), a(std::move(a_)), w(std::move(w_)) {
  if (n == 0 || m == 0) throw std::invalid_argument("empty network");
  if (a.size() != n * m) throw std::invalid_argument("A has wrong shape");
  if (w.size() != m) throw std::invalid_argument("w has wrong shape");
  validate_all(a);
  validate_all(w);
}

MoNetwork::MoNetwork(std::size_t n_, std::size_t m_, std::size_t r_,
                     std::vector<double> a_, std::vector<double> wmat_)
    : n(n_), m(m_), r(r_), a(std::move(a_)), wmat(std::move(wmat_)) {
  if (n == 0 || m == 0 || r == 0) throw std::invalid_argument("empty network");
  if (a.size() != n * m) throw std::invalid_argument("A has wrong shape");
  if (wmat.size() != m * r) throw std::invalid_argument("W has wrong shape");
  validate_all(a);
  validate_all(wmat);
}

DeepNetwork::DeepNetwork(std::vector<std::size_t> dims_,
                         std::vector<std::vector<double>> layers_)
    : dims(std::move(dims_)), layers(std::move(layers_)) {
  if (dims.size() < 3) {
    throw std::invalid_argument("deep network needs at least one hidden layer");
  }
  for (auto d : dims)
    if (d == 0) throw std::invalid_argument("zero-sized layer");
  if (layers.size() != dims.size() - 1) {
    throw std::invalid_argument("layer count does not match dims");
  }
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    if (layers[k].size() != dims[k] * dims[k + 1]) {
      throw std::invalid_argument("layer has wrong shape");
    }
    validate_all(layers[k]);
  }
}

ShlEval eval_shl(const ShlNetwork& net, const BitVector& x) {
  if (x.size() != net.n) throw std::invalid_argument("input has wrong length");
  const auto idx = x.ones();
  double total = 0.0;
  for (std::size_t j = 0; j < net.m; ++j) {
    const double* row = net.a.data() + j * net.n;
    double s = 0.0;
    for (auto i : idx) s += row[i];
    if (s > 0.0) total += net.w[j] * s;
  }
  return {total, total > 0.0 ? 1 : 0};
}

VectorEval eval_mo(const MoNetwork& net, const BitVector& x) {
  if (x.size() != net.n) throw std::invalid_argument("input has wrong length");
  const auto idx = x.ones();
  std::vector<double> out(net.r, 0.0);
  for (std::size_t j = 0; j < net.m; ++j) {
    const double* row = net.a.data() + j * net.n;
    double s = 0.0;
    for (auto i : idx) s += row[i];
    if (s > 0.0) {
      const double* wrow = net.wmat.data() + j * net.r;
      for (std::size_t o = 0; o < net.r; ++o) out[o] += wrow[o] * s;
    }
  }
  VectorEval ev;
  ev.values = std::move(out);
  ev.bits.resize(net.r);
  for (std::size_t o = 0; o < net.r; ++o) ev.bits[o] = ev.values[o] > 0.0 ? 1 : 0;
  return ev;
}

VectorEval eval_deep(const DeepNetwork& net, const BitVector& x) {
  if (x.size() != net.inputs()) {
    throw std::invalid_argument("input has wrong length");
  }
  std::vector<double> cur(net.inputs());
  for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = x.test(i) ? 1.0 : 0.0;
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    const std::size_t rows = net.dims[k + 1];
    const std::size_t cols = net.dims[k];
    std::vector<double> next(rows, 0.0);
    const auto& mat = net.layers[k];
    for (std::size_t r = 0; r < rows; ++r) {
      const double* row = mat.data() + r * cols;
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        if (cur[c] > 0.0) s += row[c] * cur[c];
      }
      next[r] = s;
    }
    if (k + 1 < net.layers.size()) {
      for (auto& v : next)
        if (v < 0.0) v = 0.0;  // relu between layers
    }
    cur = std::move(next);
  }
  VectorEval ev;
  ev.bits.resize(cur.size());
  for (std::size_t o = 0; o < cur.size(); ++o) ev.bits[o] = cur[o] > 0.0 ? 1 : 0;
  ev.values = std::move(cur);
  return ev;
}

ShlNetwork restrict_output(const MoNetwork& net, std::size_t j) {
  if (j < 1 || j > net.r) throw std::invalid_argument("output index out of range");
  std::vector<double> w(net.m);
  for (std::size_t row = 0; row < net.m; ++row) w[row] = net.wmat[row * net.r + (j - 1)];
  return ShlNetwork(net.n, net.m, net.a, std::move(w));
}

DeepNetwork restrict_output(const DeepNetwork& net, std::size_t j) {
  if (j < 1 || j > net.outputs()) {
    throw std::invalid_argument("output index out of range");
  }
  auto dims = net.dims;
  dims.back() = 1;
  auto layers = net.layers;
  const std::size_t cols = net.dims[net.dims.size() - 2];
  std::vector<double> last(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    last[c] = net.layers.back()[(j - 1) * cols + c];
  }
  layers.back() = std::move(last);
  return DeepNetwork(std::move(dims), std::move(layers));
}

}  // namespace relutest
