#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "ffrl/rng.hpp"

namespace ffrl {

using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

// Gradient accumulator, shape-congruent with Mlp::tensors().
struct MlpGrad {
  std::array<VecX, 6> tensors;  // flattened, same layout as the parameters

  void zero() {
    for (auto& t : tensors) t.setZero();
  }
};

// Fixed-depth perceptron: in -> hidden -> hidden -> out, tanh on the hidden
// layers, linear output. Parameters are held as 32-bit floats (the
// serialized representation); all arithmetic runs in double via a cached
// promotion that is refreshed by sync().
class Mlp {
 public:
  Mlp(int in_dim, int hidden_dim, int out_dim);

  // Orthogonal weight init scaled by sqrt(2) on hidden layers and
  // `out_gain` on the output layer; zero biases.
  static Mlp orthogonal_init(int in_dim, int hidden_dim, int out_dim,
                             double out_gain, RngStream& rng);

  int in_dim() const { return in_dim_; }
  int hidden_dim() const { return hidden_dim_; }
  int out_dim() const { return out_dim_; }

  // Master parameters: [W1, b1, W2, b2, W3, b3]. Weights are row-major
  // [in x out]. Call sync() after mutating.
  std::array<std::vector<float>, 6>& tensors() { return tensors_; }
  const std::array<std::vector<float>, 6>& tensors() const { return tensors_; }

  // Shape of tensor t as (rows, cols); cols == 0 marks a rank-1 tensor.
  std::pair<int, int> tensor_shape(int t) const;
  std::size_t param_count() const;

  // Refresh the double-precision compute cache from the float master.
  void sync();

  // x: [n x in] -> [n x out]. Pure; safe to call concurrently.
  MatX forward(const Eigen::Ref<const MatX>& x) const;

  // Forward pass that keeps the activations needed by backward().
  struct Workspace {
    MatX x;   // input [n x in]
    MatX h1;  // tanh activations [n x hidden]
    MatX h2;  // tanh activations [n x hidden]
  };
  MatX forward_cached(const Eigen::Ref<const MatX>& x, Workspace& ws) const;

  // Accumulate d loss / d params into `grad` given d loss / d output.
  // Returns d loss / d input when `grad_input` is non-null.
  void backward(const Workspace& ws, const Eigen::Ref<const MatX>& grad_out,
                MlpGrad& grad, MatX* grad_input = nullptr) const;

  MlpGrad make_grad() const;

 private:
  int in_dim_, hidden_dim_, out_dim_;
  std::array<std::vector<float>, 6> tensors_;
  // double mirrors used for arithmetic
  MatX w1_, w2_, w3_;
  VecX b1_, b2_, b3_;
};

}  // namespace ffrl
