#include "ffrl/mlp.hpp"

#include <stdexcept>

#include <Eigen/QR>

namespace ffrl {

namespace {

// W stored row-major [in x out]; index i*out + j.
void to_matrix(const std::vector<float>& w, MatX& out, int in, int cols) {
  out.resize(in, cols);
  for (int i = 0; i < in; ++i) {
    for (int j = 0; j < cols; ++j) {
      out(i, j) = static_cast<double>(w[static_cast<std::size_t>(i) * cols + j]);
    }
  }
}

void to_vector(const std::vector<float>& b, VecX& out) {
  out.resize(static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = static_cast<double>(b[i]);
  }
}

// Orthogonal matrix [rows x cols] with gain, via QR of a Gaussian draw.
MatX orthogonal_matrix(int rows, int cols, double gain, RngStream& rng) {
  const int big = std::max(rows, cols);
  const int small = std::min(rows, cols);
  MatX a(big, small);
  for (int i = 0; i < big; ++i) {
    for (int j = 0; j < small; ++j) a(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<MatX> qr(a);
  MatX q = qr.householderQ() * MatX::Identity(big, small);
  // Fix signs from the R diagonal so the distribution is uniform.
  MatX r = qr.matrixQR().topRows(small).triangularView<Eigen::Upper>();
  for (int j = 0; j < small; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (rows < cols) return gain * q.transpose();
  return gain * q;
}

}  // namespace

Mlp::Mlp(int in_dim, int hidden_dim, int out_dim)
    : in_dim_(in_dim), hidden_dim_(hidden_dim), out_dim_(out_dim) {
  if (in_dim <= 0 || hidden_dim <= 0 || out_dim <= 0) {
    throw std::invalid_argument("Mlp: dimensions must be positive");
  }
  tensors_[0].assign(static_cast<std::size_t>(in_dim) * hidden_dim, 0.0f);
  tensors_[1].assign(static_cast<std::size_t>(hidden_dim), 0.0f);
  tensors_[2].assign(static_cast<std::size_t>(hidden_dim) * hidden_dim, 0.0f);
  tensors_[3].assign(static_cast<std::size_t>(hidden_dim), 0.0f);
  tensors_[4].assign(static_cast<std::size_t>(hidden_dim) * out_dim, 0.0f);
  tensors_[5].assign(static_cast<std::size_t>(out_dim), 0.0f);
  sync();
}

Mlp Mlp::orthogonal_init(int in_dim, int hidden_dim, int out_dim,
                         double out_gain, RngStream& rng) {
  Mlp net(in_dim, hidden_dim, out_dim);
  const double hidden_gain = std::sqrt(2.0);
  const MatX w1 = orthogonal_matrix(in_dim, hidden_dim, hidden_gain, rng);
  const MatX w2 = orthogonal_matrix(hidden_dim, hidden_dim, hidden_gain, rng);
  const MatX w3 = orthogonal_matrix(hidden_dim, out_dim, out_gain, rng);
  auto store = [](const MatX& m, std::vector<float>& dst) {
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j) {
        dst[static_cast<std::size_t>(i) * m.cols() + j] =
            static_cast<float>(m(i, j));
      }
    }
  };
  store(w1, net.tensors_[0]);
  store(w2, net.tensors_[2]);
  store(w3, net.tensors_[4]);
  net.sync();
  return net;
}

std::pair<int, int> Mlp::tensor_shape(int t) const {
  switch (t) {
    case 0: return {in_dim_, hidden_dim_};
    case 1: return {hidden_dim_, 0};
    case 2: return {hidden_dim_, hidden_dim_};
    case 3: return {hidden_dim_, 0};
    case 4: return {hidden_dim_, out_dim_};
    case 5: return {out_dim_, 0};
    default: throw std::out_of_range("Mlp::tensor_shape");
  }
}

std::size_t Mlp::param_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors_) n += t.size();
  return n;
}

void Mlp::sync() {
  to_matrix(tensors_[0], w1_, in_dim_, hidden_dim_);
  to_vector(tensors_[1], b1_);
  to_matrix(tensors_[2], w2_, hidden_dim_, hidden_dim_);
  to_vector(tensors_[3], b2_);
  to_matrix(tensors_[4], w3_, hidden_dim_, out_dim_);
  to_vector(tensors_[5], b3_);
}

MatX Mlp::forward(const Eigen::Ref<const MatX>& x) const {
  if (x.cols() != in_dim_) {
    throw std::invalid_argument("Mlp::forward: input has wrong width");
  }
  MatX h1 = ((x * w1_).rowwise() + b1_.transpose()).array().tanh();
  MatX h2 = ((h1 * w2_).rowwise() + b2_.transpose()).array().tanh();
  return (h2 * w3_).rowwise() + b3_.transpose();
}

MatX Mlp::forward_cached(const Eigen::Ref<const MatX>& x,
                         Workspace& ws) const {
  if (x.cols() != in_dim_) {
    throw std::invalid_argument("Mlp::forward_cached: input has wrong width");
  }
  ws.x = x;
  ws.h1 = ((x * w1_).rowwise() + b1_.transpose()).array().tanh();
  ws.h2 = ((ws.h1 * w2_).rowwise() + b2_.transpose()).array().tanh();
  return (ws.h2 * w3_).rowwise() + b3_.transpose();
}

void Mlp::backward(const Workspace& ws, const Eigen::Ref<const MatX>& grad_out,
                   MlpGrad& grad, MatX* grad_input) const {
  MatX d3 = grad_out;  // [n x out]
  {
    // weight grads are accumulated through row-major maps matching the
    // [in x out] master layout
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>
        gw(grad.tensors[4].data(), hidden_dim_, out_dim_);
    gw += ws.h2.transpose() * d3;
    grad.tensors[5] += d3.colwise().sum().transpose();
  }
  MatX d2 = (d3 * w3_.transpose()).array() * (1.0 - ws.h2.array().square());
  {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>
        gw(grad.tensors[2].data(), hidden_dim_, hidden_dim_);
    gw += ws.h1.transpose() * d2;
    grad.tensors[3] += d2.colwise().sum().transpose();
  }
  MatX d1 = (d2 * w2_.transpose()).array() * (1.0 - ws.h1.array().square());
  {
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>
        gw(grad.tensors[0].data(), in_dim_, hidden_dim_);
    gw += ws.x.transpose() * d1;
    grad.tensors[1] += d1.colwise().sum().transpose();
  }
  if (grad_input != nullptr) {
    *grad_input = d1 * w1_.transpose();
  }
}

MlpGrad Mlp::make_grad() const {
  MlpGrad g;
  for (int t = 0; t < 6; ++t) {
    g.tensors[t] = VecX::Zero(static_cast<Eigen::Index>(tensors_[t].size()));
  }
  return g;
}

}  // namespace ffrl
