#include "wepinn/network.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <string>

#include "wepinn/errors.hpp"
#include "wepinn/parallel.hpp"

namespace wepinn {

void NetworkConfig::validate() const {
  if (input_dim < 2) throw ConfigError("network: input_dim must be >= 2");
  if (output_dim < 1) throw ConfigError("network: output_dim must be >= 1");
  if (hidden_layers < 1) throw ConfigError("network: hidden_layers must be >= 1");
  if (hidden_width < 1) throw ConfigError("network: hidden_width must be >= 1");
}

std::vector<int> NetworkConfig::layer_sizes() const {
  std::vector<int> sizes;
  sizes.push_back(input_dim);
  for (int i = 0; i < hidden_layers; ++i) sizes.push_back(hidden_width);
  sizes.push_back(output_dim);
  return sizes;
}

NetworkParams::NetworkParams(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
  expects(sizes_.size() >= 2, "network: need at least one affine layer");
  Eigen::Index total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    expects(sizes_[l] >= 1 && sizes_[l + 1] >= 1, "network: layer sizes must be positive");
    offsets_.push_back(total);
    total += static_cast<Eigen::Index>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  flat_ = Eigen::VectorXd::Zero(total);
}

NetworkParams NetworkParams::unflatten(std::vector<int> layer_sizes, const Eigen::VectorXd& flat) {
  NetworkParams params(std::move(layer_sizes));
  params.set_flat(flat);
  return params;
}

void NetworkParams::set_flat(const Eigen::VectorXd& flat) {
  expects(flat.size() == flat_.size(), "network: flat parameter vector has wrong length");
  flat_ = flat;
}

Eigen::Index NetworkParams::bias_offset(int layer) const {
  return offsets_[layer] + static_cast<Eigen::Index>(sizes_[layer + 1]) * sizes_[layer];
}

Eigen::Map<const Eigen::MatrixXd> NetworkParams::weight(int layer) const {
  return {flat_.data() + offsets_[layer], sizes_[layer + 1], sizes_[layer]};
}
Eigen::Map<Eigen::MatrixXd> NetworkParams::weight(int layer) {
  return {flat_.data() + offsets_[layer], sizes_[layer + 1], sizes_[layer]};
}
Eigen::Map<const Eigen::VectorXd> NetworkParams::bias(int layer) const {
  return {flat_.data() + bias_offset(layer), sizes_[layer + 1]};
}
Eigen::Map<Eigen::VectorXd> NetworkParams::bias(int layer) {
  return {flat_.data() + bias_offset(layer), sizes_[layer + 1]};
}

NetworkParams init_network(const NetworkConfig& config, std::uint64_t seed) {
  config.validate();
  NetworkParams params(config.layer_sizes());
  std::mt19937_64 rng(seed);
  for (int l = 0; l < params.num_layers(); ++l) {
    auto w = params.weight(l);
    const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = dist(rng);
  }
  return params;
}

Eigen::VectorXd forward(const NetworkParams& params, std::span<const double> input) {
  expects(static_cast<int>(input.size()) == params.input_dim(), "forward: input dimension mismatch");
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(input.data(), input.size());
  const int layers = params.num_layers();
  for (int l = 0; l < layers; ++l) {
    Eigen::VectorXd z = params.weight(l) * a + params.bias(l);
    a = l + 1 < layers ? Eigen::VectorXd(z.array().tanh()) : z;
  }
  return a;
}

ForwardTape::ForwardTape(const NetworkParams& params, const Eigen::MatrixXd& inputs)
    : params_(&params) {
  expects(inputs.rows() == params.input_dim(), "forward: input dimension mismatch");
  const Eigen::Index n = inputs.cols();
  const int layers = params.num_layers();
  output_.resize(params.output_dim(), n);
  const Eigen::Index n_chunks = (n + kBatchChunk - 1) / kBatchChunk;
  chunks_.resize(n_chunks);
  parallel_for(n_chunks, [&](std::size_t c) {
    Chunk& chunk = chunks_[c];
    chunk.begin = static_cast<Eigen::Index>(c) * kBatchChunk;
    const Eigen::Index cols = std::min(kBatchChunk, n - chunk.begin);
    chunk.activations.resize(layers);
    chunk.activations[0] = inputs.middleCols(chunk.begin, cols);
    for (int l = 0; l < layers; ++l) {
      Eigen::MatrixXd z = params.weight(l) * chunk.activations[l];
      z.colwise() += params.bias(l);
      if (l + 1 < layers) {
        chunk.activations[l + 1] = z.array().tanh();
      } else {
        output_.middleCols(chunk.begin, cols) = z;
      }
    }
  });
}

Eigen::VectorXd ForwardTape::backward(const Eigen::MatrixXd& cotangents) const {
  const NetworkParams& params = *params_;
  expects(cotangents.rows() == params.output_dim() && cotangents.cols() == output_.cols(),
          "backward: cotangent shape mismatch");
  const int layers = params.num_layers();
  std::vector<Eigen::VectorXd> partial(chunks_.size());
  parallel_for(chunks_.size(), [&](std::size_t c) {
    const Chunk& chunk = chunks_[c];
    const Eigen::Index cols = chunk.activations[0].cols();
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(params.size());
    Eigen::MatrixXd delta = cotangents.middleCols(chunk.begin, cols);
    for (int l = layers - 1; l >= 0; --l) {
      const Eigen::MatrixXd& a = chunk.activations[l];
      Eigen::Map<Eigen::MatrixXd> gw(grad.data() + params.weight_offset(l), delta.rows(), a.rows());
      Eigen::Map<Eigen::VectorXd> gb(grad.data() + params.bias_offset(l), delta.rows());
      gw.noalias() = delta * a.transpose();
      gb = delta.rowwise().sum();
      if (l > 0) {
        Eigen::MatrixXd back = params.weight(l).transpose() * delta;
        delta = back.array() * (1.0 - a.array().square());
      }
    }
    partial[c] = std::move(grad);
  });
  Eigen::VectorXd total = Eigen::VectorXd::Zero(params.size());
  for (const auto& g : partial) total += g;
  return total;
}

Eigen::MatrixXd forward_batch(const NetworkParams& params, const Eigen::MatrixXd& inputs) {
  return ForwardTape(params, inputs).output();
}

Eigen::VectorXd backward_batch(const NetworkParams& params, const Eigen::MatrixXd& inputs,
                               const Eigen::MatrixXd& cotangents) {
  expects(inputs.cols() == cotangents.cols(), "backward: batch and cotangent lengths differ");
  if (inputs.cols() == 0) return Eigen::VectorXd::Zero(params.size());
  return ForwardTape(params, inputs).backward(cotangents);
}

JetTape::JetTape(const NetworkParams& params, const Eigen::MatrixXd& inputs,
                 const Eigen::MatrixXd& seeds)
    : params_(&params), seeds_(seeds) {
  expects(inputs.rows() == params.input_dim() && seeds.rows() == params.input_dim(),
          "jet: input dimension mismatch");
  const int layers = params.num_layers();
  const int k_dirs = static_cast<int>(seeds.cols());
  const Eigen::Index n = inputs.cols();
  act_.resize(layers);
  dact_.resize(layers);
  act_[0] = inputs;
  dact_[0].resize(k_dirs);
  for (int k = 0; k < k_dirs; ++k) dact_[0][k] = seeds.col(k).replicate(1, n);
  for (int l = 0; l < layers; ++l) {
    const auto w = params.weight(l);
    Eigen::MatrixXd z = w * act_[l];
    z.colwise() += params.bias(l);
    std::vector<Eigen::MatrixXd> dz(k_dirs);
    for (int k = 0; k < k_dirs; ++k) dz[k] = w * dact_[l][k];
    if (l + 1 < layers) {
      act_[l + 1] = z.array().tanh();
      Eigen::ArrayXXd s = 1.0 - act_[l + 1].array().square();
      dact_[l + 1].resize(k_dirs);
      for (int k = 0; k < k_dirs; ++k) dact_[l + 1][k] = s * dz[k].array();
    } else {
      value_ = std::move(z);
      tangents_ = std::move(dz);
    }
  }
}

Eigen::VectorXd JetTape::backward(const Eigen::MatrixXd& value_cot,
                                  const std::vector<Eigen::MatrixXd>& tangent_cots) const {
  const NetworkParams& params = *params_;
  const int layers = params.num_layers();
  const int k_dirs = directions();
  expects(static_cast<int>(tangent_cots.size()) == k_dirs, "jet backward: tangent count mismatch");
  expects(value_cot.rows() == value_.rows() && value_cot.cols() == value_.cols(),
          "jet backward: value cotangent shape mismatch");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(params.size());

  // Cotangents with respect to the pre-activation z and its tangents dz.
  Eigen::MatrixXd zbar = value_cot;
  std::vector<Eigen::MatrixXd> dzbar = tangent_cots;
  for (int l = layers - 1; l >= 0; --l) {
    const auto w = params.weight(l);
    Eigen::Map<Eigen::MatrixXd> gw(grad.data() + params.weight_offset(l), w.rows(), w.cols());
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + params.bias_offset(l), w.rows());
    gw.noalias() += zbar * act_[l].transpose();
    for (int k = 0; k < k_dirs; ++k) gw.noalias() += dzbar[k] * dact_[l][k].transpose();
    gb += zbar.rowwise().sum();
    if (l == 0) break;

    // Through a_l = tanh(z_{l-1}), da_l = s * dz_{l-1}, s = 1 - a_l^2.
    Eigen::MatrixXd abar = w.transpose() * zbar;
    const Eigen::ArrayXXd a = act_[l].array();
    const Eigen::ArrayXXd s = 1.0 - a.square();
    const auto w_prev = params.weight(l - 1);
    Eigen::ArrayXXd sbar = Eigen::ArrayXXd::Zero(a.rows(), a.cols());
    std::vector<Eigen::MatrixXd> next_dzbar(k_dirs);
    for (int k = 0; k < k_dirs; ++k) {
      Eigen::ArrayXXd dabar = (w.transpose() * dzbar[k]).array();
      Eigen::ArrayXXd dz_prev = (w_prev * dact_[l - 1][k]).array();
      sbar += dabar * dz_prev;
      next_dzbar[k] = (s * dabar).matrix();
    }
    zbar = (s * abar.array() - 2.0 * a * s * sbar).matrix();
    dzbar = std::move(next_dzbar);
  }
  return grad;
}

namespace {

template <class T>
void write_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <class T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw ConfigError("checkpoint: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const NetworkParams& params) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("checkpoint: cannot open " + tmp.string());
    write_le<std::int32_t>(out, static_cast<std::int32_t>(params.layer_sizes().size()));
    for (int s : params.layer_sizes()) write_le<std::int32_t>(out, s);
    for (Eigen::Index i = 0; i < params.size(); ++i) write_le<double>(out, params.flat()[i]);
    if (!out) throw ConfigError("checkpoint: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

NetworkParams load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checkpoint: cannot open " + path.string());
  const auto count = read_le<std::int32_t>(in);
  if (count < 2 || count > 1024) throw ConfigError("checkpoint: bad layer count");
  std::vector<int> sizes(count);
  for (auto& s : sizes) {
    s = read_le<std::int32_t>(in);
    if (s < 1) throw ConfigError("checkpoint: bad layer size");
  }
  NetworkParams params(sizes);
  Eigen::VectorXd flat(params.size());
  for (Eigen::Index i = 0; i < flat.size(); ++i) flat[i] = read_le<double>(in);
  params.set_flat(flat);
  return params;
}

}  // namespace wepinn
