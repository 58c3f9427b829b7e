#pragma once

// Dense tanh network with batched evaluation. Samples are stored as columns.

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace wepinn {

enum class Activation { tanh };

struct NetworkConfig {
  int input_dim = 2;
  int output_dim = 1;
  int hidden_layers = 1;
  int hidden_width = 16;
  Activation activation = Activation::tanh;

  /// Throws ConfigError for sizes below 2/1/1/1.
  void validate() const;
  /// [input, width, ..., width, output]
  std::vector<int> layer_sizes() const;
};

/// Weights and biases of all affine layers, stored in one flat vector.
/// Layer l occupies W_l (column-major, rows = fan_out) followed by b_l.
class NetworkParams {
 public:
  NetworkParams() = default;
  /// Zero-initialized parameters for layer sizes [n0, n1, ..., nL], L >= 1.
  explicit NetworkParams(std::vector<int> layer_sizes);

  static NetworkParams unflatten(std::vector<int> layer_sizes, const Eigen::VectorXd& flat);
  Eigen::VectorXd flatten() const { return flat_; }

  const std::vector<int>& layer_sizes() const { return sizes_; }
  int num_layers() const { return static_cast<int>(sizes_.size()) - 1; }
  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  Eigen::Index size() const { return flat_.size(); }

  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<Eigen::MatrixXd> weight(int layer);
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;
  Eigen::Map<Eigen::VectorXd> bias(int layer);

  const Eigen::VectorXd& flat() const { return flat_; }
  /// Replaces all parameters; length must match size().
  void set_flat(const Eigen::VectorXd& flat);

  Eigen::Index weight_offset(int layer) const { return offsets_[layer]; }
  Eigen::Index bias_offset(int layer) const;

 private:
  std::vector<int> sizes_;
  std::vector<Eigen::Index> offsets_;
  Eigen::VectorXd flat_;
};

/// Glorot-uniform weights, zero biases; deterministic in seed.
NetworkParams init_network(const NetworkConfig& config, std::uint64_t seed);

/// Single-sample evaluation; tanh after every layer except the last.
Eigen::VectorXd forward(const NetworkParams& params, std::span<const double> input);

/// Batched evaluation keeping the activations needed for reverse mode.
class ForwardTape {
 public:
  ForwardTape(const NetworkParams& params, const Eigen::MatrixXd& inputs);

  const Eigen::MatrixXd& output() const { return output_; }
  Eigen::Index batch_size() const { return output_.cols(); }

  /// Sum over samples of (dN/dtheta)^T cotangent; cotangents are output_dim x B.
  Eigen::VectorXd backward(const Eigen::MatrixXd& cotangents) const;

 private:
  struct Chunk {
    Eigen::Index begin = 0;
    std::vector<Eigen::MatrixXd> activations;  // activations[0] = inputs
  };
  const NetworkParams* params_;
  std::vector<Chunk> chunks_;
  Eigen::MatrixXd output_;
};

/// Samples per work unit; fixed so that reductions do not depend on threads.
inline constexpr Eigen::Index kBatchChunk = 1024;

Eigen::MatrixXd forward_batch(const NetworkParams& params, const Eigen::MatrixXd& inputs);
Eigen::VectorXd backward_batch(const NetworkParams& params, const Eigen::MatrixXd& inputs,
                               const Eigen::MatrixXd& cotangents);

/// Forward-mode propagation of value plus K input tangent directions.
/// seeds is input_dim x K and is shared by every sample.
class JetTape {
 public:
  JetTape(const NetworkParams& params, const Eigen::MatrixXd& inputs,
          const Eigen::MatrixXd& seeds);

  const Eigen::MatrixXd& value() const { return value_; }
  /// Directional derivative of the output along seed k (output_dim x B).
  const Eigen::MatrixXd& tangent(int k) const { return tangents_[k]; }
  int directions() const { return static_cast<int>(tangents_.size()); }

  /// Reverse pass through the jet: cotangents for the value and every
  /// tangent map to a parameter gradient.
  Eigen::VectorXd backward(const Eigen::MatrixXd& value_cot,
                           const std::vector<Eigen::MatrixXd>& tangent_cots) const;

 private:
  const NetworkParams* params_;
  Eigen::MatrixXd seeds_;
  std::vector<Eigen::MatrixXd> act_;                  // act_[l], l = 0..L-1 (inputs of layer l)
  std::vector<std::vector<Eigen::MatrixXd>> dact_;    // dact_[l][k]
  Eigen::MatrixXd value_;
  std::vector<Eigen::MatrixXd> tangents_;
};

/// Checkpoint file: int32 count n, int32 layer sizes[n], float64 params[P],
/// all little-endian.
void save_checkpoint(const std::filesystem::path& path, const NetworkParams& params);
NetworkParams load_checkpoint(const std::filesystem::path& path);

}  // namespace wepinn
