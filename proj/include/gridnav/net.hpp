#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gridnav {

// One fully connected layer, weights row-major [out_dim x in_dim].
struct Layer {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<double> w;
    std::vector<double> b;
};

// Feedforward net: rectified-linear hidden activations, identity output.
// Plain value type; copies are parameter snapshots (target networks).
struct NeuralNet {
    std::vector<Layer> layers;

    int input_dim() const { return layers.front().in_dim; }
    int output_dim() const { return layers.back().out_dim; }
    std::vector<int> dims() const;
    std::size_t param_count() const;
    bool finite() const;
};

// Xavier-style init: weights uniform in [-1/sqrt(in_dim), +1/sqrt(in_dim)]
// drawn layer by layer in row-major order from a single seeded stream;
// biases zero. Deterministic in (dims, seed).
NeuralNet init_net(const std::vector<int>& dims, std::uint64_t seed);

struct LayerGrad {
    std::vector<double> dw;
    std::vector<double> db;
};

// Per-layer gradient container, shape-congruent with its net.
struct Gradients {
    std::vector<LayerGrad> layers;
    bool finite() const;
    void scale(double factor);
};

Gradients zero_gradients(const NeuralNet& net);

// Activations retained by a forward pass for the matching backward pass.
// inputs[k] is the (batch-major) activation entering layer k; preacts[k] is
// W x + b of layer k. onehot[s] >= 0 marks an exactly-one-hot input sample
// (fast path through the first layer; bitwise-identical to the dense path).
struct ForwardCache {
    int batch = 0;
    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> preacts;
    std::vector<int> onehot;
};

// Batched forward; x is row-major [batch x input_dim], returns
// [batch x output_dim]. Pure; repeated calls agree bitwise.
std::vector<double> forward_batch(const NeuralNet& net, std::span<const double> x,
                                  int batch, ForwardCache* cache = nullptr);

// Single-sample convenience wrapper.
std::vector<double> forward(const NeuralNet& net, std::span<const double> input,
                            ForwardCache* cache = nullptr);

// Exact reverse-mode gradients under the given upstream gradient dy
// (row-major [batch x output_dim]), summed over samples. The rectifier
// subgradient at exactly 0 is 0.
Gradients backward_batch(const NeuralNet& net, const ForwardCache& cache,
                         std::span<const double> dy);

Gradients backward(const NeuralNet& net, const ForwardCache& cache,
                   std::span<const double> output_grad);

// Adam optimizer state; second moments stay >= 0 and t advances by exactly
// one per step.
struct AdamState {
    std::vector<LayerGrad> m;
    std::vector<LayerGrad> v;
    long long t = 0;
};

AdamState adam_init(const NeuralNet& net);

// Standard bias-corrected Adam. Throws std::domain_error on non-finite
// gradients and std::runtime_error if parameters stop being finite.
void adam_step(NeuralNet& net, const Gradients& grads, AdamState& state, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

// Plain gradient descent, kept for tests.
void sgd_step(NeuralNet& net, const Gradients& grads, double lr);

}  // namespace gridnav
