#include "gridnav/net.hpp"

#include <cmath>
#include <stdexcept>

#include "gridnav/kernels.hpp"
#include "gridnav/rng.hpp"

namespace gridnav {

namespace {

void check_chain(const std::vector<Layer>& layers) {
    for (std::size_t k = 1; k < layers.size(); ++k)
        if (layers[k].in_dim != layers[k - 1].out_dim)
            throw std::invalid_argument("layer dimensions do not chain");
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Index of the single 1.0 entry if x is exactly one-hot, else -1.
int onehot_index(const double* x, int n) {
    int hot = -1;
    for (int j = 0; j < n; ++j) {
        if (x[j] == 0.0) continue;
        if (x[j] != 1.0 || hot >= 0) return -1;
        hot = j;
    }
    return hot;
}

}  // namespace

std::vector<int> NeuralNet::dims() const {
    std::vector<int> d;
    d.reserve(layers.size() + 1);
    d.push_back(layers.front().in_dim);
    for (const Layer& l : layers) d.push_back(l.out_dim);
    return d;
}

std::size_t NeuralNet::param_count() const {
    std::size_t n = 0;
    for (const Layer& l : layers) n += l.w.size() + l.b.size();
    return n;
}

bool NeuralNet::finite() const {
    for (const Layer& l : layers)
        if (!all_finite(l.w) || !all_finite(l.b)) return false;
    return true;
}

NeuralNet init_net(const std::vector<int>& dims, std::uint64_t seed) {
    if (dims.size() < 2)
        throw std::invalid_argument("init_net: need at least input and output dims");
    for (int d : dims)
        if (d <= 0) throw std::invalid_argument("init_net: dimensions must be positive");

    Rng rng(seed);
    NeuralNet net;
    net.layers.resize(dims.size() - 1);
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
        Layer& l = net.layers[k];
        l.in_dim = dims[k];
        l.out_dim = dims[k + 1];
        l.w.resize(static_cast<std::size_t>(l.out_dim) * l.in_dim);
        l.b.assign(l.out_dim, 0.0);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l.in_dim));
        for (double& w : l.w) w = rng.uniform_real(-scale, scale);
    }
    return net;
}

bool Gradients::finite() const {
    for (const LayerGrad& l : layers)
        if (!all_finite(l.dw) || !all_finite(l.db)) return false;
    return true;
}

void Gradients::scale(double factor) {
    for (LayerGrad& l : layers) {
        for (double& g : l.dw) g *= factor;
        for (double& g : l.db) g *= factor;
    }
}

Gradients zero_gradients(const NeuralNet& net) {
    Gradients g;
    g.layers.resize(net.layers.size());
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        g.layers[k].dw.assign(net.layers[k].w.size(), 0.0);
        g.layers[k].db.assign(net.layers[k].b.size(), 0.0);
    }
    return g;
}

std::vector<double> forward_batch(const NeuralNet& net, std::span<const double> x,
                                  int batch, ForwardCache* cache) {
    check_chain(net.layers);
    if (batch < 1) throw std::invalid_argument("forward: batch must be positive");
    const int in_dim = net.input_dim();
    if (static_cast<int>(x.size()) != batch * in_dim)
        throw std::invalid_argument("forward: input size does not match batch x in_dim");

    ForwardCache local;
    ForwardCache& c = cache ? *cache : local;
    c.batch = batch;
    c.inputs.assign(net.layers.size(), {});
    c.preacts.assign(net.layers.size(), {});
    c.onehot.assign(batch, -1);
    for (int s = 0; s < batch; ++s)
        c.onehot[s] = onehot_index(x.data() + static_cast<std::size_t>(s) * in_dim, in_dim);

    std::vector<double> act(x.begin(), x.end());
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        const Layer& l = net.layers[k];
        c.inputs[k] = act;
        std::vector<double> pre(static_cast<std::size_t>(batch) * l.out_dim);

        bool fast = k == 0;
        for (int s = 0; fast && s < batch; ++s) fast = c.onehot[s] >= 0;
        if (fast) {
            // One-hot input: the affine map is a weight-column lookup. Exact
            // same value as the dense sum (all skipped terms are +0.0).
            for (int s = 0; s < batch; ++s) {
                const int hot = c.onehot[s];
                double* out = pre.data() + static_cast<std::size_t>(s) * l.out_dim;
                for (int i = 0; i < l.out_dim; ++i)
                    out[i] = l.b[i] + l.w[static_cast<std::size_t>(i) * l.in_dim + hot];
            }
        } else {
            kernels::affine_batch(l.w.data(), l.b.data(), act.data(), pre.data(),
                                  batch, l.out_dim, l.in_dim);
        }

        const bool last = (k + 1 == net.layers.size());
        if (last) {
            act = pre;
        } else {
            act.resize(pre.size());
            for (std::size_t i = 0; i < pre.size(); ++i)
                act[i] = pre[i] > 0.0 ? pre[i] : 0.0;
        }
        c.preacts[k] = std::move(pre);
    }
    return act;
}

std::vector<double> forward(const NeuralNet& net, std::span<const double> input,
                            ForwardCache* cache) {
    return forward_batch(net, input, 1, cache);
}

Gradients backward_batch(const NeuralNet& net, const ForwardCache& cache,
                         std::span<const double> dy) {
    const int batch = cache.batch;
    if (batch < 1 || cache.inputs.size() != net.layers.size())
        throw std::invalid_argument("backward: cache does not match net");
    if (static_cast<int>(dy.size()) != batch * net.output_dim())
        throw std::invalid_argument("backward: upstream gradient size mismatch");

    Gradients grads = zero_gradients(net);
    std::vector<double> delta(dy.begin(), dy.end());

    for (int k = static_cast<int>(net.layers.size()) - 1; k >= 0; --k) {
        const Layer& l = net.layers[k];
        // Hidden layers apply the rectifier mask; subgradient at 0 is 0.
        if (k + 1 < static_cast<int>(net.layers.size())) {
            const std::vector<double>& pre = cache.preacts[k + 1 - 1];
            (void)pre;
        }
        const std::vector<double>& x = cache.inputs[k];

        bool fast = k == 0;
        for (int s = 0; fast && s < batch; ++s) fast = cache.onehot[s] >= 0;
        if (fast) {
            LayerGrad& g = grads.layers[k];
            for (int i = 0; i < l.out_dim; ++i) {
                double* dwrow = g.dw.data() + static_cast<std::size_t>(i) * l.in_dim;
                double dbacc = 0.0;
                for (int s = 0; s < batch; ++s) {
                    const double d = delta[static_cast<std::size_t>(s) * l.out_dim + i];
                    dbacc += d;
                    dwrow[cache.onehot[s]] += d;
                }
                g.db[i] = dbacc;
            }
        } else {
            kernels::grad_accumulate(delta.data(), x.data(), grads.layers[k].dw.data(),
                                     grads.layers[k].db.data(), batch, l.out_dim, l.in_dim);
        }

        if (k > 0) {
            std::vector<double> dx(static_cast<std::size_t>(batch) * l.in_dim);
            kernels::matvec_transpose_batch(l.w.data(), delta.data(), dx.data(),
                                            batch, l.out_dim, l.in_dim);
            const std::vector<double>& pre_below = cache.preacts[k - 1];
            for (std::size_t i = 0; i < dx.size(); ++i)
                if (pre_below[i] <= 0.0) dx[i] = 0.0;
            delta = std::move(dx);
        }
    }
    return grads;
}

Gradients backward(const NeuralNet& net, const ForwardCache& cache,
                   std::span<const double> output_grad) {
    return backward_batch(net, cache, output_grad);
}

AdamState adam_init(const NeuralNet& net) {
    AdamState st;
    st.m.resize(net.layers.size());
    st.v.resize(net.layers.size());
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        st.m[k].dw.assign(net.layers[k].w.size(), 0.0);
        st.m[k].db.assign(net.layers[k].b.size(), 0.0);
        st.v[k].dw.assign(net.layers[k].w.size(), 0.0);
        st.v[k].db.assign(net.layers[k].b.size(), 0.0);
    }
    return st;
}

namespace {

void adam_update(double* p, const double* g, double* m, double* v, std::size_t n,
                 double lr, double beta1, double beta2, double eps,
                 double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

}  // namespace

void adam_step(NeuralNet& net, const Gradients& grads, AdamState& state, double lr,
               double beta1, double beta2, double eps) {
    if (grads.layers.size() != net.layers.size())
        throw std::invalid_argument("adam_step: gradient shape mismatch");
    if (lr < 0.0) throw std::invalid_argument("adam_step: negative learning rate");
    if (!grads.finite()) throw std::domain_error("adam_step: non-finite gradients");

    state.t += 1;
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        Layer& l = net.layers[k];
        adam_update(l.w.data(), grads.layers[k].dw.data(), state.m[k].dw.data(),
                    state.v[k].dw.data(), l.w.size(), lr, beta1, beta2, eps, bc1, bc2);
        adam_update(l.b.data(), grads.layers[k].db.data(), state.m[k].db.data(),
                    state.v[k].db.data(), l.b.size(), lr, beta1, beta2, eps, bc1, bc2);
    }
    if (!net.finite()) throw std::runtime_error("adam_step: parameters became non-finite");
}

void sgd_step(NeuralNet& net, const Gradients& grads, double lr) {
    if (grads.layers.size() != net.layers.size())
        throw std::invalid_argument("sgd_step: gradient shape mismatch");
    if (!grads.finite()) throw std::domain_error("sgd_step: non-finite gradients");
    for (std::size_t k = 0; k < net.layers.size(); ++k) {
        Layer& l = net.layers[k];
        for (std::size_t i = 0; i < l.w.size(); ++i) l.w[i] -= lr * grads.layers[k].dw[i];
        for (std::size_t i = 0; i < l.b.size(); ++i) l.b[i] -= lr * grads.layers[k].db[i];
    }
    if (!net.finite()) throw std::runtime_error("sgd_step: parameters became non-finite");
}

}  // namespace gridnav
