#include "xoos/apprentice/net.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace xoos::apprentice {
namespace {

LayerParams zero_layer(int in, int out) {
  LayerParams l;
  l.in = in;
  l.out = out;
  l.w.assign(static_cast<std::size_t>(in) * out, 0.0);
  l.b.assign(out, 0.0);
  return l;
}

void check_shapes(const NetworkParams& p, const games::FeatureVector& x,
                  const games::ActionMask& mask) {
  if (static_cast<int>(x.size()) != p.config.input_dim)
    throw std::invalid_argument("forward: feature length does not match input_dim");
  if (static_cast<int>(mask.size()) != p.config.output_dim)
    throw std::invalid_argument("forward: mask length does not match output_dim");
}

struct Trace {
  std::vector<std::vector<double>> act;  // act[0] = input, act[k] = hidden k output
  std::vector<double> logits;
  std::vector<double> dist;
};

Trace forward_trace(const NetworkParams& p, const games::FeatureVector& x,
                    const games::ActionMask& mask) {
  check_shapes(p, x, mask);
  Trace t;
  t.act.reserve(p.layers.size());
  t.act.push_back(x);
  for (std::size_t k = 0; k < p.layers.size(); ++k) {
    const LayerParams& l = p.layers[k];
    const std::vector<double>& in = t.act.back();
    std::vector<double> out(l.out);
    bool last = k + 1 == p.layers.size();
    for (int o = 0; o < l.out; ++o) {
      double z = l.b[o];
      const double* row = l.w.data() + static_cast<std::size_t>(o) * l.in;
      for (int i = 0; i < l.in; ++i) z += row[i] * in[i];
      out[o] = last ? z : (z > 0.0 ? z : 0.0);
    }
    if (last) {
      t.logits = std::move(out);
    } else {
      t.act.push_back(std::move(out));
    }
  }

  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < mask.size(); ++a)
    if (mask[a] && t.logits[a] > mx) mx = t.logits[a];
  if (mx == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument("forward: mask has no legal action");
  t.dist.assign(mask.size(), 0.0);
  double z = 0.0;
  for (std::size_t a = 0; a < mask.size(); ++a) {
    if (!mask[a]) continue;
    t.dist[a] = std::exp(t.logits[a] - mx);
    z += t.dist[a];
  }
  for (std::size_t a = 0; a < mask.size(); ++a) t.dist[a] /= z;
  return t;
}

}  // namespace

NetConfig default_net_config(const games::Game& game) {
  NetConfig c;
  c.input_dim = game.encoding_dim();
  c.output_dim = game.max_actions();
  const std::string id = game.id();
  if (id == "leduc") c.hidden = {128};
  else if (id == "goof6") c.hidden = {128, 64};
  else if (id == "goof13") c.hidden = {128, 128, 64};
  else if (id == "kuhn") c.hidden = {64};
  else c.hidden = {128, 64};
  return c;
}

NetworkParams init_params(const NetConfig& config, std::uint64_t seed) {
  if (config.input_dim <= 0 || config.output_dim <= 0)
    throw std::invalid_argument("init_params: dimensions must be positive");
  NetworkParams p;
  p.config = config;
  std::mt19937_64 rng(seed);
  auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  int in = config.input_dim;
  std::vector<int> outs = config.hidden;
  outs.push_back(config.output_dim);
  for (int out : outs) {
    if (out <= 0) throw std::invalid_argument("init_params: layer width must be positive");
    LayerParams l = zero_layer(in, out);
    double bound = std::sqrt(6.0 / in);
    for (double& w : l.w) w = (u01() * 2.0 - 1.0) * bound;
    p.layers.push_back(std::move(l));
    in = out;
  }
  return p;
}

std::vector<double> forward(const NetworkParams& params, const games::FeatureVector& x,
                            const games::ActionMask& mask) {
  return forward_trace(params, x, mask).dist;
}

double kl_loss(std::span<const double> target, std::span<const double> predicted) {
  if (target.size() != predicted.size())
    throw std::invalid_argument("kl_loss: length mismatch");
  double loss = 0.0;
  for (std::size_t a = 0; a < target.size(); ++a) {
    if (target[a] <= 0.0) continue;
    if (predicted[a] <= 0.0) return std::numeric_limits<double>::infinity();
    loss += target[a] * (std::log(target[a]) - std::log(predicted[a]));
  }
  return loss;
}

double mean_loss(const NetworkParams& params, std::span<const TrainExample> batch) {
  if (batch.empty()) throw std::invalid_argument("mean_loss: empty batch");
  double total = 0.0;
  for (const TrainExample& e : batch)
    total += kl_loss(e.target, forward(params, e.features, e.mask));
  return total / static_cast<double>(batch.size());
}

LossAndGrads loss_and_gradients(const NetworkParams& params,
                                std::span<const TrainExample> batch) {
  if (batch.empty()) throw std::invalid_argument("gradients: empty batch");
  LossAndGrads out;
  Gradients& g = out.grads;
  for (const LayerParams& l : params.layers) g.layers.push_back(zero_layer(l.in, l.out));

  std::vector<double> dcur, dprev;
  for (const TrainExample& e : batch) {
    Trace t = forward_trace(params, e.features, e.mask);
    out.loss += kl_loss(e.target, t.dist);
    dcur.assign(t.dist.size(), 0.0);
    for (std::size_t a = 0; a < t.dist.size(); ++a)
      if (e.mask[a]) dcur[a] = t.dist[a] - e.target[a];

    for (int k = static_cast<int>(params.layers.size()) - 1; k >= 0; --k) {
      const LayerParams& l = params.layers[k];
      LayerParams& gl = g.layers[k];
      const std::vector<double>& in = t.act[k];
      for (int o = 0; o < l.out; ++o) {
        double d = dcur[o];
        if (d == 0.0) continue;
        gl.b[o] += d;
        double* grow = gl.w.data() + static_cast<std::size_t>(o) * l.in;
        for (int i = 0; i < l.in; ++i) grow[i] += d * in[i];
      }
      if (k == 0) break;
      dprev.assign(l.in, 0.0);
      for (int o = 0; o < l.out; ++o) {
        double d = dcur[o];
        if (d == 0.0) continue;
        const double* row = l.w.data() + static_cast<std::size_t>(o) * l.in;
        for (int i = 0; i < l.in; ++i) dprev[i] += d * row[i];
      }
      // ReLU gate using the cached post-activation values of the previous layer.
      for (int i = 0; i < l.in; ++i)
        if (t.act[k][i] <= 0.0) dprev[i] = 0.0;
      std::swap(dcur, dprev);
    }
  }
  double inv = 1.0 / static_cast<double>(batch.size());
  for (LayerParams& l : g.layers) {
    for (double& w : l.w) w *= inv;
    for (double& b : l.b) b *= inv;
  }
  out.loss *= inv;
  return out;
}

Gradients gradients(const NetworkParams& params, std::span<const TrainExample> batch) {
  return loss_and_gradients(params, batch).grads;
}

AdamState make_adam(const NetworkParams& params, AdamConfig cfg) {
  AdamState s;
  s.cfg = cfg;
  for (const LayerParams& l : params.layers) {
    s.m.push_back(zero_layer(l.in, l.out));
    s.v.push_back(zero_layer(l.in, l.out));
  }
  return s;
}

void adam_step(NetworkParams& params, AdamState& adam, const Gradients& g) {
  if (g.layers.size() != params.layers.size())
    throw std::invalid_argument("adam_step: gradient shape mismatch");
  for (const LayerParams& l : g.layers) {
    for (double x : l.w)
      if (!std::isfinite(x)) throw std::invalid_argument("adam_step: non-finite gradient");
    for (double x : l.b)
      if (!std::isfinite(x)) throw std::invalid_argument("adam_step: non-finite gradient");
  }
  adam.t += 1;
  const double b1 = adam.cfg.beta1, b2 = adam.cfg.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(adam.t));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(adam.t));
  for (std::size_t k = 0; k < params.layers.size(); ++k) {
    auto update = [&](std::vector<double>& theta, std::vector<double>& m, std::vector<double>& v,
                      const std::vector<double>& grad) {
      for (std::size_t i = 0; i < theta.size(); ++i) {
        m[i] = b1 * m[i] + (1.0 - b1) * grad[i];
        v[i] = b2 * v[i] + (1.0 - b2) * grad[i] * grad[i];
        double mhat = m[i] / c1;
        double vhat = v[i] / c2;
        theta[i] -= adam.cfg.lr * mhat / (std::sqrt(vhat) + adam.cfg.eps);
      }
    };
    update(params.layers[k].w, adam.m[k].w, adam.v[k].w, g.layers[k].w);
    update(params.layers[k].b, adam.m[k].b, adam.v[k].b, g.layers[k].b);
  }
  params.version += 1;
}

}  // namespace xoos::apprentice
