#include "smtfl/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smtfl/rng.hpp"

namespace smtfl {

std::string arch_name(Arch a) {
    return a == Arch::LogisticRegression ? "logistic" : "mlp";
}

Arch arch_from_name(const std::string& name) {
    if (name == "logistic" || name == "logistic-regression") return Arch::LogisticRegression;
    if (name == "mlp" || name == "mlp-1-hidden") return Arch::Mlp1Hidden;
    throw std::invalid_argument("unknown model architecture: " + name);
}

std::size_t Model::param_count(Arch arch, std::size_t f, std::size_t h, int k_) {
    std::size_t k = static_cast<std::size_t>(k_);
    if (arch == Arch::LogisticRegression) return k * f + k;
    return h * f + h + k * h + k;
}

Model Model::init(Arch arch, std::size_t n_features, std::size_t n_hidden, int n_classes,
                  std::uint64_t seed) {
    if (n_features == 0 || n_classes < 2)
        throw std::invalid_argument("model init: need n_features >= 1, n_classes >= 2");
    if (arch == Arch::Mlp1Hidden && n_hidden == 0)
        throw std::invalid_argument("model init: mlp needs n_hidden >= 1");
    Model m;
    m.arch = arch;
    m.n_features = n_features;
    m.n_hidden = arch == Arch::LogisticRegression ? 0 : n_hidden;
    m.n_classes = n_classes;
    m.params.resize(param_count(arch, n_features, m.n_hidden, n_classes));
    Rng rng(mix_seed(seed, 0x1417ULL));
    double scale = 1.0 / std::sqrt(static_cast<double>(n_features));
    for (double& p : m.params) p = rng.uniform(-scale, scale);
    return m;
}

void Model::validate() const {
    if (params.size() != param_count(arch, n_features, n_hidden, n_classes))
        throw std::invalid_argument("model: parameter length does not match architecture");
    for (double p : params)
        if (!std::isfinite(p)) throw std::invalid_argument("model: non-finite parameter");
}

namespace {

void softmax_inplace(std::vector<double>& z) {
    double mx = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

// Accumulates the cross-entropy gradient of one sample into grad (same layout
// as params). Returns the sample's loss.
double backprop_sample(const Model& m, const std::vector<double>& params, const double* x,
                       int y, std::vector<double>& grad, std::vector<double>& scratch_h,
                       std::vector<double>& scratch_k) {
    const std::size_t f = m.n_features;
    const std::size_t k = static_cast<std::size_t>(m.n_classes);
    if (m.arch == Arch::LogisticRegression) {
        std::vector<double>& p = scratch_k;
        p.assign(k, 0.0);
        for (std::size_t c = 0; c < k; ++c) {
            const double* w = params.data() + c * f;
            double z = params[k * f + c];
            for (std::size_t j = 0; j < f; ++j) z += w[j] * x[j];
            p[c] = z;
        }
        softmax_inplace(p);
        double loss = -std::log(std::max(p[static_cast<std::size_t>(y)], 1e-300));
        for (std::size_t c = 0; c < k; ++c) {
            double d = p[c] - (static_cast<int>(c) == y ? 1.0 : 0.0);
            double* gw = grad.data() + c * f;
            for (std::size_t j = 0; j < f; ++j) gw[j] += d * x[j];
            grad[k * f + c] += d;
        }
        return loss;
    }

    const std::size_t h = m.n_hidden;
    const double* w1 = params.data();
    const double* b1 = params.data() + h * f;
    const double* w2 = params.data() + h * f + h;
    const double* b2 = params.data() + h * f + h + k * h;

    std::vector<double>& a1 = scratch_h;
    a1.assign(h, 0.0);
    for (std::size_t j = 0; j < h; ++j) {
        double z = b1[j];
        const double* wr = w1 + j * f;
        for (std::size_t i = 0; i < f; ++i) z += wr[i] * x[i];
        a1[j] = std::tanh(z);
    }
    std::vector<double>& p = scratch_k;
    p.assign(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        double z = b2[c];
        const double* wr = w2 + c * h;
        for (std::size_t j = 0; j < h; ++j) z += wr[j] * a1[j];
        p[c] = z;
    }
    softmax_inplace(p);
    double loss = -std::log(std::max(p[static_cast<std::size_t>(y)], 1e-300));

    double* g1 = grad.data();
    double* gb1 = grad.data() + h * f;
    double* g2 = grad.data() + h * f + h;
    double* gb2 = grad.data() + h * f + h + k * h;

    std::vector<double> da1(h, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        double d = p[c] - (static_cast<int>(c) == y ? 1.0 : 0.0);
        double* gw = g2 + c * h;
        const double* wr = w2 + c * h;
        for (std::size_t j = 0; j < h; ++j) {
            gw[j] += d * a1[j];
            da1[j] += d * wr[j];
        }
        gb2[c] += d;
    }
    for (std::size_t j = 0; j < h; ++j) {
        double dz = da1[j] * (1.0 - a1[j] * a1[j]);
        double* gw = g1 + j * f;
        for (std::size_t i = 0; i < f; ++i) gw[i] += dz * x[i];
        gb1[j] += dz;
    }
    return loss;
}

}  // namespace

GradientVector local_train(const Model& model, const Dataset& shard, int epochs_local,
                           std::size_t batch_size, double lr, std::uint64_t seed) {
    model.validate();
    shard.validate();
    if (shard.n_features != model.n_features || shard.n_classes != model.n_classes)
        throw std::invalid_argument("local_train: shard does not match model shape");
    if (epochs_local < 1) throw std::invalid_argument("local_train: epochs_local < 1");
    if (batch_size == 0) throw std::invalid_argument("local_train: batch_size == 0");
    if (lr < 0.0) throw std::invalid_argument("local_train: negative learning rate");

    std::vector<double> params = model.params;
    std::vector<double> grad(params.size());
    std::vector<double> scratch_h, scratch_k;
    Rng rng(mix_seed(seed, 0x10ca1ULL));

    std::vector<std::size_t> order(shard.n_samples());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < epochs_local; ++epoch) {
        rng.shuffle(order);
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < order.size(); start += batch_size, ++batch_index) {
            std::size_t end = std::min(start + batch_size, order.size());
            std::fill(grad.begin(), grad.end(), 0.0);
            double loss = 0.0;
            for (std::size_t i = start; i < end; ++i) {
                std::size_t s = order[i];
                loss += backprop_sample(model, params, shard.row(s), shard.labels[s], grad,
                                        scratch_h, scratch_k);
            }
            double inv = 1.0 / static_cast<double>(end - start);
            loss *= inv;
            if (!std::isfinite(loss))
                throw std::runtime_error("local_train: non-finite loss at local epoch " +
                                         std::to_string(epoch) + ", batch " +
                                         std::to_string(batch_index));
            for (std::size_t j = 0; j < params.size(); ++j) params[j] -= lr * inv * grad[j];
        }
    }

    GradientVector delta(params.size());
    for (std::size_t j = 0; j < params.size(); ++j) delta[j] = params[j] - model.params[j];
    return delta;
}

Model apply_update(const Model& model, const GradientVector& g) {
    if (g.dim() != model.params.size())
        throw std::invalid_argument("apply_update: dimension mismatch");
    Model out = model;
    for (std::size_t i = 0; i < g.dim(); ++i) out.params[i] += g[i];
    return out;
}

std::vector<double> Model::logits(const double* x) const {
    const std::size_t f = n_features;
    const std::size_t k = static_cast<std::size_t>(n_classes);
    std::vector<double> z(k, 0.0);
    if (arch == Arch::LogisticRegression) {
        for (std::size_t c = 0; c < k; ++c) {
            const double* w = params.data() + c * f;
            double v = params[k * f + c];
            for (std::size_t j = 0; j < f; ++j) v += w[j] * x[j];
            z[c] = v;
        }
        return z;
    }
    const std::size_t h = n_hidden;
    const double* w1 = params.data();
    const double* b1 = params.data() + h * f;
    const double* w2 = params.data() + h * f + h;
    const double* b2 = params.data() + h * f + h + k * h;
    std::vector<double> a1(h);
    for (std::size_t j = 0; j < h; ++j) {
        double v = b1[j];
        const double* wr = w1 + j * f;
        for (std::size_t i = 0; i < f; ++i) v += wr[i] * x[i];
        a1[j] = std::tanh(v);
    }
    for (std::size_t c = 0; c < k; ++c) {
        double v = b2[c];
        const double* wr = w2 + c * h;
        for (std::size_t j = 0; j < h; ++j) v += wr[j] * a1[j];
        z[c] = v;
    }
    return z;
}

double evaluate(const Model& model, const Dataset& test) {
    model.validate();
    test.validate();
    if (test.n_features != model.n_features || test.n_classes != model.n_classes)
        throw std::invalid_argument("evaluate: test set does not match model shape");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.n_samples(); ++i) {
        std::vector<double> z = model.logits(test.row(i));
        std::size_t best = 0;
        for (std::size_t c = 1; c < z.size(); ++c)
            if (z[c] > z[best]) best = c;  // ties stay on the lowest index
        if (static_cast<int>(best) == test.labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test.n_samples());
}

}  // namespace smtfl
