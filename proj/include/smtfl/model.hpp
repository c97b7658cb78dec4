#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smtfl/data.hpp"
#include "smtfl/gradient.hpp"

namespace smtfl {

enum class Arch { LogisticRegression, Mlp1Hidden };

std::string arch_name(Arch a);
Arch arch_from_name(const std::string& name);

// Flat-parameter classifier. Layouts:
//   logistic: [W (k x f), b (k)]
//   mlp:      [W1 (h x f), b1 (h), W2 (k x h), b2 (k)], tanh hidden
struct Model {
    Arch arch = Arch::LogisticRegression;
    std::size_t n_features = 0;
    std::size_t n_hidden = 0;  // 0 for logistic
    int n_classes = 0;
    std::vector<double> params;

    static std::size_t param_count(Arch arch, std::size_t n_features,
                                   std::size_t n_hidden, int n_classes);
    static Model init(Arch arch, std::size_t n_features, std::size_t n_hidden,
                      int n_classes, std::uint64_t seed);

    std::size_t dim() const { return params.size(); }
    void validate() const;

    // Class scores for one sample (length n_classes).
    std::vector<double> logits(const double* x) const;
};

// Cumulative local update: (params after epochs_local SGD passes) - (params
// before). The input model is untouched. Throws on a non-finite batch loss,
// naming the epoch and batch.
GradientVector local_train(const Model& model, const Dataset& shard, int epochs_local,
                           std::size_t batch_size, double lr, std::uint64_t seed);

// params + g, pure.
Model apply_update(const Model& model, const GradientVector& g);

// Fraction of argmax-correct predictions; logit ties break toward the lowest
// class index.
double evaluate(const Model& model, const Dataset& test);

}  // namespace smtfl
