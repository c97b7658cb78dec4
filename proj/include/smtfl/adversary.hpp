#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smtfl/data.hpp"
#include "smtfl/gradient.hpp"

namespace smtfl {

enum class AdversaryVariant { Honest, LabelFlip, RandomUpdate, GradAscent };

std::string adversary_name(AdversaryVariant v);
AdversaryVariant adversary_from_name(const std::string& name);

struct AdversaryKind {
    AdversaryVariant variant = AdversaryVariant::Honest;
    double sigma = 1.0;              // random_update noise scale, > 0
    double ascent_multiplier = -1.0; // grad_ascent, < 0
    bool flip_use_permutation = false;
    std::uint64_t flip_seed = 0;

    void validate() const;
};

// Cyclic label shift: y -> (y+1) mod n_classes. Features untouched.
Dataset corrupt_labels(const Dataset& shard, std::uint64_t seed);

// Seeded random derangement of class ids (no label maps to itself).
Dataset corrupt_labels_permuted(const Dataset& shard, std::uint64_t seed);

// Replaces the gradient with an i.i.d. Gaussian(0, sigma^2) vector of the
// same dimension. Only g.dim() is consulted.
GradientVector corrupt_gradient_random(const GradientVector& g, double sigma,
                                       std::uint64_t seed);

// multiplier * g, multiplier < 0 (loss-increasing direction).
GradientVector corrupt_gradient_ascent(const GradientVector& g, double multiplier);

struct InversionResult {
    std::optional<std::vector<double>> reconstructed;
    std::optional<double> residual;  // L2 distance to ground truth, when supplied

    bool succeeded() const { return reconstructed.has_value(); }
};

// Closed-form inversion of a single-sample binary-logistic gradient:
// g_w = (sigma(z)-y) x, g_b = sigma(z)-y, so x = g_w / g_b when |g_b| > 1e-9.
InversionResult invert_linear_gradient(const GradientVector& g_w, double g_b,
                                       const std::vector<double>* ground_truth = nullptr);

}  // namespace smtfl
