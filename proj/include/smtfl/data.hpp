#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace smtfl {

// Row-major feature matrix plus integer class labels.
struct Dataset {
    std::vector<double> features;  // n_samples * n_features
    std::vector<int> labels;       // each in [0, n_classes)
    std::size_t n_features = 0;
    int n_classes = 0;

    std::size_t n_samples() const { return labels.size(); }
    const double* row(std::size_t i) const { return features.data() + i * n_features; }

    // Throws std::invalid_argument when the invariants do not hold.
    void validate() const;
};

struct PartitionSpec {
    std::uint32_t n_clients = 3;   // m
    double rate_iid = 0.5;         // fraction of each shard drawn from the uniform pool
    std::uint64_t seed = 0;
};

// Gaussian blobs: k class means drawn uniformly in [-spread, spread]^dim,
// samples are mean + N(0, noise^2) per coordinate.
Dataset make_blobs(std::size_t n_samples, std::size_t n_features, int n_classes,
                   double noise, double spread, std::uint64_t seed);

// Text format: header "n_samples n_features n_classes", then one sample per
// line (features then the integer label). LF line endings.
Dataset load_dataset_file(const std::string& path);
void save_dataset_file(const Dataset& ds, const std::string& path);

// Two-pool partition: each shard takes round(rate_iid * size) samples from a
// global shuffled pool and the remainder from its dominant class's pool.
// Every input sample lands in exactly one shard.
std::vector<Dataset> partition_dataset(const Dataset& dataset, const PartitionSpec& spec);

}  // namespace smtfl
