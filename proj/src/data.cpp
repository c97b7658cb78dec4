#include "smtfl/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "smtfl/rng.hpp"

namespace smtfl {

void Dataset::validate() const {
    if (labels.empty()) throw std::invalid_argument("dataset: no samples");
    if (n_features == 0) throw std::invalid_argument("dataset: zero features");
    if (features.size() != labels.size() * n_features)
        throw std::invalid_argument("dataset: feature/label count mismatch");
    if (n_classes < 1) throw std::invalid_argument("dataset: n_classes < 1");
    for (int y : labels)
        if (y < 0 || y >= n_classes)
            throw std::invalid_argument("dataset: label " + std::to_string(y) +
                                        " outside [0, " + std::to_string(n_classes) + ")");
    for (double v : features)
        if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite feature");
}

Dataset make_blobs(std::size_t n_samples, std::size_t n_features, int n_classes,
                   double noise, double spread, std::uint64_t seed) {
    if (n_samples == 0 || n_features == 0 || n_classes < 1)
        throw std::invalid_argument("make_blobs: empty shape");
    Rng rng(mix_seed(seed, 0xb10b5));
    std::vector<double> means(static_cast<std::size_t>(n_classes) * n_features);
    for (double& m : means) m = rng.uniform(-spread, spread);

    Dataset ds;
    ds.n_features = n_features;
    ds.n_classes = n_classes;
    ds.features.resize(n_samples * n_features);
    ds.labels.resize(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        // Round-robin labels keep every class populated for any n_samples.
        int y = static_cast<int>(i % static_cast<std::size_t>(n_classes));
        ds.labels[i] = y;
        const double* mu = means.data() + static_cast<std::size_t>(y) * n_features;
        for (std::size_t f = 0; f < n_features; ++f)
            ds.features[i * n_features + f] = mu[f] + noise * rng.gaussian();
    }
    return ds;
}

Dataset load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("dataset file not found: " + path);
    std::size_t n_samples = 0, n_features = 0;
    int n_classes = 0;
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("dataset file: missing header");
    {
        std::istringstream hs(header);
        if (!(hs >> n_samples >> n_features >> n_classes))
            throw std::runtime_error("dataset file: malformed header '" + header + "'");
    }
    Dataset ds;
    ds.n_features = n_features;
    ds.n_classes = n_classes;
    ds.features.reserve(n_samples * n_features);
    ds.labels.reserve(n_samples);
    std::string line;
    for (std::size_t i = 0; i < n_samples; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("dataset file: expected " + std::to_string(n_samples) +
                                     " samples, got " + std::to_string(i));
        std::istringstream ls(line);
        for (std::size_t f = 0; f < n_features; ++f) {
            double v;
            if (!(ls >> v))
                throw std::runtime_error("dataset file: bad feature on sample " + std::to_string(i));
            ds.features.push_back(v);
        }
        int y;
        if (!(ls >> y))
            throw std::runtime_error("dataset file: missing label on sample " + std::to_string(i));
        ds.labels.push_back(y);
    }
    ds.validate();
    return ds;
}

void save_dataset_file(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path);
    out.precision(17);
    out << ds.n_samples() << ' ' << ds.n_features << ' ' << ds.n_classes << '\n';
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        const double* r = ds.row(i);
        for (std::size_t f = 0; f < ds.n_features; ++f) out << r[f] << ' ';
        out << ds.labels[i] << '\n';
    }
}

namespace {

Dataset gather(const Dataset& src, const std::vector<std::size_t>& idx) {
    Dataset out;
    out.n_features = src.n_features;
    out.n_classes = src.n_classes;
    out.features.reserve(idx.size() * src.n_features);
    out.labels.reserve(idx.size());
    for (std::size_t i : idx) {
        const double* r = src.row(i);
        out.features.insert(out.features.end(), r, r + src.n_features);
        out.labels.push_back(src.labels[i]);
    }
    return out;
}

}  // namespace

std::vector<Dataset> partition_dataset(const Dataset& dataset, const PartitionSpec& spec) {
    dataset.validate();
    const std::size_t n = dataset.n_samples();
    const std::uint32_t m = spec.n_clients;
    if (m < 3) throw std::invalid_argument("partition: n_clients < 3");
    if (n < m) throw std::invalid_argument("partition: more clients than samples");
    if (spec.rate_iid < 0.0 || spec.rate_iid > 1.0)
        throw std::invalid_argument("partition: rate_iid outside [0,1]");
    {
        std::vector<std::size_t> per_class(static_cast<std::size_t>(dataset.n_classes), 0);
        for (int y : dataset.labels) per_class[static_cast<std::size_t>(y)]++;
        for (std::size_t c = 0; c < per_class.size(); ++c)
            if (per_class[c] == 0)
                throw std::invalid_argument("partition: class " + std::to_string(c) +
                                            " has no samples");
    }

    Rng rng(mix_seed(spec.seed, 0x9a27171071ULL));

    // Per-class index pools, each shuffled.
    std::vector<std::vector<std::size_t>> pools(static_cast<std::size_t>(dataset.n_classes));
    for (std::size_t i = 0; i < n; ++i)
        pools[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
    for (auto& p : pools) rng.shuffle(p);

    // Dominant class per shard: seeded permutation of class ids, cycled.
    std::vector<int> class_order(static_cast<std::size_t>(dataset.n_classes));
    std::iota(class_order.begin(), class_order.end(), 0);
    rng.shuffle(class_order);

    // Shard sizes: n/m each, the first n%m shards take one extra.
    std::vector<std::size_t> shard_size(m, n / m);
    for (std::size_t i = 0; i < n % m; ++i) shard_size[i]++;

    std::vector<std::size_t> want_dominant(m);
    for (std::uint32_t s = 0; s < m; ++s) {
        std::size_t iid = static_cast<std::size_t>(
            std::llround(spec.rate_iid * static_cast<double>(shard_size[s])));
        want_dominant[s] = shard_size[s] - std::min(iid, shard_size[s]);
    }

    // Phase 1: dominant-class draws. When a shard's dominant pool runs dry its
    // remaining quota is deferred to the uniform phase.
    std::vector<std::vector<std::size_t>> shard_idx(m);
    for (std::uint32_t s = 0; s < m; ++s) {
        auto& pool = pools[static_cast<std::size_t>(
            class_order[s % static_cast<std::uint32_t>(dataset.n_classes)])];
        std::size_t take = std::min(want_dominant[s], pool.size());
        for (std::size_t i = 0; i < take; ++i) {
            shard_idx[s].push_back(pool.back());
            pool.pop_back();
        }
    }

    // Phase 2: pool the leftovers, shuffle, deal each shard up to its size.
    std::vector<std::size_t> uniform_pool;
    for (auto& p : pools) uniform_pool.insert(uniform_pool.end(), p.begin(), p.end());
    rng.shuffle(uniform_pool);
    std::size_t cursor = 0;
    for (std::uint32_t s = 0; s < m; ++s) {
        while (shard_idx[s].size() < shard_size[s]) {
            shard_idx[s].push_back(uniform_pool[cursor++]);
        }
    }

    std::vector<Dataset> shards;
    shards.reserve(m);
    for (std::uint32_t s = 0; s < m; ++s) shards.push_back(gather(dataset, shard_idx[s]));
    return shards;
}

}  // namespace smtfl
