#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace smtfl {

// Flat real vector; the unit of everything exchanged, masked, escrowed and
// unlearned. Invariant: every entry is finite.
struct GradientVector {
    std::vector<double> values;

    GradientVector() = default;
    explicit GradientVector(std::size_t dim, double fill = 0.0) : values(dim, fill) {}
    explicit GradientVector(std::vector<double> v) : values(std::move(v)) {}

    std::size_t dim() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void check_same_dim(const GradientVector& a, const GradientVector& b,
                           const char* where) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
}

inline GradientVector operator+(const GradientVector& a, const GradientVector& b) {
    check_same_dim(a, b, "vector add");
    GradientVector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline GradientVector operator-(const GradientVector& a, const GradientVector& b) {
    check_same_dim(a, b, "vector sub");
    GradientVector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline GradientVector operator*(double s, const GradientVector& a) {
    GradientVector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = s * a[i];
    return out;
}

inline GradientVector& operator+=(GradientVector& a, const GradientVector& b) {
    check_same_dim(a, b, "vector add");
    for (std::size_t i = 0; i < a.dim(); ++i) a[i] += b[i];
    return a;
}

inline GradientVector& operator-=(GradientVector& a, const GradientVector& b) {
    check_same_dim(a, b, "vector sub");
    for (std::size_t i = 0; i < a.dim(); ++i) a[i] -= b[i];
    return a;
}

inline double norm_inf(const GradientVector& a) {
    double m = 0.0;
    for (double v : a.values) m = std::max(m, std::fabs(v));
    return m;
}

inline double norm_l2(const GradientVector& a) {
    double s = 0.0;
    for (double v : a.values) s += v * v;
    return std::sqrt(s);
}

inline double l2_distance(const GradientVector& a, const GradientVector& b) {
    check_same_dim(a, b, "l2 distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace smtfl
