#pragma once
// Small dense-vector helpers shared by the embedding store, the autodiff
// tape and the linker. euclidean_distance here is the single distance
// definition used everywhere a Euclidean distance appears.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace jel {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// y += k * x
inline void axpy(double k, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += k * x[i];
}

inline double squared_distance(std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u[i] - v[i];
        s += d * d;
    }
    return s;
}

inline double euclidean_distance(std::span<const double> u, std::span<const double> v) {
    return std::sqrt(squared_distance(u, v));
}

inline double norm2(std::span<const double> u) {
    return std::sqrt(dot(u, u));
}

}  // namespace jel
