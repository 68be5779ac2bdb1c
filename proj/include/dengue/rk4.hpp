#pragma once

#include <array>
#include <cstddef>

namespace dengue {

template <std::size_t N>
using Vec = std::array<double, N>;

/// One classic fourth-order Runge-Kutta step of y' = f(t, y).
template <std::size_t N, class Rhs>
Vec<N> rk4_step(const Rhs& f, double t, const Vec<N>& y, double h) {
    auto axpy = [](const Vec<N>& a, double s, const Vec<N>& b) {
        Vec<N> out;
        for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * b[i];
        return out;
    };
    const Vec<N> k1 = f(t, y);
    const Vec<N> k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const Vec<N> k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const Vec<N> k4 = f(t + h, axpy(y, h, k3));
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace dengue
