#include "cicf/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cicf/warp.hpp"

namespace cicf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(const Grid& grid, std::span<const double> f, const char* who) {
    if (int(f.size()) != grid.N)
        throw SizeError(std::string(who) + ": expected " + std::to_string(grid.N) +
                        " node values, got " + std::to_string(f.size()));
}

} // namespace

Grid make_grid(int N, int n) {
    if (N < 16)
        throw SizeError("make_grid: N must be >= 16");
    if (n < 1)
        throw SizeError("make_grid: sphere dimension must be >= 1");
    Grid g;
    g.N = N;
    g.n = n;
    g.periodic = (n == 1);
    g.theta.resize(N);
    g.quad_weights.resize(N);
    g.cot_theta.assign(N, 0.0);
    if (g.periodic) {
        g.dtheta = 2.0 * kPi / N;
        for (int i = 0; i < N; ++i) {
            g.theta[i] = (i + 0.5) * g.dtheta;
            g.quad_weights[i] = g.dtheta;
        }
    } else {
        g.dtheta = kPi / N;
        const double ring = unit_sphere_area(n - 1); // |S^(n-1)|
        for (int i = 0; i < N; ++i) {
            g.theta[i] = (i + 0.5) * g.dtheta;
            g.quad_weights[i] = ring * std::pow(std::sin(g.theta[i]), n - 1) * g.dtheta;
            g.cot_theta[i] = std::cos(g.theta[i]) / std::sin(g.theta[i]);
        }
    }
    return g;
}

void d1_into(const Grid& grid, std::span<const double> f, std::span<double> out,
             Parity parity) {
    check_size(grid, f, "d1");
    check_size(grid, out, "d1");
    const int N = grid.N;
    const double inv2h = 1.0 / (2.0 * grid.dtheta);
    if (grid.periodic) {
        out[0] = (f[1] - f[N - 1]) * inv2h;
        out[N - 1] = (f[0] - f[N - 2]) * inv2h;
    } else {
        const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
        out[0] = (f[1] - sign * f[0]) * inv2h;
        out[N - 1] = (sign * f[N - 1] - f[N - 2]) * inv2h;
    }
    for (int i = 1; i + 1 < N; ++i)
        out[i] = (f[i + 1] - f[i - 1]) * inv2h;
}

void d2_into(const Grid& grid, std::span<const double> f, std::span<double> out,
             Parity parity) {
    check_size(grid, f, "d2");
    check_size(grid, out, "d2");
    const int N = grid.N;
    const double invh2 = 1.0 / (grid.dtheta * grid.dtheta);
    if (grid.periodic) {
        out[0] = (f[1] - 2.0 * f[0] + f[N - 1]) * invh2;
        out[N - 1] = (f[0] - 2.0 * f[N - 1] + f[N - 2]) * invh2;
    } else {
        const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
        out[0] = (f[1] - 2.0 * f[0] + sign * f[0]) * invh2;
        out[N - 1] = (sign * f[N - 1] - 2.0 * f[N - 1] + f[N - 2]) * invh2;
    }
    for (int i = 1; i + 1 < N; ++i)
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * invh2;
}

std::vector<double> d1(const Grid& grid, std::span<const double> f, Parity parity) {
    std::vector<double> out(f.size());
    d1_into(grid, f, out, parity);
    return out;
}

std::vector<double> d2(const Grid& grid, std::span<const double> f, Parity parity) {
    std::vector<double> out(f.size());
    d2_into(grid, f, out, parity);
    return out;
}

double integrate(const Grid& grid, std::span<const double> f) {
    check_size(grid, f, "integrate");
    double acc = 0.0;
    for (int i = 0; i < grid.N; ++i)
        acc += grid.quad_weights[i] * f[i];
    return acc;
}

} // namespace cicf
