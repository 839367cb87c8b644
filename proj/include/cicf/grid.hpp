#pragma once

#include <span>
#include <vector>

#include "cicf/errors.hpp"

namespace cicf {

// Axisymmetric discretization of S^n: a cell-centered grid in the polar
// angle theta with pole-safe differentiation and weighted quadrature.
//
// For n >= 2 the nodes are theta_i = (i + 1/2) pi/N, strictly inside
// (0, pi); ghost values come from reflection across the poles. For n = 1
// the grid is the full circle [0, 2 pi) with periodic wrap.

enum class Parity {
    Even, // scalar symmetric about both poles (e.g. the radius r)
    Odd,  // derivative-like, antisymmetric at the poles (e.g. phi')
};

struct Grid {
    int N = 0;
    int n = 2; // sphere dimension; quadrature weight carries sin^(n-1)
    double dtheta = 0.0;
    std::vector<double> theta;
    std::vector<double> quad_weights;
    std::vector<double> cot_theta; // cot at the nodes (zeros for n = 1)
    bool periodic = false;         // n == 1
};

Grid make_grid(int N, int n);

// Second-order centered first/second differences with ghost cells filled by
// reflection (sign per parity) for n >= 2, periodic wrap for n = 1.
// A constant maps to identically zero under d1 and d2.
std::vector<double> d1(const Grid& grid, std::span<const double> f,
                       Parity parity = Parity::Even);
std::vector<double> d2(const Grid& grid, std::span<const double> f,
                       Parity parity = Parity::Even);

// In-place variants used by the flow inner loop.
void d1_into(const Grid& grid, std::span<const double> f, std::span<double> out,
             Parity parity = Parity::Even);
void d2_into(const Grid& grid, std::span<const double> f, std::span<double> out,
             Parity parity = Parity::Even);

// Midpoint-rule quadrature sum w_i f_i; converges to the S^n integral of an
// axisymmetric integrand at second order.
double integrate(const Grid& grid, std::span<const double> f);

} // namespace cicf
