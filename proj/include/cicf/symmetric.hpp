#pragma once

#include <span>
#include <vector>

#include "cicf/errors.hpp"

namespace cicf {

// Elementary symmetric polynomials of principal-curvature tuples and the
// Hessian-quotient speed F = n H_k / H_{k-1}, with the cone checks that
// keep the quotient admissible.

double binomial(int n, int k);

// sigma_0..sigma_n of an arbitrary tuple, by the one-eigenvalue-at-a-time
// recurrence (numerically stable, no cancellation of large binomials).
std::vector<double> elementary_all(std::span<const double> kappa);

// sigma_0..sigma_n of the axisymmetric tuple (kappa1, kappa2 with
// multiplicity n-1), expanded through binomial identities instead of
// materializing the tuple.
std::vector<double> axisym_elementary_all(double kappa1, double kappa2, int n);

double sigma_k(std::span<const double> kappa, int k);

// H_k = sigma_k / binom(n, k).
double normalized_h_k(std::span<const double> kappa, int k);

// Gamma_k membership: sigma_j > 0 for all j = 1..k.
bool in_gamma_cone(std::span<const double> kappa, int k);

// F = n H_k / H_{k-1}; 1-homogeneous, F(1,...,1) = n. Throws ConeViolation
// when H_{k-1} <= 0 or H_k <= 0.
double speed_quotient(std::span<const double> kappa, int k);

// Axisymmetric fast paths used per node by the flow.
double axisym_speed_quotient(double kappa1, double kappa2, int n, int k);
bool axisym_in_gamma_cone(double kappa1, double kappa2, int n, int k);

// dF/d(kappa1) for the axisymmetric tuple; this is the theta-theta
// diffusion coefficient ingredient of the parabolic time-step bound.
double axisym_speed_dkappa1(double kappa1, double kappa2, int n, int k);

} // namespace cicf
