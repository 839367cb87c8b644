#include "cicf/symmetric.hpp"

#include <string>

namespace cicf {

namespace {

void check_k(int k, int n, const char* who) {
    if (k < 0 || k > n)
        throw IndexError(std::string(who) + ": k = " + std::to_string(k) +
                         " outside 0.." + std::to_string(n));
}

double pow_int(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= x;
    return r;
}

// sigma_j of the axisymmetric tuple (kappa1, kappa2 x (n-1)); binomial
// expansion instead of the generic recurrence keeps the per-node flow
// loop at O(k).
double axisym_sigma(double kappa1, double kappa2, int n, int j) {
    if (j < 0 || j > n)
        return 0.0;
    double s = binomial(n - 1, j) * pow_int(kappa2, j);
    if (j >= 1)
        s += kappa1 * binomial(n - 1, j - 1) * pow_int(kappa2, j - 1);
    return s;
}

// sigma_j of the tuple with kappa1 removed: n-1 copies of kappa2.
double axisym_sigma_without_k1(double kappa2, int n, int j) {
    if (j < 0 || j > n - 1)
        return 0.0;
    return binomial(n - 1, j) * pow_int(kappa2, j);
}

} // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r *= double(n - k + i) / double(i);
    return r;
}

std::vector<double> elementary_all(std::span<const double> kappa) {
    const int n = int(kappa.size());
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j >= 1; --j)
            e[j] += kappa[i] * e[j - 1];
    return e;
}

std::vector<double> axisym_elementary_all(double kappa1, double kappa2, int n) {
    std::vector<double> e(n + 1, 0.0);
    for (int j = 0; j <= n; ++j)
        e[j] = axisym_sigma(kappa1, kappa2, n, j);
    return e;
}

double sigma_k(std::span<const double> kappa, int k) {
    check_k(k, int(kappa.size()), "sigma_k");
    return elementary_all(kappa)[k];
}

double normalized_h_k(std::span<const double> kappa, int k) {
    check_k(k, int(kappa.size()), "normalized_h_k");
    return elementary_all(kappa)[k] / binomial(int(kappa.size()), k);
}

bool in_gamma_cone(std::span<const double> kappa, int k) {
    check_k(k, int(kappa.size()), "in_gamma_cone");
    const auto e = elementary_all(kappa);
    for (int j = 1; j <= k; ++j)
        if (!(e[j] > 0.0))
            return false;
    return true;
}

double speed_quotient(std::span<const double> kappa, int k) {
    const int n = int(kappa.size());
    if (k < 1 || k > n)
        throw IndexError("speed_quotient: k outside 1..n");
    const auto e = elementary_all(kappa);
    const double hk = e[k] / binomial(n, k);
    const double hk1 = e[k - 1] / binomial(n, k - 1);
    if (!(hk > 0.0) || !(hk1 > 0.0))
        throw ConeViolation("speed_quotient: H_k or H_{k-1} not positive (left Gamma_k)");
    return n * hk / hk1;
}

bool axisym_in_gamma_cone(double kappa1, double kappa2, int n, int k) {
    check_k(k, n, "axisym_in_gamma_cone");
    for (int j = 1; j <= k; ++j)
        if (!(axisym_sigma(kappa1, kappa2, n, j) > 0.0))
            return false;
    return true;
}

double axisym_speed_quotient(double kappa1, double kappa2, int n, int k) {
    if (k < 1 || k > n)
        throw IndexError("axisym_speed_quotient: k outside 1..n");
    const double sk = axisym_sigma(kappa1, kappa2, n, k);
    const double sk1 = axisym_sigma(kappa1, kappa2, n, k - 1);
    const double hk = sk / binomial(n, k);
    const double hk1 = sk1 / binomial(n, k - 1);
    if (!(hk > 0.0) || !(hk1 > 0.0))
        throw ConeViolation("axisym_speed_quotient: H_k or H_{k-1} not positive");
    return n * hk / hk1;
}

double axisym_speed_dkappa1(double kappa1, double kappa2, int n, int k) {
    if (k < 1 || k > n)
        throw IndexError("axisym_speed_dkappa1: k outside 1..n");
    // F = c * sigma_k / sigma_{k-1}, c = n binom(n,k-1)/binom(n,k);
    // d sigma_j / d kappa1 = sigma_{j-1} of the remaining eigenvalues.
    const double c = double(n) * binomial(n, k - 1) / binomial(n, k);
    const double sk = axisym_sigma(kappa1, kappa2, n, k);
    const double sk1 = axisym_sigma(kappa1, kappa2, n, k - 1);
    const double dk = axisym_sigma_without_k1(kappa2, n, k - 1);
    const double dk1 = axisym_sigma_without_k1(kappa2, n, k - 2);
    return c * (dk * sk1 - sk * dk1) / (sk1 * sk1);
}

} // namespace cicf
