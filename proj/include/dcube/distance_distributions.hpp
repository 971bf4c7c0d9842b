#pragma once

// Distribution of the squared distance D_k^2 between two independent points
// drawn uniformly from the unit k-cube: closed forms for k <= 3, the
// convolution recursion for any k, moments, and the Edgeworth expansion of
// the standardized statistic.

#include <dcube/error.hpp>
#include <dcube/generators.hpp>
#include <dcube/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace dcube {

/// Dimension of the unit cube; always >= 1.
class Dimension {
public:
    constexpr explicit Dimension(int k) : k_(k) {
        if (k < 1) throw DomainError("dimension must be >= 1, got " + std::to_string(k));
    }
    constexpr int value() const noexcept { return k_; }
    friend constexpr bool operator==(Dimension, Dimension) = default;

private:
    int k_;
};

struct MomentPair {
    double mean;
    double variance;
};

struct EdgeworthCoefficients {
    double beta3;
    double beta4;
    double beta5;
};

namespace detail {

inline void require_finite(double x, const char* who) {
    if (!std::isfinite(x))
        throw DomainError(std::string(who) + ": argument must be finite");
}

/// arcsec(x) = arccos(1/x), range [0, pi/2) for x >= 1.
inline double arcsec(double x) { return std::acos(1.0 / x); }

inline constexpr double kPi = std::numbers::pi;

} // namespace detail

/// CDF of D_1^2 = (X - X')^2.
inline double f1_cdf(double a2) {
    detail::require_finite(a2, "f1_cdf");
    if (a2 <= 0.0) return 0.0;
    if (a2 >= 1.0) return 1.0;
    return 2.0 * std::sqrt(a2) - a2;
}

/// Raw branch expression of F_2 (branch 1 on [0,1], branch 2 on [1,2]),
/// without clamping. Used to probe continuity at the knot.
inline double f2_cdf_branch(int branch, double a2) {
    using detail::kPi;
    const double a = std::sqrt(a2);
    switch (branch) {
    case 1:
        return kPi * a2 - (8.0 / 3.0) * a2 * a + 0.5 * a2 * a2;
    case 2: {
        const double x = a2 - 1.0;
        const double rx = std::sqrt(x);
        return 1.0 / 3.0 + (kPi - 2.0) * a2 + 4.0 * rx + (8.0 / 3.0) * x * rx - 0.5 * a2 * a2 -
               4.0 * a2 * detail::arcsec(a);
    }
    default:
        throw DomainError("f2_cdf_branch: branch must be 1 or 2");
    }
}

inline double f2_cdf(double a2) {
    detail::require_finite(a2, "f2_cdf");
    if (a2 <= 0.0) return 0.0;
    if (a2 >= 2.0) return 1.0;
    return f2_cdf_branch(a2 <= 1.0 ? 1 : 2, a2);
}

/// Raw branch expression of F_3 for branch 1, 2 or 3 (intervals [0,1],
/// [1,2], [2,3]), without clamping.
inline double f3_cdf_branch(int branch, double a2) {
    using detail::kPi;
    const double a = std::sqrt(a2);
    const double a3 = a2 * a;
    const double a4 = a2 * a2;
    switch (branch) {
    case 1:
        return (4.0 / 3.0) * kPi * a3 - 1.5 * kPi * a4 + 1.6 * a4 * a - a4 * a2 / 6.0;
    case 2: {
        const double x = a2 - 1.0;
        const double rx = std::sqrt(x);
        return (2.5 * kPi + 43.0 / 30.0) - 6.0 * rx + (3.0 * kPi + 3.5) * x -
               (8.0 / 3.0) * kPi * a3 - 10.0 * x * rx + 2.5 * x * x - 3.2 * x * x * rx +
               x * x * x / 3.0 + 6.0 * a4 * detail::arcsec(a);
    }
    case 3: {
        const double x = a2 - 2.0;
        const double rx = std::sqrt(x);
        return (11.5 * kPi - 343.0 / 30.0) + 14.0 * rx + (9.0 * kPi - 10.5) * x +
               10.0 * x * rx + 0.5 * (3.0 * kPi - 5.0) * x * x + 1.6 * x * x * rx -
               x * x * x / 6.0 -
               2.0 * (3.0 * a4 + 6.0 * a2 - 1.0) * detail::arcsec(std::sqrt(a2 - 1.0)) +
               8.0 * a3 * detail::arcsec(a2 - 1.0) - (8.0 / 3.0) * kPi * a3;
    }
    default:
        throw DomainError("f3_cdf_branch: branch must be 1, 2 or 3");
    }
}

/// CDF of D_3^2. Knots a2 = 1 and a2 = 2 are evaluated on the left branch.
inline double f3_cdf(double a2) {
    detail::require_finite(a2, "f3_cdf");
    if (a2 <= 0.0) return 0.0;
    if (a2 >= 3.0) return 1.0;
    const int branch = a2 <= 1.0 ? 1 : (a2 <= 2.0 ? 2 : 3);
    // Truncation of the closed form can overshoot 1 by a few ulps near a2 = 3.
    return std::clamp(f3_cdf_branch(branch, a2), 0.0, 1.0);
}

namespace detail {

// Mass of the weight 2(1 - u) on [u0, u1]; this is the density of
// (X - X')^2 after the substitution t = u^2.
inline double weight_mass(double u0, double u1) {
    return (2.0 * u1 - u1 * u1) - (2.0 * u0 - u0 * u0);
}

// Branch function F_k^i evaluated at s, recursing to F_1^1.
// i <= 0 is identically 0, i > k identically 1.
inline double recursive_branch(int k, int i, double s, const QuadratureConfig& cfg) {
    if (i <= 0) return 0.0;
    if (i > k) return 1.0;
    if (k == 1) {
        const double c = std::clamp(s, 0.0, 1.0);
        return 2.0 * std::sqrt(c) - c;
    }
    const double split = std::sqrt(std::clamp(s - i + 1.0, 0.0, 1.0));

    auto piece = [&](int inner_branch, double u0, double u1) {
        if (u0 >= u1) return 0.0;
        if (inner_branch <= 0) return 0.0;
        if (inner_branch > k - 1) return weight_mass(u0, u1);
        auto integrand = [&](double u) {
            return recursive_branch(k - 1, inner_branch, s - u * u, cfg) * 2.0 * (1.0 - u);
        };
        return integrate(integrand, u0, u1, cfg).value;
    };
    return piece(i, 0.0, split) + piece(i - 1, split, 1.0);
}

} // namespace detail

/// F_k(a2) through the convolution recursion with (X - X')^2, with the
/// singular weight t^{-1/2} - 1 removed by t = u^2. Throws NumericalError if
/// an inner quadrature does not reach cfg.abs_tolerance.
inline double fk_cdf_recursive(Dimension k, double a2, const QuadratureConfig& cfg = {}) {
    detail::require_finite(a2, "fk_cdf_recursive");
    cfg.validate();
    const int dim = k.value();
    if (a2 <= 0.0) return 0.0;
    if (a2 >= dim) return 1.0;
    const int branch = static_cast<int>(std::ceil(a2));
    return std::clamp(detail::recursive_branch(dim, branch, a2, cfg), 0.0, 1.0);
}

inline MomentPair dk2_moments(Dimension k) {
    const double d = k.value();
    return {d / 6.0, 7.0 * d / 180.0};
}

/// Z_k = (D_k^2 - k/6) / sqrt(7k/180).
inline double standardize(Dimension k, double d2) {
    const auto m = dk2_moments(k);
    return (d2 - m.mean) / std::sqrt(m.variance);
}

/// Probabilists' Hermite polynomials He_n for n in {2,3,4,5,6,8}.
inline double hermite(int n, double z) {
    const double z2 = z * z;
    switch (n) {
    case 2: return z2 - 1.0;
    case 3: return z * (z2 - 3.0);
    case 4: return (z2 - 6.0) * z2 + 3.0;
    case 5: return z * ((z2 - 10.0) * z2 + 15.0);
    case 6: return ((z2 - 15.0) * z2 + 45.0) * z2 - 15.0;
    case 8: return (((z2 - 28.0) * z2 + 210.0) * z2 - 420.0) * z2 + 105.0;
    default:
        throw DomainError("hermite: degree " + std::to_string(n) +
                          " not supported (expected 2, 3, 4, 5, 6 or 8)");
    }
}

/// Standardized third, fourth and fifth cumulants of (X - X')^2.
inline EdgeworthCoefficients edgeworth_coefficients() {
    const double r = std::sqrt(5.0 / 7.0);
    return {88.0 / 49.0 * r, 606.0 / 343.0, -8160.0 / 3773.0 * r};
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

/// Smallest k for which the expansion is considered in its asymptotic regime.
inline constexpr int kEdgeworthMinDimension = 4;

/// Edgeworth approximation to P(Z_k <= z), carried to order k^{-3/2} and
/// clamped to [0,1].
inline double edgeworth_cdf(Dimension k, double z) {
    detail::require_finite(z, "edgeworth_cdf");
    const auto [b3, b4, b5] = edgeworth_coefficients();
    const double rk = std::sqrt(static_cast<double>(k.value()));
    const double kk = rk * rk;
    const double k32 = kk * rk;
    const double correction = b3 / (6.0 * rk) * hermite(2, z) +
                              b4 / (24.0 * kk) * hermite(3, z) +
                              b3 * b3 / (72.0 * kk) * hermite(5, z) +
                              b5 / (120.0 * k32) * hermite(4, z) +
                              b3 * b4 / (144.0 * k32) * hermite(6, z) +
                              b3 * b3 * b3 / (1296.0 * k32) * hermite(8, z);
    return std::clamp(normal_cdf(z) - normal_pdf(z) * correction, 0.0, 1.0);
}

/// Sorted Monte Carlo sample of D_k^2 supporting empirical-CDF queries.
class EmpiricalDistanceCdf {
public:
    EmpiricalDistanceCdf(int dimension, std::vector<double> sorted)
        : dimension_(dimension), values_(std::move(sorted)) {}

    /// Fraction of samples <= a2.
    double cdf(double a2) const {
        const auto it = std::upper_bound(values_.begin(), values_.end(), a2);
        return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
    }

    double mean() const {
        long double s = 0;
        for (double v : values_) s += v;
        return static_cast<double>(s / values_.size());
    }

    /// Unbiased sample variance.
    double variance() const {
        const double m = mean();
        long double s = 0;
        for (double v : values_) s += (v - m) * (v - m);
        return static_cast<double>(s / (values_.size() - 1));
    }

    int dimension() const noexcept { return dimension_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& sorted_values() const noexcept { return values_; }

private:
    int dimension_;
    std::vector<double> values_;
};

/// Draws n_samples independent D_k^2 values from the auxiliary generator.
inline EmpiricalDistanceCdf mc_distance_oracle(Dimension k, std::size_t n_samples,
                                               std::uint64_t seed) {
    if (n_samples < 1) throw DomainError("mc_distance_oracle: n_samples must be >= 1");
    AuxiliaryGenerator gen(seed);
    std::vector<double> values(n_samples);
    for (auto& v : values) {
        double s = 0.0;
        for (int j = 0; j < k.value(); ++j) {
            const double d = gen.uniform() - gen.uniform();
            s += d * d;
        }
        v = s;
    }
    std::sort(values.begin(), values.end());
    return {k.value(), std::move(values)};
}

} // namespace dcube
