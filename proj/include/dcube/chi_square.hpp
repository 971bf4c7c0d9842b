#pragma once

#include <dcube/error.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace dcube {

/// Upper tail P(X > x) of the chi-square distribution with df degrees of freedom.
inline double chi_square_sf(int df, double x) {
    if (df < 1) throw DomainError("chi_square_sf: df must be >= 1");
    if (std::isnan(x) || x < 0.0) throw DomainError("chi_square_sf: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

/// Two-sided normal tail 2 * P(Z > |z|).
inline double normal_two_sided_p(double z) {
    if (std::isnan(z)) throw DomainError("normal_two_sided_p: z is NaN");
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

struct PearsonChiSquare {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::vector<double> expected;
    bool low_expected = false; // some expected count below 5
};

/// Pearson goodness of fit of observed category counts against exact
/// category probabilities; df = categories - 1.
inline PearsonChiSquare pearson_chi_square(std::span<const std::size_t> observed,
                                           std::span<const double> probabilities) {
    if (observed.size() != probabilities.size() || observed.size() < 2)
        throw DomainError("pearson_chi_square: need >= 2 categories with matching probabilities");
    const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
    if (n <= 0.0) throw DomainError("pearson_chi_square: no observations");

    PearsonChiSquare out;
    out.expected.reserve(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(probabilities[i] > 0.0))
            throw DomainError("pearson_chi_square: category probabilities must be positive");
        const double e = n * probabilities[i];
        const double diff = static_cast<double>(observed[i]) - e;
        out.statistic += diff * diff / e;
        out.expected.push_back(e);
        if (e < 5.0) out.low_expected = true;
    }
    out.df = static_cast<int>(observed.size()) - 1;
    out.p_value = chi_square_sf(out.df, out.statistic);
    return out;
}

} // namespace dcube
