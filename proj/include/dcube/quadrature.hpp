#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration with an absolute
// error target and a hard cap on the number of interval bisections.

#include <dcube/error.hpp>

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace dcube {

struct QuadratureConfig {
    double abs_tolerance = 1e-9;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(abs_tolerance > 0.0) || !std::isfinite(abs_tolerance))
            throw DomainError("quadrature: abs_tolerance must be positive and finite");
        if (max_subdivisions < 1)
            throw DomainError("quadrature: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// Kronrod nodes on [0,1] half of the symmetric rule; index 0 is the centre.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01,
};
inline constexpr std::array<double, 8> kKronrodWeights = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02,
};
// Gauss weights for the odd Kronrod nodes (centre, 2, 4, 6).
inline constexpr std::array<double, 4> kGaussWeights = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01,
};

struct Segment {
    double lo, hi, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gauss_kronrod_15(F& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(centre);
    double kronrod = fc * kKronrodWeights[0];
    double gauss = fc * kGaussWeights[0];
    for (std::size_t j = 1; j < kKronrodNodes.size(); ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 0) gauss += kGaussWeights[j / 2] * pair;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// Integrates f over [lo, hi]. Throws NumericalError when the summed error
/// estimate stays above cfg.abs_tolerance after cfg.max_subdivisions bisections.
template <typename F>
QuadratureResult integrate(F&& f, double lo, double hi, const QuadratureConfig& cfg = {}) {
    cfg.validate();
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("quadrature: integration bounds must be finite");
    if (lo == hi) return {};
    if (hi < lo) {
        auto r = integrate(f, hi, lo, cfg);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<detail::Segment> heap;
    auto first = detail::gauss_kronrod_15(f, lo, hi);
    double total = first.value;
    double error = first.error;
    heap.push(first);

    int subdivisions = 0;
    while (error > cfg.abs_tolerance) {
        if (subdivisions >= cfg.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature: error estimate " << error << " above tolerance "
                << cfg.abs_tolerance << " after " << subdivisions << " subdivisions";
            throw NumericalError(msg.str(), error);
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Interval collapsed to adjacent doubles; nothing left to refine.
            throw NumericalError("quadrature: interval underflow before convergence", error);
        }
        const auto left = detail::gauss_kronrod_15(f, worst.lo, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;

        // Running sums drift; resync from the heap every so often.
        if (subdivisions % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, error, subdivisions};
}

} // namespace dcube
