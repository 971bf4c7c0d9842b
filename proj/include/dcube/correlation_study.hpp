#pragma once

// Monte Carlo study: evaluate a battery on consecutive blocks of one stream
// and correlate the resulting statistics across trials.

#include <dcube/battery.hpp>
#include <dcube/generators.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace dcube {

struct TrialMatrix {
    std::vector<std::string> statistic_names;
    std::vector<std::vector<double>> values; // [trial][statistic]
    std::size_t trials = 0;
    std::size_t numbers_per_trial = 0;

    std::vector<double> column(std::size_t j) const {
        std::vector<double> c;
        c.reserve(values.size());
        for (const auto& row : values) c.push_back(row.at(j));
        return c;
    }
};

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> r;
};

/// Error from one trial of a study, carrying the failing trial index.
class TrialError : public DomainError {
public:
    TrialError(std::size_t trial, const std::string& what)
        : DomainError("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}
    std::size_t trial() const noexcept { return trial_; }

private:
    std::size_t trial_;
};

/// Block source: returns the next numbers_per_trial uniforms of a stream.
using BlockSource = std::function<std::vector<double>(std::size_t)>;

inline TrialMatrix run_trials(const BlockSource& next_block, std::size_t trials,
                              std::size_t numbers_per_trial, const std::vector<TestId>& battery,
                              const BatteryOptions& opt = {}) {
    if (trials < 2) throw DomainError("run_trials: need at least 2 trials");
    if (battery.empty()) throw DomainError("run_trials: battery is empty");
    TrialMatrix tm;
    tm.trials = trials;
    tm.numbers_per_trial = numbers_per_trial;
    for (auto id : battery) tm.statistic_names.emplace_back(test_name(id));
    tm.values.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto block = next_block(numbers_per_trial);
        std::vector<double> row;
        row.reserve(battery.size());
        for (auto id : battery) {
            double stat = 0.0;
            try {
                stat = run_battery_test(id, block, opt).outcome.statistic;
            } catch (const std::exception& e) {
                throw TrialError(t, e.what());
            }
            if (!std::isfinite(stat))
                throw TrialError(t, std::string(test_name(id)) + " produced a non-finite statistic");
            row.push_back(stat);
        }
        tm.values.push_back(std::move(row));
    }
    return tm;
}

/// Every battery member sees the same consecutive block of the generator's
/// stream; trial t uses numbers [t * n, (t + 1) * n).
inline TrialMatrix run_trials(const LcgSpec& gen, std::size_t trials, std::size_t numbers_per_trial,
                              const std::vector<TestId>& battery, const BatteryOptions& opt = {}) {
    LcgSpec state = gen;
    BlockSource source = [&state](std::size_t n) {
        auto [block, next] = take(state, n);
        state = next;
        return block;
    };
    return run_trials(source, trials, numbers_per_trial, battery, opt);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("pearson: need two equal-length series of length >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw DomainError("pearson: zero-variance series");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline CorrelationMatrix correlation_table(const TrialMatrix& tm) {
    const std::size_t m = tm.statistic_names.size();
    CorrelationMatrix cm{tm.statistic_names, std::vector<std::vector<double>>(m, std::vector<double>(m, 1.0))};
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < m; ++j) cols.push_back(tm.column(j));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const double r = pearson(cols[i], cols[j]);
            cm.r[i][j] = r;
            cm.r[j][i] = r;
        }
    return cm;
}

/// Upper-triangular text layout: one row per statistic, "\" on the diagonal.
inline std::string format_correlation_matrix(const CorrelationMatrix& cm) {
    std::size_t width = 8;
    for (const auto& n : cm.names) width = std::max(width, n.size() + 1);
    std::ostringstream out;
    auto pad = [&](const std::string& s) { out << s << std::string(width + 1 - std::min(width, s.size()), ' '); };
    pad("");
    for (const auto& n : cm.names) pad(n);
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < cm.names.size(); ++i) {
        pad(cm.names[i]);
        for (std::size_t j = 0; j < cm.names.size(); ++j) {
            if (j < i) pad("");
            else if (j == i) pad("\\");
            else {
                std::snprintf(buf, sizeof buf, "%.4f", cm.r[i][j]);
                pad(buf);
            }
        }
        out << '\n';
    }
    return out.str();
}

} // namespace dcube
