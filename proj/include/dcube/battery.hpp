#pragma once

// Named test identifiers and a uniform dispatcher over the whole battery.

#include <dcube/classic_tests.hpp>
#include <dcube/dsq_tests.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcube {

enum class TestId {
    D3,
    Frequency,
    Run,
    Combination,
    Gap,
    SerialCorrelation,
    Matusita,
    D2_12_34,
    D2_12_43,
    D2_13_24,
};

inline std::string_view test_name(TestId id) {
    switch (id) {
    case TestId::D3: return "d3";
    case TestId::Frequency: return "frequency";
    case TestId::Run: return "run";
    case TestId::Combination: return "combination";
    case TestId::Gap: return "gap";
    case TestId::SerialCorrelation: return "serial";
    case TestId::Matusita: return "matusita";
    case TestId::D2_12_34: return "d2-1234";
    case TestId::D2_12_43: return "d2-1243";
    case TestId::D2_13_24: return "d2-1324";
    }
    return "?";
}

/// Q_3^2 followed by the seven comparison statistics.
inline std::vector<TestId> full_battery() {
    return {TestId::D3,  TestId::Frequency,         TestId::Run,      TestId::Combination,
            TestId::Gap, TestId::SerialCorrelation, TestId::Matusita, TestId::D2_12_34};
}

/// The three D_2^2 variants followed by Q_3^2.
inline std::vector<TestId> d2_battery() {
    return {TestId::D2_12_34, TestId::D2_12_43, TestId::D2_13_24, TestId::D3};
}

/// Accepts "all", "d2" or a comma-separated list of test names.
inline std::vector<TestId> parse_battery(std::string_view spec) {
    if (spec == "all") return full_battery();
    if (spec == "d2" || spec == "table4") return d2_battery();
    const std::vector<TestId> known = {
        TestId::D3,        TestId::Frequency, TestId::Run,      TestId::Combination, TestId::Gap,
        TestId::SerialCorrelation, TestId::Matusita, TestId::D2_12_34, TestId::D2_12_43, TestId::D2_13_24};
    std::vector<TestId> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto comma = spec.find(',', pos);
        const auto token = spec.substr(pos, comma == std::string_view::npos ? spec.size() - pos : comma - pos);
        bool found = false;
        for (auto id : known)
            if (test_name(id) == token) {
                out.push_back(id);
                found = true;
            }
        if (!found) throw DomainError("unknown test '" + std::string(token) + "'");
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct BatteryOptions {
    ClassicTestConfig classic;
    PairingScheme pairing = base_pairing();
    bool solved_d3_bins = false;
};

struct BatteryResult {
    TestOutcome outcome;
    std::optional<ChiSquareReport> bins; // present for the squared-distance tests
};

inline BatteryResult run_battery_test(TestId id, std::span<const double> stream,
                                      const BatteryOptions& opt = {}) {
    auto wrap = [&](ChiSquareReport r) {
        TestOutcome o{std::string(test_name(id)), r.statistic, r.df, r.p_value, r.n_samples};
        return BatteryResult{std::move(o), std::move(r)};
    };
    auto plain = [&](TestOutcome o) {
        o.name = std::string(test_name(id));
        return BatteryResult{std::move(o), std::nullopt};
    };
    switch (id) {
    case TestId::D3:
        return wrap(d3_test(stream, opt.pairing,
                            opt.solved_d3_bins ? solved_d3_partition() : table2_partition()));
    case TestId::Frequency: return plain(frequency_test(stream, opt.classic));
    case TestId::Run: return plain(run_test(stream, opt.classic));
    case TestId::Combination: return plain(combination_test(stream, opt.classic));
    case TestId::Gap: return plain(gap_test(stream, opt.classic));
    case TestId::SerialCorrelation: return plain(serial_correlation_test(stream));
    case TestId::Matusita: return plain(matusita_test(stream, opt.classic));
    case TestId::D2_12_34: return wrap(d2_test(stream, D2Variant::V12_34));
    case TestId::D2_12_43: return wrap(d2_test(stream, D2Variant::V12_43));
    case TestId::D2_13_24: return wrap(d2_test(stream, D2Variant::V13_24));
    }
    throw DomainError("unknown test id");
}

} // namespace dcube
