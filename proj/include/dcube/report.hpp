#pragma once

// JSON report envelopes written by the command-line tool.

#include <dcube/battery.hpp>
#include <dcube/correlation_study.hpp>
#include <dcube/version.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace dcube {

struct ReportEnvelope {
    std::string input;
    double level = 0.01;
    std::vector<BatteryResult> results;

    /// Reject iff any p-value is below the significance level.
    bool reject() const {
        for (const auto& r : results)
            if (r.outcome.p_value < level) return true;
        return false;
    }
};

inline nlohmann::json to_json(const BatteryResult& r) {
    nlohmann::json j;
    j["name"] = r.outcome.name;
    j["statistic"] = r.outcome.statistic;
    j["df"] = r.outcome.df ? nlohmann::json(*r.outcome.df) : nlohmann::json(nullptr);
    j["p_value"] = r.outcome.p_value;
    j["n_used"] = r.outcome.n_used;
    if (r.bins) {
        j["n_samples"] = r.bins->n_samples;
        j["bin_counts"] = r.bins->bin_counts;
        j["expected_counts"] = r.bins->expected_counts;
        j["low_expected_warning"] = r.bins->low_expected_warning;
    }
    return j;
}

inline nlohmann::json to_json(const ReportEnvelope& env) {
    nlohmann::json j;
    j["tool"] = "dcube";
    j["version"] = kVersion;
    j["input"] = env.input;
    j["level"] = env.level;
    j["verdict"] = env.reject() ? "reject" : "accept";
    j["tests"] = nlohmann::json::array();
    for (const auto& r : env.results) j["tests"].push_back(to_json(r));
    return j;
}

inline nlohmann::json to_json(const CorrelationMatrix& cm, const std::string& generator,
                              const TrialMatrix& tm) {
    nlohmann::json j;
    j["tool"] = "dcube";
    j["version"] = kVersion;
    j["generator"] = generator;
    j["trials"] = tm.trials;
    j["numbers_per_trial"] = tm.numbers_per_trial;
    j["names"] = cm.names;
    j["matrix"] = cm.r;
    return j;
}

} // namespace dcube
