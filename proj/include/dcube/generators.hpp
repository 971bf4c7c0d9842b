#pragma once

// Multiplicative congruential generators R_n = a * R_{n-1} mod m, plus the
// auxiliary Mersenne-Twister source used by oracles and null calibration.

#include <dcube/error.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcube {

enum class LcgId { A, B, C };

/// Generator parameters and current state. Advancing returns a new value;
/// the struct itself is never mutated by the free functions below.
struct LcgSpec {
    std::uint64_t multiplier = 0;
    std::uint64_t modulus = 0;
    std::uint64_t state = 0;

    LcgSpec() = default;
    LcgSpec(std::uint64_t multiplier_, std::uint64_t modulus_, std::uint64_t state_)
        : multiplier(multiplier_), modulus(modulus_), state(state_) {
        if (multiplier == 0 || modulus < 2)
            throw DomainError("lcg: multiplier must be positive and modulus >= 2");
        if (state >= modulus)
            throw DomainError("lcg: state must lie in [0, modulus)");
    }

    friend bool operator==(const LcgSpec&, const LcgSpec&) = default;
};

inline LcgSpec lcg_spec(LcgId which) {
    switch (which) {
    case LcgId::A: return {134459, std::uint64_t{1} << 22, 28551};
    case LcgId::B: return {65539, std::uint64_t{1} << 31, 153249823};
    case LcgId::C: return {243, 100000000, 50249347};
    }
    throw DomainError("lcg: unknown generator id");
}

inline LcgId parse_lcg_id(std::string_view name) {
    if (name == "a" || name == "A") return LcgId::A;
    if (name == "b" || name == "B") return LcgId::B;
    if (name == "c" || name == "C") return LcgId::C;
    throw DomainError("unknown generator '" + std::string(name) + "' (expected a, b or c)");
}

inline std::pair<std::uint64_t, LcgSpec> next_raw(const LcgSpec& spec) {
    // 128-bit product: exact for every 64-bit multiplier/state combination.
    const auto product = static_cast<unsigned __int128>(spec.multiplier) * spec.state;
    const auto raw = static_cast<std::uint64_t>(product % spec.modulus);
    LcgSpec next = spec;
    next.state = raw;
    return {raw, next};
}

inline std::pair<double, LcgSpec> next_uniform(const LcgSpec& spec) {
    auto [raw, next] = next_raw(spec);
    return {static_cast<double>(raw) / static_cast<double>(spec.modulus), next};
}

inline std::pair<std::vector<double>, LcgSpec> take(const LcgSpec& spec, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    LcgSpec cur = spec;
    for (std::size_t i = 0; i < n; ++i) {
        auto [u, next] = next_uniform(cur);
        out.push_back(u);
        cur = next;
    }
    return {std::move(out), cur};
}

inline std::pair<std::vector<std::uint64_t>, LcgSpec> take_raw(const LcgSpec& spec, std::size_t n) {
    std::vector<std::uint64_t> out;
    out.reserve(n);
    LcgSpec cur = spec;
    for (std::size_t i = 0; i < n; ++i) {
        auto [r, next] = next_raw(cur);
        out.push_back(r);
        cur = next;
    }
    return {std::move(out), cur};
}

inline constexpr std::uint64_t kDefaultAuxSeed = std::mt19937_64::default_seed;

/// 64-bit Mersenne Twister mapped to doubles in [0,1) with 53 random bits.
class AuxiliaryGenerator {
public:
    explicit AuxiliaryGenerator(std::uint64_t seed = kDefaultAuxSeed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::vector<double> take(std::size_t n) {
        std::vector<double> out(n);
        for (auto& x : out) x = uniform();
        return out;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace dcube
