#include <dcube/generators.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <random>

using namespace dcube;
using boost::multiprecision::cpp_int;

namespace {

// Arbitrary-precision reference recurrence.
std::vector<std::uint64_t> bigint_sequence(std::uint64_t a, std::uint64_t m, std::uint64_t seed, int n) {
    std::vector<std::uint64_t> out;
    cpp_int r = seed;
    for (int i = 0; i < n; ++i) {
        r = (cpp_int(a) * r) % cpp_int(m);
        out.push_back(static_cast<std::uint64_t>(r));
    }
    return out;
}

} // namespace

TEST(LcgSpec, PublishedParameters) {
    EXPECT_EQ(lcg_spec(LcgId::A), (LcgSpec{134459, 4194304, 28551}));
    EXPECT_EQ(lcg_spec(LcgId::B), (LcgSpec{65539, 2147483648ULL, 153249823}));
    EXPECT_EQ(lcg_spec(LcgId::C), (LcgSpec{243, 100000000, 50249347}));
}

TEST(LcgSpec, RejectsInvalidState) {
    EXPECT_THROW((LcgSpec{3, 10, 10}), DomainError);
    EXPECT_THROW((LcgSpec{0, 10, 1}), DomainError);
    EXPECT_THROW(parse_lcg_id("d"), DomainError);
}

TEST(NextRaw, FirstStepsFrozen) {
    EXPECT_EQ(next_raw(lcg_spec(LcgId::A)).first, 1150749u);
    EXPECT_EQ(take_raw(lcg_spec(LcgId::A), 3).first, (std::vector<std::uint64_t>{1150749, 685231, 3393365}));
    EXPECT_EQ(next_raw(lcg_spec(LcgId::B)).first, 59127901u);
    EXPECT_EQ(next_raw(lcg_spec(LcgId::C)).first, 10591321u);
}

TEST(NextRaw, MatchesBigIntegerOracle) {
    for (auto id : {LcgId::A, LcgId::B, LcgId::C}) {
        const auto spec = lcg_spec(id);
        EXPECT_EQ(take_raw(spec, 10000).first,
                  bigint_sequence(spec.multiplier, spec.modulus, spec.state, 10000));
    }
}

TEST(NextRaw, ExactForLargeProducts) {
    // multiplier * state exceeds 2^64 here.
    const LcgSpec spec{(1ULL << 62) + 7, (1ULL << 63) - 25, (1ULL << 62) + 3};
    EXPECT_EQ(take_raw(spec, 50).first, bigint_sequence(spec.multiplier, spec.modulus, spec.state, 50));
}

TEST(NextRaw, ZeroIsAbsorbing) {
    LcgSpec s{243, 100000000, 0};
    for (int i = 0; i < 5; ++i) {
        auto [r, next] = next_raw(s);
        EXPECT_EQ(r, 0u);
        s = next;
    }
}

TEST(NextUniform, Boundaries) {
    EXPECT_EQ(next_uniform(LcgSpec{5, 1u << 22, 0}).first, 0.0);
    const LcgSpec top{1, 1u << 22, (1u << 22) - 1};
    const double u = next_uniform(top).first;
    EXPECT_EQ(u, static_cast<double>((1u << 22) - 1) / (1u << 22));
    EXPECT_LT(u, 1.0);
    EXPECT_DOUBLE_EQ(next_uniform(lcg_spec(LcgId::A)).first, 1150749.0 / 4194304.0);
}

TEST(Take, ZeroLeavesStateUnchanged) {
    const auto spec = lcg_spec(LcgId::B);
    auto [v, next] = take(spec, 0);
    EXPECT_TRUE(v.empty());
    EXPECT_EQ(next, spec);
}

TEST(Take, ConsecutiveBlocksAreDisjointSlices) {
    const auto spec = lcg_spec(LcgId::A);
    auto [first, s1] = take(spec, 993);
    auto [second, s2] = take(s1, 993);
    auto [both, s12] = take(spec, 1986);
    EXPECT_EQ(s2, s12);
    EXPECT_TRUE(std::equal(first.begin(), first.end(), both.begin()));
    EXPECT_TRUE(std::equal(second.begin(), second.end(), both.begin() + 993));
}

TEST(Take, CompositionProperty) {
    std::mt19937 pick(2024);
    std::uniform_int_distribution<std::size_t> len(0, 1000);
    for (int trial = 0; trial < 60; ++trial) {
        const auto spec = lcg_spec(static_cast<LcgId>(trial % 3));
        const std::size_t a = len(pick), b = len(pick);
        auto [xa, sa] = take(spec, a);
        auto [xb, sb] = take(sa, b);
        auto [xab, sab] = take(spec, a + b);
        xa.insert(xa.end(), xb.begin(), xb.end());
        ASSERT_EQ(xa, xab) << "a = " << a << " b = " << b;
        ASSERT_EQ(sb, sab);
    }
}

TEST(Take, DeterministicAndInRange) {
    for (auto id : {LcgId::A, LcgId::B, LcgId::C}) {
        const auto x = take(lcg_spec(id), 20000).first;
        EXPECT_EQ(x, take(lcg_spec(id), 20000).first);
        for (double u : x) {
            ASSERT_GE(u, 0.0);
            ASSERT_LT(u, 1.0);
        }
    }
}

TEST(Period, GeneratorADoesNotRevisitSeedEarly) {
    LcgSpec s = lcg_spec(LcgId::A);
    for (int i = 0; i < 100000; ++i) {
        s = next_raw(s).second;
        ASSERT_NE(s.state, 28551u) << "returned to seed after " << i + 1 << " steps";
    }
}

TEST(Auxiliary, SeededAndInRange) {
    AuxiliaryGenerator a(7), b(7), c(8);
    const auto xa = a.take(1000);
    EXPECT_EQ(xa, b.take(1000));
    EXPECT_NE(xa, c.take(1000));
    for (double u : xa) {
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}
