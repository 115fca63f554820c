#include <gtest/gtest.h>

#include <random>
#include <set>

#include "finegrain/encoding.hpp"
#include "support/corpus.hpp"

using namespace fgr;

namespace {

BitVec bits(const char* s) { return *BitVec::from_string(s); }

} // namespace

TEST(Balanced, HandExamples) {
    EXPECT_EQ(encode_balanced(bits(""), 1).to_string(), "0110");
    EXPECT_EQ(encode_balanced(bits("1"), 1).to_string(), "1010");
    EXPECT_EQ(encode_balanced(bits("11"), 2).to_string(), "11011000");
}

TEST(Balanced, DecodeExamples) {
    EXPECT_EQ(decode_balanced(bits("0110"))->size(), 0u);
    EXPECT_EQ(decode_balanced(bits("1010"))->to_string(), "1");
    EXPECT_FALSE(decode_balanced(bits("1111")).has_value());
    EXPECT_FALSE(decode_balanced(bits("1100")).has_value()); // |x| = 2 > cap
    EXPECT_FALSE(decode_balanced(bits("0101")).has_value()); // wrong padding shape
    EXPECT_FALSE(decode_balanced(bits("011")).has_value());
}

TEST(Balanced, ExhaustiveRoundTripWeightAndInjectivity) {
    for (std::size_t cap = 1; cap <= 5; ++cap) {
        std::set<std::string> seen;
        for (std::size_t len = 0; len <= cap; ++len)
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
                const auto x = BitVec::from_uint(v, len);
                const auto s = encode_balanced(x, cap);
                ASSERT_EQ(s.size(), 4 * cap);
                ASSERT_EQ(s.count(), 2 * cap);
                ASSERT_EQ(decode_balanced(s), x);
                ASSERT_TRUE(seen.insert(s.to_string()).second);
            }
        // Every balanced string outside the image decodes to nothing.
        std::size_t decodable = 0;
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << (4 * cap)); ++v) {
            const auto s = BitVec::from_uint(v, 4 * cap);
            if (auto x = decode_balanced(s)) {
                ++decodable;
                ASSERT_EQ(encode_balanced(*x, cap), s);
            }
        }
        EXPECT_EQ(decodable, seen.size());
    }
}

TEST(Balanced, CapacityErrors) {
    EXPECT_THROW(encode_balanced(bits("11"), 1), PreconditionError);
    EXPECT_THROW(encode_balanced(bits(""), 0), PreconditionError);
}

TEST(FormulaCode, ContradictionRoundTrip) {
    const FormulaClass cls{1, 1, 2.0};
    const Formula f(1, {{1}, {-1}});
    const auto s = encode_formula(f, cls);
    EXPECT_EQ(s.size(), cls.encoded_length());
    EXPECT_EQ(2 * s.count(), s.size());
    EXPECT_EQ(decode_formula(s, cls), f);
}

TEST(FormulaCode, ClassViolations) {
    const FormulaClass cls{2, 3, 1.0};
    EXPECT_THROW(encode_formula(Formula(2, {{1}, {2}, {-1}}), cls), PreconditionError);
    EXPECT_THROW(encode_formula(Formula(3, {{1}}), cls), PreconditionError);
    EXPECT_THROW(encode_formula(Formula(2, {{1, 2}}), FormulaClass{2, 1, 1.0}), PreconditionError);
}

TEST(FormulaCode, InjectiveOverSmallClass) {
    const FormulaClass cls{3, 3, 1.0};
    std::set<std::string> seen;
    std::size_t members = 0;
    for (const auto& f : corpus::exhaustive(3, 2)) {
        if (cls.membership_error(f)) continue;
        ++members;
        const auto s = encode_formula(f, cls);
        ASSERT_EQ(s.size(), cls.encoded_length());
        ASSERT_EQ(decode_formula(s, cls), f);
        seen.insert(s.to_string());
    }
    EXPECT_EQ(seen.size(), members);
}

TEST(FormulaCode, RandomRoundTrips) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const FormulaClass cls{n, 3, 1.5};
        const auto f = corpus::random_formula(n, rng() % (cls.max_clauses() + 1), rng);
        ASSERT_EQ(decode_formula(encode_formula(f, cls), cls), f);
    }
}

TEST(FormulaCode, RejectsNonImageStrings) {
    const FormulaClass cls{2, 2, 1.0};
    const auto l = cls.encoded_length();
    EXPECT_FALSE(decode_formula(BitVec(l), cls).has_value());
    EXPECT_FALSE(decode_formula(BitVec(l + 4), cls).has_value());
    // A balanced code whose payload is a terminator with a sign bit set.
    BitVec payload;
    for (std::size_t i = 0; i < cls.symbol_bits(); ++i) payload.push_back(i == 0);
    EXPECT_FALSE(decode_formula(encode_balanced(payload, cls.capacity()), cls).has_value());
}
