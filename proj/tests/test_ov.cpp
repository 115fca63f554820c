#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "finegrain/ov.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace fgr;

namespace {

VectorFamily family(std::size_t dim, std::initializer_list<const char*> vs) {
    VectorFamily f{dim, {}};
    for (const char* s : vs) f.vectors.push_back(*BitVec::from_string(s));
    return f;
}

std::vector<std::string> strings(const VectorFamily& f) {
    std::vector<std::string> out;
    for (const auto& v : f.vectors) out.push_back(v.to_string());
    return out;
}

} // namespace

TEST(SatToOv, SatisfiableExample) {
    const auto inst = sat_to_ov(Formula(2, {{1, 2}, {-1, -2}}));
    ASSERT_EQ(inst.t_parts(), 2u);
    EXPECT_EQ(strings(inst.parts[0]), (std::vector<std::string>{"10", "01"}));
    EXPECT_EQ(strings(inst.parts[1]), (std::vector<std::string>{"10", "01"}));
    EXPECT_TRUE(brute_ov(inst).found);
}

TEST(SatToOv, ContradictionExample) {
    const auto inst = sat_to_ov(pad_variables(Formula(1, {{1}, {-1}}), 2));
    EXPECT_EQ(strings(inst.parts[0]), (std::vector<std::string>{"10", "01"}));
    EXPECT_EQ(strings(inst.parts[1]), (std::vector<std::string>{"11", "11"}));
    EXPECT_FALSE(brute_ov(inst).found);
}

TEST(SatToOv, EmptyFormulaHasDimensionZero) {
    const auto inst = sat_to_ov(Formula(2, {}));
    EXPECT_EQ(inst.dim(), 0u);
    EXPECT_TRUE(brute_ov(inst).found);
}

TEST(SatToOv, Preconditions) {
    EXPECT_THROW(sat_to_ov(Formula(3, {})), PreconditionError);
    EXPECT_THROW(sat_to_tov(Formula(4, {}), 1), PreconditionError);
    EXPECT_THROW(sat_to_tov(Formula(4, {}), 3), PreconditionError);
}

TEST(SatToTov, TwoPartsMatchesOv) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto f = pad_variables(corpus::random_formula(1, 8, rng), 2);
        EXPECT_EQ(sat_to_tov(f, 2), sat_to_ov(f));
    }
}

TEST(SatToTov, RowsFollowPartAssignments) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i) {
        const auto f = pad_variables(corpus::random_formula(2, 9, rng), 3);
        const int n = f.num_vars();
        const auto inst = sat_to_tov(f, 3);
        for (int part = 0; part < 3; ++part)
            for (std::size_t row = 0; row < inst.parts[part].size(); ++row) {
                const auto a = part_assignment(n, 3, part, row);
                EXPECT_EQ(inst.parts[part].vectors[row], eval_clauses(f, a).flipped().bits);
            }
    }
}

TEST(BruteOv, Examples) {
    OvInstance a{{family(2, {"10"}), family(2, {"01"})}};
    const auto r = brute_ov(a);
    EXPECT_TRUE(r.found);
    EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 0}));
    EXPECT_FALSE(brute_ov(OvInstance{{family(2, {"11"}), family(2, {"10"})}}).found);
    EXPECT_TRUE(brute_ov(OvInstance{{family(2, {"10"}), family(2, {"10"}), family(2, {"01"})}}).found);
    EXPECT_FALSE(brute_ov(OvInstance{{family(2, {}), family(2, {"00"})}}).found);
}

TEST(BruteOv, WitnessIsOrthogonalAndAgreesWithOracle) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const std::size_t t = 2 + rng() % 3, dim = 1 + rng() % 6;
        OvInstance inst;
        for (std::size_t p = 0; p < t; ++p) {
            VectorFamily fam{dim, {}};
            for (std::size_t s = rng() % 4; s > 0; --s) fam.vectors.push_back(BitVec::from_uint(rng(), dim));
            inst.parts.push_back(fam);
        }
        const auto r = brute_ov(inst);
        ASSERT_EQ(r.found, oracle::has_orthogonal_tuple(inst));
        if (r.found) {
            BitVec prod(dim, true);
            for (std::size_t p = 0; p < t; ++p) prod &= inst.parts[p].vectors[r.witness[p]];
            EXPECT_TRUE(prod.none());
        }
    }
}

TEST(BruteOv, SizeBound) {
    Limits small;
    small.max_ov_tuples = 3;
    OvInstance inst{{family(1, {"1", "1"}), family(1, {"1", "1"})}};
    EXPECT_THROW(brute_ov(inst, small), SizeError);
}

TEST(OvFormat, RoundTrip) {
    const auto inst = sat_to_tov(Formula(4, {{1, -2}, {3, 4}, {-1}}), 2);
    std::stringstream s;
    write_ov(s, inst);
    EXPECT_EQ(read_ov(s), inst);
}

TEST(OvFormat, DimensionZeroRoundTrip) {
    const auto inst = sat_to_ov(Formula(2, {}));
    std::stringstream s;
    write_ov(s, inst);
    EXPECT_EQ(read_ov(s), inst);
}

TEST(OvFormat, Errors) {
    std::istringstream bad_header("ov 2\n");
    EXPECT_THROW(read_ov(bad_header), ParseError);
    std::istringstream short_list("ov 2 2 1 1\n10\n");
    EXPECT_THROW(read_ov(short_list), ParseError);
    std::istringstream wrong_len("ov 1 2 1\n101\n");
    EXPECT_THROW(read_ov(wrong_len), ParseError);
}
