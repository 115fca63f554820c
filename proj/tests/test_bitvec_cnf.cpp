#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "finegrain/bitvec.hpp"
#include "finegrain/cnf.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace fgr;

namespace {

BitVec bits(const char* s) { return *BitVec::from_string(s); }

} // namespace

TEST(BitVec, StringRoundTripAndCounting) {
    const auto v = bits("1011001");
    EXPECT_EQ(v.size(), 7u);
    EXPECT_EQ(v.count(), 4u);
    EXPECT_EQ(v.to_string(), "1011001");
    EXPECT_EQ(v.complement().to_string(), "0100110");
    EXPECT_FALSE(BitVec::from_string("10a").has_value());
}

TEST(BitVec, WideVectorsCrossWordBoundaries) {
    BitVec v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    EXPECT_EQ(v.count(), 3u);
    EXPECT_EQ(v.complement().count(), 127u);
    EXPECT_TRUE(v.complement().complement() == v);
    EXPECT_EQ(v.slice(63, 3).to_string(), "010");
}

TEST(BitVec, FromUintIsMostSignificantBitFirst) {
    EXPECT_EQ(BitVec::from_uint(6, 4).to_string(), "0110");
    EXPECT_EQ(BitVec::from_uint(0, 0).size(), 0u);
}

TEST(BitVec, DominationAndIntersection) {
    EXPECT_TRUE(bits("110").dominates(bits("100")));
    EXPECT_FALSE(bits("100").dominates(bits("110")));
    EXPECT_TRUE(bits("000").dominates(bits("000")));
    EXPECT_TRUE(bits("101").intersects(bits("001")));
    EXPECT_FALSE(bits("101").intersects(bits("010")));
    EXPECT_THROW((void)bits("10").dominates(bits("100")), ShapeError);
}

TEST(Dimacs, ParsesTwoClauseFormula) {
    const auto f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 -2 0\n");
    EXPECT_EQ(f.num_vars(), 2);
    EXPECT_EQ(f.clauses(), (std::vector<Clause>{{1, 2}, {-1, -2}}));
}

TEST(Dimacs, EmptyFormulaAndComments) {
    const auto f = parse_dimacs("c hello\np cnf 1 0\n");
    EXPECT_EQ(f.num_vars(), 1);
    EXPECT_EQ(f.num_clauses(), 0u);
}

TEST(Dimacs, ClausesMaySpanLines) {
    const auto f = parse_dimacs("p cnf 3 1\n1 -2\n3 0\n");
    EXPECT_EQ(f.clause(0), (Clause{1, -2, 3}));
}

TEST(Dimacs, Errors) {
    try {
        parse_dimacs("p cnf 2 1\n3 0\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
        EXPECT_NE(std::string(e.what()).find("literal out of range"), std::string::npos);
    }
    EXPECT_THROW(parse_dimacs("p cnf x 1\n"), ParseError);
    EXPECT_THROW(parse_dimacs("1 2 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n0\n"), ParseError);
    EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 -1 0\n"), ParseError);
}

TEST(Dimacs, WriteReadRoundTrip) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto f = corpus::random_formula(1, 9, rng);
        std::ostringstream out;
        write_dimacs(out, f);
        EXPECT_EQ(parse_dimacs(out.str()), f);
    }
}

TEST(Formula, RejectsInvalidClauses) {
    EXPECT_THROW(Formula(2, {{}}), PreconditionError);
    EXPECT_THROW(Formula(2, {{3}}), PreconditionError);
    EXPECT_THROW(Formula(-1, {}), PreconditionError);
}

TEST(EvalClauses, PartialAssignment) {
    const Formula f(2, {{1, 2}, {-1, -2}});
    const auto s = eval_clauses(f, Assignment({1}, bits("0")));
    EXPECT_EQ(s.bits.to_string(), "01");
    EXPECT_EQ(s.flipped().bits.to_string(), "10");
    EXPECT_EQ(s.flipped().convention, Convention::Unsatisfied);
}

TEST(EvalClauses, ContradictionUnderTrue) {
    const Formula f(1, {{1}, {-1}});
    EXPECT_EQ(eval_clauses(f, Assignment::full(bits("1"))).bits.to_string(), "10");
    EXPECT_THROW(eval_clauses(f, Assignment({2}, bits("1"))), PreconditionError);
}

TEST(BruteSat, Examples) {
    const auto a = brute_sat(Formula(2, {{1, 2}, {-1, -2}}));
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->bits().to_string(), "01");
    EXPECT_FALSE(brute_sat(Formula(1, {{1}, {-1}})).has_value());
    const auto e = brute_sat(Formula(3, {}));
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->bits().to_string(), "000");
}

TEST(BruteSat, SizeBound) {
    Limits small;
    small.max_vars = 4;
    EXPECT_THROW(brute_sat(Formula(5, {}), small), SizeError);
}

TEST(BruteSat, AgreesWithOracleAndWitnessSatisfies) {
    for (const auto& f : corpus::exhaustive(3, 2)) {
        const auto a = brute_sat(f);
        ASSERT_EQ(a.has_value(), oracle::satisfiable(f));
        if (a) {
            EXPECT_TRUE(eval_clauses(f, *a).bits.all());
        }
    }
}

TEST(Max3Sat, Examples) {
    EXPECT_TRUE(brute_max3sat_exact(Formula(3, {{1, 2, 3}}), 1));
    EXPECT_FALSE(brute_max3sat_exact(Formula(1, {{1}, {-1}}), 2));
    EXPECT_FALSE(brute_max3sat_exact(Formula(1, {{1}}), 2));
    EXPECT_THROW(brute_max3sat_exact(Formula(4, {{1, 2, 3, 4}}), 1), PreconditionError);
}

TEST(Max3Sat, AgreesWithOracle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto f = corpus::random_formula(1, 7, rng);
        for (std::size_t t = 0; t <= f.num_clauses() + 1; ++t)
            ASSERT_EQ(brute_max3sat_exact(f, t), oracle::exactly_satisfiable(f, t));
    }
}

TEST(Padding, AddsUnusedVariables) {
    const Formula f(3, {{1, -3}});
    const auto g = pad_variables(f, 4);
    EXPECT_EQ(g.num_vars(), 4);
    EXPECT_EQ(g.clauses(), f.clauses());
    EXPECT_EQ(pad_variables(f, 3), f);
}

namespace {

// Restricts F by x1 = value and drops satisfied clauses; variables keep their numbers.
Formula restrict_x1(const Formula& f, bool value) {
    std::vector<Clause> out;
    for (const auto& c : f.clauses()) {
        bool satisfied = false;
        Clause rest;
        for (int lit : c) {
            if (std::abs(lit) == 1)
                satisfied = satisfied || ((lit > 0) == value);
            else
                rest.push_back(lit);
        }
        if (satisfied) continue;
        if (rest.empty()) return Formula(f.num_vars(), {{1}, {-1}}); // falsified clause
        out.push_back(rest);
    }
    return Formula(f.num_vars(), out);
}

std::vector<Formula> split_on_x1(const Formula& f, double) { return {restrict_x1(f, false), restrict_x1(f, true)}; }

} // namespace

TEST(Sparsify, PassThrough) {
    const Formula f(2, {{1, 2}, {-1}});
    const auto r = sparsify(f, 0.1, 1.0);
    ASSERT_EQ(r.formulas.size(), 1u);
    EXPECT_EQ(r.formulas[0], f);
    EXPECT_TRUE(r.sparse);
    EXPECT_FALSE(sparsify(Formula(2, {{1}, {2}, {-1, -2}}), 0.1, 1.0).sparse);
    EXPECT_THROW(sparsify(f, 0.0, 1.0), PreconditionError);
}

TEST(Sparsify, SplittingStrategyIsEquisatisfiable) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto f = corpus::random_formula(1, 8, rng);
        const auto r = sparsify(f, 0.5, 10.0, split_on_x1);
        ASSERT_EQ(r.formulas.size(), 2u);
        const bool any = oracle::satisfiable(r.formulas[0]) || oracle::satisfiable(r.formulas[1]);
        EXPECT_EQ(any, brute_sat(f).has_value());
    }
}
