#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "finegrain/threshold.hpp"
#include "support/circuits.hpp"
#include "support/oracles.hpp"

using namespace fgr;

namespace {

BitVec bits(const char* s) { return *BitVec::from_string(s); }

ThrCircuit gate3(std::size_t a, std::size_t b, std::size_t c, std::size_t vars = 3) {
    return {2, vars, {{2, {WireRef::input(a), WireRef::input(b), WireRef::input(c)}}}};
}

TruthTable or_table(std::size_t n) {
    return TruthTable::tabulate(n, [](const BitVec& x) { return x.count() > 0; });
}

// Direct Q_t check: every t-tuple of zeros (with repetition) has a coordinate
// that is 0 in all of them.
bool qt_direct(const TruthTable& f, std::size_t t) {
    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < f.rows(); ++i)
        if (!f.at(i)) zeros.push_back(i);
    const std::size_t full = f.rows() - 1;
    std::vector<std::size_t> pick(t, 0);
    if (zeros.empty()) return true;
    while (true) {
        std::size_t acc = 0;
        for (auto p : pick) acc |= zeros[p];
        if (acc == full) return false;
        std::size_t i = t;
        while (i > 0 && pick[i - 1] + 1 == zeros.size()) --i;
        if (i == 0) return true;
        ++pick[i - 1];
        for (std::size_t j = i; j < t; ++j) pick[j] = pick[i - 1];
    }
}

} // namespace

TEST(ThrEval, Examples) {
    EXPECT_TRUE(eval_thr_circuit(gate3(1, 1, 1, 1), bits("1")));
    EXPECT_FALSE(eval_thr_circuit(gate3(1, 2, 3), bits("100")));
    EXPECT_TRUE(eval_thr_circuit(gate3(1, 2, 3), bits("101")));
    EXPECT_THROW(eval_thr_circuit(gate3(1, 2, 3), bits("10")), ShapeError);
}

TEST(ThrEval, NestedVariableWitnessReproducesVariable) {
    // THR_2^3(g1, x2, g1) with g1 = THR_2^3(x2, x2, x2) is x2.
    ThrCircuit c = variable_witness(3, 2, 2);
    c.gates.push_back({2, {WireRef::gate(0), WireRef::input(2), WireRef::gate(0)}});
    ASSERT_FALSE(structural_error(c));
    for (std::uint64_t i = 0; i < 8; ++i) {
        const auto x = BitVec::from_uint(i, 3);
        EXPECT_EQ(eval_thr_circuit(c, x), x.get(1));
    }
}

TEST(ThrEval, SingleGateIsPopcountThreshold) {
    for (std::size_t b = 1; b <= 15; ++b)
        for (std::size_t a = 0; a <= b + 1; ++a) {
            ThrCircuit c{1, b, {{a, {}}}};
            for (std::size_t j = 1; j <= b; ++j) c.gates[0].inputs.push_back(WireRef::input(j));
            for (std::uint64_t i = 0; i < (std::uint64_t{1} << b); ++i)
                ASSERT_EQ(eval_thr_circuit(c, BitVec::from_uint(i, b)),
                          static_cast<std::size_t>(__builtin_popcountll(i)) >= a);
        }
}

TEST(Structure, Violations) {
    EXPECT_FALSE(structural_error(gate3(1, 2, 3)));
    ThrCircuit four = {2, 4, {{2, {WireRef::input(1), WireRef::input(2), WireRef::input(3), WireRef::input(4)}}}};
    EXPECT_TRUE(structural_error(four));
    ThrCircuit constant = {2, 2, {{2, {WireRef::input(1), WireRef::constant(true), WireRef::input(2)}}}};
    EXPECT_TRUE(structural_error(constant));
    ThrCircuit low = {2, 1, {{1, {WireRef::input(1)}}}};
    EXPECT_TRUE(structural_error(low));
    EXPECT_TRUE(structural_error(ThrCircuit{2, 1, {}}));
}

TEST(Qt, Examples) {
    for (std::size_t t = 1; t <= 4; ++t) EXPECT_TRUE(qt_membership(or_table(3), t));
    TruthTable two(2, true);
    two.bits[0b01] = two.bits[0b10] = 0;
    EXPECT_FALSE(qt_membership(two, 2));
    EXPECT_TRUE(qt_membership(two, 1));
    EXPECT_TRUE(qt_membership(TruthTable(3, true), 2));
    EXPECT_FALSE(qt_membership(TruthTable(3, false), 1));
}

TEST(Qt, AgreesWithDirectEnumeration) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 5;
        TruthTable f(n);
        const auto density = rng() % 4;
        for (auto& b : f.bits) b = rng() % 4 <= density;
        for (std::size_t t = 1; t <= 3; ++t) ASSERT_EQ(qt_membership(f, t), qt_direct(f, t)) << "n=" << n << " t=" << t;
    }
}

TEST(QtWitness, Examples) {
    EXPECT_EQ(verify_qt_witness(or_table(3), gate3(1, 1, 1), 2), WitnessVerdict::Accept);
    EXPECT_EQ(verify_qt_witness(TruthTable(3, false), gate3(1, 1, 1), 2), WitnessVerdict::SemanticReject);
    ThrCircuit four = {2, 3, {{2, {WireRef::input(1), WireRef::input(2), WireRef::input(3), WireRef::input(1)}}}};
    EXPECT_EQ(verify_qt_witness(or_table(3), four, 2), WitnessVerdict::StructuralReject);
    EXPECT_THROW(verify_qt_witness(or_table(3), gate3(1, 1, 1), 3), PreconditionError);
}

TEST(QtWitness, AcceptanceImpliesMembership) {
    std::mt19937_64 rng(41);
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t t = 1; t <= 3; ++t) {
            const auto singles = circuits::single_gate_thr(n, t);
            for (int i = 0; i < 40; ++i) {
                TruthTable f(n);
                for (auto& b : f.bits) b = rng() % 3 != 0;
                for (const auto& c : singles) {
                    if (verify_qt_witness(f, c, t) == WitnessVerdict::Accept) {
                        ASSERT_TRUE(qt_membership(f, t));
                    }
                }
            }
        }
}

TEST(TovCertificate, CommonCoordinateWitness) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 100; ++i) {
        const std::size_t t = 2 + rng() % 3, dim = 3 + rng() % 4, common = 1 + rng() % dim;
        OvInstance inst;
        for (std::size_t p = 0; p < t; ++p) {
            VectorFamily fam{dim, {}};
            for (std::size_t s = 1 + rng() % 3; s > 0; --s) {
                auto v = BitVec::from_uint(rng(), dim);
                v.set(common - 1);
                fam.vectors.push_back(v);
            }
            inst.parts.push_back(fam);
        }
        EXPECT_TRUE(verify_tov_certificate(inst, variable_witness(dim, t, common)));
        EXPECT_FALSE(brute_ov(inst).found);
    }
}

TEST(TovCertificate, RejectsEverySmallCircuitOnOrthogonalInstances) {
    OvInstance inst{{VectorFamily{3, {bits("110"), bits("101")}}, VectorFamily{3, {bits("001")}}}};
    ASSERT_TRUE(brute_ov(inst).found);
    for (const auto& c : circuits::single_gate_thr(3, 2)) EXPECT_FALSE(verify_tov_certificate(inst, c));
    std::mt19937_64 rng(47);
    for (int i = 0; i < 200; ++i) EXPECT_FALSE(verify_tov_certificate(inst, circuits::random_thr(3, 2, 1 + rng() % 4, rng)));
}

TEST(TovCertificate, EmptyPartsAndErrors) {
    OvInstance empty{{VectorFamily{3, {}}, VectorFamily{3, {}}}};
    EXPECT_TRUE(verify_tov_certificate(empty, gate3(1, 2, 3)));
    EXPECT_THROW(verify_tov_certificate(empty, variable_witness(3, 3, 1)), PreconditionError);
    ThrCircuit bad = {2, 3, {{3, {WireRef::input(1), WireRef::input(2), WireRef::input(3)}}}};
    EXPECT_THROW(verify_tov_certificate(empty, bad), StructuralError);
}

TEST(ThrFormat, RoundTripAndErrors) {
    const auto c = parse_thr_circuit("t 2\nvars 3\ng1 = THR 2 3 x1 x1 x2\ng2 = THR 3 5 g1 x3 x3 x1 g1\n");
    EXPECT_EQ(c.t, 2u);
    EXPECT_FALSE(structural_error(c));
    std::stringstream s;
    write_thr_circuit(s, c);
    EXPECT_EQ(read_thr_circuit(s), c);
    EXPECT_THROW(parse_thr_circuit("g1 = THR 2 3 x1 x1 x1\n"), ParseError);
    EXPECT_THROW(parse_thr_circuit("t 2\ng1 = AND 2 3 x1 x1 x1\n"), StructuralError);
    EXPECT_THROW(parse_thr_circuit("t 2\ng1 = THR 2 3 x1 x1\n"), ParseError);
    EXPECT_THROW(parse_thr_circuit("t 2\ng1 = THR 2 3 x1 x1 1\n"), ParseError);
}
