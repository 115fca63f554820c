#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "finegrain/certificate.hpp"
#include "support/corpus.hpp"
#include "support/provers.hpp"

using namespace fgr;

namespace {

const Formula kSingle(4, {{1, 2, 3}});

SliceProver flavor(Flavor f) {
    return [f](const FieldMatrix& m, const std::string&) { return prove_trivial(m, f); };
}

CliqueInstance random_instance(int n, std::mt19937_64& rng) {
    const auto f = corpus::random_formula(n, rng() % 12, rng);
    const auto ct = build_count_tensors(pad_variables(f, 4));
    TVec tvec{};
    for (std::size_t l = 0; l < 4; ++l) tvec[l] = rng() % (ct.label_counts[l] + 1);
    return clique_instance_from_counts(ct, tvec);
}

} // namespace

TEST(Provers, ProduceValidCertificates) {
    std::mt19937_64 rng(101);
    const Field f;
    for (int i = 0; i < 50; ++i) {
        FieldMatrix m(f, 1 + rng() % 5, 1 + rng() % 5);
        for (auto& v : m.data()) v = rng() % 3 == 0 ? rng() % f.prime() : 0;
        EXPECT_FALSE(certificate_error(m, prove_trivial(m, Flavor::Sparse)));
        EXPECT_FALSE(certificate_error(m, prove_trivial(m, Flavor::Rank)));
        EXPECT_FALSE(certificate_error(m, prove_split(m, std::min(m.rows(), m.cols()), rng)));
        Tensor3 t(f, 1 + rng() % 3, 1 + rng() % 3, 1 + rng() % 3);
        for (auto& v : t.data()) v = rng() % 2;
        EXPECT_FALSE(certificate_error(t, prove_fibers(t)));
        EXPECT_FALSE(certificate_error(t, prove_tensor_split(t, 2, rng)));
    }
}

TEST(Provers, Examples) {
    const Field f(7);
    const auto zero = FieldMatrix(f, 2, 3);
    EXPECT_EQ(prove_trivial(zero, Flavor::Sparse), RigidityCertificate{});
    EXPECT_EQ(prove_trivial(zero, Flavor::Rank), RigidityCertificate{});
    const auto id = FieldMatrix::identity(f, 2);
    const auto sparse = prove_trivial(id, Flavor::Sparse);
    EXPECT_TRUE(sparse.factors.empty());
    EXPECT_EQ(sparse.sparse, (std::vector<SparseEntry>{{0, 0, 1}, {1, 1, 1}}));
    EXPECT_EQ(prove_trivial(id, Flavor::Rank).rank(), 2u);

    std::mt19937_64 rng(1);
    EXPECT_EQ(prove_split(id, 0, rng), sparse);
    std::mt19937_64 a(5), b(5);
    EXPECT_EQ(prove_split(id, 2, a), prove_split(id, 2, b));
    EXPECT_THROW(prove_split(id, 3, rng), PreconditionError);
}

TEST(CertificateCheck, EveryPerturbationIsRejected) {
    const Field f(5);
    const auto m = FieldMatrix::from_rows(f, {{1, 2, 0}, {0, 3, 4}});
    std::mt19937_64 rng(3);
    const auto c = prove_split(m, 1, rng);
    ASSERT_FALSE(certificate_error(m, c));
    for (std::size_t fi = 0; fi < c.factors.size(); ++fi)
        for (std::size_t side = 0; side < 2; ++side)
            for (std::size_t i = 0; i < (side ? m.cols() : m.rows()); ++i)
                for (Field::Elem d = 1; d < f.prime(); ++d) {
                    auto bad = c;
                    auto& v = side ? bad.factors[fi].row : bad.factors[fi].col;
                    v[i] = f.add(v[i], d);
                    // A change on a coordinate multiplied only by zeros is invisible.
                    const auto& other = side ? c.factors[fi].col : c.factors[fi].row;
                    bool visible = false;
                    for (auto x : other) visible |= x != 0;
                    EXPECT_EQ(certificate_error(m, bad).has_value(), visible);
                }
    for (std::size_t e = 0; e < c.sparse.size(); ++e)
        for (Field::Elem d = 1; d < f.prime(); ++d) {
            auto bad = c;
            bad.sparse[e].value = f.add(bad.sparse[e].value, d);
            EXPECT_TRUE(certificate_error(m, bad));
        }
}

TEST(CertificateCheck, Rejections) {
    const auto m = FieldMatrix::from_rows(Field(7), {{1, 0}, {0, 1}});
    EXPECT_TRUE(certificate_error(m, RigidityCertificate{}));
    EXPECT_TRUE(certificate_error(m, RigidityCertificate{{}, {{0, 0, 1}, {0, 0, 0}, {1, 1, 1}}}));
    EXPECT_TRUE(certificate_error(m, RigidityCertificate{{}, {{0, 0, 1}, {2, 1, 1}}}));
    EXPECT_TRUE(certificate_error(m, RigidityCertificate{{{{1}, {1, 0}}}, {}}));
    EXPECT_FALSE(certificate_error(m, RigidityCertificate{{{{1, 0}, {1, 0}}}, {{1, 1, 1}}}));
}

TEST(ComputeR, SingleClauseTrivialCertificates) {
    const auto inst = build_clique_instance(kSingle, {0, 0, 0, 1});
    EXPECT_EQ(compute_R_rigidity(inst, prove_rigidity_certs(inst, flavor(Flavor::Sparse))), 14u);
    EXPECT_EQ(compute_R_rigidity(inst, prove_rigidity_certs(inst, flavor(Flavor::Rank))), 14u);
    const auto tc = prove_fibers(inst.A[0]);
    EXPECT_EQ(compute_R_tensor(inst, tc, prove_tensor_certs(inst, flavor(Flavor::Sparse))), 14u);
    EXPECT_EQ(compute_R_tensor(inst, tc, prove_tensor_certs(inst, flavor(Flavor::Rank))), 14u);
}

TEST(ComputeR, SingleTripleForAllOnesTensor) {
    const auto inst = build_clique_instance(kSingle, {0, 0, 0, 1});
    const FieldVector ones(2, 1);
    const TensorRankCertificate tc{{{ones, ones, ones}}};
    EXPECT_EQ(compute_R_tensor(inst, tc, prove_tensor_certs(inst, flavor(Flavor::Rank))), 14u);
    const auto empty_a0 = build_clique_instance(kSingle, {1, 0, 0, 1});
    EXPECT_EQ(compute_R_tensor(empty_a0, {}, prove_tensor_certs(empty_a0, flavor(Flavor::Sparse))), 0u);
}

TEST(ComputeR, MixedCertificatesMatchBruteForce) {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 30; ++i) {
        const auto inst = random_instance(i % 2 ? 8 : 4, rng);
        const auto expect = brute_clique_R(inst).mod_p;
        ASSERT_EQ(compute_R_rigidity(inst, prove_rigidity_certs(inst, provers::mixed(rng))), expect);
        const auto tc = provers::mixed_tensor(inst.A[0], rng);
        const auto certs = prove_tensor_certs(inst, provers::mixed(rng));
        ASSERT_EQ(compute_R_tensor(inst, tc, certs), expect);
        ASSERT_EQ(compute_R_tensor(inst, tc, certs, strassen_kernel(1)), expect);
    }
}

TEST(ComputeR, CountsMultiplications) {
    const auto inst = build_clique_instance(kSingle, {0, 0, 0, 1});
    OpCounter ops;
    compute_R_rigidity(inst, prove_rigidity_certs(inst, flavor(Flavor::Rank)), &ops);
    EXPECT_GT(ops.mults, 0u);
    OpCounter sparse_ops;
    compute_R_rigidity(inst, prove_rigidity_certs(inst, flavor(Flavor::Sparse)), &sparse_ops);
    // Four (j0, j1) pairs, each with two all-ones 2x2 slices held sparsely: 8 entries at 3 mults.
    EXPECT_EQ(sparse_ops.mults, 4u * 8 * 3);
}

TEST(ComputeR, InvalidCertificateIsReportedWithItsIndices) {
    const auto inst = build_clique_instance(kSingle, {0, 0, 0, 1});
    auto certs = prove_rigidity_certs(inst, flavor(Flavor::Sparse));
    certs[{1, 0}].second.sparse.pop_back();
    try {
        compute_R_rigidity(inst, certs);
        FAIL() << "expected a certificate error";
    } catch (const CertificateError& e) {
        EXPECT_EQ(e.j0(), 1u);
        EXPECT_EQ(e.j1(), 0u);
        EXPECT_EQ(e.role(), "L");
    }
    certs.erase({1, 0});
    EXPECT_THROW(compute_R_rigidity(inst, certs), CertificateError);

    auto tcerts = prove_tensor_certs(inst, flavor(Flavor::Rank));
    auto bad_tensor = prove_fibers(inst.A[0]);
    bad_tensor.triples.pop_back();
    try {
        compute_R_tensor(inst, bad_tensor, tcerts);
        FAIL() << "expected a certificate error";
    } catch (const CertificateError& e) {
        EXPECT_EQ(e.role(), "tensor");
        EXPECT_EQ(e.j0(), CertificateError::npos);
    }
    tcerts[1][2].factors.clear();
    try {
        compute_R_tensor(inst, prove_fibers(inst.A[0]), tcerts);
        FAIL() << "expected a certificate error";
    } catch (const CertificateError& e) {
        EXPECT_EQ(e.j0(), 1u);
        EXPECT_EQ(e.role(), "T");
    }
}

TEST(CertificateFormat, RoundTrips) {
    std::mt19937_64 rng(107);
    const Field f;
    FieldMatrix m(f, 3, 4);
    for (auto& v : m.data()) v = rng() % 5;
    const auto c = prove_split(m, 2, rng);
    std::stringstream s;
    write_rigidity_certificate(s, c, 3, 4);
    const auto back = read_rigidity_certificate(s, f);
    EXPECT_EQ(back.rows, 3u);
    EXPECT_EQ(back.cols, 4u);
    EXPECT_EQ(back.cert, c);

    Tensor3 t(f, 2, 2, 2);
    for (auto& v : t.data()) v = rng() % 2;
    const auto tc = prove_tensor_split(t, 2, rng);
    std::stringstream st;
    write_tensor_certificate(st, tc, 2);
    std::size_t k = 0;
    EXPECT_EQ(read_tensor_certificate(st, f, &k), tc);
    EXPECT_EQ(k, 2u);
}

TEST(CertificateFormat, Errors) {
    const Field f(7);
    std::istringstream outside("cert rigidity 2 2 0\nsparse 1\n2 0 1\n");
    EXPECT_THROW(read_rigidity_certificate(outside, f), ParseError);
    std::istringstream short_vec("cert rigidity 2 2 1\n1\n1 1\nsparse 0\n");
    EXPECT_THROW(read_rigidity_certificate(short_vec, f), ParseError);
    std::istringstream trailing("cert tensor 1 1\n1 1 1 5\n");
    EXPECT_THROW(read_tensor_certificate(trailing, f), ParseError);
}
