#ifndef FINEGRAIN_CERTIFICATE_HPP
#define FINEGRAIN_CERTIFICATE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clique.hpp"
#include "error.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "text.hpp"

namespace fgr {

/// M = sum of outer products + sparse remainder. Sparse positions are 0-based
/// and distinct.
struct RigidityCertificate {
    MatrixFactors factors;
    std::vector<SparseEntry> sparse;

    std::size_t rank() const noexcept { return factors.size(); }
    friend bool operator==(const RigidityCertificate&, const RigidityCertificate&) = default;
};

/// A_0 = sum of rank-one triples.
struct TensorRankCertificate {
    TensorFactors triples;
    friend bool operator==(const TensorRankCertificate&, const TensorRankCertificate&) = default;
};

/// Reason `c` does not decompose `m` exactly, if any.
inline std::optional<std::string> certificate_error(const FieldMatrix& m, const RigidityCertificate& c) {
    for (const auto& op : c.factors)
        if (op.col.size() != m.rows() || op.row.size() != m.cols()) return "factor vector length mismatch";
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : c.sparse) {
        if (e.row >= m.rows() || e.col >= m.cols()) return "sparse entry outside the matrix";
        if (!seen.insert({e.row, e.col}).second)
            return "duplicate sparse position (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")";
    }
    const auto check = verify_matrix_factors(m, c.factors, c.sparse);
    if (!check) return "reconstruction differs in " + std::to_string(check.residue) + " entries";
    return std::nullopt;
}

inline std::optional<std::string> certificate_error(const Tensor3& t, const TensorRankCertificate& c) {
    for (const auto& tr : c.triples)
        if (tr.a.size() != t.d1() || tr.b.size() != t.d2() || tr.c.size() != t.d3()) return "triple length mismatch";
    const auto check = verify_tensor_factors(t, c.triples);
    if (!check) return "reconstruction differs in " + std::to_string(check.residue) + " entries";
    return std::nullopt;
}

/// A certificate was rejected. `j0`/`j1` are npos when they do not apply.
class CertificateError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    CertificateError(std::size_t j0, std::size_t j1, std::string role, const std::string& why)
        : Error(describe(j0, j1, role) + ": " + why), j0_(j0), j1_(j1), role_(std::move(role)) {}

    std::size_t j0() const noexcept { return j0_; }
    std::size_t j1() const noexcept { return j1_; }
    const std::string& role() const noexcept { return role_; }

private:
    static std::string describe(std::size_t j0, std::size_t j1, const std::string& role) {
        std::string s = "certificate " + role;
        if (j0 != npos) s += " j0=" + std::to_string(j0);
        if (j1 != npos) s += " j1=" + std::to_string(j1);
        return s;
    }

    std::size_t j0_, j1_;
    std::string role_;
};

/// Field multiplications performed by the certificate-driven counts.
struct OpCounter {
    std::uint64_t mults = 0;
};

// ---------------------------------------------------------------------------
// Honest provers

enum class Flavor {
    Sparse, // no factors, every nonzero entry in the sparse part
    Rank,   // one factor e_i (x) M[i,:] per nonzero row
};

inline RigidityCertificate prove_trivial(const FieldMatrix& m, Flavor flavor) {
    RigidityCertificate c;
    const Field& f = m.field();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        bool nonzero = false;
        for (std::size_t j = 0; j < m.cols(); ++j) nonzero |= m(i, j) != 0;
        if (!nonzero) continue;
        if (flavor == Flavor::Sparse) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (m(i, j) != 0) c.sparse.push_back({i, j, m(i, j)});
        } else {
            FieldVector col(m.rows(), 0), row(m.cols(), 0);
            col[i] = 1 % f.prime();
            for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
            c.factors.push_back({std::move(col), std::move(row)});
        }
    }
    return c;
}

namespace detail {

inline FieldVector random_vector(const Field& f, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<Field::Elem> dist(0, f.prime() - 1);
    FieldVector v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

} // namespace detail

/// Random rank-r part R plus the sparse remainder M - R.
inline RigidityCertificate prove_split(const FieldMatrix& m, std::size_t r, std::mt19937_64& rng) {
    if (r > std::min(m.rows(), m.cols())) throw PreconditionError("split rank exceeds min(rows, cols)");
    const Field& f = m.field();
    RigidityCertificate c;
    for (std::size_t i = 0; i < r; ++i)
        c.factors.push_back({detail::random_vector(f, m.rows(), rng), detail::random_vector(f, m.cols(), rng)});
    const auto low = expand_factors(f, m.rows(), m.cols(), c.factors);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto d = f.sub(m(i, j), low(i, j));
            if (d != 0) c.sparse.push_back({i, j, d});
        }
    return c;
}

/// One triple e_i (x) e_j (x) T[i,j,:] per nonzero fiber.
inline TensorRankCertificate prove_fibers(const Tensor3& t) {
    const Field& f = t.field();
    TensorRankCertificate c;
    for (std::size_t i = 0; i < t.d1(); ++i)
        for (std::size_t j = 0; j < t.d2(); ++j) {
            FieldVector fiber(t.d3());
            bool nonzero = false;
            for (std::size_t l = 0; l < t.d3(); ++l) nonzero |= (fiber[l] = t(i, j, l)) != 0;
            if (!nonzero) continue;
            FieldVector a(t.d1(), 0), b(t.d2(), 0);
            a[i] = 1 % f.prime();
            b[j] = 1 % f.prime();
            c.triples.push_back({std::move(a), std::move(b), std::move(fiber)});
        }
    return c;
}

/// `r` random triples, then the fibers of what remains.
inline TensorRankCertificate prove_tensor_split(const Tensor3& t, std::size_t r, std::mt19937_64& rng) {
    const Field& f = t.field();
    TensorRankCertificate c;
    Tensor3 rest = t;
    for (std::size_t q = 0; q < r; ++q) {
        RankOneTriple tr{detail::random_vector(f, t.d1(), rng), detail::random_vector(f, t.d2(), rng),
                         detail::random_vector(f, t.d3(), rng)};
        for (std::size_t i = 0; i < t.d1(); ++i)
            for (std::size_t j = 0; j < t.d2(); ++j)
                for (std::size_t l = 0; l < t.d3(); ++l)
                    rest(i, j, l) = f.sub(rest(i, j, l), f.mul(f.mul(tr.a[i], tr.b[j]), tr.c[l]));
        c.triples.push_back(std::move(tr));
    }
    auto tail = prove_fibers(rest);
    c.triples.insert(c.triples.end(), tail.triples.begin(), tail.triples.end());
    return c;
}

/// Certificates for the pairwise count, keyed by (j0, j1): (cert for M, cert for L).
using RigidityCertMap = std::map<std::pair<std::size_t, std::size_t>, std::pair<RigidityCertificate, RigidityCertificate>>;
/// Certificates for the tensor count, keyed by j0: (M, L, T).
using TensorCertMap = std::map<std::size_t, std::array<RigidityCertificate, 3>>;

/// Prover callback: receives the slice and its role ("M", "L" or "T").
using SliceProver = std::function<RigidityCertificate(const FieldMatrix&, const std::string& role)>;

inline RigidityCertMap prove_rigidity_certs(const CliqueInstance& inst, const SliceProver& prover) {
    RigidityCertMap certs;
    for (std::size_t j0 = 0; j0 < inst.k; ++j0)
        for (std::size_t j1 = 0; j1 < inst.k; ++j1)
            certs[{j0, j1}] = {prover(rig_slice_M(inst, j1), "M"), prover(rig_slice_L(inst, j0), "L")};
    return certs;
}

inline TensorCertMap prove_tensor_certs(const CliqueInstance& inst, const SliceProver& prover) {
    TensorCertMap certs;
    for (std::size_t j0 = 0; j0 < inst.k; ++j0)
        certs[j0] = {prover(tr_slice_M(inst, j0), "M"), prover(tr_slice_L(inst, j0), "L"),
                     prover(tr_slice_T(inst, j0), "T")};
    return certs;
}

// ---------------------------------------------------------------------------
// Certificate-driven counts

namespace detail {

inline void validate_or_throw(const FieldMatrix& m, const RigidityCertificate& c, std::size_t j0, std::size_t j1,
                              const std::string& role) {
    if (auto err = certificate_error(m, c)) throw CertificateError(j0, j1, role, *err);
}

} // namespace detail

/// R = sum over (j0, j1) of sum_{j2,j3} M[j2,j3] L[j2,j3] u[j3] v[j2], with
/// M, L taken from the certificates and u[l] = A_2[l,j0,j1], v[i] = A_3[j0,j1,i].
/// Split as the sparse cross terms S_M.L + R_M.S_L over the certificate
/// supports plus the low-rank part R_M.R_L as a double sum over factor pairs.
/// Every certificate is validated before any count is computed.
inline Field::Elem compute_R_rigidity(const CliqueInstance& inst, const RigidityCertMap& certs,
                                      OpCounter* counter = nullptr) {
    const Field& f = inst.field;
    const std::size_t k = inst.k;
    std::uint64_t mults = 0;

    // Validation pass; the dense low-rank part of M is kept for the cross terms.
    std::map<std::pair<std::size_t, std::size_t>, FieldMatrix> low_m;
    for (std::size_t j0 = 0; j0 < k; ++j0)
        for (std::size_t j1 = 0; j1 < k; ++j1) {
            const auto it = certs.find({j0, j1});
            if (it == certs.end()) throw CertificateError(j0, j1, "M", "missing");
            const auto& [cm, cl] = it->second;
            detail::validate_or_throw(rig_slice_M(inst, j1), cm, j0, j1, "M");
            detail::validate_or_throw(rig_slice_L(inst, j0), cl, j0, j1, "L");
            low_m[{j0, j1}] = expand_factors(f, k, k, cm.factors);
        }

    Field::Elem total = 0;
    for (std::size_t j0 = 0; j0 < k; ++j0) {
        const auto L = rig_slice_L(inst, j0);
        for (std::size_t j1 = 0; j1 < k; ++j1) {
            const auto& [cm, cl] = certs.at({j0, j1});
            const auto& rm = low_m.at({j0, j1});
            FieldVector u(k), v(k);
            for (std::size_t l = 0; l < k; ++l) u[l] = inst.A[2](l, j0, j1);
            for (std::size_t i = 0; i < k; ++i) v[i] = inst.A[3](j0, j1, i);

            Field::Elem r = 0;
            for (const auto& e : cm.sparse) {
                const auto s = f.from_uint(e.value);
                r = f.add(r, f.mul(f.mul(s, L(e.row, e.col)), f.mul(u[e.col], v[e.row])));
                mults += 3;
            }
            for (const auto& e : cl.sparse) {
                const auto s = f.from_uint(e.value);
                r = f.add(r, f.mul(f.mul(rm(e.row, e.col), s), f.mul(u[e.col], v[e.row])));
                mults += 3;
            }
            for (const auto& a : cm.factors)
                for (const auto& b : cl.factors) {
                    Field::Elem left = 0, right = 0;
                    for (std::size_t j2 = 0; j2 < k; ++j2)
                        left = f.add(left, f.mul(f.mul(a.col[j2], b.col[j2]), v[j2]));
                    for (std::size_t j3 = 0; j3 < k; ++j3)
                        right = f.add(right, f.mul(f.mul(a.row[j3], b.row[j3]), u[j3]));
                    r = f.add(r, f.mul(left, right));
                    mults += 4 * k + 1;
                }
            total = f.add(total, r);
        }
    }
    if (counter) counter->mults += mults;
    return total;
}

/// R = sum over j0 of sum_{j1,j2,j3} A_0[j1,j2,j3] M[j2,j3] L[j3,j1] T[j1,j2]
/// with M, L, T the j0 slices. The main term replaces A_0, M, L, T by their
/// low-rank parts and is evaluated through
///   h1(i,y,z) = sum_j1 a_i[j1] Lrow_y[j1] Tcol_z[j1]
///   h2(i,x,z) = sum_j2 b_i[j2] Mcol_x[j2] Trow_z[j2]
///   h3(i,x,y) = sum_j3 c_i[j3] Mrow_x[j3] Lcol_y[j3]
/// each obtained for all arguments as one product P W^T, followed by
/// sum_i sum_{x,y} h3(i,x,y) (H2_i V_i^T)[x,y] with V_i[y,z] = h1(i,y,z).
/// The remainder S_M.L.T + R_M.S_L.T + R_M.R_L.S_T runs over sparse supports.
inline Field::Elem compute_R_tensor(const CliqueInstance& inst, const TensorRankCertificate& tensor_cert,
                                    const TensorCertMap& certs, const MulKernel& kernel = naive_kernel,
                                    OpCounter* counter = nullptr) {
    const Field& f = inst.field;
    const std::size_t k = inst.k;
    const auto& a0 = inst.A[0];
    std::uint64_t mults = 0;
    constexpr auto npos = CertificateError::npos;

    if (auto err = certificate_error(a0, tensor_cert)) throw CertificateError(npos, npos, "tensor", *err);
    for (std::size_t j0 = 0; j0 < k; ++j0) {
        const auto it = certs.find(j0);
        if (it == certs.end()) throw CertificateError(j0, npos, "M", "missing");
        detail::validate_or_throw(tr_slice_M(inst, j0), it->second[0], j0, npos, "M");
        detail::validate_or_throw(tr_slice_L(inst, j0), it->second[1], j0, npos, "L");
        detail::validate_or_throw(tr_slice_T(inst, j0), it->second[2], j0, npos, "T");
    }

    const std::size_t q = tensor_cert.triples.size();
    // P_a[i, j] = a_i[j], likewise for b and c.
    FieldMatrix pa(f, q, k), pb(f, q, k), pc(f, q, k);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            pa(i, j) = f.from_uint(tensor_cert.triples[i].a[j]);
            pb(i, j) = f.from_uint(tensor_cert.triples[i].b[j]);
            pc(i, j) = f.from_uint(tensor_cert.triples[i].c[j]);
        }

    // W[(x, y), j] = u_x[j] * w_y[j].
    auto pair_rows = [&](const std::vector<const FieldVector*>& us, const std::vector<const FieldVector*>& ws) {
        FieldMatrix w(f, us.size() * ws.size(), k);
        for (std::size_t x = 0; x < us.size(); ++x)
            for (std::size_t y = 0; y < ws.size(); ++y)
                for (std::size_t j = 0; j < k; ++j) w(x * ws.size() + y, j) = f.mul((*us[x])[j], (*ws[y])[j]);
        mults += us.size() * ws.size() * k;
        return w;
    };
    auto product = [&](const FieldMatrix& p, const FieldMatrix& w) {
        mults += p.rows() * p.cols() * w.rows();
        return mat_mul_blocked(p, w.transpose(), kernel);
    };

    Field::Elem total = 0;
    for (std::size_t j0 = 0; j0 < k; ++j0) {
        const auto& [cm, cl, ct] = certs.at(j0);
        const std::size_t rm = cm.rank(), rl = cl.rank(), rt = ct.rank();
        std::vector<const FieldVector*> m_col, m_row, l_col, l_row, t_col, t_row;
        for (const auto& op : cm.factors) m_col.push_back(&op.col), m_row.push_back(&op.row); // [j2], [j3]
        for (const auto& op : cl.factors) l_col.push_back(&op.col), l_row.push_back(&op.row); // [j3], [j1]
        for (const auto& op : ct.factors) t_col.push_back(&op.col), t_row.push_back(&op.row); // [j1], [j2]

        // Main term.
        const auto h1 = product(pa, pair_rows(l_row, t_col)); // q x (rl*rt), column y*rt + z
        const auto h2 = product(pb, pair_rows(m_col, t_row)); // q x (rm*rt), column x*rt + z
        const auto h3 = product(pc, pair_rows(m_row, l_col)); // q x (rm*rl), column x*rl + y
        Field::Elem main = 0;
        for (std::size_t i = 0; i < q; ++i) {
            FieldMatrix v(f, rl, rt), h2i(f, rm, rt);
            for (std::size_t y = 0; y < rl; ++y)
                for (std::size_t z = 0; z < rt; ++z) v(y, z) = h1(i, y * rt + z);
            for (std::size_t x = 0; x < rm; ++x)
                for (std::size_t z = 0; z < rt; ++z) h2i(x, z) = h2(i, x * rt + z);
            const auto zi = mat_mul_blocked(h2i, v.transpose(), kernel); // rm x rl
            mults += rm * rt * rl + rm * rl;
            for (std::size_t x = 0; x < rm; ++x)
                for (std::size_t y = 0; y < rl; ++y) main = f.add(main, f.mul(h3(i, x * rl + y), zi(x, y)));
        }

        // Remainder over the sparse supports; A_0 and the slices are looked up densely.
        const auto L = tr_slice_L(inst, j0);
        const auto T = tr_slice_T(inst, j0);
        const auto RM = expand_factors(f, k, k, cm.factors);
        const auto RL = expand_factors(f, k, k, cl.factors);
        Field::Elem rest = 0;
        for (const auto& e : cm.sparse) { // (j2, j3)
            const auto s = f.from_uint(e.value);
            for (std::size_t j1 = 0; j1 < k; ++j1)
                rest = f.add(rest, f.mul(f.mul(a0(j1, e.row, e.col), s), f.mul(L(e.col, j1), T(j1, e.row))));
            mults += 3 * k;
        }
        for (const auto& e : cl.sparse) { // (j3, j1)
            const auto s = f.from_uint(e.value);
            for (std::size_t j2 = 0; j2 < k; ++j2)
                rest = f.add(rest, f.mul(f.mul(a0(e.col, j2, e.row), RM(j2, e.row)), f.mul(s, T(e.col, j2))));
            mults += 3 * k;
        }
        for (const auto& e : ct.sparse) { // (j1, j2)
            const auto s = f.from_uint(e.value);
            for (std::size_t j3 = 0; j3 < k; ++j3)
                rest = f.add(rest, f.mul(f.mul(a0(e.row, e.col, j3), RM(e.col, j3)), f.mul(RL(j3, e.row), s)));
            mults += 3 * k;
        }
        total = f.add(total, f.add(main, rest));
    }
    if (counter) counter->mults += mults;
    return total;
}

// ---------------------------------------------------------------------------
// Text formats (0-based positions)
//
//   cert rigidity <rows> <cols> <r>
//   <r pairs of lines: `rows` column entries, then `cols` row entries>
//   sparse <count>
//   <count lines: row col value>
//
//   cert tensor <k> <q>
//   <q lines of 3k entries: a, then b, then c>

inline void write_rigidity_certificate(std::ostream& out, const RigidityCertificate& c, std::size_t rows,
                                       std::size_t cols) {
    out << "cert rigidity " << rows << ' ' << cols << ' ' << c.factors.size() << '\n';
    auto line = [&out](const FieldVector& v) {
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
        out << '\n';
    };
    for (const auto& op : c.factors) {
        line(op.col);
        line(op.row);
    }
    out << "sparse " << c.sparse.size() << '\n';
    for (const auto& e : c.sparse) out << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

struct ShapedRigidityCertificate {
    std::size_t rows = 0;
    std::size_t cols = 0;
    RigidityCertificate cert;
};

inline ShapedRigidityCertificate read_rigidity_certificate(std::istream& in, const Field& f) {
    detail::TokenReader r(in);
    r.expect("cert");
    r.expect("rigidity");
    ShapedRigidityCertificate s;
    s.rows = r.count();
    s.cols = r.count();
    const auto rank = r.count();
    auto vec = [&](std::size_t n) {
        FieldVector v(n);
        for (auto& x : v) x = f.reduce(r.integer());
        return v;
    };
    for (std::size_t i = 0; i < rank; ++i) {
        auto col = vec(s.rows);
        auto row = vec(s.cols);
        s.cert.factors.push_back({std::move(col), std::move(row)});
    }
    r.expect("sparse");
    const auto n = r.count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t line = r.line();
        const auto row = r.count(), col = r.count();
        if (row >= s.rows || col >= s.cols) throw ParseError(line, "sparse entry outside the matrix");
        s.cert.sparse.push_back({row, col, f.reduce(r.integer())});
    }
    r.expect_end();
    return s;
}

inline void write_tensor_certificate(std::ostream& out, const TensorRankCertificate& c, std::size_t k) {
    out << "cert tensor " << k << ' ' << c.triples.size() << '\n';
    for (const auto& t : c.triples) {
        bool first = true;
        for (const auto* v : {&t.a, &t.b, &t.c})
            for (auto x : *v) {
                out << (first ? "" : " ") << x;
                first = false;
            }
        out << '\n';
    }
}

inline TensorRankCertificate read_tensor_certificate(std::istream& in, const Field& f, std::size_t* k_out = nullptr) {
    detail::TokenReader r(in);
    r.expect("cert");
    r.expect("tensor");
    const auto k = r.count(), q = r.count();
    TensorRankCertificate c;
    for (std::size_t i = 0; i < q; ++i) {
        RankOneTriple t;
        for (auto* v : {&t.a, &t.b, &t.c}) {
            v->resize(k);
            for (auto& x : *v) x = f.reduce(r.integer());
        }
        c.triples.push_back(std::move(t));
    }
    r.expect_end();
    if (k_out) *k_out = k;
    return c;
}

} // namespace fgr

#endif
