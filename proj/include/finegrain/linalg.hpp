#ifndef FINEGRAIN_LINALG_HPP
#define FINEGRAIN_LINALG_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "limits.hpp"
#include "text.hpp"

namespace fgr {

// ---------------------------------------------------------------------------
// Rank

/// Rank over F_p by Gaussian elimination.
inline std::size_t mat_rank(FieldMatrix m) {
    const Field& f = m.field();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
        const auto inv = f.inv(m(rank, col));
        for (std::size_t j = col; j < m.cols(); ++j) m(rank, j) = f.mul(m(rank, j), inv);
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            const auto factor = m(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(rank, j)));
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Multiplication

namespace detail {

inline void check_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw PreconditionError("operands live in different fields");
}

} // namespace detail

inline FieldMatrix mat_add(const FieldMatrix& a, const FieldMatrix& b) {
    detail::check_same_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum of different shapes");
    FieldMatrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.field().add(a.data()[i], b.data()[i]);
    return c;
}

inline FieldMatrix mat_sub(const FieldMatrix& a, const FieldMatrix& b) {
    detail::check_same_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix difference of different shapes");
    FieldMatrix c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = a.field().sub(a.data()[i], b.data()[i]);
    return c;
}

/// Schoolbook product.
inline FieldMatrix mat_mul_naive(const FieldMatrix& a, const FieldMatrix& b) {
    detail::check_same_field(a.field(), b.field());
    if (a.cols() != b.rows())
        throw ShapeError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    const Field& f = a.field();
    const std::uint64_t p = f.prime();
    FieldMatrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const std::uint64_t s = c(i, j) + (aik * b(k, j)) % p;
                c(i, j) = s >= p ? s - p : s;
            }
        }
    return c;
}

/// Multiplier for square blocks of equal size.
using MulKernel = std::function<FieldMatrix(const FieldMatrix&, const FieldMatrix&)>;

inline FieldMatrix naive_kernel(const FieldMatrix& a, const FieldMatrix& b) { return mat_mul_naive(a, b); }

namespace detail {

inline FieldMatrix sub_block(const FieldMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows,
                             std::size_t cols) {
    FieldMatrix out(m.field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (r0 + i < m.rows() && c0 + j < m.cols()) out(i, j) = m(r0 + i, c0 + j);
    return out;
}

inline void put_block(FieldMatrix& m, const FieldMatrix& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t i = 0; i < blk.rows() && r0 + i < m.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols() && c0 + j < m.cols(); ++j) m(r0 + i, c0 + j) = blk(i, j);
}

inline FieldMatrix strassen_rec(const FieldMatrix& a, const FieldMatrix& b, std::size_t cutoff) {
    const std::size_t n = a.rows();
    if (n <= cutoff || n % 2 != 0) return mat_mul_naive(a, b);
    const std::size_t h = n / 2;
    const auto a11 = sub_block(a, 0, 0, h, h), a12 = sub_block(a, 0, h, h, h);
    const auto a21 = sub_block(a, h, 0, h, h), a22 = sub_block(a, h, h, h, h);
    const auto b11 = sub_block(b, 0, 0, h, h), b12 = sub_block(b, 0, h, h, h);
    const auto b21 = sub_block(b, h, 0, h, h), b22 = sub_block(b, h, h, h, h);

    const auto m1 = strassen_rec(mat_add(a11, a22), mat_add(b11, b22), cutoff);
    const auto m2 = strassen_rec(mat_add(a21, a22), b11, cutoff);
    const auto m3 = strassen_rec(a11, mat_sub(b12, b22), cutoff);
    const auto m4 = strassen_rec(a22, mat_sub(b21, b11), cutoff);
    const auto m5 = strassen_rec(mat_add(a11, a12), b22, cutoff);
    const auto m6 = strassen_rec(mat_sub(a21, a11), mat_add(b11, b12), cutoff);
    const auto m7 = strassen_rec(mat_sub(a12, a22), mat_add(b21, b22), cutoff);

    FieldMatrix c(a.field(), n, n);
    put_block(c, mat_add(mat_sub(mat_add(m1, m4), m5), m7), 0, 0);
    put_block(c, mat_add(m3, m5), 0, h);
    put_block(c, mat_add(m2, m4), h, 0);
    put_block(c, mat_add(mat_add(mat_sub(m1, m2), m3), m6), h, h);
    return c;
}

} // namespace detail

/// Strassen's recursion down to `cutoff`. Operands are zero-padded to a common
/// power-of-two square and the product is cropped back.
inline MulKernel strassen_kernel(std::size_t cutoff = 16) {
    return [cutoff](const FieldMatrix& a, const FieldMatrix& b) {
        detail::check_same_field(a.field(), b.field());
        if (a.cols() != b.rows())
            throw ShapeError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
        const std::size_t n = std::max({a.rows(), a.cols(), b.cols()});
        std::size_t size = 1;
        while (size < n) size *= 2;
        if (size == a.rows() && size == a.cols() && size == b.cols()) return detail::strassen_rec(a, b, cutoff);
        const auto c = detail::strassen_rec(detail::sub_block(a, 0, 0, size, size),
                                            detail::sub_block(b, 0, 0, size, size), cutoff);
        return detail::sub_block(c, 0, 0, a.rows(), b.cols());
    };
}

/// Blocked product: operands are zero-padded to multiples of `block` (default:
/// the inner dimension), split into block x block tiles, and every tile product
/// goes through `kernel`. The result is cropped back to a.rows() x b.cols().
inline FieldMatrix mat_mul_blocked(const FieldMatrix& a, const FieldMatrix& b, const MulKernel& kernel = naive_kernel,
                                   std::size_t block = 0) {
    detail::check_same_field(a.field(), b.field());
    if (a.cols() != b.rows())
        throw ShapeError("inner dimensions differ: " + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    const Field& f = a.field();
    FieldMatrix c(f, a.rows(), b.cols());
    if (block == 0) block = a.cols();
    if (block == 0 || a.rows() == 0 || b.cols() == 0) return c;
    auto blocks = [block](std::size_t d) { return (d + block - 1) / block; };

    for (std::size_t bi = 0; bi < blocks(a.rows()); ++bi)
        for (std::size_t bj = 0; bj < blocks(b.cols()); ++bj) {
            FieldMatrix acc(f, block, block);
            for (std::size_t bk = 0; bk < blocks(a.cols()); ++bk) {
                const auto prod = kernel(detail::sub_block(a, bi * block, bk * block, block, block),
                                         detail::sub_block(b, bk * block, bj * block, block, block));
                if (prod.rows() != block || prod.cols() != block) throw ShapeError("kernel returned a wrong-sized block");
                acc = mat_add(acc, prod);
            }
            detail::put_block(c, acc, bi * block, bj * block);
        }
    return c;
}

/// f(i, j, m) = sum_l A[l, i] B[l, j] C[l, m] for all (i, j, m) at once: for
/// each i the slice f(i, ., .) is D^T C with D[l, j] = B[l, j] A[l, i].
inline Tensor3 evaluate_sum_all(const FieldMatrix& a, const FieldMatrix& b, const FieldMatrix& c,
                                const MulKernel& kernel = naive_kernel) {
    detail::check_same_field(a.field(), b.field());
    detail::check_same_field(a.field(), c.field());
    if (a.rows() != b.rows() || a.rows() != c.rows()) throw ShapeError("factor matrices differ in row count");
    const Field& f = a.field();
    const std::size_t q = a.rows();
    Tensor3 out(f, a.cols(), b.cols(), c.cols());
    const std::size_t block = std::max<std::size_t>(1, std::min({q, b.cols(), c.cols()}));
    for (std::size_t i = 0; i < a.cols(); ++i) {
        FieldMatrix dt(f, b.cols(), q);
        for (std::size_t l = 0; l < q; ++l)
            for (std::size_t j = 0; j < b.cols(); ++j) dt(j, l) = f.mul(b(l, j), a(l, i));
        const auto slice = mat_mul_blocked(dt, c, kernel, block);
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t m = 0; m < c.cols(); ++m) out(i, j, m) = slice(j, m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Factorizations

/// Rank-one matrix col * row^T.
struct OuterProduct {
    FieldVector col;
    FieldVector row;
    friend bool operator==(const OuterProduct&, const OuterProduct&) = default;
};
using MatrixFactors = std::vector<OuterProduct>;

/// Rank-one tensor a (x) b (x) c.
struct RankOneTriple {
    FieldVector a, b, c;
    friend bool operator==(const RankOneTriple&, const RankOneTriple&) = default;
};
using TensorFactors = std::vector<RankOneTriple>;

struct SparseEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Field::Elem value = 0;
    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Outcome of an exact reconstruction check; `residue` counts mismatched entries.
struct FactorCheck {
    bool ok = false;
    std::size_t residue = 0;
    explicit operator bool() const noexcept { return ok; }
};

/// Dense sum of the outer products.
inline FieldMatrix expand_factors(const Field& f, std::size_t rows, std::size_t cols, const MatrixFactors& factors) {
    FieldMatrix r(f, rows, cols);
    for (const auto& op : factors) {
        if (op.col.size() != rows || op.row.size() != cols) throw ShapeError("factor vector length mismatch");
        for (std::size_t i = 0; i < rows; ++i) {
            if (op.col[i] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) r(i, j) = f.add(r(i, j), f.mul(op.col[i], op.row[j]));
        }
    }
    return r;
}

inline FactorCheck verify_matrix_factors(const FieldMatrix& m, const MatrixFactors& factors,
                                         const std::vector<SparseEntry>& sparse) {
    const Field& f = m.field();
    FieldMatrix r = expand_factors(f, m.rows(), m.cols(), factors);
    for (const auto& e : sparse) {
        if (e.row >= m.rows() || e.col >= m.cols()) throw ShapeError("sparse entry outside the matrix");
        r(e.row, e.col) = f.add(r(e.row, e.col), f.from_uint(e.value));
    }
    FactorCheck check;
    for (std::size_t i = 0; i < m.data().size(); ++i) check.residue += r.data()[i] != m.data()[i];
    check.ok = check.residue == 0;
    return check;
}

/// Factor vectors stacked as the rows of three q x d matrices, padded with zero
/// triples up to q >= max dimension.
struct StackedFactors {
    FieldMatrix a, b, c;
};

inline StackedFactors stack_factors(const Field& f, std::size_t d1, std::size_t d2, std::size_t d3,
                                    const TensorFactors& triples) {
    const std::size_t q = std::max({triples.size(), d1, d2, d3, std::size_t{1}});
    StackedFactors s{FieldMatrix(f, q, d1), FieldMatrix(f, q, d2), FieldMatrix(f, q, d3)};
    for (std::size_t l = 0; l < triples.size(); ++l) {
        const auto& t = triples[l];
        if (t.a.size() != d1 || t.b.size() != d2 || t.c.size() != d3) throw ShapeError("factor triple length mismatch");
        for (std::size_t i = 0; i < d1; ++i) s.a(l, i) = f.from_uint(t.a[i]);
        for (std::size_t j = 0; j < d2; ++j) s.b(l, j) = f.from_uint(t.b[j]);
        for (std::size_t k = 0; k < d3; ++k) s.c(l, k) = f.from_uint(t.c[k]);
    }
    return s;
}

/// Exact check that the triples sum to T, evaluated through evaluate_sum_all.
inline FactorCheck verify_tensor_factors(const Tensor3& t, const TensorFactors& triples,
                                         const MulKernel& kernel = naive_kernel) {
    const auto s = stack_factors(t.field(), t.d1(), t.d2(), t.d3(), triples);
    const auto rebuilt = evaluate_sum_all(s.a, s.b, s.c, kernel);
    FactorCheck check;
    for (std::size_t i = 0; i < t.data().size(); ++i) check.residue += rebuilt.data()[i] != t.data()[i];
    check.ok = check.residue == 0;
    return check;
}

// ---------------------------------------------------------------------------
// Matrix multiplication tensor

/// The n^2 x n^2 x n^2 tensor with ones at ((i,j), (i,k), (k,j)); pairs are
/// flattened row-major, (i, j) -> i*n + j with 0-based i, j.
inline Tensor3 matmul_tensor(std::size_t n, Field f = Field()) {
    if (n == 0) throw PreconditionError("matrix multiplication tensor needs n >= 1");
    const std::size_t d = n * n;
    Tensor3 t(f, d, d, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) t(i * n + j, i * n + k, k * n + j) = 1 % f.prime();
    return t;
}

/// Strassen's seven products as a rank-7 decomposition of matmul_tensor(2):
/// C[x] = sum_l u_l[x] * (sum_y v_l[y] A[y]) * (sum_z w_l[z] B[z]).
inline TensorFactors strassen_factors(Field f = Field()) {
    // Coordinates: 0 = (1,1), 1 = (1,2), 2 = (2,1), 3 = (2,2).
    const std::vector<std::array<std::array<int, 4>, 3>> rows = {
        // u (output C)      v (left A)         w (right B)
        {{{1, 0, 0, 1}, {1, 0, 0, 1}, {1, 0, 0, 1}}},   // M1 = (A11 + A22)(B11 + B22)
        {{{0, 0, 1, -1}, {0, 0, 1, 1}, {1, 0, 0, 0}}},  // M2 = (A21 + A22) B11
        {{{0, 1, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, -1}}},  // M3 = A11 (B12 - B22)
        {{{1, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 1, 0}}},  // M4 = A22 (B21 - B11)
        {{{-1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 0, 1}}},  // M5 = (A11 + A12) B22
        {{{0, 0, 0, 1}, {-1, 0, 1, 0}, {1, 1, 0, 0}}},  // M6 = (A21 - A11)(B11 + B12)
        {{{1, 0, 0, 0}, {0, 1, 0, -1}, {0, 0, 1, 1}}},  // M7 = (A12 - A22)(B21 + B22)
    };
    TensorFactors out;
    for (const auto& r : rows) {
        RankOneTriple t;
        for (int x : r[0]) t.a.push_back(f.reduce(x));
        for (int y : r[1]) t.b.push_back(f.reduce(y));
        for (int z : r[2]) t.c.push_back(f.reduce(z));
        out.push_back(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive oracles

/// Minimum number of entries to change so that rank(M') <= r. Supports are
/// searched in increasing size; over F_2 a change is a flip, over larger
/// fields every nonzero change on the support is tried (bounded by limits).
inline std::size_t brute_rigidity(const FieldMatrix& m, std::size_t r, const Limits& limits = kDefaultLimits) {
    const std::size_t cells = m.rows() * m.cols();
    if (cells > static_cast<std::size_t>(limits.max_rigidity_cells))
        throw SizeError("rigidity search is limited to " + std::to_string(limits.max_rigidity_cells) + " entries");
    if (mat_rank(m) <= r) return 0;
    const Field& f = m.field();
    const std::uint64_t alternatives = f.prime() - 1;

    for (std::size_t s = 1; s <= cells; ++s) {
        // Work for this support size: C(cells, s) * alternatives^s.
        std::uint64_t work = 1;
        for (std::size_t i = 0; i < s; ++i) {
            work = work * (cells - i) / (i + 1);
            if (work > limits.max_rigidity_fillings) break;
        }
        for (std::size_t i = 0; i < s && work <= limits.max_rigidity_fillings; ++i) {
            if (alternatives != 0 && work > limits.max_rigidity_fillings / alternatives)
                work = limits.max_rigidity_fillings + 1;
            else
                work *= alternatives;
        }
        if (work > limits.max_rigidity_fillings)
            throw SizeError("rigidity search at support size " + std::to_string(s) + " exceeds the exhaustive bound");

        std::vector<std::size_t> support(s);
        for (std::size_t i = 0; i < s; ++i) support[i] = i;
        while (true) {
            // offsets[i] in [1, p-1] is added to the entry at support[i].
            std::vector<std::uint64_t> offsets(s, 1);
            while (true) {
                FieldMatrix changed = m;
                for (std::size_t i = 0; i < s; ++i) {
                    auto& e = changed.data()[support[i]];
                    e = f.add(e, offsets[i]);
                }
                if (mat_rank(changed) <= r) return s;
                std::size_t i = 0;
                while (i < s && offsets[i] == alternatives) offsets[i++] = 1;
                if (i == s) break;
                ++offsets[i];
            }
            // Next combination in lexicographic order.
            std::size_t i = s;
            while (i > 0 && support[i - 1] == cells - s + (i - 1)) --i;
            if (i == 0) break;
            ++support[i - 1];
            for (std::size_t j = i; j < s; ++j) support[j] = support[j - 1] + 1;
        }
    }
    return cells; // unreachable: zeroing every entry gives rank 0
}

/// Whether T over F_2 (every dimension <= 2) is a sum of at most q <= 3 rank-one tensors.
inline bool brute_tensor_rank_at_most(const Tensor3& t, std::size_t q) {
    if (t.field().prime() != 2) throw PreconditionError("exhaustive tensor rank search is over F_2 only");
    if (t.d1() > 2 || t.d2() > 2 || t.d3() > 2 || q > 3)
        throw SizeError("exhaustive tensor rank search needs dimensions <= 2 and q <= 3");
    const std::size_t d1 = t.d1(), d2 = t.d2(), d3 = t.d3();
    auto mask_of = [&](const Array3<Field::Elem>& x) {
        unsigned mask = 0;
        for (std::size_t i = 0; i < x.data().size(); ++i)
            if (x.data()[i] & 1U) mask |= 1U << i;
        return mask;
    };
    const unsigned target = mask_of(t);

    // Every rank-one tensor over F_2 of this shape, as a bitmask.
    std::unordered_set<unsigned> rank_one;
    for (unsigned a = 0; a < (1U << d1); ++a)
        for (unsigned b = 0; b < (1U << d2); ++b)
            for (unsigned c = 0; c < (1U << d3); ++c) {
                Array3<Field::Elem> x(d1, d2, d3, 0);
                for (std::size_t i = 0; i < d1; ++i)
                    for (std::size_t j = 0; j < d2; ++j)
                        for (std::size_t k = 0; k < d3; ++k)
                            x(i, j, k) = ((a >> i) & (b >> j) & (c >> k)) & 1U;
                rank_one.insert(mask_of(x));
            }

    std::unordered_set<unsigned> reach{0};
    for (std::size_t step = 0; step < q; ++step) {
        std::unordered_set<unsigned> next = reach;
        for (unsigned s : reach)
            for (unsigned r1 : rank_one) next.insert(s ^ r1);
        reach.swap(next);
    }
    return reach.count(target) != 0;
}

// ---------------------------------------------------------------------------
// Text formats
//
//   mat <rows> <cols> <p>        then `rows` lines of `cols` entries
//   ten <d1> <d2> <d3> <p>       then d1 blocks of d2 lines of d3 entries
//   factors <count> matrix|tensor  then 2 (col, row) or 3 (a, b, c) vector
//                                  lines per factor, each led by its length

inline void write_matrix(std::ostream& out, const FieldMatrix& m) {
    out << "mat " << m.rows() << ' ' << m.cols() << ' ' << m.field().prime() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
        out << '\n';
    }
}

inline FieldMatrix read_matrix(detail::TokenReader& in) {
    in.expect("mat");
    const auto rows = in.count(), cols = in.count();
    const Field f(in.modulus());
    FieldMatrix m(f, rows, cols);
    for (auto& v : m.data()) v = f.reduce(in.integer());
    return m;
}

inline FieldMatrix read_matrix(std::istream& in) {
    detail::TokenReader r(in);
    auto m = read_matrix(r);
    r.expect_end();
    return m;
}

inline void write_tensor(std::ostream& out, const Tensor3& t) {
    out << "ten " << t.d1() << ' ' << t.d2() << ' ' << t.d3() << ' ' << t.field().prime() << '\n';
    for (std::size_t i = 0; i < t.d1(); ++i)
        for (std::size_t j = 0; j < t.d2(); ++j) {
            for (std::size_t k = 0; k < t.d3(); ++k) out << (k ? " " : "") << t(i, j, k);
            out << '\n';
        }
}

inline Tensor3 read_tensor(detail::TokenReader& in) {
    in.expect("ten");
    const auto d1 = in.count(), d2 = in.count(), d3 = in.count();
    const Field f(in.modulus());
    Tensor3 t(f, d1, d2, d3);
    for (auto& v : t.data()) v = f.reduce(in.integer());
    return t;
}

inline Tensor3 read_tensor(std::istream& in) {
    detail::TokenReader r(in);
    auto t = read_tensor(r);
    r.expect_end();
    return t;
}

namespace detail {

inline void write_vector(std::ostream& out, const FieldVector& v) {
    out << v.size();
    for (auto x : v) out << ' ' << x;
    out << '\n';
}

inline FieldVector read_vector(TokenReader& in, const Field& f) {
    FieldVector v(in.count());
    for (auto& x : v) x = f.reduce(in.integer());
    return v;
}

} // namespace detail

inline void write_matrix_factors(std::ostream& out, const MatrixFactors& fs) {
    out << "factors " << fs.size() << " matrix\n";
    for (const auto& op : fs) {
        detail::write_vector(out, op.col);
        detail::write_vector(out, op.row);
    }
}

inline void write_tensor_factors(std::ostream& out, const TensorFactors& fs) {
    out << "factors " << fs.size() << " tensor\n";
    for (const auto& t : fs) {
        detail::write_vector(out, t.a);
        detail::write_vector(out, t.b);
        detail::write_vector(out, t.c);
    }
}

inline MatrixFactors read_matrix_factors(detail::TokenReader& in, const Field& f) {
    in.expect("factors");
    const auto n = in.count();
    in.expect("matrix");
    MatrixFactors fs(n);
    for (auto& op : fs) {
        op.col = detail::read_vector(in, f);
        op.row = detail::read_vector(in, f);
    }
    return fs;
}

inline TensorFactors read_tensor_factors(detail::TokenReader& in, const Field& f) {
    in.expect("factors");
    const auto n = in.count();
    in.expect("tensor");
    TensorFactors fs(n);
    for (auto& t : fs) {
        t.a = detail::read_vector(in, f);
        t.b = detail::read_vector(in, f);
        t.c = detail::read_vector(in, f);
    }
    return fs;
}

} // namespace fgr

#endif
