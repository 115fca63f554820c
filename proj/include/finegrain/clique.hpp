#ifndef FINEGRAIN_CLIQUE_HPP
#define FINEGRAIN_CLIQUE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cnf.hpp"
#include "error.hpp"
#include "field.hpp"
#include "limits.hpp"
#include "linalg.hpp"
#include "text.hpp"

namespace fgr {

// Variables x_1..x_n (n a multiple of 4) are split into four contiguous groups
// of n/4 variables. Group g is assigned by an index u in [k], k = 2^(n/4), with
// the group's first variable as the most significant bit. Tensor i of the
// construction is indexed by the groups (i+1)%4, (i+2)%4, (i+3)%4 in that order.

using TVec = std::array<std::size_t, 4>;

namespace detail {

inline int group_of(int var, int group_width) { return (var - 1) / group_width; }

inline void check_max3sat_input(const Formula& f) {
    if (f.num_vars() % 4 != 0) throw PreconditionError("variable count must be a multiple of 4; pad first");
    if (f.width() > 3) throw PreconditionError("clause wider than 3 literals");
}

inline std::size_t part_size(const Formula& f, const Limits& limits) {
    const int w = f.num_vars() / 4;
    if (w > 6 || (std::size_t{1} << w) > static_cast<std::size_t>(limits.max_count_tensor_k))
        throw SizeError("part size 2^" + std::to_string(w) + " exceeds the bound " +
                        std::to_string(limits.max_count_tensor_k));
    return std::size_t{1} << w;
}

} // namespace detail

/// Smallest group index whose variables the clause avoids, per clause.
inline std::vector<int> label_clauses(const Formula& f) {
    detail::check_max3sat_input(f);
    const int w = f.num_vars() / 4;
    std::vector<int> labels;
    labels.reserve(f.num_clauses());
    for (const auto& c : f.clauses()) {
        std::array<bool, 4> hit{};
        for (int lit : c) hit[static_cast<std::size_t>(detail::group_of(std::abs(lit), w))] = true;
        int label = 0;
        while (hit[static_cast<std::size_t>(label)]) ++label;
        labels.push_back(label);
    }
    return labels;
}

/// T_i[u1, u2, u3]: number of label-i clauses satisfied when groups
/// (i+1)%4, (i+2)%4, (i+3)%4 take the values u1, u2, u3.
struct CountTensors {
    std::size_t k = 1;
    std::array<Array3<std::uint32_t>, 4> T;
    std::array<std::size_t, 4> label_counts{};
};

inline CountTensors build_count_tensors(const Formula& f, const Limits& limits = kDefaultLimits) {
    detail::check_max3sat_input(f);
    const std::size_t k = detail::part_size(f, limits);
    const int w = f.num_vars() / 4;
    const auto labels = label_clauses(f);

    CountTensors ct;
    ct.k = k;
    for (auto& t : ct.T) t = Array3<std::uint32_t>(k, k, k, 0);

    for (std::size_t j = 0; j < f.num_clauses(); ++j) {
        const int label = labels[j];
        ++ct.label_counts[static_cast<std::size_t>(label)];
        // sat[slot][u]: the clause's literals inside group (label+1+slot)%4 are satisfied by u.
        std::array<std::vector<std::uint8_t>, 3> sat;
        for (int slot = 0; slot < 3; ++slot) {
            const int g = (label + 1 + slot) % 4;
            auto& s = sat[static_cast<std::size_t>(slot)];
            s.assign(k, 0);
            for (std::size_t u = 0; u < k; ++u) {
                const auto a = Assignment::block(g * w + 1, w, u);
                for (int lit : f.clause(j)) {
                    if (detail::group_of(std::abs(lit), w) != g) continue;
                    if (*a.value(std::abs(lit)) == (lit > 0)) s[u] = 1;
                }
            }
        }
        auto& t = ct.T[static_cast<std::size_t>(label)];
        for (std::size_t u1 = 0; u1 < k; ++u1)
            for (std::size_t u2 = 0; u2 < k; ++u2)
                for (std::size_t u3 = 0; u3 < k; ++u3) t(u1, u2, u3) += sat[0][u1] | sat[1][u2] | sat[2][u3];
    }
    return ct;
}

/// Four 0/1 tensors A_i = [T_i == t_i] for one target tuple.
struct CliqueInstance {
    std::size_t k = 1;
    Field field;
    TVec tvec{};
    std::array<Tensor3, 4> A;

    std::size_t target() const noexcept { return tvec[0] + tvec[1] + tvec[2] + tvec[3]; }
    friend bool operator==(const CliqueInstance&, const CliqueInstance&) = default;
};

namespace detail {

inline void check_prime_for_counts(const Field& field, std::size_t k, bool allow_small_prime) {
    const std::uint64_t k4 = static_cast<std::uint64_t>(k) * k * k * k;
    if (!allow_small_prime && field.prime() <= k4)
        throw PreconditionError("field prime " + std::to_string(field.prime()) + " must exceed k^4 = " +
                                std::to_string(k4) + " for clique counts to be faithful");
}

} // namespace detail

inline CliqueInstance clique_instance_from_counts(const CountTensors& ct, const TVec& tvec, Field field = Field(),
                                                  bool allow_small_prime = false) {
    detail::check_prime_for_counts(field, ct.k, allow_small_prime);
    CliqueInstance inst;
    inst.k = ct.k;
    inst.field = field;
    inst.tvec = tvec;
    for (std::size_t i = 0; i < 4; ++i) {
        inst.A[i] = Tensor3(field, ct.k, ct.k, ct.k);
        for (std::size_t e = 0; e < inst.A[i].data().size(); ++e)
            inst.A[i].data()[e] = ct.T[i].data()[e] == tvec[i] ? 1 : 0;
    }
    return inst;
}

/// Pads F to a multiple of 4 variables and builds the instance for `tvec`.
inline CliqueInstance build_clique_instance(const Formula& f, const TVec& tvec, Field field = Field(),
                                            bool allow_small_prime = false, const Limits& limits = kDefaultLimits) {
    return clique_instance_from_counts(build_count_tensors(pad_variables(f, 4), limits), tvec, field,
                                       allow_small_prime);
}

struct CliqueCount {
    std::uint64_t exact = 0;
    Field::Elem mod_p = 0;
};

/// R = sum over j0..j3 of A_0[j1,j2,j3] A_1[j2,j3,j0] A_2[j3,j0,j1] A_3[j0,j1,j2].
inline CliqueCount brute_clique_R(const CliqueInstance& inst, const Limits& limits = kDefaultLimits) {
    const std::size_t k = inst.k;
    if (k > static_cast<std::size_t>(limits.max_clique_k))
        throw SizeError("k = " + std::to_string(k) + " exceeds the exhaustive bound " +
                        std::to_string(limits.max_clique_k));
    const auto& [a0, a1, a2, a3] = inst.A;
    std::uint64_t r = 0;
    for (std::size_t j0 = 0; j0 < k; ++j0)
        for (std::size_t j1 = 0; j1 < k; ++j1)
            for (std::size_t j2 = 0; j2 < k; ++j2) {
                const auto x = a3(j0, j1, j2);
                if (x == 0) continue;
                for (std::size_t j3 = 0; j3 < k; ++j3)
                    r += x * a0(j1, j2, j3) * a1(j2, j3, j0) * a2(j3, j0, j1);
            }
    return {r, inst.field.from_uint(r)};
}

// Slices of an instance used by the certificate-driven counts.

namespace detail {

template <class F>
FieldMatrix slice_matrix(const CliqueInstance& inst, F&& entry) {
    FieldMatrix m(inst.field, inst.k, inst.k);
    for (std::size_t x = 0; x < inst.k; ++x)
        for (std::size_t y = 0; y < inst.k; ++y) m(x, y) = entry(x, y);
    return m;
}

inline void check_index(const CliqueInstance& inst, std::size_t j) {
    if (j >= inst.k) throw PreconditionError("index " + std::to_string(j) + " outside [0, k)");
}

} // namespace detail

/// M[i,l] = A_0[j1,i,l].
inline FieldMatrix rig_slice_M(const CliqueInstance& inst, std::size_t j1) {
    detail::check_index(inst, j1);
    return detail::slice_matrix(inst, [&](std::size_t i, std::size_t l) { return inst.A[0](j1, i, l); });
}

/// L[i,l] = A_1[i,l,j0].
inline FieldMatrix rig_slice_L(const CliqueInstance& inst, std::size_t j0) {
    detail::check_index(inst, j0);
    return detail::slice_matrix(inst, [&](std::size_t i, std::size_t l) { return inst.A[1](i, l, j0); });
}

/// M[j2,j3] = A_1[j2,j3,j0].
inline FieldMatrix tr_slice_M(const CliqueInstance& inst, std::size_t j0) {
    detail::check_index(inst, j0);
    return detail::slice_matrix(inst, [&](std::size_t j2, std::size_t j3) { return inst.A[1](j2, j3, j0); });
}

/// L[j3,j1] = A_2[j3,j0,j1].
inline FieldMatrix tr_slice_L(const CliqueInstance& inst, std::size_t j0) {
    detail::check_index(inst, j0);
    return detail::slice_matrix(inst, [&](std::size_t j3, std::size_t j1) { return inst.A[2](j3, j0, j1); });
}

/// T[j1,j2] = A_3[j0,j1,j2].
inline FieldMatrix tr_slice_T(const CliqueInstance& inst, std::size_t j0) {
    detail::check_index(inst, j0);
    return detail::slice_matrix(inst, [&](std::size_t j1, std::size_t j2) { return inst.A[3](j0, j1, j2); });
}

/// First 4-clique (j0, j1, j2, j3) in lexicographic order, if any.
inline std::optional<std::array<std::size_t, 4>> find_clique(const CliqueInstance& inst,
                                                             const Limits& limits = kDefaultLimits) {
    const std::size_t k = inst.k;
    if (k > static_cast<std::size_t>(limits.max_clique_k))
        throw SizeError("k = " + std::to_string(k) + " exceeds the exhaustive bound");
    const auto& [a0, a1, a2, a3] = inst.A;
    for (std::size_t j0 = 0; j0 < k; ++j0)
        for (std::size_t j1 = 0; j1 < k; ++j1)
            for (std::size_t j2 = 0; j2 < k; ++j2)
                for (std::size_t j3 = 0; j3 < k; ++j3)
                    if (a0(j1, j2, j3) && a1(j2, j3, j0) && a2(j3, j0, j1) && a3(j0, j1, j2))
                        return std::array<std::size_t, 4>{j0, j1, j2, j3};
    return std::nullopt;
}

/// Whether some assignment satisfies exactly t clauses, decided by one clique
/// count per target tuple (t0, t1, t2, t3) with t0 + t1 + t2 + t3 = t.
inline bool max3sat_via_cliques(const Formula& f, std::size_t t, const Limits& limits = kDefaultLimits) {
    if (f.width() > 3) throw PreconditionError("clause wider than 3 literals");
    if (t > f.num_clauses()) return false;
    const auto ct = build_count_tensors(pad_variables(f, 4), limits);
    const auto& c = ct.label_counts;
    for (std::size_t t0 = 0; t0 <= std::min(t, c[0]); ++t0)
        for (std::size_t t1 = 0; t1 <= std::min(t - t0, c[1]); ++t1)
            for (std::size_t t2 = 0; t2 <= std::min(t - t0 - t1, c[2]); ++t2) {
                const std::size_t t3 = t - t0 - t1 - t2;
                if (t3 > c[3]) continue;
                const auto inst = clique_instance_from_counts(ct, {t0, t1, t2, t3});
                if (brute_clique_R(inst, limits).exact > 0) return true;
            }
    return false;
}

// ---------------------------------------------------------------------------
// Text format: `clique <k> <p> <t0> <t1> <t2> <t3>` followed by the four
// tensors A_0..A_3 in `ten` format.

inline void write_clique_instance(std::ostream& out, const CliqueInstance& inst) {
    out << "clique " << inst.k << ' ' << inst.field.prime();
    for (auto t : inst.tvec) out << ' ' << t;
    out << '\n';
    for (const auto& a : inst.A) write_tensor(out, a);
}

inline CliqueInstance read_clique_instance(std::istream& in) {
    detail::TokenReader r(in);
    r.expect("clique");
    CliqueInstance inst;
    inst.k = r.count();
    inst.field = Field(r.modulus());
    for (auto& t : inst.tvec) t = r.count();
    for (auto& a : inst.A) {
        const std::size_t line = r.line();
        a = read_tensor(r);
        if (a.d1() != inst.k || a.d2() != inst.k || a.d3() != inst.k)
            throw ParseError(line, "tensor is not k x k x k");
        if (!(a.field() == inst.field)) throw ParseError(line, "tensor prime differs from the instance prime");
        for (auto v : a.data())
            if (v > 1) throw ParseError(line, "edge tensors must be 0/1");
    }
    r.expect_end();
    return inst;
}

} // namespace fgr

#endif
